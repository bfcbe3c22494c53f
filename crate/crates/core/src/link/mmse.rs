use std::sync::Arc;

use num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use super::{EffectiveChannel, NoiseModel};
use crate::channel::SparseChannelMatrix;
use crate::dd::DdGrid;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Linear MMSE detector `x̂ = (H^H H + σ₀² I)^{−1} H^H z` for unit-energy symbols.
///
/// [`MmseEqualizer::new`] forms the `MN × MN` normal matrix densely and
/// factors it once with a Cholesky decomposition; each
/// [`MmseEqualizer::equalize`] call is then two triangular solves.
///
/// [`MmseEqualizer::circulant`] computes the same estimate by diagonalizing the
/// doubly circulant channel with a 2D DFT, which costs `O(MN log MN)` per frame
/// and no dense storage.
#[derive(Clone)]
pub struct MmseEqualizer<T: Real> {
    inner: Inner<T>,
}

#[derive(Clone)]
enum Inner<T: Real> {
    Dense {
        size: usize,
        adjoint: SparseChannelMatrix<T>,
        /// Lower Cholesky factor, row-major.
        factor: Vec<Complex<T>>,
    },
    Circulant {
        dft: Dft2<T>,
        /// `conj(Λ) / (|Λ|² + σ₀²) / MN` per frequency bin.
        filter: Vec<Complex<T>>,
    },
}

impl<T: Real> std::fmt::Debug for MmseEqualizer<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let kind = match self.inner {
            Inner::Dense { .. } => "dense",
            Inner::Circulant { .. } => "circulant",
        };
        f.debug_struct("MmseEqualizer").field("kind", &kind).finish()
    }
}

/// Which MMSE implementation a simulation uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Detector {
    #[default]
    Dense,
    Circulant,
}

impl<T: Real> MmseEqualizer<T> {
    pub fn new(channel: &EffectiveChannel<T>, noise: &NoiseModel) -> Result<Self> {
        let h = channel.matrix();
        let size = h.grid().len();
        let mut a = h.gram().to_dense();
        let reg = T::of(noise.sigma0_sq());
        for i in 0..size {
            a[i * size + i] = a[i * size + i] + reg;
        }
        cholesky_in_place(&mut a, size)?;
        Ok(Self { inner: Inner::Dense { size, adjoint: h.adjoint(), factor: a } })
    }

    pub fn circulant(channel: &EffectiveChannel<T>, noise: &NoiseModel) -> Result<Self> {
        let h = channel.matrix();
        let grid = *h.grid();
        let dft = Dft2::new(grid);
        let mut lambda = h.generator_column();
        dft.forward(&mut lambda);
        let reg = T::of(noise.sigma0_sq());
        let max = lambda.iter().map(|z| z.norm_sqr()).fold(T::zero(), T::max) + reg;
        let tol = max * T::epsilon() * T::of(grid.len() as f64);
        let scale = T::one() / T::of(grid.len() as f64);
        let mut filter = Vec::with_capacity(grid.len());
        for (i, z) in lambda.iter().enumerate() {
            let d = z.norm_sqr() + reg;
            if d.is_nan() || d <= tol {
                return Err(Error::Singular { row: i, pivot: d.as_f64() });
            }
            filter.push(z.conj() * (scale / d));
        }
        Ok(Self { inner: Inner::Circulant { dft, filter } })
    }

    pub fn with_detector(channel: &EffectiveChannel<T>, noise: &NoiseModel, detector: Detector) -> Result<Self> {
        match detector {
            Detector::Dense => Self::new(channel, noise),
            Detector::Circulant => Self::circulant(channel, noise),
        }
    }

    pub fn equalize(&self, z: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        match &self.inner {
            Inner::Dense { size, adjoint, factor } => {
                let y = adjoint.apply(z)?;
                Ok(cholesky_solve(factor, *size, y))
            }
            Inner::Circulant { dft, filter } => {
                if z.len() != filter.len() {
                    return Err(Error::DimensionMismatch { expected: filter.len(), actual: z.len() });
                }
                let mut y = z.to_vec();
                dft.forward(&mut y);
                y.iter_mut().zip(filter).for_each(|(v, f)| *v = *v * f);
                dft.inverse(&mut y);
                Ok(y)
            }
        }
    }
}

fn cholesky_solve<T: Real>(f: &[Complex<T>], n: usize, mut y: Vec<Complex<T>>) -> Vec<Complex<T>> {
    // L y' = y
    for i in 0..n {
        let row = &f[i * n..i * n + i];
        let s: Complex<T> = row.iter().zip(&y[..i]).map(|(a, b)| a * b).sum();
        y[i] = (y[i] - s) / f[i * n + i].re;
    }
    // L^H x = y'
    for i in (0..n).rev() {
        let mut s = Complex::new(T::zero(), T::zero());
        for j in i + 1..n {
            s = s + f[j * n + i].conj() * y[j];
        }
        y[i] = (y[i] - s) / f[i * n + i].re;
    }
    y
}

/// Unnormalized 2D DFT over a frame stored as `[k + N·l]`.
#[derive(Clone)]
struct Dft2<T: Real> {
    grid: DdGrid,
    fwd_n: Arc<dyn Fft<T>>,
    inv_n: Arc<dyn Fft<T>>,
    fwd_m: Arc<dyn Fft<T>>,
    inv_m: Arc<dyn Fft<T>>,
}

impl<T: Real> Dft2<T> {
    fn new(grid: DdGrid) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            grid,
            fwd_n: planner.plan_fft_forward(grid.n()),
            inv_n: planner.plan_fft_inverse(grid.n()),
            fwd_m: planner.plan_fft_forward(grid.m()),
            inv_m: planner.plan_fft_inverse(grid.m()),
        }
    }

    fn forward(&self, data: &mut [Complex<T>]) {
        self.run(data, &self.fwd_n, &self.fwd_m);
    }

    fn inverse(&self, data: &mut [Complex<T>]) {
        self.run(data, &self.inv_n, &self.inv_m);
    }

    fn run(&self, data: &mut [Complex<T>], fast: &Arc<dyn Fft<T>>, slow: &Arc<dyn Fft<T>>) {
        let (m, n) = (self.grid.m(), self.grid.n());
        fast.process(data);
        let mut column = vec![Complex::new(T::zero(), T::zero()); m];
        for row in 0..n {
            for (j, c) in column.iter_mut().enumerate() {
                *c = data[row + n * j];
            }
            slow.process(&mut column);
            for (j, c) in column.iter().enumerate() {
                data[row + n * j] = *c;
            }
        }
    }
}

/// Overwrites the lower triangle of Hermitian `a` with `L`, `a = L L^H`.
fn cholesky_in_place<T: Real>(a: &mut [Complex<T>], n: usize) -> Result<()> {
    let max_diag = (0..n).map(|i| a[i * n + i].re).fold(T::zero(), T::max);
    let tol = max_diag * T::epsilon() * T::of(n as f64);
    for j in 0..n {
        let mut d = a[j * n + j].re;
        for k in 0..j {
            d = d - a[j * n + k].norm_sqr();
        }
        if d.is_nan() || d <= tol {
            return Err(Error::Singular { row: j, pivot: d.as_f64() });
        }
        let d = d.sqrt();
        a[j * n + j] = Complex::new(d, T::zero());
        for i in j + 1..n {
            let mut s = a[i * n + j];
            for k in 0..j {
                s = s - a[i * n + k] * a[j * n + k].conj();
            }
            a[i * n + j] = s / d;
        }
        for i in 0..j {
            a[i * n + j] = Complex::new(T::zero(), T::zero());
        }
    }
    Ok(())
}

pub fn mmse_equalize<T: Real>(
    channel: &EffectiveChannel<T>,
    z: &[Complex<T>],
    noise: &NoiseModel,
) -> Result<Vec<Complex<T>>> {
    MmseEqualizer::new(channel, noise)?.equalize(z)
}
