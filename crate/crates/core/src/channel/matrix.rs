use num_complex::Complex;

use super::kernel::dd_spreading_weight;
use super::tap::CascadedTap;
use crate::dd::DdGrid;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Per-element DD channel matrix `H` (`MN × MN`) stored by its generating column.
///
/// `H` is doubly circulant: the entry at row `(k, l)`, column `(k'', l'')`
/// depends only on `((k − k'') mod N, (l − l'') mod M)`, so column 0 (the
/// response to an impulse at the origin) determines it.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseChannelMatrix<T> {
    grid: DdGrid,
    /// `(vector index, value)`, strictly increasing index, no explicit zeros.
    entries: Vec<(usize, Complex<T>)>,
}

impl<T: Real> SparseChannelMatrix<T> {
    /// Accumulates `(index, value)` pairs; repeated indices add.
    pub fn from_entries(grid: DdGrid, entries: impl IntoIterator<Item = (usize, Complex<T>)>) -> Result<Self> {
        let mut v: Vec<(usize, Complex<T>)> = entries.into_iter().collect();
        if let Some(&(bad, _)) = v.iter().find(|(i, _)| *i >= grid.len()) {
            return Err(Error::DimensionMismatch { expected: grid.len(), actual: bad + 1 });
        }
        v.sort_by_key(|(i, _)| *i);
        let mut merged: Vec<(usize, Complex<T>)> = Vec::with_capacity(v.len());
        for (i, z) in v {
            match merged.last_mut() {
                Some((j, acc)) if *j == i => *acc = *acc + z,
                _ => merged.push((i, z)),
            }
        }
        merged.retain(|(_, z)| z.re != T::zero() || z.im != T::zero());
        Ok(Self { grid, entries: merged })
    }

    pub fn from_generator(grid: DdGrid, column: &[Complex<T>]) -> Result<Self> {
        if column.len() != grid.len() {
            return Err(Error::DimensionMismatch { expected: grid.len(), actual: column.len() });
        }
        Self::from_entries(grid, column.iter().copied().enumerate())
    }

    pub fn identity(grid: DdGrid) -> Self {
        Self { grid, entries: vec![(0, Complex::new(T::one(), T::zero()))] }
    }

    pub fn zero(grid: DdGrid) -> Self {
        Self { grid, entries: Vec::new() }
    }

    pub fn grid(&self) -> &DdGrid {
        &self.grid
    }

    /// Nonzeros of the generating column.
    pub fn entries(&self) -> &[(usize, Complex<T>)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn generator_column(&self) -> Vec<Complex<T>> {
        let mut col = vec![Complex::new(T::zero(), T::zero()); self.grid.len()];
        for &(i, z) in &self.entries {
            col[i] = z;
        }
        col
    }

    fn generator_at(&self, index: usize) -> Complex<T> {
        match self.entries.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(pos) => self.entries[pos].1,
            Err(_) => Complex::new(T::zero(), T::zero()),
        }
    }

    fn offset(&self, row: usize, col: usize) -> usize {
        let (n, m) = (self.grid.n(), self.grid.m());
        let (k, l) = self.grid.coords(row);
        let (kc, lc) = self.grid.coords(col);
        self.grid.index((k + n - kc) % n, (l + m - lc) % m)
    }

    /// Logical entry `H[row, col]` in vector indexing.
    pub fn entry(&self, row: usize, col: usize) -> Complex<T> {
        self.generator_at(self.offset(row, col))
    }

    /// Nonzeros of column `col`, i.e. the generator shifted by `col`'s DD coordinates.
    pub fn column(&self, col: usize) -> Vec<(usize, Complex<T>)> {
        let (n, m) = (self.grid.n(), self.grid.m());
        let (kc, lc) = self.grid.coords(col);
        let mut out: Vec<_> = self
            .entries
            .iter()
            .map(|&(i, z)| {
                let (a, b) = self.grid.coords(i);
                (self.grid.index((a + kc) % n, (b + lc) % m), z)
            })
            .collect();
        out.sort_by_key(|(i, _)| *i);
        out
    }

    /// Dense row-major `MN × MN` materialization.
    pub fn to_dense(&self) -> Vec<Complex<T>> {
        let len = self.grid.len();
        let mut dense = vec![Complex::new(T::zero(), T::zero()); len * len];
        for col in 0..len {
            for (row, z) in self.column(col) {
                dense[row * len + col] = z;
            }
        }
        dense
    }

    /// `‖H‖_F² = MN · ‖generator‖²`.
    pub fn frobenius_norm_sqr(&self) -> T {
        self.generator_energy() * T::of(self.grid.len() as f64)
    }

    pub fn generator_energy(&self) -> T {
        self.entries.iter().map(|(_, z)| z.norm_sqr()).sum()
    }

    /// `H x` as a 2D circular convolution of the frame `x` with the generator.
    pub fn apply(&self, x: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        let len = self.grid.len();
        if x.len() != len {
            return Err(Error::DimensionMismatch { expected: len, actual: x.len() });
        }
        let (n, m) = (self.grid.n(), self.grid.m());
        let mut z = vec![Complex::new(T::zero(), T::zero()); len];
        for &(i, h) in &self.entries {
            let (a, b) = self.grid.coords(i);
            for l in 0..m {
                let src_l = (l + m - b) % m;
                for k in 0..n {
                    let src_k = (k + n - a) % n;
                    z[k + n * l] = z[k + n * l] + h * x[src_k + n * src_l];
                }
            }
        }
        Ok(z)
    }

    /// `H^H`, itself doubly circulant with generator `conj(g[−k, −l])`.
    pub fn adjoint(&self) -> Self {
        let (n, m) = (self.grid.n(), self.grid.m());
        let entries = self.entries.iter().map(|&(i, z)| {
            let (a, b) = self.grid.coords(i);
            (self.grid.index((n - a) % n, (m - b) % m), z.conj())
        });
        Self::from_entries(self.grid, entries).expect("indices stay on the grid")
    }

    /// `H^H H`, computed from the generator as `H^H g`.
    pub fn gram(&self) -> Self {
        let g = self.generator_column();
        let col = self.adjoint().apply(&g).expect("generator has grid length");
        Self::from_generator(self.grid, &col).expect("column has grid length")
    }

    /// `Σ_i w_i H_i` over matrices sharing one grid.
    pub fn combine(matrices: &[Self], weights: &[Complex<T>]) -> Result<Self> {
        if matrices.len() != weights.len() {
            return Err(Error::DimensionMismatch { expected: matrices.len(), actual: weights.len() });
        }
        let grid = match matrices.first() {
            Some(h) => h.grid,
            None => return Err(Error::DimensionMismatch { expected: 1, actual: 0 }),
        };
        if matrices.iter().any(|h| h.grid != grid) {
            return Err(Error::GridMismatch);
        }
        let mut col = vec![Complex::new(T::zero(), T::zero()); grid.len()];
        for (h, &w) in matrices.iter().zip(weights) {
            for &(i, z) in &h.entries {
                col[i] = col[i] + w * z;
            }
        }
        Self::from_generator(grid, &col)
    }
}

/// Builds the DD channel matrix of one RIS element from its cascaded taps.
///
/// Each tap contributes `h·e^{−j2πντ}·w(n', k')` at generator offset
/// `(k − n', l)` for `|n'| ≤ N'`; integer-Doppler taps occupy only `n' = 0`.
pub fn build_channel_matrix<T: Real>(
    taps: &[CascadedTap<T>],
    grid: &DdGrid,
    n_prime_max: usize,
) -> Result<SparseChannelMatrix<T>> {
    let half = grid.n() as f64 / 2.0;
    if n_prime_max as f64 >= half {
        return Err(Error::DopplerTruncation { n_prime: n_prime_max, half });
    }
    let n = grid.n() as i64;
    let np = n_prime_max as i64;
    let mut entries = Vec::with_capacity(taps.len() * (2 * n_prime_max + 1));
    for tap in taps {
        if tap.l >= grid.m() {
            return Err(Error::DelayOverflow { index: tap.l, bins: grid.m() });
        }
        let c = tap.dd_coefficient();
        if tap.k_frac == 0.0 {
            entries.push((grid.index(tap.k.rem_euclid(n) as usize, tap.l), c));
            continue;
        }
        for p in -np..=np {
            let w = dd_spreading_weight::<T>(p, tap.k_frac, grid.n());
            entries.push((grid.index((tap.k - p).rem_euclid(n) as usize, tap.l), c * w));
        }
    }
    SparseChannelMatrix::from_entries(*grid, entries)
}

pub fn apply_channel<T: Real>(h: &SparseChannelMatrix<T>, x: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    h.apply(x)
}
