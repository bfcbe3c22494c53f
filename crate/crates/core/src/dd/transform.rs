use std::sync::Arc;

use num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use super::{DdFrame, DdGrid, TfFrame};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Planned ISFFT/SFFT pair for one grid.
///
/// Both directions are computed as separable FFTs: a length-`N` transform
/// along the Doppler/time axis followed by a length-`M` transform along the
/// delay/frequency axis, scaled by `1/√(MN)` so the pair is unitary.
pub struct SymplecticFft<T: Real> {
    grid: DdGrid,
    fwd_n: Arc<dyn Fft<T>>,
    inv_n: Arc<dyn Fft<T>>,
    fwd_m: Arc<dyn Fft<T>>,
    inv_m: Arc<dyn Fft<T>>,
    scale: T,
}

impl<T: Real> SymplecticFft<T> {
    pub fn new(grid: DdGrid) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            grid,
            fwd_n: planner.plan_fft_forward(grid.n()),
            inv_n: planner.plan_fft_inverse(grid.n()),
            fwd_m: planner.plan_fft_forward(grid.m()),
            inv_m: planner.plan_fft_inverse(grid.m()),
            scale: T::one() / T::of(grid.len() as f64).sqrt(),
        }
    }

    pub fn grid(&self) -> &DdGrid {
        &self.grid
    }

    /// `X[n,m] = (1/√MN) Σ_k Σ_l x[k,l] e^{j2π(nk/N − ml/M)}`.
    pub fn isfft(&self, frame: &DdFrame<T>) -> Result<TfFrame<T>> {
        self.check(frame.grid())?;
        let mut data = frame.as_slice().to_vec();
        self.separable(&mut data, &self.inv_n, &self.fwd_m);
        TfFrame::from_vec(self.grid, data)
    }

    /// `z[k,l] = (1/√MN) Σ_n Σ_m Z[n,m] e^{−j2π(nk/N − ml/M)}`.
    pub fn sfft(&self, frame: &TfFrame<T>) -> Result<DdFrame<T>> {
        self.check(frame.grid())?;
        let mut data = frame.as_slice().to_vec();
        self.separable(&mut data, &self.fwd_n, &self.inv_m);
        DdFrame::from_vec(self.grid, data)
    }

    fn check(&self, grid: &DdGrid) -> Result<()> {
        if *grid != self.grid {
            return Err(Error::DimensionMismatch { expected: self.grid.len(), actual: grid.len() });
        }
        Ok(())
    }

    // `data` is laid out as `[fast + N·slow]`; the fast axis is contiguous.
    fn separable(&self, data: &mut [Complex<T>], fast: &Arc<dyn Fft<T>>, slow: &Arc<dyn Fft<T>>) {
        let (m, n) = (self.grid.m(), self.grid.n());
        fast.process(data);
        let mut column = vec![Complex::new(T::zero(), T::zero()); m];
        for row in 0..n {
            for (j, c) in column.iter_mut().enumerate() {
                *c = data[row + n * j];
            }
            slow.process(&mut column);
            for (j, c) in column.iter().enumerate() {
                data[row + n * j] = *c * self.scale;
            }
        }
    }
}

/// One-shot ISFFT; plan with [`SymplecticFft`] when transforming many frames.
pub fn isfft<T: Real>(frame: &DdFrame<T>) -> TfFrame<T> {
    SymplecticFft::new(*frame.grid()).isfft(frame).expect("plan built from the frame's own grid")
}

pub fn sfft<T: Real>(frame: &TfFrame<T>) -> DdFrame<T> {
    SymplecticFft::new(*frame.grid()).sfft(frame).expect("plan built from the frame's own grid")
}
