use num_complex::Complex;

use crate::channel::SparseChannelMatrix;
use crate::dd::DdGrid;
use crate::error::{Error, Result};
use crate::optim::PhaseVector;
use crate::scalar::Real;

/// `H_eff = Σ θ_i H_i` for one phase configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveChannel<T> {
    matrix: SparseChannelMatrix<T>,
    dense: Option<Vec<Complex<T>>>,
}

impl<T: Real> EffectiveChannel<T> {
    pub fn new(matrix: SparseChannelMatrix<T>) -> Self {
        Self { matrix, dense: None }
    }

    pub fn grid(&self) -> &DdGrid {
        self.matrix.grid()
    }

    pub fn matrix(&self) -> &SparseChannelMatrix<T> {
        &self.matrix
    }

    pub fn apply(&self, x: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        self.matrix.apply(x)
    }

    /// Caches the row-major dense form.
    pub fn materialize(&mut self) -> &[Complex<T>] {
        let matrix = &self.matrix;
        self.dense.get_or_insert_with(|| matrix.to_dense())
    }

    pub fn dense_form(&self) -> Option<&[Complex<T>]> {
        self.dense.as_deref()
    }
}

pub fn effective_channel<T: Real>(
    channels: &[SparseChannelMatrix<T>],
    theta: &PhaseVector<T>,
) -> Result<EffectiveChannel<T>> {
    if channels.len() != theta.len() {
        return Err(Error::DimensionMismatch { expected: channels.len(), actual: theta.len() });
    }
    SparseChannelMatrix::combine(channels, theta.as_slice()).map(EffectiveChannel::new)
}

/// Per-symbol channel gain `‖Σ θ_i H_i‖_F² / MN`.
pub fn channel_gain<T: Real>(channels: &[SparseChannelMatrix<T>], theta: &PhaseVector<T>) -> Result<T> {
    Ok(effective_channel(channels, theta)?.matrix.generator_energy())
}
