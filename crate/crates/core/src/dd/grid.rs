use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dimensions and physical spacings of an OTFS frame.
///
/// `m` delay bins of width `T/M`, `n` Doppler bins of width `1/(NT)`, with the
/// symbol duration tied to the subcarrier spacing by `T = 1/Δf`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DdGrid {
    m: usize,
    n: usize,
    delta_f: f64,
}

impl DdGrid {
    pub fn new(m: usize, n: usize, delta_f: f64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidGrid(format!("M = {m}, N = {n}; both must be >= 1")));
        }
        if !(delta_f.is_finite() && delta_f > 0.0) {
            return Err(Error::InvalidGrid(format!("subcarrier spacing {delta_f} Hz")));
        }
        Ok(Self { m, n, delta_f })
    }

    /// Delay bins (subcarriers), `M`.
    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    /// Doppler bins (time slots), `N`.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of DD resource elements, `MN`.
    #[inline]
    pub fn len(&self) -> usize {
        self.m * self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn subcarrier_spacing(&self) -> f64 {
        self.delta_f
    }

    pub fn symbol_duration(&self) -> f64 {
        1.0 / self.delta_f
    }

    pub fn frame_duration(&self) -> f64 {
        self.n as f64 * self.symbol_duration()
    }

    pub fn bandwidth(&self) -> f64 {
        self.m as f64 * self.delta_f
    }

    /// Delay bin width `Δτ = T/M = 1/(MΔf)`.
    pub fn delay_resolution(&self) -> f64 {
        1.0 / self.bandwidth()
    }

    /// Doppler bin width `1/(NT)`.
    pub fn doppler_resolution(&self) -> f64 {
        1.0 / self.frame_duration()
    }

    /// Vector index of DD bin `(k, l)`: Doppler is the fast index.
    #[inline]
    pub fn index(&self, k: usize, l: usize) -> usize {
        k + self.n * l
    }

    /// Inverse of [`DdGrid::index`].
    #[inline]
    pub fn coords(&self, index: usize) -> (usize, usize) {
        (index % self.n, index / self.n)
    }
}
