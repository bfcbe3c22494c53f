use num_complex::Complex;

use super::DdGrid;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Delay-Doppler symbols `x[k, l]`.
///
/// Stored in vectorized order, `x[k + N·l] = x[k, l]`, so [`vectorize`] is a copy.
#[derive(Debug, Clone, PartialEq)]
pub struct DdFrame<T> {
    grid: DdGrid,
    symbols: Vec<Complex<T>>,
}

/// Time-frequency samples `X[n, m]`, stored as `X[n + N·m]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TfFrame<T> {
    grid: DdGrid,
    samples: Vec<Complex<T>>,
}

macro_rules! frame_common {
    ($ty:ident, $field:ident) => {
        impl<T: Real> $ty<T> {
            pub fn zeros(grid: DdGrid) -> Self {
                Self { grid, $field: vec![Complex::new(T::zero(), T::zero()); grid.len()] }
            }

            /// Builds a frame from samples already in `[fast + N·slow]` order.
            pub fn from_vec(grid: DdGrid, data: Vec<Complex<T>>) -> Result<Self> {
                if data.len() != grid.len() {
                    return Err(Error::DimensionMismatch { expected: grid.len(), actual: data.len() });
                }
                Ok(Self { grid, $field: data })
            }

            pub fn from_fn(grid: DdGrid, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
                let $field = (0..grid.len())
                    .map(|i| {
                        let (a, b) = grid.coords(i);
                        f(a, b)
                    })
                    .collect();
                Self { grid, $field }
            }

            #[inline]
            pub fn grid(&self) -> &DdGrid {
                &self.grid
            }

            #[inline]
            pub fn as_slice(&self) -> &[Complex<T>] {
                &self.$field
            }

            #[inline]
            pub fn as_mut_slice(&mut self) -> &mut [Complex<T>] {
                &mut self.$field
            }

            pub fn into_vec(self) -> Vec<Complex<T>> {
                self.$field
            }

            pub fn energy(&self) -> T {
                self.$field.iter().map(|z| z.norm_sqr()).sum()
            }
        }
    };
}

frame_common!(DdFrame, symbols);
frame_common!(TfFrame, samples);

impl<T: Real> DdFrame<T> {
    #[inline]
    pub fn get(&self, k: usize, l: usize) -> Complex<T> {
        self.symbols[self.grid.index(k, l)]
    }

    #[inline]
    pub fn set(&mut self, k: usize, l: usize, value: Complex<T>) {
        let i = self.grid.index(k, l);
        self.symbols[i] = value;
    }

    /// Unit impulse at `(k, l)`.
    pub fn impulse(grid: DdGrid, k: usize, l: usize) -> Self {
        let mut f = Self::zeros(grid);
        f.set(k, l, Complex::new(T::one(), T::zero()));
        f
    }
}

impl<T: Real> TfFrame<T> {
    /// Sample at time slot `n`, subcarrier `m`.
    #[inline]
    pub fn get(&self, n: usize, m: usize) -> Complex<T> {
        self.samples[n + self.grid.n() * m]
    }

    #[inline]
    pub fn set(&mut self, n: usize, m: usize, value: Complex<T>) {
        let i = n + self.grid.n() * m;
        self.samples[i] = value;
    }
}

/// `out[k + N·l] = frame[k, l]`.
pub fn vectorize<T: Real>(frame: &DdFrame<T>) -> Vec<Complex<T>> {
    frame.symbols.clone()
}

pub fn devectorize<T: Real>(v: &[Complex<T>], grid: DdGrid) -> Result<DdFrame<T>> {
    DdFrame::from_vec(grid, v.to_vec())
}
