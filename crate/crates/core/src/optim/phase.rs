use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cis, Real};

/// RIS reflection coefficients, each of unit modulus.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseVector<T> {
    theta: Vec<Complex<T>>,
}

impl<T: Real> PhaseVector<T> {
    pub fn new(theta: Vec<Complex<T>>) -> Result<Self> {
        let tol = T::unit_modulus_tolerance();
        for (index, z) in theta.iter().enumerate() {
            if (z.norm() - T::one()).abs() > tol {
                return Err(Error::NotUnitModulus { index, modulus: z.norm().as_f64() });
            }
        }
        Ok(Self { theta })
    }

    pub fn ones(len: usize) -> Self {
        Self { theta: vec![Complex::new(T::one(), T::zero()); len] }
    }

    /// `θ_i = e^{jφ_i}` from angles in radians.
    pub fn from_angles(angles: &[f64]) -> Self {
        Self { theta: angles.iter().map(|&a| cis(a)).collect() }
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.theta
    }

    pub fn angles(&self) -> Vec<f64> {
        self.theta.iter().map(|z| z.arg().as_f64()).collect()
    }

    /// Same configuration with every phase advanced by `alpha` radians.
    pub fn rotated(&self, alpha: f64) -> Self {
        let r = cis::<T>(alpha);
        Self { theta: self.theta.iter().map(|z| z * r).collect() }
    }

    pub(crate) fn from_raw(theta: Vec<Complex<T>>) -> Self {
        Self { theta }
    }
}
