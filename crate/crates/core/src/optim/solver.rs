use std::io::Write;

use num_complex::Complex;
use rand::Rng;

use super::{random_phases, GramMatrix, PhaseVector};
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerOptions {
    /// Relative-improvement threshold for stopping.
    pub epsilon: f64,
    pub max_iterations: usize,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        Self { epsilon: 1e-4, max_iterations: 15 }
    }
}

impl OptimizerOptions {
    fn validate(&self) -> Result<()> {
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(Error::InvalidOptimizer(format!("epsilon = {}", self.epsilon)));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidOptimizer("max_iterations = 0".into()));
        }
        Ok(())
    }
}

/// Objective values `G(θ^{(j)})` for `j = 0..=iterations_run`.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerTrace<T> {
    pub objective_per_iteration: Vec<T>,
    pub iterations_run: usize,
    /// The relative-improvement test fired before the iteration cap.
    pub converged: bool,
}

impl<T: Real> OptimizerTrace<T> {
    pub fn final_objective(&self) -> T {
        *self.objective_per_iteration.last().expect("trace holds the initial objective")
    }

    /// `iteration,objective` rows with a header line.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "iteration,objective")?;
        for (j, g) in self.objective_per_iteration.iter().enumerate() {
            writeln!(out, "{j},{g:e}")?;
        }
        Ok(())
    }
}

/// `G(θ) = θ^H C θ`; the imaginary round-off is dropped and the result clamped at 0.
pub fn objective<T: Real>(c: &GramMatrix<T>, theta: &PhaseVector<T>) -> T {
    assert_eq!(c.size(), theta.len(), "Gram matrix and phase vector sizes differ");
    let th = theta.as_slice();
    let ct = c.mul_vec(th);
    let g: Complex<T> = th.iter().zip(&ct).map(|(a, b)| a.conj() * b).sum();
    g.re.max(T::zero())
}

/// Wirtinger gradient `∂G/∂θ* = C θ`.
pub fn gradient<T: Real>(c: &GramMatrix<T>, theta: &PhaseVector<T>) -> Vec<Complex<T>> {
    assert_eq!(c.size(), theta.len(), "Gram matrix and phase vector sizes differ");
    c.mul_vec(theta.as_slice())
}

/// Fixed-point ascent `θ_i ← γ_i/|γ_i|`, `γ = Cθ`.
///
/// Stops once `(G_j − G_{j−1})/G_{j−1} < ε` or after `max_iterations` updates.
/// Entries with `γ_i = 0` keep their phase. When `G` is zero the iterate cannot
/// move, so the run stops after one update.
pub fn optimize_phases<T: Real>(
    c: &GramMatrix<T>,
    theta0: &PhaseVector<T>,
    options: &OptimizerOptions,
) -> Result<(PhaseVector<T>, OptimizerTrace<T>)> {
    options.validate()?;
    if theta0.len() != c.size() {
        return Err(Error::DimensionMismatch { expected: c.size(), actual: theta0.len() });
    }
    let eps = T::of(options.epsilon);
    let mut theta = theta0.as_slice().to_vec();
    let mut prev = objective(c, theta0);
    let mut trace = vec![prev];
    let mut converged = false;
    let mut iterations_run = 0;
    for j in 1..=options.max_iterations {
        let gamma = c.mul_vec(&theta);
        for (t, g) in theta.iter_mut().zip(&gamma) {
            let r = g.norm();
            if r > T::zero() {
                *t = g / r;
            }
        }
        let current = objective(c, &PhaseVector::from_raw(theta.clone()));
        trace.push(current);
        iterations_run = j;
        let stop = if prev > T::zero() { (current - prev) / prev < eps } else { current <= prev };
        prev = current;
        if stop {
            converged = true;
            break;
        }
    }
    Ok((PhaseVector::from_raw(theta), OptimizerTrace { objective_per_iteration: trace, iterations_run, converged }))
}

/// Best of `starts` runs: all-ones first, then uniformly random starting phases.
pub fn optimize_multistart<T: Real, R: Rng + ?Sized>(
    c: &GramMatrix<T>,
    starts: usize,
    options: &OptimizerOptions,
    rng: &mut R,
) -> Result<(PhaseVector<T>, OptimizerTrace<T>)> {
    let mut best = optimize_phases(c, &PhaseVector::ones(c.size()), options)?;
    for _ in 1..starts {
        let candidate = optimize_phases(c, &random_phases(c.size(), rng), options)?;
        if candidate.1.final_objective() > best.1.final_objective() {
            best = candidate;
        }
    }
    Ok(best)
}
