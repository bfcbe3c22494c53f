//! Received-energy maximization over unit-modulus RIS phase vectors.
//!
//! With `h̄_i = vec(H_i)`, the energy `G(θ) = ‖Σ θ_i H_i‖_F²` equals `θ^H C θ`
//! for the Gram matrix `C_{iℓ} = h̄_i^H h̄_ℓ`. The optimizer repeatedly sets
//! each phase to that of the conjugate gradient `γ = Cθ`.

mod baseline;
mod gram;
mod phase;
mod solver;

pub use baseline::{random_phases, scp_phases, strongest_bin};
pub use gram::{gram_matrix, gram_matrix_full, GramMatrix};
pub use phase::PhaseVector;
pub use solver::{gradient, objective, optimize_multistart, optimize_phases, OptimizerOptions, OptimizerTrace};
