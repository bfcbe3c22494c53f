//! RIS-assisted OTFS downlink simulation.
//!
//! An `L`-element reconfigurable intelligent surface relays an OTFS frame from
//! a base station to a fast-moving terminal. Each element `i` contributes a
//! cascaded delay-Doppler channel matrix `H_i`; the receiver sees
//! `z = Σ θ_i H_i x + w`. The crate builds those matrices, chooses the
//! unit-modulus reflection coefficients `θ` that maximize received energy,
//! compares them with strongest-path and random baselines, and measures BER
//! with an MMSE detector.
//!
//! Numeric containers are generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar for the common cases.
//!
//! ```
//! use ris_otfs::{channel, optim, DdGrid};
//! use rand::SeedableRng;
//!
//! let grid = DdGrid::new(16, 8, 15e3).unwrap();
//! let bs_ris = channel::LinkProfile::equal(vec![0, 1, 2, 3], channel::DopplerModel::None).unwrap();
//! let ris_mt = channel::LinkProfile::equal(
//!     vec![0, 1, 2, 3],
//!     channel::DopplerModel::UniformCosine { nu_max: 2.0 * grid.doppler_resolution() },
//! )
//! .unwrap();
//! let model = channel::RisLinkModel::new(bs_ris, ris_mt, channel::DopplerSharing::PerElement);
//! let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
//! let realization: ris_otfs::CascadedChannel64 = model.sample(16, &grid, &mut rng).unwrap();
//! let h = realization.matrices(3).unwrap();
//! let gram = optim::gram_matrix(&h).unwrap();
//! let (theta, trace) =
//!     optim::optimize_phases(&gram, &optim::PhaseVector::ones(16), &Default::default()).unwrap();
//! assert!(trace.final_objective() >= trace.objective_per_iteration[0]);
//! assert_eq!(theta.len(), 16);
//! ```

pub mod channel;
pub mod dd;
pub mod error;
pub mod experiments;
pub mod link;
pub mod optim;
pub mod scalar;

pub use dd::DdGrid;
pub use error::{Error, Result};
pub use scalar::Real;

pub type DdFrame64 = dd::DdFrame<f64>;
pub type DdFrame32 = dd::DdFrame<f32>;
pub type TfFrame64 = dd::TfFrame<f64>;
pub type TfFrame32 = dd::TfFrame<f32>;
pub type Qam64 = dd::QamConstellation<f64>;
pub type Qam32 = dd::QamConstellation<f32>;
pub type PathTap64 = channel::PathTap<f64>;
pub type CascadedTap64 = channel::CascadedTap<f64>;
pub type CascadedChannel64 = channel::CascadedChannel<f64>;
pub type CascadedChannel32 = channel::CascadedChannel<f32>;
pub type ChannelMatrix64 = channel::SparseChannelMatrix<f64>;
pub type ChannelMatrix32 = channel::SparseChannelMatrix<f32>;
pub type PhaseVector64 = optim::PhaseVector<f64>;
pub type PhaseVector32 = optim::PhaseVector<f32>;
pub type GramMatrix64 = optim::GramMatrix<f64>;
pub type GramMatrix32 = optim::GramMatrix<f32>;
pub type OptimizerTrace64 = optim::OptimizerTrace<f64>;
pub type EffectiveChannel64 = link::EffectiveChannel<f64>;
pub type MmseEqualizer64 = link::MmseEqualizer<f64>;
