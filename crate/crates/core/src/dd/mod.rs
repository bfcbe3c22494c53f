//! Delay-Doppler frame representation, symplectic transforms and QAM mapping.

mod frame;
mod grid;
mod qam;
mod transform;

pub use frame::{devectorize, vectorize, DdFrame, TfFrame};
pub use grid::DdGrid;
pub use qam::{qam_demodulate, qam_modulate, QamConstellation};
pub use transform::{isfft, sfft, SymplecticFft};
