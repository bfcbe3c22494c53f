//! Cascaded BS-RIS-MT channels and their delay-Doppler channel matrices.

mod kernel;
mod matrix;
mod profile;
mod realize;
mod tap;
mod tdl;

pub use kernel::{dd_spreading_weight, kernel_energy_captured};
pub use matrix::{apply_channel, build_channel_matrix, SparseChannelMatrix};
pub use profile::{complex_normal, sample_doppler, sample_link_paths, DopplerModel, LinkProfile};
pub use realize::{CascadedChannel, DopplerSharing, RisLinkModel};
pub use tap::{cascade, cascade_links, delay_index, doppler_decompose, CascadedTap, PathTap};
pub use tdl::{max_doppler, tdl_c_profile, TdlTable, TDL_C_TABLE};

/// Default Doppler spreading truncation `N'`.
pub const DEFAULT_N_PRIME: usize = 5;

/// Largest admissible truncation for `n` Doppler bins, capped at [`DEFAULT_N_PRIME`].
pub fn default_n_prime(n: usize) -> usize {
    DEFAULT_N_PRIME.min(n.saturating_sub(1) / 2)
}
