//! Effective channel assembly, AWGN, MMSE detection and BER trials.

mod effective;
mod mmse;
mod trial;

pub use effective::{channel_gain, effective_channel, EffectiveChannel};
pub use mmse::{mmse_equalize, Detector, MmseEqualizer};
pub use trial::{ber_trial, run_frame, transmit, NoiseModel, TrialResult};
