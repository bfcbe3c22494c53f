use std::ops::AddAssign;

use num_complex::Complex;
use rand::Rng;

use super::{effective_channel, EffectiveChannel, MmseEqualizer};
use crate::channel::complex_normal;
use crate::channel::SparseChannelMatrix;
use crate::dd::{devectorize, vectorize, DdGrid, QamConstellation};
use crate::error::{Error, Result};
use crate::optim::PhaseVector;
use crate::scalar::Real;

/// Circularly-symmetric AWGN of variance `σ₀²` per DD sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    sigma0_sq: f64,
}

impl NoiseModel {
    pub fn new(sigma0_sq: f64) -> Result<Self> {
        if !(sigma0_sq.is_finite() && sigma0_sq >= 0.0) {
            return Err(Error::InvalidNoise(sigma0_sq));
        }
        Ok(Self { sigma0_sq })
    }

    pub fn noiseless() -> Self {
        Self { sigma0_sq: 0.0 }
    }

    /// `σ₀² = 1/SNR` for unit-energy symbols.
    pub fn from_snr_db(snr_db: f64) -> Self {
        Self { sigma0_sq: 10f64.powf(-snr_db / 10.0) }
    }

    pub fn sigma0_sq(&self) -> f64 {
        self.sigma0_sq
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TrialResult {
    pub bit_errors: u64,
    pub bits_total: u64,
    pub frame_errors: u64,
    pub frames_total: u64,
}

impl TrialResult {
    pub fn ber(&self) -> f64 {
        if self.bits_total == 0 {
            0.0
        } else {
            self.bit_errors as f64 / self.bits_total as f64
        }
    }

    pub fn fer(&self) -> f64 {
        if self.frames_total == 0 {
            0.0
        } else {
            self.frame_errors as f64 / self.frames_total as f64
        }
    }
}

impl AddAssign for TrialResult {
    fn add_assign(&mut self, o: Self) {
        self.bit_errors += o.bit_errors;
        self.bits_total += o.bits_total;
        self.frame_errors += o.frame_errors;
        self.frames_total += o.frames_total;
    }
}

impl std::iter::Sum for TrialResult {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        let mut acc = Self::default();
        for r in iter {
            acc += r;
        }
        acc
    }
}

/// `z = H_eff x + w`, `w_i ~ CN(0, σ₀²)`.
pub fn transmit<T: Real, R: Rng + ?Sized>(
    x: &[Complex<T>],
    channel: &EffectiveChannel<T>,
    noise: &NoiseModel,
    rng: &mut R,
) -> Result<Vec<Complex<T>>> {
    let mut z = channel.apply(x)?;
    if noise.sigma0_sq > 0.0 {
        for v in z.iter_mut() {
            *v = *v + complex_normal::<T, R>(noise.sigma0_sq, rng);
        }
    }
    Ok(z)
}

/// One frame through a prepared channel and detector.
///
/// Draws the frame's bits first and its noise second from `rng`, so two
/// calls from identically seeded generators see the same bits and the same
/// unit-variance noise, scaled by `σ₀`.
pub fn run_frame<T: Real, R: Rng + ?Sized>(
    channel: &EffectiveChannel<T>,
    equalizer: &MmseEqualizer<T>,
    constellation: &QamConstellation<T>,
    noise: &NoiseModel,
    rng: &mut R,
) -> Result<TrialResult> {
    let grid = *channel.grid();
    let nbits = grid.len() * constellation.bits_per_symbol();
    let bits: Vec<bool> = (0..nbits).map(|_| rng.random::<bool>()).collect();
    let x = vectorize(&constellation.modulate(&bits, grid)?);
    let z = transmit(&x, channel, noise, rng)?;
    let xhat = devectorize(&equalizer.equalize(&z)?, grid)?;
    let decided = constellation.demodulate(&xhat);
    let errors = bits.iter().zip(&decided).filter(|(a, b)| a != b).count() as u64;
    Ok(TrialResult {
        bit_errors: errors,
        bits_total: nbits as u64,
        frame_errors: u64::from(errors > 0),
        frames_total: 1,
    })
}

/// Random bits → QAM → `H_eff` + AWGN → MMSE → hard decisions, for one frame.
pub fn ber_trial<T: Real, R: Rng + ?Sized>(
    grid: &DdGrid,
    channels: &[SparseChannelMatrix<T>],
    theta: &PhaseVector<T>,
    constellation: &QamConstellation<T>,
    noise: &NoiseModel,
    rng: &mut R,
) -> Result<TrialResult> {
    let eff = effective_channel(channels, theta)?;
    if eff.grid() != grid {
        return Err(Error::GridMismatch);
    }
    let eq = MmseEqualizer::new(&eff, noise)?;
    run_frame(&eff, &eq, constellation, noise, rng)
}
