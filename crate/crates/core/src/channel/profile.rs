use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::tap::PathTap;
use crate::dd::DdGrid;
use crate::error::{Error, Result};
use crate::scalar::Real;

use std::f64::consts::PI;

/// How path Doppler shifts are drawn.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DopplerModel {
    /// Every path has zero Doppler.
    None,
    /// Uniform draw from a list of shifts in Hz.
    List { hz: Vec<f64> },
    /// `ν = ν_max·cos φ`, `φ ~ U[0, 2π)`.
    UniformCosine { nu_max: f64 },
}

/// Power-delay profile of one link, shared by all RIS elements.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkProfile {
    delay_taps: Vec<usize>,
    power_fractions: Vec<f64>,
    doppler: DopplerModel,
}

impl LinkProfile {
    pub fn new(delay_taps: Vec<usize>, power_fractions: Vec<f64>, doppler: DopplerModel) -> Result<Self> {
        if delay_taps.is_empty() {
            return Err(Error::InvalidProfile("no paths".into()));
        }
        if delay_taps.len() != power_fractions.len() {
            return Err(Error::InvalidProfile(format!(
                "{} delays but {} powers",
                delay_taps.len(),
                power_fractions.len()
            )));
        }
        if power_fractions.iter().any(|p| !(p.is_finite() && *p >= 0.0)) {
            return Err(Error::InvalidProfile("powers must be finite and >= 0".into()));
        }
        let total: f64 = power_fractions.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidProfile(format!("powers sum to {total}, expected 1")));
        }
        let mut sorted = delay_taps.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidProfile("delay indices must be distinct".into()));
        }
        match &doppler {
            DopplerModel::List { hz } if hz.is_empty() => {
                return Err(Error::InvalidProfile("empty Doppler list".into()))
            }
            DopplerModel::UniformCosine { nu_max } if !(nu_max.is_finite() && *nu_max >= 0.0) => {
                return Err(Error::InvalidProfile(format!("nu_max = {nu_max}")))
            }
            _ => {}
        }
        Ok(Self { delay_taps, power_fractions, doppler })
    }

    /// `count` paths at delay bins `delays` with equal power.
    pub fn equal(delays: Vec<usize>, doppler: DopplerModel) -> Result<Self> {
        let p = 1.0 / delays.len().max(1) as f64;
        let powers = vec![p; delays.len()];
        Self::new(delays, powers, doppler)
    }

    /// Path `dominant` holds `fraction` of the power; the rest split the remainder equally.
    pub fn dominant(delays: Vec<usize>, dominant: usize, fraction: f64, doppler: DopplerModel) -> Result<Self> {
        let count = delays.len();
        if dominant >= count {
            return Err(Error::InvalidProfile(format!("dominant tap {dominant} of {count}")));
        }
        if !(0.0..=1.0).contains(&fraction) || (count == 1 && fraction != 1.0) {
            return Err(Error::InvalidProfile(format!("dominant fraction {fraction}")));
        }
        let rest = if count > 1 { (1.0 - fraction) / (count - 1) as f64 } else { 0.0 };
        let powers = (0..count).map(|i| if i == dominant { fraction } else { rest }).collect();
        Self::new(delays, powers, doppler)
    }

    pub fn path_count(&self) -> usize {
        self.delay_taps.len()
    }

    pub fn delay_taps(&self) -> &[usize] {
        &self.delay_taps
    }

    pub fn power_fractions(&self) -> &[f64] {
        &self.power_fractions
    }

    pub fn doppler(&self) -> &DopplerModel {
        &self.doppler
    }

    pub fn max_delay(&self) -> usize {
        self.delay_taps.iter().copied().max().unwrap_or(0)
    }
}

/// One Doppler draw from `model`.
pub fn sample_doppler<R: Rng + ?Sized>(model: &DopplerModel, rng: &mut R) -> f64 {
    match model {
        DopplerModel::None => 0.0,
        DopplerModel::List { hz } => hz[rng.random_range(0..hz.len())],
        DopplerModel::UniformCosine { nu_max } => {
            if *nu_max == 0.0 {
                return 0.0;
            }
            let phi: f64 = rng.random::<f64>() * 2.0 * PI;
            nu_max * phi.cos()
        }
    }
}

/// `CN(0, σ²)` sample.
pub fn complex_normal<T: Real, R: Rng + ?Sized>(variance: f64, rng: &mut R) -> Complex<T> {
    let s = (variance / 2.0).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(T::of(s * re), T::of(s * im))
}

/// Draws one realization of a link: `CN(0, σ_p²)` gains at the profile's delays.
pub fn sample_link_paths<T: Real, R: Rng + ?Sized>(
    profile: &LinkProfile,
    grid: &DdGrid,
    rng: &mut R,
) -> Vec<PathTap<T>> {
    let dt = grid.delay_resolution();
    profile
        .delay_taps
        .iter()
        .zip(&profile.power_fractions)
        .map(|(&d, &p)| PathTap {
            gain: complex_normal(p, rng),
            delay: d as f64 * dt,
            doppler: sample_doppler(&profile.doppler, rng),
        })
        .collect()
}
