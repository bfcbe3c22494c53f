use num_complex::Complex;

use crate::dd::DdGrid;
use crate::error::{Error, Result};
use crate::scalar::{cis, Real};

use std::f64::consts::PI;

/// Normalized Doppler values this close to an integer are treated as integer.
const DOPPLER_SNAP: f64 = 1e-9;
const DELAY_SNAP: f64 = 1e-6;

/// One propagation path of a single link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathTap<T> {
    pub gain: Complex<T>,
    /// seconds
    pub delay: f64,
    /// hertz
    pub doppler: f64,
}

/// A BS-RIS path followed by an RIS-MT path, with its grid indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CascadedTap<T> {
    pub gain: Complex<T>,
    pub delay: f64,
    pub doppler: f64,
    /// Integer delay index `τ·MΔf`.
    pub l: usize,
    /// Integer part of `ν·NT`.
    pub k: i64,
    /// Fractional part of `ν·NT`, in `(−0.5, 0.5]`.
    pub k_frac: f64,
}

impl<T: Real> CascadedTap<T> {
    /// Indexes a tap with known gain, delay and Doppler against `grid`.
    pub fn new(gain: Complex<T>, delay: f64, doppler: f64, grid: &DdGrid) -> Result<Self> {
        let l = delay_index(delay, grid)?;
        if l >= grid.m() {
            return Err(Error::DelayOverflow { index: l, bins: grid.m() });
        }
        let (k, k_frac) = doppler_decompose(doppler, grid);
        Ok(Self { gain, delay, doppler, l, k, k_frac })
    }

    /// DD-domain coefficient `h·e^{−j2πντ}` of this tap.
    pub fn dd_coefficient(&self) -> Complex<T> {
        self.gain * cis::<T>(-2.0 * PI * self.doppler * self.delay)
    }
}

/// Splits `ν·NT` into an integer bin and a remainder in `(−0.5, 0.5]`.
///
/// Halves round down: `2.5 → (2, 0.5)`, `−2.5 → (−3, 0.5)`. Remainders within
/// `1e-9` of zero are snapped to exactly zero.
pub fn doppler_decompose(nu: f64, grid: &DdGrid) -> (i64, f64) {
    let x = nu * grid.frame_duration();
    let k = (x - 0.5).ceil();
    let frac = x - k;
    if frac.abs() < DOPPLER_SNAP {
        (k as i64, 0.0)
    } else {
        (k as i64, frac)
    }
}

/// Integer delay index of `delay`; fractional delays are rejected.
pub fn delay_index(delay: f64, grid: &DdGrid) -> Result<usize> {
    let x = delay * grid.bandwidth();
    let r = x.round();
    if delay < 0.0 || !x.is_finite() || (x - r).abs() > DELAY_SNAP {
        return Err(Error::FractionalDelay(delay));
    }
    Ok(r as usize)
}

/// Cascades BS-RIS path `u` with RIS-MT path `g`:
/// `h = g·u·e^{j2π ν_g τ_u}`, delays and Dopplers add.
pub fn cascade<T: Real>(u: &PathTap<T>, g: &PathTap<T>, grid: &DdGrid) -> Result<CascadedTap<T>> {
    let gain = g.gain * u.gain;
    let phase = 2.0 * PI * g.doppler * u.delay;
    let gain = if phase == 0.0 { gain } else { gain * cis::<T>(phase) };
    CascadedTap::new(gain, u.delay + g.delay, u.doppler + g.doppler, grid)
}

/// All `P·Q` cascades, BS-RIS index outer: tap `p·Q + q`.
pub fn cascade_links<T: Real>(
    u_set: &[PathTap<T>],
    g_set: &[PathTap<T>],
    grid: &DdGrid,
) -> Result<Vec<CascadedTap<T>>> {
    let mut taps = Vec::with_capacity(u_set.len() * g_set.len());
    for u in u_set {
        for g in g_set {
            taps.push(cascade(u, g, grid)?);
        }
    }
    Ok(taps)
}
