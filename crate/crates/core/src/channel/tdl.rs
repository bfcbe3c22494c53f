use std::collections::BTreeMap;

use super::profile::{DopplerModel, LinkProfile};
use crate::dd::DdGrid;
use crate::error::{Error, Result};

/// Shipped TDL-C table: one `normalized_delay power_db` pair per line, `#` comments.
pub const TDL_C_TABLE: &str = include_str!("../../data/tdl_c.txt");

const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Normalized tapped-delay-line table.
#[derive(Debug, Clone, PartialEq)]
pub struct TdlTable {
    /// `(normalized delay, power in dB)`
    pub taps: Vec<(f64, f64)>,
}

impl TdlTable {
    pub fn parse(text: &str) -> Result<Self> {
        let mut taps = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            let mut next = |what: &str| -> Result<f64> {
                fields
                    .next()
                    .ok_or_else(|| Error::Parse { line: i + 1, message: format!("missing {what}") })?
                    .parse::<f64>()
                    .map_err(|e| Error::Parse { line: i + 1, message: format!("{what}: {e}") })
            };
            let delay = next("delay")?;
            let power = next("power")?;
            if delay < 0.0 {
                return Err(Error::Parse { line: i + 1, message: "negative delay".into() });
            }
            taps.push((delay, power));
        }
        if taps.is_empty() {
            return Err(Error::Parse { line: 0, message: "empty table".into() });
        }
        Ok(Self { taps })
    }

    pub fn tdl_c() -> Self {
        Self::parse(TDL_C_TABLE).expect("shipped TDL-C table parses")
    }

    /// Scales delays by `delay_spread`, rounds to the nearest delay bin, sums
    /// the linear power of taps landing in the same bin, and renormalizes.
    pub fn quantize(&self, delay_spread: f64, grid: &DdGrid, doppler: DopplerModel) -> Result<LinkProfile> {
        if !(delay_spread.is_finite() && delay_spread > 0.0) {
            return Err(Error::InvalidProfile(format!("delay spread {delay_spread}")));
        }
        let mut bins: BTreeMap<usize, f64> = BTreeMap::new();
        for &(norm, db) in &self.taps {
            let bin = (norm * delay_spread * grid.bandwidth()).round() as usize;
            if bin >= grid.m() {
                return Err(Error::DelayOverflow { index: bin, bins: grid.m() });
            }
            *bins.entry(bin).or_insert(0.0) += 10f64.powf(db / 10.0);
        }
        let total: f64 = bins.values().sum();
        let (delays, powers): (Vec<usize>, Vec<f64>) = bins.into_iter().map(|(b, p)| (b, p / total)).unzip();
        LinkProfile::new(delays, powers, doppler)
    }
}

/// TDL-C link quantized to `grid`, with uniform-cosine Doppler up to `nu_max`.
pub fn tdl_c_profile(delay_spread: f64, grid: &DdGrid, nu_max: f64) -> Result<LinkProfile> {
    TdlTable::tdl_c().quantize(delay_spread, grid, DopplerModel::UniformCosine { nu_max })
}

/// `f_c·v/c` for a speed in m/s.
pub fn max_doppler(carrier_hz: f64, speed_mps: f64) -> f64 {
    carrier_hz * speed_mps / SPEED_OF_LIGHT
}
