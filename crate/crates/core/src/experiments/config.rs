//! Experiment configuration files.
//!
//! Configs are TOML. Every key is optional except `scenario`; missing keys
//! are filled with scenario-dependent defaults by [`parse_config`], and the
//! fully resolved [`ExperimentConfig`] serializes back to a TOML document that
//! parses to the same value.
//!
//! ```toml
//! scenario = "gain_sweep"
//! master_seed = 1
//! elements = [16, 32, 64, 128]
//! policies = ["optimized", "random"]
//!
//! [grid]
//! m = 32
//! n = 16
//!
//! [ris_mt]
//! delays = [0, 1, 2, 3]
//! powers = { kind = "equal" }
//! doppler = { kind = "cosine", nu_max_bins = 2.0 }
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::channel::{default_n_prime, max_doppler, DopplerModel, DopplerSharing, LinkProfile, RisLinkModel, TdlTable};
use crate::dd::DdGrid;
use crate::error::{Error, Result};
use crate::link::Detector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    GainSweep,
    Convergence,
    BerSweep,
    Tdl,
}

impl Scenario {
    pub const ALL: [Scenario; 4] = [Self::GainSweep, Self::Convergence, Self::BerSweep, Self::Tdl];

    pub fn name(self) -> &'static str {
        match self {
            Self::GainSweep => "gain_sweep",
            Self::Convergence => "convergence",
            Self::BerSweep => "ber_sweep",
            Self::Tdl => "tdl",
        }
    }

    /// Stable identifier mixed into per-trial RNG streams.
    pub fn id(self) -> u64 {
        match self {
            Self::GainSweep => 1,
            Self::Convergence => 2,
            Self::BerSweep => 3,
            Self::Tdl => 4,
        }
    }

    fn is_ber(self) -> bool {
        matches!(self, Self::BerSweep | Self::Tdl)
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::config("scenario", format!("unknown scenario `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Policy {
    Optimized,
    Scp,
    Random,
}

impl Policy {
    pub const ALL: [Policy; 3] = [Self::Optimized, Self::Scp, Self::Random];

    pub fn name(self) -> &'static str {
        match self {
            Self::Optimized => "optimized",
            Self::Scp => "scp",
            Self::Random => "random",
        }
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Average power split across a link's paths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PowerSpec {
    Equal,
    /// `fraction` of the power on path `index`, the rest shared equally.
    Dominant {
        index: usize,
        fraction: f64,
    },
    Explicit {
        values: Vec<f64>,
    },
}

/// Doppler statistics of a link's paths, in Doppler bins of `1/(NT)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DopplerSpec {
    None,
    /// Uniform draw from a list of (possibly fractional) bins.
    Bins {
        values: Vec<f64>,
    },
    /// `ν = ν_max cos φ` with `φ` uniform.
    Cosine {
        nu_max_bins: f64,
    },
}

impl DopplerSpec {
    fn to_model(&self, grid: &DdGrid) -> DopplerModel {
        let res = grid.doppler_resolution();
        match self {
            Self::None => DopplerModel::None,
            Self::Bins { values } => DopplerModel::List { hz: values.iter().map(|b| b * res).collect() },
            Self::Cosine { nu_max_bins } => DopplerModel::UniformCosine { nu_max: nu_max_bins * res },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkConfig {
    /// Integer delay taps in units of `1/(MΔf)`.
    pub delays: Vec<usize>,
    pub powers: PowerSpec,
    pub doppler: DopplerSpec,
}

impl LinkConfig {
    fn profile(&self, grid: &DdGrid, key: &str) -> Result<LinkProfile> {
        let doppler = self.doppler.to_model(grid);
        let n = self.delays.len();
        let powers = match &self.powers {
            PowerSpec::Equal => vec![1.0 / n.max(1) as f64; n],
            PowerSpec::Dominant { index, fraction } => {
                return LinkProfile::dominant(self.delays.clone(), *index, *fraction, doppler)
                    .map_err(|e| Error::config(format!("{key}.powers"), e.to_string()));
            }
            PowerSpec::Explicit { values } => values.clone(),
        };
        LinkProfile::new(self.delays.clone(), powers, doppler)
            .map_err(|e| Error::config(format!("{key}.powers"), e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub m: usize,
    pub n: usize,
    pub delta_f: f64,
}

/// 3GPP TDL-C link parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TdlConfig {
    pub carrier_hz: f64,
    pub speed_kmh: f64,
    pub delay_spread_s: f64,
}

impl TdlConfig {
    pub fn nu_max(&self) -> f64 {
        max_doppler(self.carrier_hz, self.speed_kmh / 3.6)
    }
}

impl Default for TdlConfig {
    fn default() -> Self {
        Self { carrier_hz: 4e9, speed_kmh: 500.0, delay_spread_s: 100e-9 }
    }
}

/// A validated experiment with every parameter resolved.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub scenario: Scenario,
    pub master_seed: u64,
    /// RIS element counts `L` to sweep.
    pub elements: Vec<usize>,
    pub policies: Vec<Policy>,
    /// SNR points `10 log10(1/σ₀²)`, dB.
    pub snr_db: Vec<f64>,
    /// Channel realizations per point (gain sweep, convergence).
    pub realizations: usize,
    /// Frames per SNR point; every frame draws a fresh channel (BER scenarios).
    pub frames_per_point: usize,
    pub epsilon: f64,
    pub max_iterations: usize,
    /// Optimizer starts per channel; the first is all-ones.
    pub multistart: usize,
    pub n_prime_max: usize,
    pub modulation_order: usize,
    pub detector: Detector,
    pub doppler_sharing: DopplerSharing,
    pub grid: GridConfig,
    pub bs_ris: LinkConfig,
    pub ris_mt: LinkConfig,
    /// Both links follow TDL-C when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tdl: Option<TdlConfig>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    scenario: Option<Scenario>,
    master_seed: Option<u64>,
    elements: Option<Vec<usize>>,
    policies: Option<Vec<Policy>>,
    snr_db: Option<Vec<f64>>,
    realizations: Option<usize>,
    frames_per_point: Option<usize>,
    epsilon: Option<f64>,
    max_iterations: Option<usize>,
    multistart: Option<usize>,
    n_prime_max: Option<usize>,
    modulation_order: Option<usize>,
    detector: Option<Detector>,
    doppler_sharing: Option<DopplerSharing>,
    grid: Option<RawGrid>,
    bs_ris: Option<RawLink>,
    ris_mt: Option<RawLink>,
    tdl: Option<RawTdl>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    m: Option<usize>,
    n: Option<usize>,
    delta_f: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLink {
    delays: Option<Vec<usize>>,
    powers: Option<PowerSpec>,
    doppler: Option<DopplerSpec>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTdl {
    carrier_hz: Option<f64>,
    speed_kmh: Option<f64>,
    delay_spread_s: Option<f64>,
}

/// Command-line values that replace their config counterparts.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    /// Fills a missing `scenario`; a conflicting one is an error.
    pub scenario: Option<Scenario>,
    pub master_seed: Option<u64>,
    /// Sets `realizations` or, for BER scenarios, `frames_per_point`.
    pub realizations: Option<usize>,
}

/// Parses and validates a config document.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    parse_config_with(text, &Overrides::default())
}

pub fn parse_config_with(text: &str, overrides: &Overrides) -> Result<ExperimentConfig> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| {
        let line = e.span().map(|s| text[..s.start].lines().count().max(1)).unwrap_or(0);
        Error::Parse { line, message: e.message().to_string() }
    })?;
    resolve(raw, overrides)
}

pub fn load_config(path: &std::path::Path, overrides: &Overrides) -> Result<ExperimentConfig> {
    parse_config_with(&std::fs::read_to_string(path)?, overrides)
}

/// Built-in desk-scale configuration of a scenario.
pub fn default_config(scenario: Scenario) -> ExperimentConfig {
    resolve(RawConfig { scenario: Some(scenario), ..Default::default() }, &Overrides::default())
        .expect("defaults are valid")
}

fn resolve(raw: RawConfig, overrides: &Overrides) -> Result<ExperimentConfig> {
    let scenario = match (raw.scenario, overrides.scenario) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::config("scenario", format!("config says `{a}` but `{b}` was requested")));
        }
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => return Err(Error::config("scenario", "missing required field")),
    };
    let tdl_scenario = scenario == Scenario::Tdl;
    let g = raw.grid.unwrap_or_default();
    let (m, n) = match scenario {
        Scenario::GainSweep | Scenario::Convergence => (32, 16),
        Scenario::BerSweep => (16, 8),
        Scenario::Tdl => (128, 16),
    };
    let grid = GridConfig { m: g.m.unwrap_or(m), n: g.n.unwrap_or(n), delta_f: g.delta_f.unwrap_or(15e3) };
    let dd = DdGrid::new(grid.m, grid.n, grid.delta_f).map_err(|e| Error::config("grid", e.to_string()))?;

    let tdl = match raw.tdl {
        Some(t) => Some(t),
        None if tdl_scenario => Some(RawTdl::default()),
        None => None,
    }
    .map(|t| {
        let d = TdlConfig::default();
        TdlConfig {
            carrier_hz: t.carrier_hz.unwrap_or(d.carrier_hz),
            speed_kmh: t.speed_kmh.unwrap_or(d.speed_kmh),
            delay_spread_s: t.delay_spread_s.unwrap_or(d.delay_spread_s),
        }
    });

    let ber = scenario.is_ber();
    let bs_ris = resolve_link(raw.bs_ris, DopplerSpec::None);
    let ris_mt = resolve_link(raw.ris_mt, DopplerSpec::Cosine { nu_max_bins: 2.0 });
    let cfg =
        ExperimentConfig {
            scenario,
            master_seed: overrides.master_seed.or(raw.master_seed).unwrap_or(1),
            elements: raw.elements.unwrap_or_else(|| match scenario {
                Scenario::GainSweep => vec![4, 8, 16, 32, 64, 128],
                Scenario::Convergence => vec![32],
                Scenario::BerSweep | Scenario::Tdl => vec![16],
            }),
            policies: raw.policies.unwrap_or_else(|| Policy::ALL.to_vec()),
            snr_db: raw.snr_db.unwrap_or_else(|| {
                if ber {
                    vec![-10.0, -8.0, -6.0, -4.0, -2.0, 0.0, 2.0]
                } else {
                    Vec::new()
                }
            }),
            realizations: overrides
                .realizations
                .filter(|_| !ber)
                .or(raw.realizations)
                .unwrap_or(if scenario == Scenario::Convergence { 100 } else { 500 }),
            frames_per_point: overrides
                .realizations
                .filter(|_| ber)
                .or(raw.frames_per_point)
                .unwrap_or(if tdl_scenario { 400 } else { 800 }),
            epsilon: raw.epsilon.unwrap_or(1e-4),
            max_iterations: raw.max_iterations.unwrap_or(15),
            multistart: raw.multistart.unwrap_or(1),
            n_prime_max: raw.n_prime_max.unwrap_or_else(|| default_n_prime(grid.n)),
            modulation_order: raw.modulation_order.unwrap_or(4),
            detector: raw.detector.unwrap_or(if tdl_scenario { Detector::Circulant } else { Detector::Dense }),
            doppler_sharing: raw.doppler_sharing.unwrap_or_default(),
            grid,
            bs_ris,
            ris_mt,
            tdl,
        };
    validate(&cfg, &dd)?;
    Ok(cfg)
}

fn resolve_link(raw: Option<RawLink>, doppler: DopplerSpec) -> LinkConfig {
    let raw = raw.unwrap_or_default();
    LinkConfig {
        delays: raw.delays.unwrap_or_else(|| vec![0, 1, 2, 3]),
        powers: raw.powers.unwrap_or(PowerSpec::Equal),
        doppler: raw.doppler.unwrap_or(doppler),
    }
}

fn validate(cfg: &ExperimentConfig, grid: &DdGrid) -> Result<()> {
    if cfg.master_seed > i64::MAX as u64 {
        return Err(Error::config("master_seed", "must fit in a TOML integer (≤ 2^63 − 1)"));
    }
    if cfg.elements.is_empty() || cfg.elements.contains(&0) {
        return Err(Error::config("elements", "need at least one count, all ≥ 1"));
    }
    if cfg.policies.is_empty() {
        return Err(Error::config("policies", "need at least one policy"));
    }
    let mut seen = cfg.policies.clone();
    seen.sort();
    seen.dedup();
    if seen.len() != cfg.policies.len() {
        return Err(Error::config("policies", "duplicate policy"));
    }
    if cfg.realizations == 0 {
        return Err(Error::config("realizations", "must be ≥ 1"));
    }
    if cfg.frames_per_point == 0 {
        return Err(Error::config("frames_per_point", "must be ≥ 1"));
    }
    if cfg.scenario.is_ber() && cfg.snr_db.is_empty() {
        return Err(Error::config("snr_db", "must be nonempty for BER scenarios"));
    }
    if let Some(x) = cfg.snr_db.iter().find(|x| !x.is_finite()) {
        return Err(Error::config("snr_db", format!("non-finite value {x}")));
    }
    if !(cfg.epsilon > 0.0 && cfg.epsilon.is_finite()) {
        return Err(Error::config("epsilon", "must be positive and finite"));
    }
    if cfg.max_iterations == 0 {
        return Err(Error::config("max_iterations", "must be ≥ 1"));
    }
    if cfg.multistart == 0 {
        return Err(Error::config("multistart", "must be ≥ 1"));
    }
    if 2 * cfg.n_prime_max >= cfg.grid.n {
        return Err(Error::config("n_prime_max", format!("need 2·N' < N = {}", cfg.grid.n)));
    }
    crate::dd::QamConstellation::<f64>::new(cfg.modulation_order)
        .map_err(|e| Error::config("modulation_order", e.to_string()))?;
    if cfg.tdl.is_none() && cfg.scenario == Scenario::Tdl {
        return Err(Error::config("tdl", "required for the tdl scenario"));
    }
    if let Some(t) = &cfg.tdl {
        for (key, v) in
            [("tdl.carrier_hz", t.carrier_hz), ("tdl.speed_kmh", t.speed_kmh), ("tdl.delay_spread_s", t.delay_spread_s)]
        {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::config(key, "must be nonnegative and finite"));
            }
        }
    }
    let model = cfg.link_model()?;
    if model.max_cascaded_delay() >= grid.m() {
        return Err(Error::config(
            "ris_mt.delays",
            format!("cascaded delay {} does not fit in M = {}", model.max_cascaded_delay(), grid.m()),
        ));
    }
    Ok(())
}

impl ExperimentConfig {
    pub fn dd_grid(&self) -> DdGrid {
        DdGrid::new(self.grid.m, self.grid.n, self.grid.delta_f).expect("validated grid")
    }

    /// Link statistics: TDL-C on both links if `tdl` is set, else the two link sections.
    pub fn link_model(&self) -> Result<RisLinkModel> {
        let grid = DdGrid::new(self.grid.m, self.grid.n, self.grid.delta_f)
            .map_err(|e| Error::config("grid", e.to_string()))?;
        let (bs_ris, ris_mt) = match &self.tdl {
            Some(t) => {
                let table = TdlTable::tdl_c();
                let q = |doppler| {
                    table.quantize(t.delay_spread_s, &grid, doppler).map_err(|e| Error::config("tdl", e.to_string()))
                };
                (q(DopplerModel::None)?, q(DopplerModel::UniformCosine { nu_max: t.nu_max() })?)
            }
            None => (self.bs_ris.profile(&grid, "bs_ris")?, self.ris_mt.profile(&grid, "ris_mt")?),
        };
        Ok(RisLinkModel::new(bs_ris, ris_mt, self.doppler_sharing))
    }

    /// TOML document that parses back to `self`.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is serializable")
    }

    pub fn is_ber(&self) -> bool {
        self.scenario.is_ber()
    }
}
