//! Scenario runners.
//!
//! Trials run in parallel on the current rayon pool and are collected in trial
//! order before any floating-point reduction, so results do not depend on the
//! number of workers.

use rayon::prelude::*;

use super::config::{ExperimentConfig, Policy, Scenario};
use super::results::ResultTable;
use super::seed::{substream_rng, Substream};
use crate::channel::{kernel_energy_captured, CascadedChannel, RisLinkModel, SparseChannelMatrix};
use crate::dd::{DdGrid, QamConstellation};
use crate::error::{Error, Result};
use crate::link::{effective_channel, run_frame, MmseEqualizer, NoiseModel, TrialResult};
use crate::optim::{
    gram_matrix, objective, optimize_multistart, optimize_phases, random_phases, scp_phases, GramMatrix,
    OptimizerOptions, PhaseVector,
};

/// Stopping rule of the reference run that defines the converged objective.
pub const REFERENCE_OPTIONS: OptimizerOptions = OptimizerOptions { epsilon: 1e-12, max_iterations: 1000 };

/// Dispatches on `cfg.scenario`.
pub fn run(cfg: &ExperimentConfig) -> Result<ResultTable> {
    match cfg.scenario {
        Scenario::GainSweep => run_gain_sweep(cfg),
        Scenario::Convergence => run_convergence(cfg),
        Scenario::BerSweep => run_ber_sweep(cfg),
        Scenario::Tdl => run_tdl(cfg),
    }
}

/// Sample mean and standard error of the mean.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MeanEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub count: usize,
}

impl MeanEstimate {
    pub fn from_samples(samples: &[f64]) -> Self {
        let n = samples.len();
        if n == 0 {
            return Self { mean: f64::NAN, stderr: f64::NAN, count: 0 };
        }
        let mean = samples.iter().sum::<f64>() / n as f64;
        let stderr = if n > 1 {
            let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
            (var / n as f64).sqrt()
        } else {
            0.0
        };
        Self { mean, stderr, count: n }
    }

    /// `10 log10(mean)` with a first-order standard error.
    pub fn to_db(self) -> (f64, f64) {
        (10.0 * self.mean.log10(), 10.0 / std::f64::consts::LN_10 * self.stderr / self.mean)
    }
}

/// Binomial standard error of an error rate estimated from `trials` events.
pub fn binomial_stderr(rate: f64, trials: u64) -> f64 {
    if trials == 0 {
        return f64::NAN;
    }
    (rate * (1.0 - rate) / trials as f64).sqrt()
}

fn options(cfg: &ExperimentConfig) -> OptimizerOptions {
    OptimizerOptions { epsilon: cfg.epsilon, max_iterations: cfg.max_iterations }
}

struct Trial {
    channel: CascadedChannel<f64>,
    matrices: Vec<SparseChannelMatrix<f64>>,
    gram: GramMatrix<f64>,
}

fn draw_trial(cfg: &ExperimentConfig, model: &RisLinkModel, point: usize, trial: usize) -> Result<Trial> {
    let grid = cfg.dd_grid();
    let elements = cfg.elements[point];
    let mut rng = substream_rng(cfg.master_seed, cfg.scenario, point, trial, Substream::Channel);
    let channel = model.sample::<f64, _>(elements, &grid, &mut rng)?;
    let matrices = channel.matrices(cfg.n_prime_max)?;
    let gram = gram_matrix(&matrices)?;
    Ok(Trial { channel, matrices, gram })
}

fn policy_phases(
    cfg: &ExperimentConfig,
    policy: Policy,
    trial: &Trial,
    point: usize,
    index: usize,
) -> Result<PhaseVector<f64>> {
    let mut rng = substream_rng(cfg.master_seed, cfg.scenario, point, index, Substream::Policy(policy));
    let l = trial.gram.size();
    Ok(match policy {
        Policy::Optimized => optimize_multistart(&trial.gram, cfg.multistart, &options(cfg), &mut rng)?.0,
        Policy::Scp => scp_phases(&trial.channel),
        Policy::Random => random_phases(l, &mut rng),
    })
}

fn common_metadata(table: &mut ResultTable, cfg: &ExperimentConfig) -> Result<RisLinkModel> {
    let grid = cfg.dd_grid();
    let model = cfg.link_model()?;
    table.meta("grid", format!("M={} N={} delta_f={}", grid.m(), grid.n(), grid.subcarrier_spacing()));
    table.meta("delay_resolution_s", grid.delay_resolution());
    table.meta("doppler_resolution_hz", grid.doppler_resolution());
    table.meta("kernel_energy_captured_worst", kernel_energy_captured(0.5, grid.n(), cfg.n_prime_max));
    for (name, p) in [("bs_ris", &model.bs_ris), ("ris_mt", &model.ris_mt)] {
        table.meta(
            &format!("{name}_profile"),
            format!("delays={:?} powers={:?} doppler={:?}", p.delay_taps(), p.power_fractions(), p.doppler()),
        );
    }
    table.meta("gain_normalization", "||sum theta_i H_i||_F^2 / (M N)");
    Ok(model)
}

/// Average channel gain per `L` and policy, linear and in dB.
pub fn run_gain_sweep(cfg: &ExperimentConfig) -> Result<ResultTable> {
    expect(cfg, &[Scenario::GainSweep])?;
    let mut table = ResultTable::new(cfg);
    let model = common_metadata(&mut table, cfg)?;
    let mn = cfg.dd_grid().len() as f64;
    for (point, &l) in cfg.elements.iter().enumerate() {
        let gains: Vec<Vec<f64>> = (0..cfg.realizations)
            .into_par_iter()
            .map(|t| {
                let trial = draw_trial(cfg, &model, point, t)?;
                cfg.policies
                    .iter()
                    .map(|&p| Ok(objective(&trial.gram, &policy_phases(cfg, p, &trial, point, t)?) / mn))
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<_>>()?;
        for (j, policy) in cfg.policies.iter().enumerate() {
            let samples: Vec<f64> = gains.iter().map(|g| g[j]).collect();
            let est = MeanEstimate::from_samples(&samples);
            let (db, db_se) = est.to_db();
            table.push("elements", l as f64, policy.name(), "gain", est.mean, est.stderr);
            table.push("elements", l as f64, policy.name(), "gain_db", db, db_se);
        }
    }
    table.sort();
    Ok(table)
}

/// Per-iteration objective of the all-ones-start optimizer, normalized by the
/// converged objective of the same channel and averaged over realizations.
///
/// Runs that stop early hold their last value. The converged objective is the
/// larger of the run's final value and a continuation under
/// [`REFERENCE_OPTIONS`].
pub fn run_convergence(cfg: &ExperimentConfig) -> Result<ResultTable> {
    expect(cfg, &[Scenario::Convergence])?;
    let mut table = ResultTable::new(cfg);
    let model = common_metadata(&mut table, cfg)?;
    table.meta(
        "reference_stop",
        format!("epsilon={} max_iterations={}", REFERENCE_OPTIONS.epsilon, REFERENCE_OPTIONS.max_iterations),
    );
    let opts = options(cfg);
    for (point, &l) in cfg.elements.iter().enumerate() {
        let runs: Vec<(Vec<f64>, usize)> = (0..cfg.realizations)
            .into_par_iter()
            .map(|t| {
                let trial = draw_trial(cfg, &model, point, t)?;
                let (theta, trace) = optimize_phases(&trial.gram, &PhaseVector::ones(l), &opts)?;
                let (_, reference) = optimize_phases(&trial.gram, &theta, &REFERENCE_OPTIONS)?;
                let best = trace.final_objective().max(reference.final_objective());
                let mut curve: Vec<f64> = trace.objective_per_iteration.iter().map(|g| g / best).collect();
                let last = *curve.last().expect("trace has iteration 0");
                curve.resize(cfg.max_iterations + 1, last);
                Ok((curve, trace.iterations_run))
            })
            .collect::<Result<_>>()?;
        let metric = format!("normalized_objective_L{l}");
        for j in 0..=cfg.max_iterations {
            let samples: Vec<f64> = runs.iter().map(|r| r.0[j]).collect();
            let est = MeanEstimate::from_samples(&samples);
            table.push("iteration", j as f64, Policy::Optimized.name(), &metric, est.mean, est.stderr);
        }
        let iters: Vec<f64> = runs.iter().map(|r| r.1 as f64).collect();
        let est = MeanEstimate::from_samples(&iters);
        table.meta(
            &format!("iterations_run_L{l}"),
            format!("mean={} max={}", est.mean, iters.iter().cloned().fold(0.0, f64::max)),
        );
    }
    table.sort();
    Ok(table)
}

/// BER and FER per SNR, policy and `L` over the configured link profiles.
pub fn run_ber_sweep(cfg: &ExperimentConfig) -> Result<ResultTable> {
    expect(cfg, &[Scenario::BerSweep])?;
    ber_table(cfg)
}

/// BER sweep with both links drawn from TDL-C.
pub fn run_tdl(cfg: &ExperimentConfig) -> Result<ResultTable> {
    expect(cfg, &[Scenario::Tdl])?;
    ber_table(cfg)
}

fn ber_table(cfg: &ExperimentConfig) -> Result<ResultTable> {
    let mut table = ResultTable::new(cfg);
    let model = common_metadata(&mut table, cfg)?;
    let grid = cfg.dd_grid();
    if let Some(t) = &cfg.tdl {
        table.meta("nu_max_hz", t.nu_max());
        table.meta("nu_max_bins", t.nu_max() / grid.doppler_resolution());
        table.meta("tdl_delay_spread_s", t.delay_spread_s);
    }
    table.meta("detector", format!("{:?}", cfg.detector).to_lowercase());
    let constellation = QamConstellation::<f64>::new(cfg.modulation_order)?;
    for (point, &l) in cfg.elements.iter().enumerate() {
        let per_frame: Vec<Vec<TrialResult>> = (0..cfg.frames_per_point)
            .into_par_iter()
            .map(|t| ber_frame(cfg, &model, &grid, &constellation, point, t))
            .collect::<Result<_>>()?;
        let np = cfg.policies.len();
        for (s, &snr) in cfg.snr_db.iter().enumerate() {
            for (j, policy) in cfg.policies.iter().enumerate() {
                let total: TrialResult = per_frame.iter().map(|f| f[s * np + j]).sum();
                let ber = total.ber();
                let fer = total.fer();
                table.push(
                    "snr_db",
                    snr,
                    policy.name(),
                    &format!("ber_L{l}"),
                    ber,
                    binomial_stderr(ber, total.bits_total),
                );
                table.push(
                    "snr_db",
                    snr,
                    policy.name(),
                    &format!("fer_L{l}"),
                    fer,
                    binomial_stderr(fer, total.frames_total),
                );
            }
        }
    }
    table.sort();
    Ok(table)
}

/// One channel draw, every policy and SNR on the same bits and noise.
fn ber_frame(
    cfg: &ExperimentConfig,
    model: &RisLinkModel,
    grid: &DdGrid,
    constellation: &QamConstellation<f64>,
    point: usize,
    t: usize,
) -> Result<Vec<TrialResult>> {
    let trial = draw_trial(cfg, model, point, t)?;
    let channels = cfg
        .policies
        .iter()
        .map(|&p| effective_channel(&trial.matrices, &policy_phases(cfg, p, &trial, point, t)?))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::with_capacity(cfg.snr_db.len() * channels.len());
    for &snr in &cfg.snr_db {
        let noise = NoiseModel::from_snr_db(snr);
        for eff in &channels {
            if eff.grid() != grid {
                return Err(Error::GridMismatch);
            }
            let eq = MmseEqualizer::with_detector(eff, &noise, cfg.detector)?;
            let mut rng = substream_rng(cfg.master_seed, cfg.scenario, point, t, Substream::Data);
            out.push(run_frame(eff, &eq, constellation, &noise, &mut rng)?);
        }
    }
    Ok(out)
}

fn expect(cfg: &ExperimentConfig, allowed: &[Scenario]) -> Result<()> {
    if allowed.contains(&cfg.scenario) {
        Ok(())
    } else {
        Err(Error::config("scenario", format!("runner for {allowed:?} got `{}`", cfg.scenario)))
    }
}
