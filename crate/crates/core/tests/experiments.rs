use proptest::prelude::*;
use ris_otfs::experiments::{
    binomial_stderr, config_from_csv, emit_results, parse_config, read_rows, run, ExperimentConfig, MeanEstimate,
    Policy, ResultRow, ResultTable, Scenario, HEADER,
};

fn small(scenario: Scenario) -> ExperimentConfig {
    let text = match scenario {
        Scenario::GainSweep => "scenario = \"gain_sweep\"\nelements = [2, 4]\nrealizations = 6\n[grid]\nm = 8\nn = 8\n",
        Scenario::Convergence => "scenario = \"convergence\"\nelements = [4]\nrealizations = 5\n[grid]\nm = 8\nn = 8\n",
        Scenario::BerSweep => {
            "scenario = \"ber_sweep\"\nelements = [4]\nsnr_db = [0.0, 6.0]\nframes_per_point = 6\n[grid]\nm = 8\nn = 4\n"
        }
        Scenario::Tdl => {
            "scenario = \"tdl\"\nelements = [4]\nsnr_db = [0.0, 6.0]\nframes_per_point = 6\n[grid]\nm = 16\nn = 8\n[tdl]\ndelay_spread_s = 300e-9\n"
        }
    };
    parse_config(text).unwrap()
}

fn run_with_threads(cfg: &ExperimentConfig, threads: usize) -> String {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
    pool.install(|| run(cfg)).unwrap().to_csv_string()
}

#[test]
fn output_is_independent_of_worker_count() {
    for s in Scenario::ALL {
        let cfg = small(s);
        let one = run_with_threads(&cfg, 1);
        assert_eq!(one, run_with_threads(&cfg, 1), "{s}");
        assert_eq!(one, run_with_threads(&cfg, 3), "{s}");
    }
}

#[test]
fn master_seed_changes_the_draws() {
    let mut cfg = small(Scenario::GainSweep);
    let a = run(&cfg).unwrap();
    cfg.master_seed = 2;
    let b = run(&cfg).unwrap();
    assert_ne!(a.rows, b.rows);
}

#[test]
fn csv_layout_and_round_trip() {
    for s in Scenario::ALL {
        let cfg = small(s);
        let table = run(&cfg).unwrap();
        let text = table.to_csv_string();
        let mut lines = text.lines().skip_while(|l| l.starts_with('#'));
        assert_eq!(lines.next().unwrap(), HEADER.join(","));
        assert!(text.starts_with("# code_version: "));
        assert!(text.contains(&format!("# master_seed: {}\n", cfg.master_seed)));
        assert_eq!(config_from_csv(&text).unwrap(), cfg);
        let rows = read_rows(&text).unwrap();
        assert_eq!(rows.len(), table.rows.len());
        for r in &rows {
            assert_eq!(r.scenario, s.name());
            assert!(r.stderr >= 0.0, "{r:?}");
            assert!(r.value.is_finite(), "{r:?}");
        }
        let mut sorted = table.clone();
        sorted.sort();
        assert_eq!(rows, sorted.rows);
    }
}

#[test]
fn emitted_file_matches_string_output() {
    let table = run(&small(Scenario::Convergence)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    emit_results(&table, &path).unwrap();
    assert_eq!(std::fs::read_to_string(&path).unwrap(), table.to_csv_string());
}

#[test]
fn gain_sweep_rows_cover_every_point_and_policy() {
    let cfg = small(Scenario::GainSweep);
    let table = run(&cfg).unwrap();
    for &l in &cfg.elements {
        for p in Policy::ALL {
            let lin = table.find(l as f64, p.name(), "gain").unwrap();
            let db = table.find(l as f64, p.name(), "gain_db").unwrap();
            assert_eq!(lin.x_name, "elements");
            assert!((db.value - 10.0 * lin.value.log10()).abs() < 1e-12);
        }
        let opt = table.find(l as f64, "optimized", "gain").unwrap().value;
        assert!(opt >= table.find(l as f64, "scp", "gain").unwrap().value);
        assert!(opt >= table.find(l as f64, "random", "gain").unwrap().value);
    }
    assert_eq!(table.rows.len(), cfg.elements.len() * 3 * 2);
}

#[test]
fn convergence_trace_is_monotone_and_normalized() {
    let cfg = small(Scenario::Convergence);
    let table = run(&cfg).unwrap();
    let series = table.series("optimized", "normalized_objective_L4");
    assert_eq!(series.len(), cfg.max_iterations + 1);
    for (i, r) in series.iter().enumerate() {
        assert_eq!(r.x_value, i as f64);
        assert!(r.value > 0.0 && r.value <= 1.0 + 1e-12);
    }
    for w in series.windows(2) {
        assert!(w[1].value >= w[0].value - 1e-12);
    }
}

#[test]
fn ber_rows_are_rates_with_binomial_errors() {
    let cfg = small(Scenario::BerSweep);
    let table = run(&cfg).unwrap();
    let bits = (cfg.frames_per_point * cfg.dd_grid().len() * 2) as u64;
    for p in Policy::ALL {
        for &snr in &cfg.snr_db {
            let ber = table.find(snr, p.name(), "ber_L4").unwrap();
            let fer = table.find(snr, p.name(), "fer_L4").unwrap();
            assert!((0.0..=1.0).contains(&ber.value) && (0.0..=1.0).contains(&fer.value));
            assert!(fer.value >= ber.value);
            assert!((ber.stderr - binomial_stderr(ber.value, bits)).abs() < 1e-15);
            assert!((fer.stderr - binomial_stderr(fer.value, cfg.frames_per_point as u64)).abs() < 1e-15);
        }
    }
}

#[test]
fn dropping_a_policy_leaves_the_others_unchanged() {
    for s in [Scenario::GainSweep, Scenario::BerSweep] {
        let full = small(s);
        let mut partial = full.clone();
        partial.policies = vec![Policy::Random];
        let a = run(&full).unwrap();
        let b = run(&partial).unwrap();
        let random: Vec<&ResultRow> = a.rows.iter().filter(|r| r.policy == "random").collect();
        assert_eq!(random, b.rows.iter().collect::<Vec<_>>(), "{s}");
    }
}

#[test]
fn mean_estimate_matches_textbook_formulas() {
    let m = MeanEstimate::from_samples(&[1.0, 2.0, 3.0, 6.0]);
    assert_eq!(m.mean, 3.0);
    assert!((m.stderr - (14.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-15);
    let (db, se) = MeanEstimate { mean: 10.0, stderr: 1.0, count: 2 }.to_db();
    assert!((db - 10.0).abs() < 1e-12);
    assert!((se - 10.0 / std::f64::consts::LN_10 / 10.0).abs() < 1e-12);
    assert_eq!(binomial_stderr(0.0, 100), 0.0);
}

proptest! {
    #[test]
    fn result_rows_survive_csv(values in proptest::collection::vec((-1e6f64..1e6, -1e3f64..1e3, 0f64..10.0), 1..20)) {
        let cfg = small(Scenario::GainSweep);
        let mut table = ResultTable::new(&cfg);
        for (i, (x, v, se)) in values.iter().enumerate() {
            table.push("elements", *x, "random", &format!("m{i}"), *v, *se);
        }
        table.sort();
        let back = read_rows(&table.to_csv_string()).unwrap();
        prop_assert_eq!(back, table.rows);
    }
}

#[test]
fn ber_falls_with_snr_and_follows_policy_ranking() {
    let cfg = parse_config(
        "scenario = \"ber_sweep\"\nelements = [8]\nsnr_db = [-8.0, -4.0, 0.0]\nframes_per_point = 1000\n[grid]\nm = 8\nn = 4\n",
    )
    .unwrap();
    let table = run(&cfg).unwrap();
    let curve =
        |p: &str| -> Vec<(f64, f64)> { table.series(p, "ber_L8").iter().map(|r| (r.value, r.stderr)).collect() };
    let beyond = |(a, sa): (f64, f64), (b, sb): (f64, f64)| a - b > 3.0 * (sa * sa + sb * sb).sqrt();
    let [opt, scp, rnd] = ["optimized", "scp", "random"].map(curve);
    for c in [&opt, &scp, &rnd] {
        for w in c.windows(2) {
            assert!(!beyond(w[1], w[0]), "BER rises with SNR: {c:?}");
        }
    }
    for i in 0..cfg.snr_db.len() {
        assert!(!beyond(opt[i], scp[i]), "optimized above scp at point {i}: {opt:?} {scp:?}");
        assert!(!beyond(scp[i], rnd[i]), "scp above random at point {i}: {scp:?} {rnd:?}");
        assert!(opt[i].0 < rnd[i].0);
    }
}
