use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Args;
use fair_radii::analysis::diagnose;
use fair_radii::metric::generate_with_sizes;
use fair_radii::sor::EXACT_LIMIT;
use fair_radii::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 10)]
    n_max: usize,
    #[arg(long, default_value_t = 3)]
    t_max: u32,
    #[arg(long, default_value_t = 3)]
    k_max: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of groups; three or more run the balanced pipeline.
    #[arg(long, default_value_t = 2)]
    ell: usize,
    #[arg(long, default_value = "primal-dual")]
    solver: String,
    #[arg(long, default_value_t = 0.01)]
    epsilon: f64,
    /// Leave `runtime_ms` empty so the table is reproducible bit for bit.
    #[arg(long)]
    omit_runtime: bool,
    /// Summary JSON path; defaults to the CSV path with `.summary.json`.
    #[arg(long)]
    summary: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Debug, Serialize)]
struct BenchRecord {
    instance_id: usize,
    n: usize,
    ell: usize,
    t: u32,
    k: usize,
    alg_cost: f64,
    opt_cost: Option<f64>,
    ratio: Option<f64>,
    fair: bool,
    dcs_weight: f64,
    lemma5: Option<f64>,
    lemma6: Option<f64>,
    switch_bound: Option<bool>,
    runtime_ms: Option<f64>,
}

#[derive(Serialize)]
struct Summary {
    trials: usize,
    solver: Solver,
    alpha: f64,
    /// `48 * alpha * 3` for two groups, `60 * alpha * 3` for more.
    stated_bound: f64,
    /// Bound from the expansion, merge and supercluster factors.
    chain_bound: f64,
    oracle_runs: usize,
    max_ratio: f64,
    mean_ratio: f64,
    exact_zero_matches: usize,
    within_stated_bound: usize,
    fair: usize,
    diagnostics_passed: usize,
}

/// Group sizes, balance and budget for one trial.
fn draw(rng: &mut ChaCha8Rng, args: &BenchArgs) -> (Vec<usize>, u32, usize) {
    let k = rng.gen_range(1..=args.k_max.max(1));
    if args.ell > 2 {
        let per = rng.gen_range(1..=(args.n_max / args.ell).max(1));
        return (vec![per; args.ell], 1, k);
    }
    let t = rng.gen_range(1..=args.t_max.max(1));
    // blues within a factor t of reds and the total within n_max
    let reds = rng.gen_range(1..=args.n_max / 2);
    let blues = rng.gen_range(reds.div_ceil(t as usize)..=(reds * t as usize).min(args.n_max - reds));
    let sizes = if rng.gen_bool(0.5) { vec![reds, blues] } else { vec![blues, reds] };
    (sizes, t, k)
}

fn trial(i: usize, args: &BenchArgs, config: &SolverConfig) -> Result<BenchRecord> {
    let seed = args.seed.wrapping_add(i as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (sizes, t, k) = draw(&mut rng, args);
    let mode = if rng.gen_bool(0.5) { GenMode::EuclideanPlane } else { GenMode::RandomMetric };
    let inst = generate_with_sizes(seed, &sizes, mode, 100.0)?;
    let balanced = args.ell > 2;

    let start = Instant::now();
    let res = if balanced { balanced_cluster(&inst, k, config)? } else { fair_tk_cluster(&inst, t, k, config)? };
    let runtime = start.elapsed().as_secs_f64() * 1e3;

    let opt = if inst.len() <= EXACT_LIMIT {
        Some(if balanced { opt_balanced_bruteforce(&inst, k)? } else { opt_fair_bruteforce(&inst, t, k)? })
    } else {
        None
    };
    let diag = opt
        .as_ref()
        .map(|o| diagnose(i.to_string(), &inst, &o.clustering, &res.edges, &res.forest, res.mode));
    let opt_cost = opt.as_ref().map(|o| o.cost);
    let ratio = opt_cost.and_then(|o| match (o == 0.0, res.cost == 0.0) {
        (true, true) => None,
        (true, false) => Some(f64::INFINITY),
        _ => Some(res.cost / o),
    });
    Ok(BenchRecord {
        instance_id: i,
        n: inst.len(),
        ell: inst.ell(),
        t,
        k,
        alg_cost: res.cost,
        opt_cost,
        ratio,
        fair: res.fairness_ok,
        dcs_weight: res.dcs_weight,
        lemma5: diag.as_ref().map(|d| d.lemma5_ratio),
        lemma6: diag.as_ref().map(|d| d.lemma6_ratio),
        switch_bound: diag.as_ref().map(|d| d.passed()),
        runtime_ms: (!args.omit_runtime).then_some(runtime),
    })
}

fn summarize(rows: &[BenchRecord], config: &SolverConfig, ell: usize) -> Summary {
    let alpha = config.alpha();
    let stated = if ell <= 2 { 48.0 } else { 60.0 } * alpha * 3.0;
    let ratios: Vec<f64> = rows.iter().filter_map(|r| r.ratio).collect();
    Summary {
        trials: rows.len(),
        solver: config.solver,
        alpha,
        stated_bound: stated,
        chain_bound: end_to_end_bound(alpha, ell),
        oracle_runs: rows.iter().filter(|r| r.opt_cost.is_some()).count(),
        max_ratio: ratios.iter().copied().fold(0.0, f64::max),
        mean_ratio: if ratios.is_empty() { 0.0 } else { ratios.iter().sum::<f64>() / ratios.len() as f64 },
        exact_zero_matches: rows.iter().filter(|r| r.opt_cost == Some(0.0) && r.ratio.is_none()).count(),
        within_stated_bound: rows.iter().filter(|r| r.ratio.is_none_or(|q| q <= stated)).count(),
        fair: rows.iter().filter(|r| r.fair).count(),
        diagnostics_passed: rows.iter().filter(|r| r.switch_bound == Some(true)).count(),
    }
}

fn summary_path(args: &BenchArgs) -> PathBuf {
    args.summary.clone().unwrap_or_else(|| {
        let stem = args.out.file_stem().map_or_else(|| "bench".into(), |s| s.to_string_lossy().into_owned());
        args.out.with_file_name(format!("{stem}.summary.json"))
    })
}

fn write_csv(rows: &[BenchRecord], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn run(args: &BenchArgs) -> Result<()> {
    if args.n_max < 2 || args.ell < 2 || args.n_max < args.ell {
        return Err(Error::InvalidInput("need --ell >= 2 and --n-max >= max(2, ell)".into()));
    }
    let config = SolverConfig::new(args.solver.parse()?, args.epsilon)?;
    let rows: Vec<BenchRecord> =
        (0..args.trials).into_par_iter().map(|i| trial(i, args, &config)).collect::<Result<_>>()?;
    write_csv(&rows, &args.out)?;
    crate::write_json(&summarize(&rows, &config, args.ell), &summary_path(args))
}
