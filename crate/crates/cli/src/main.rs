//! Command-line front end: generate instances, run the pipelines and the
//! exhaustive oracle, emit diagnostics, and benchmark approximation ratios.

mod bench;

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fair_radii::analysis::diagnose;
use fair_radii::fair::cluster_records;
use fair_radii::metric::{generate_instance, io};
use fair_radii::*;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "fair-radii", version, about = "Fair sum-of-radii clustering")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        ell: usize,
        #[arg(long, default_value = "euclidean-plane")]
        mode: String,
        #[arg(long = "box", default_value_t = 100.0)]
        box_size: f64,
        /// Output file; `.csv` writes coordinates, anything else JSON.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the approximation pipeline.
    Cluster {
        #[command(flatten)]
        problem: Problem,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve exactly by enumeration (at most 12 points).
    Oracle {
        #[command(flatten)]
        problem: Problem,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run pipeline and oracle, then check the structural bounds.
    Diagnose {
        #[command(flatten)]
        problem: Problem,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare the pipeline against the oracle on random instances.
    Bench(bench::BenchArgs),
}

#[derive(Args)]
struct Problem {
    #[arg(long)]
    input: PathBuf,
    /// Integer balance parameter.
    #[arg(long, default_value = "1")]
    t: String,
    #[arg(long)]
    k: usize,
    /// Expected number of groups; checked against the instance.
    #[arg(long)]
    ell: Option<usize>,
    /// Require every cluster to hold equally many points of every group.
    #[arg(long)]
    balanced: bool,
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, default_value = "primal-dual")]
    solver: String,
    #[arg(long, default_value_t = 0.01)]
    epsilon: f64,
}

impl SolverArgs {
    fn config(&self) -> Result<SolverConfig> {
        SolverConfig::new(self.solver.parse()?, self.epsilon)
    }
}

/// Loaded instance plus the resolved problem variant.
struct Job {
    id: String,
    inst: RealInstance,
    k: usize,
    mode: Mode,
}

impl Problem {
    /// Two groups without `--balanced` run the `t`-fair pipeline; `--balanced`
    /// or three or more groups run the balanced one, which needs `t = 1`.
    fn load(&self) -> Result<Job> {
        let t = parse_balance(&self.t)?;
        let inst = io::read_instance(&self.input)?;
        if let Some(ell) = self.ell {
            if ell != inst.ell() {
                return Err(Error::InvalidInput(format!("--ell {ell} but the instance has {} groups", inst.ell())));
            }
        }
        let mode = if self.balanced || inst.ell() > 2 {
            if t != 1 {
                return Err(Error::InvalidInput(format!("balanced clustering needs t = 1, got {t}")));
            }
            Mode::Balanced
        } else {
            Mode::Fair { t }
        };
        let id = self.input.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
        Ok(Job { id, inst, k: self.k, mode })
    }
}

impl Job {
    fn run(&self, config: &SolverConfig) -> Result<FairClusteringResult<f64>> {
        match self.mode {
            Mode::Fair { t } => fair_tk_cluster(&self.inst, t, self.k, config),
            Mode::Balanced => balanced_cluster(&self.inst, self.k, config),
        }
    }

    fn oracle(&self) -> Result<OracleSolution<f64>> {
        match self.mode {
            Mode::Fair { t } => opt_fair_bruteforce(&self.inst, t, self.k),
            Mode::Balanced => opt_balanced_bruteforce(&self.inst, self.k),
        }
    }
}

#[derive(Serialize)]
struct OracleRecord {
    clusters: Vec<fair_radii::fair::ClusterRecord>,
    cost: f64,
    fair: bool,
    k_used: usize,
}

pub(crate) fn write_json<S: Serialize>(value: &S, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    std::io::Write::write_all(&mut w, b"\n")?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen { seed, n, ell, mode, box_size, out } => {
            let inst = generate_instance(seed, n, ell, mode.parse()?, box_size)?;
            io::write_instance(&inst, &out)
        }
        Command::Cluster { problem, solver, out } => {
            let job = problem.load()?;
            let res = job.run(&solver.config()?)?;
            write_json(&res.to_record(), &out)
        }
        Command::Oracle { problem, out } => {
            let job = problem.load()?;
            let sol = job.oracle()?;
            let fair = match job.mode {
                Mode::Fair { t } => verify_fair(&sol.clustering, &job.inst, t),
                Mode::Balanced => verify_balanced(&sol.clustering, &job.inst),
            };
            let record = OracleRecord {
                clusters: cluster_records(&sol.clustering),
                cost: sol.cost,
                fair,
                k_used: sol.clustering.len(),
            };
            write_json(&record, &out)
        }
        Command::Diagnose { problem, solver, out } => {
            let job = problem.load()?;
            let res = job.run(&solver.config()?)?;
            let opt = job.oracle()?;
            let report = diagnose(job.id.clone(), &job.inst, &opt.clustering, &res.edges, &res.forest, res.mode);
            write_json(&report, &out)
        }
        Command::Bench(args) => bench::run(&args),
    }
}

#[derive(Serialize)]
struct ErrorRecord<'a> {
    error: &'a str,
    message: String,
}

fn fail(kind: &str, message: String, code: u8) -> ExitCode {
    let record = ErrorRecord { error: kind, message };
    eprintln!("{}", serde_json::to_string(&record).expect("plain strings serialize"));
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail("usage", e.to_string().trim().to_owned(), 2),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e.kind(), e.to_string(), if e.is_infeasible() { 1 } else { 2 }),
    }
}
