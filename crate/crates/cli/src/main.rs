use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use salb::audit::audit_all;
use salb::balance::{mst_lower_bound, MlbMode, MminConfig};
use salb::experiment::{
    markdown, mean_improvement, run_experiment, summarize, write_csv, ExperimentConfig,
};
use salb::facility::{FacilityInstance, FacilityOracle};
use salb::interp::{InterpOracle, SampleCollection, SampleFile};
use salb::metric::{Metric, MetricFile, MstOracle};
use salb::mrr::{
    generate_instance, instance_pseudo_curvature, run_pipeline, verify_report, Algorithm,
    MrrInstance, PipelineConfig, DEFAULT_EXTENT,
};
use salb::{ModularFn, SetFunction};
use serde::Deserialize;

#[derive(Parser)]
#[command(
    name = "salb",
    version,
    about = "Minimax load balancing with subadditive costs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write seeded multi-robot routing instances as JSON.
    Gen(GenArgs),
    /// Solve one instance and print its CSV row.
    Solve(SolveArgs),
    /// Run an algorithm x instance grid and write a CSV report.
    Experiment(ExperimentArgs),
    /// Check set-function properties of a metric, facility, sample or modular file.
    Audit(AuditArgs),
    /// Print the cost-share lower bound at an algorithm's partition.
    Lb(LbArgs),
}

#[derive(Args)]
struct SeedArgs {
    /// Single seed.
    #[arg(long, conflicts_with = "seeds")]
    seed: Option<u64>,
    /// Seed list: `1..20` (inclusive) or `1,5,9`.
    #[arg(long, value_parser = parse_seeds)]
    seeds: Option<SeedList>,
}

#[derive(Clone)]
struct SeedList(Vec<u64>);

impl SeedArgs {
    fn resolve(&self, default: Vec<u64>) -> Vec<u64> {
        match (&self.seed, &self.seeds) {
            (Some(s), _) => vec![*s],
            (None, Some(list)) => list.0.clone(),
            (None, None) => default,
        }
    }
}

#[derive(Args)]
struct SolverArgs {
    /// Solver for the MMIN initial partition.
    #[arg(long, value_parser = parse_mlb_mode, default_value = "exact")]
    mlb: MlbMode,
    /// MMin iteration cap.
    #[arg(long, default_value_t = 100)]
    max_iters: usize,
}

impl SolverArgs {
    fn pipeline(&self) -> PipelineConfig {
        let defaults = PipelineConfig::default();
        PipelineConfig {
            init_mode: self.mlb,
            mmin: MminConfig {
                max_iters: self.max_iters,
                ..defaults.mmin
            },
            ..defaults
        }
    }
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    seeds: SeedArgs,
    #[arg(long, default_value_t = 5)]
    m: usize,
    #[arg(long, default_value_t = 50)]
    n: usize,
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
    #[arg(long, default_value_t = DEFAULT_EXTENT)]
    extent: f64,
    /// Output directory; a single instance goes to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// Instance JSON file.
    instance: PathBuf,
    #[arg(long, value_parser = parse_algo, default_value = "MMIN_GREEDY")]
    algo: Algorithm,
    #[command(flatten)]
    solver: SolverArgs,
    /// Write the full JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Recompute every reported number before printing.
    #[arg(long)]
    check: bool,
    /// Fill the time_ms column.
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct ExperimentArgs {
    #[command(flatten)]
    seeds: SeedArgs,
    #[arg(long, default_value_t = 5)]
    m: usize,
    /// Target counts, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "50")]
    n: Vec<usize>,
    /// Waiting times, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0,60")]
    beta: Vec<f64>,
    /// Algorithms, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = parse_algo, default_value = "GREEDY,MMIN_GREEDY")]
    algo: Vec<Algorithm>,
    #[arg(long, default_value_t = DEFAULT_EXTENT)]
    extent: f64,
    #[command(flatten)]
    solver: SolverArgs,
    /// CSV output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print mean-value tables after the run.
    #[arg(long)]
    markdown: bool,
    /// Fill the time_ms column (the CSV is then no longer byte-reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct AuditArgs {
    /// Metric `{n, root, d}`, facility `{customers, facilities, open, connect}`,
    /// samples `{n, samples}` or modular `{n, offset, weights}` JSON.
    file: PathBuf,
}

#[derive(Args)]
struct LbArgs {
    instance: PathBuf,
    /// Algorithm whose partition anchors the bound.
    #[arg(long, value_parser = parse_algo, default_value = "MMIN_GREEDY")]
    algo: Algorithm,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Deserialize)]
struct ModularFile {
    n: usize,
    offset: f64,
    weights: Vec<f64>,
}

fn parse_seeds(s: &str) -> Result<SeedList, String> {
    if let Some((a, b)) = s.split_once("..") {
        let lo: u64 = a
            .trim()
            .parse()
            .map_err(|e| format!("bad range start {a:?}: {e}"))?;
        let hi: u64 = b
            .trim()
            .parse()
            .map_err(|e| format!("bad range end {b:?}: {e}"))?;
        return Ok(SeedList((lo..=hi).collect()));
    }
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse().map_err(|e| format!("bad seed {t:?}: {e}")))
        .collect::<Result<_, _>>()
        .map(SeedList)
}

fn parse_algo(s: &str) -> Result<Algorithm, String> {
    s.parse::<Algorithm>().map_err(|e| {
        let names: Vec<&str> = Algorithm::ALL.iter().map(|a| a.name()).collect();
        format!("{e}; expected one of {}", names.join(", "))
    })
}

fn parse_mlb_mode(s: &str) -> Result<MlbMode, String> {
    match s {
        "exact" => Ok(MlbMode::Exact),
        "lst" => Ok(MlbMode::Lst),
        _ => Err(format!("expected exact or lst, got {s:?}")),
    }
}

/// Runtime failures exit 1, unreadable or malformed input exits 2.
enum Failure {
    Runtime(String),
    Usage(String),
}

impl From<salb::Error> for Failure {
    fn from(e: salb::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type CliResult<T> = Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &[u8]) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> CliResult<MrrInstance> {
    let inst: MrrInstance = parse_json(path, &read(path)?)?;
    inst.validate()
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(inst)
}

fn stdout_write(bytes: &[u8]) -> CliResult<()> {
    std::io::stdout()
        .write_all(bytes)
        .map_err(|e| Failure::Runtime(format!("stdout: {e}")))
}

fn cmd_gen(args: &GenArgs) -> CliResult<()> {
    let seeds = args.seeds.resolve(vec![1]);
    if args.out.is_none() && seeds.len() != 1 {
        return Err(Failure::Usage("several seeds need --out <dir>".into()));
    }
    for seed in seeds {
        let json = generate_instance(seed, args.m, args.n, args.beta, args.extent)?.to_json()?;
        match &args.out {
            None => stdout_write(json.as_bytes())?,
            Some(dir) => {
                fs::create_dir_all(dir)
                    .map_err(|e| Failure::Runtime(format!("{}: {e}", dir.display())))?;
                let name = format!(
                    "mrr_m{}_n{}_beta{}_seed{seed}.json",
                    args.m, args.n, args.beta
                );
                write(&dir.join(name), json.as_bytes())?;
            }
        }
    }
    Ok(())
}

fn cmd_solve(args: &SolveArgs) -> CliResult<()> {
    let inst = load_instance(&args.instance)?;
    let cfg = args.solver.pipeline();
    let report = run_pipeline(&inst, args.algo, &cfg)?;
    if args.check {
        verify_report(&inst, &report, &cfg)?;
    }
    let row = salb::experiment::ExperimentRow {
        seed: report.seed,
        algo: report.algo,
        n: report.n,
        m: report.m,
        beta: report.beta,
        rtc: Some(report.rtc),
        rpc: Some(report.rpc),
        lb: Some(report.lb),
        alpha_max: Some(report.alpha_max),
        iters: Some(report.iters),
        time_ms: args.timing.then(|| report.timings.total_ms()),
        pseudo_curvature: Some(instance_pseudo_curvature(&inst)?),
        error: None,
    };
    let mut buf = Vec::new();
    write_csv(&[row], &mut buf)?;
    stdout_write(&buf)?;
    if let Some(path) = &args.out {
        let json =
            serde_json::to_string_pretty(&report).map_err(|e| Failure::Runtime(e.to_string()))?;
        write(path, (json + "\n").as_bytes())?;
    }
    Ok(())
}

fn cmd_experiment(args: &ExperimentArgs) -> CliResult<()> {
    let cfg = ExperimentConfig {
        seeds: args.seeds.resolve((1..=20).collect()),
        m: args.m,
        ns: args.n.clone(),
        betas: args.beta.clone(),
        algorithms: args.algo.clone(),
        extent: args.extent,
        pipeline: args.solver.pipeline(),
        timing: args.timing,
    };
    let rows = run_experiment(&cfg)?;
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf)?;
    match &args.out {
        Some(path) => write(path, &buf)?,
        None => stdout_write(&buf)?,
    }
    let failures = rows.iter().filter(|r| r.error.is_some()).count();
    if failures > 0 {
        eprintln!(
            "{failures} of {} runs failed; see the error column",
            rows.len()
        );
    }
    if args.markdown {
        let mut text = markdown(&summarize(&rows));
        if let Some(gain) = mean_improvement(&rows, Algorithm::Greedy, Algorithm::MminGreedy) {
            text.push_str(&format!(
                "Mean RTC improvement of MMIN_GREEDY over GREEDY: {gain:.2}%\n"
            ));
        }
        // keep stdout pure CSV when the CSV goes there
        if args.out.is_some() {
            stdout_write(text.as_bytes())?;
        } else {
            eprint!("{text}");
        }
    }
    Ok(())
}

fn oracle_from_file(path: &Path) -> CliResult<(&'static str, Box<dyn SetFunction>)> {
    let text = read(path)?;
    let value: serde_json::Value = parse_json(path, &text)?;
    let has = |key: &str| value.get(key).is_some();
    let bad = |e: salb::Error| Failure::Usage(format!("{}: {e}", path.display()));
    if has("d") {
        let file: MetricFile = parse_json(path, &text)?;
        let metric = Metric::try_from(file).map_err(bad)?;
        Ok(("metric", Box::new(MstOracle::new(Arc::new(metric), 0.0)?)))
    } else if has("customers") {
        let inst: FacilityInstance = parse_json(path, &text)?;
        Ok((
            "facility",
            Box::new(FacilityOracle::new(inst).map_err(bad)?),
        ))
    } else if has("samples") {
        let file: SampleFile = parse_json(path, &text)?;
        let coll = SampleCollection::try_from(file).map_err(bad)?;
        Ok(("samples", Box::new(InterpOracle::new(coll).map_err(bad)?)))
    } else if has("weights") {
        let file: ModularFile = parse_json(path, &text)?;
        if file.weights.len() != file.n {
            return Err(Failure::Usage(format!(
                "{}: n = {} but {} weights",
                path.display(),
                file.n,
                file.weights.len()
            )));
        }
        Ok((
            "modular",
            Box::new(ModularFn::new(file.offset, file.weights)),
        ))
    } else {
        Err(Failure::Usage(format!(
            "{}: cannot tell the oracle kind (expected key d, customers, samples or weights)",
            path.display()
        )))
    }
}

fn cmd_audit(args: &AuditArgs) -> CliResult<()> {
    let (kind, oracle) = oracle_from_file(&args.file)?;
    let reports = audit_all(&oracle)?;
    let mut out = format!("{kind} oracle, n = {}\n", oracle.n());
    for r in reports {
        out.push_str(&format!("{r}\n"));
    }
    stdout_write(out.as_bytes())
}

fn cmd_lb(args: &LbArgs) -> CliResult<()> {
    let inst = load_instance(&args.instance)?;
    let cfg = args.solver.pipeline();
    let report = run_pipeline(&inst, args.algo, &cfg)?;
    let cert = mst_lower_bound(&inst.metrics()?, inst.beta, &report.partition, cfg.lb_mlb)?;
    let summary = serde_json::json!({
        "algo": args.algo,
        "partition": report.partition,
        "rtc": report.rtc,
        "lb": cert.value,
        "alpha_max": cert.alpha,
        "part_alphas": cert.part_alphas,
        "mlb_value": cert.mlb_value,
        "mlb_bound": cert.mlb_bound,
        "optimal": cert.optimal,
        "gap": report.rtc - cert.value,
    });
    let text =
        serde_json::to_string_pretty(&summary).map_err(|e| Failure::Runtime(e.to_string()))?;
    stdout_write((text + "\n").as_bytes())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Experiment(a) => cmd_experiment(a),
        Command::Audit(a) => cmd_audit(a),
        Command::Lb(a) => cmd_lb(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
