//! Batch experiments over seeds, target counts, waiting times and algorithms,
//! with CSV output and mean summaries.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mrr::{
    generate_instance, instance_pseudo_curvature, run_pipeline, Algorithm, PipelineConfig,
    DEFAULT_EXTENT,
};

/// Environment variable capping the worker pool.
pub const THREADS_ENV: &str = "SALB_THREADS";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub seeds: Vec<u64>,
    pub m: usize,
    pub ns: Vec<usize>,
    pub betas: Vec<f64>,
    pub algorithms: Vec<Algorithm>,
    pub extent: f64,
    pub pipeline: PipelineConfig,
    /// Fill the `time_ms` column; off keeps the CSV byte-reproducible.
    pub timing: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            seeds: (1..=20).collect(),
            m: 5,
            ns: vec![50],
            betas: vec![0.0, 60.0],
            algorithms: vec![Algorithm::Greedy, Algorithm::MminGreedy],
            extent: DEFAULT_EXTENT,
            pipeline: PipelineConfig::default(),
            timing: false,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::Invalid("need at least one robot".into()));
        }
        if self.algorithms.is_empty() {
            return Err(Error::Invalid("need at least one algorithm".into()));
        }
        if let Some(b) = self.betas.iter().find(|b| !b.is_finite() || **b < 0.0) {
            return Err(Error::Domain(format!("waiting time must be >= 0, got {b}")));
        }
        if !self.extent.is_finite() || self.extent <= 0.0 {
            return Err(Error::Domain(format!(
                "extent must be positive, got {}",
                self.extent
            )));
        }
        Ok(())
    }
}

/// One CSV row. Failed runs keep their coordinates and carry the error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub seed: u64,
    pub algo: Algorithm,
    pub n: usize,
    pub m: usize,
    pub beta: f64,
    pub rtc: Option<f64>,
    pub rpc: Option<f64>,
    pub lb: Option<f64>,
    pub alpha_max: Option<f64>,
    pub iters: Option<usize>,
    pub time_ms: Option<f64>,
    pub pseudo_curvature: Option<f64>,
    pub error: Option<String>,
}

/// Worker pool sized by `SALB_THREADS` when set, otherwise by rayon's default.
pub fn worker_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let threads: usize = v.trim().parse().map_err(|_| {
            Error::Invalid(format!(
                "{THREADS_ENV} must be a positive integer, got {v:?}"
            ))
        })?;
        builder = builder.num_threads(threads.max(1));
    }
    builder
        .build()
        .map_err(|e| Error::Invalid(format!("cannot build worker pool: {e}")))
}

fn run_cell(
    cfg: &ExperimentConfig,
    seed: u64,
    n: usize,
    beta: f64,
    algo: Algorithm,
) -> ExperimentRow {
    let mut row = ExperimentRow {
        seed,
        algo,
        n,
        m: cfg.m,
        beta,
        rtc: None,
        rpc: None,
        lb: None,
        alpha_max: None,
        iters: None,
        time_ms: None,
        pseudo_curvature: None,
        error: None,
    };
    let start = Instant::now();
    let outcome = generate_instance(seed, cfg.m, n, beta, cfg.extent).and_then(|inst| {
        let report = run_pipeline(&inst, algo, &cfg.pipeline)?;
        Ok((report, instance_pseudo_curvature(&inst)?))
    });
    match outcome {
        Ok((report, kappa)) => {
            row.rtc = Some(report.rtc);
            row.rpc = Some(report.rpc);
            row.lb = Some(report.lb);
            row.alpha_max = Some(report.alpha_max);
            row.iters = Some(report.iters);
            row.pseudo_curvature = Some(kappa);
            if cfg.timing {
                row.time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

/// Runs every (n, beta, seed, algorithm) cell in the worker pool. Rows come
/// back in that nesting order regardless of scheduling.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRow>> {
    cfg.validate()?;
    let mut cells = Vec::new();
    for &n in &cfg.ns {
        for &beta in &cfg.betas {
            for &seed in &cfg.seeds {
                for &algo in &cfg.algorithms {
                    cells.push((seed, n, beta, algo));
                }
            }
        }
    }
    let pool = worker_pool()?;
    Ok(pool.install(|| {
        cells
            .par_iter()
            .map(|&(seed, n, beta, algo)| run_cell(cfg, seed, n, beta, algo))
            .collect()
    }))
}

/// Writes the header even when `rows` is empty.
pub fn write_csv<W: Write>(rows: &[ExperimentRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record([
        "seed",
        "algo",
        "n",
        "m",
        "beta",
        "rtc",
        "rpc",
        "lb",
        "alpha_max",
        "iters",
        "time_ms",
        "pseudo_curvature",
        "error",
    ])?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: std::io::Read>(input: R) -> Result<Vec<ExperimentRow>> {
    let mut r = csv::Reader::from_reader(input);
    Ok(r.deserialize()
        .collect::<std::result::Result<Vec<_>, _>>()?)
}

/// Means over the successful rows of one (n, beta, algorithm) cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryCell {
    pub n: usize,
    pub beta: f64,
    pub algo: Algorithm,
    pub runs: usize,
    pub failures: usize,
    pub mean_rtc: f64,
    pub mean_rpc: f64,
    pub mean_lb: f64,
    pub mean_alpha_max: f64,
    pub mean_iters: f64,
    pub mean_time_ms: Option<f64>,
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    if count == 0 {
        f64::NAN
    } else {
        sum / count as f64
    }
}

pub fn summarize(rows: &[ExperimentRow]) -> Vec<SummaryCell> {
    let mut groups: BTreeMap<(usize, u64, Algorithm), Vec<&ExperimentRow>> = BTreeMap::new();
    for row in rows {
        groups
            .entry((row.n, row.beta.to_bits(), row.algo))
            .or_default()
            .push(row);
    }
    groups
        .into_iter()
        .map(|((n, beta, algo), group)| {
            let ok: Vec<&ExperimentRow> = group
                .iter()
                .copied()
                .filter(|r| r.error.is_none())
                .collect();
            let timed: Vec<f64> = ok.iter().filter_map(|r| r.time_ms).collect();
            SummaryCell {
                n,
                beta: f64::from_bits(beta),
                algo,
                runs: ok.len(),
                failures: group.len() - ok.len(),
                mean_rtc: mean(ok.iter().filter_map(|r| r.rtc)),
                mean_rpc: mean(ok.iter().filter_map(|r| r.rpc)),
                mean_lb: mean(ok.iter().filter_map(|r| r.lb)),
                mean_alpha_max: mean(ok.iter().filter_map(|r| r.alpha_max)),
                mean_iters: mean(ok.iter().filter_map(|r| r.iters.map(|i| i as f64))),
                mean_time_ms: (!timed.is_empty()).then(|| mean(timed.into_iter())),
            }
        })
        .collect()
}

/// Mean relative RTC improvement of `better` over `base`, in percent, over
/// instances where both succeeded: `100 * mean((base - better) / base)`.
pub fn mean_improvement(rows: &[ExperimentRow], base: Algorithm, better: Algorithm) -> Option<f64> {
    let key = |r: &ExperimentRow| (r.n, r.beta.to_bits(), r.seed);
    let bases: BTreeMap<_, f64> = rows
        .iter()
        .filter(|r| r.algo == base)
        .filter_map(|r| r.rtc.map(|v| (key(r), v)))
        .collect();
    let gains: Vec<f64> = rows
        .iter()
        .filter(|r| r.algo == better)
        .filter_map(|r| {
            let b = *bases.get(&key(r))?;
            let v = r.rtc?;
            (b > 0.0).then(|| 100.0 * (b - v) / b)
        })
        .collect();
    (!gains.is_empty()).then(|| mean(gains.into_iter()))
}

type Column<'a> = (&'a str, &'a dyn Fn(&SummaryCell) -> String);

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".into(), |v| format!("{v:.1}"))
}

/// Markdown tables of mean RTC, mean RPC, lower bound with `alpha_max`, and
/// runtime, one row per (n, beta) and one column per algorithm.
pub fn markdown(summary: &[SummaryCell]) -> String {
    let mut algos: Vec<Algorithm> = summary.iter().map(|c| c.algo).collect();
    algos.sort();
    algos.dedup();
    let mut keys: Vec<(usize, u64)> = summary.iter().map(|c| (c.n, c.beta.to_bits())).collect();
    keys.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then(f64::from_bits(a.1).total_cmp(&f64::from_bits(b.1)))
    });
    keys.dedup();
    let cell = |n: usize, beta: u64, algo: Algorithm| {
        summary
            .iter()
            .find(|c| c.n == n && c.beta.to_bits() == beta && c.algo == algo)
    };

    let mut out = String::new();
    let tables: [Column; 4] = [
        ("Mean RTC", &|c| fmt_opt(Some(c.mean_rtc))),
        ("Mean RPC", &|c| fmt_opt(Some(c.mean_rpc))),
        ("Mean LB (mean alpha_max)", &|c| {
            format!("{:.1} ({:.3})", c.mean_lb, c.mean_alpha_max)
        }),
        ("Mean runtime [ms]", &|c| fmt_opt(c.mean_time_ms)),
    ];
    for (title, render) in tables {
        out.push_str(&format!("### {title}\n\n| n | beta |"));
        for a in &algos {
            out.push_str(&format!(" {a} |"));
        }
        out.push_str("\n|---|---|");
        out.push_str(&"---|".repeat(algos.len()));
        out.push('\n');
        for &(n, beta) in &keys {
            out.push_str(&format!("| {n} | {} |", f64::from_bits(beta)));
            for &a in &algos {
                let text = cell(n, beta, a).map_or_else(|| "-".into(), render);
                out.push_str(&format!(" {text} |"));
            }
            out.push('\n');
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> ExperimentConfig {
        ExperimentConfig {
            seeds: vec![1, 2, 3],
            m: 2,
            ns: vec![6],
            betas: vec![0.0, 10.0],
            algorithms: Algorithm::ALL.to_vec(),
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn empty_seed_list_gives_header_only() {
        let cfg = ExperimentConfig {
            seeds: vec![],
            ..small()
        };
        let rows = run_experiment(&cfg).unwrap();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "seed,algo,n,m,beta,rtc,rpc,lb,alpha_max,iters,time_ms,pseudo_curvature,error\n"
        );
    }

    #[test]
    fn csv_is_reproducible_and_round_trips() {
        let render = || {
            let mut buf = Vec::new();
            write_csv(&run_experiment(&small()).unwrap(), &mut buf).unwrap();
            buf
        };
        let first = render();
        assert_eq!(first, render());
        let rows = read_csv(first.as_slice()).unwrap();
        assert_eq!(rows, run_experiment(&small()).unwrap());
        assert_eq!(rows.len(), 3 * 2 * 4);
        assert!(rows
            .iter()
            .all(|r| r.error.is_none() && r.time_ms.is_none()));
    }

    #[test]
    fn summary_and_tables() {
        let rows = run_experiment(&small()).unwrap();
        let summary = summarize(&rows);
        assert_eq!(summary.len(), 2 * 4);
        assert!(summary.iter().all(|c| c.runs == 3 && c.failures == 0));
        let gain = mean_improvement(&rows, Algorithm::Greedy, Algorithm::MminGreedy).unwrap();
        assert!(gain >= 0.0);
        let md = markdown(&summary);
        assert!(md.contains("### Mean RTC"));
        assert!(md.contains("| 6 | 10 |"));
        for c in &summary {
            if c.beta == 0.0 {
                assert!(rows
                    .iter()
                    .filter(|r| r.beta == 0.0)
                    .all(|r| r.pseudo_curvature == Some(1.0)));
            }
        }
    }

    #[test]
    fn failures_are_recorded_per_row() {
        let rows = vec![
            ExperimentRow {
                seed: 1,
                algo: Algorithm::Greedy,
                n: 1,
                m: 1,
                beta: 0.0,
                rtc: Some(4.0),
                rpc: Some(4.0),
                lb: Some(4.0),
                alpha_max: Some(1.0),
                iters: Some(0),
                time_ms: None,
                pseudo_curvature: Some(1.0),
                error: None,
            },
            ExperimentRow {
                seed: 2,
                algo: Algorithm::Greedy,
                n: 1,
                m: 1,
                beta: 0.0,
                rtc: None,
                rpc: None,
                lb: None,
                alpha_max: None,
                iters: None,
                time_ms: None,
                pseudo_curvature: None,
                error: Some("capability".into()),
            },
        ];
        let s = summarize(&rows);
        assert_eq!((s[0].runs, s[0].failures, s[0].mean_rtc), (1, 1, 4.0));
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        assert_eq!(read_csv(buf.as_slice()).unwrap(), rows);
    }
}
