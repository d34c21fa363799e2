//! Multi-robot routing: seeded instances, per-robot tree-cost oracles, open
//! paths, the auction baseline and the load-balancing pipelines.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::balance::{
    greedy, initial_partition, mmin, mst_lower_bound, salb_objective, MlbMode, MminConfig,
    MminTrace,
};
use crate::error::{Error, Result};
use crate::metric::{mst, Metric, MstOracle, SpanningTree};
use crate::mlb::MlbConfig;
use crate::partition::Partition;
use crate::setfn::SetFunction;
use crate::subset::Subset;

/// Side of the square that [`generate_instance`] samples from by default.
pub const DEFAULT_EXTENT: f64 = 1000.0;

/// Robots and targets in the plane; every robot sees the Euclidean metric
/// over its own position and all targets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MrrInstance {
    pub seed: u64,
    pub beta: f64,
    pub robots: Vec<[f64; 2]>,
    pub targets: Vec<[f64; 2]>,
}

impl MrrInstance {
    pub fn m(&self) -> usize {
        self.robots.len()
    }

    pub fn n(&self) -> usize {
        self.targets.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.robots.is_empty() {
            return Err(Error::Invalid("instance needs at least one robot".into()));
        }
        if !self.beta.is_finite() || self.beta < 0.0 {
            return Err(Error::Domain(format!(
                "waiting time must be >= 0, got {}",
                self.beta
            )));
        }
        if self
            .robots
            .iter()
            .chain(&self.targets)
            .flatten()
            .any(|c| !c.is_finite())
        {
            return Err(Error::Invalid("coordinates must be finite".into()));
        }
        Ok(())
    }

    /// Robot `j`'s view: node 0 is the robot, node `i + 1` is target `i`.
    pub fn metrics(&self) -> Result<Vec<Arc<Metric>>> {
        self.validate()?;
        self.robots
            .iter()
            .map(|&r| Metric::euclidean(r, &self.targets).map(Arc::new))
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let inst: Self = serde_json::from_str(s)?;
        inst.validate()?;
        Ok(inst)
    }
}

/// Robots first, then targets, each uniform in `[0, extent]^2`.
pub fn generate_instance(
    seed: u64,
    m: usize,
    n: usize,
    beta: f64,
    extent: f64,
) -> Result<MrrInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut point = || [rng.gen_range(0.0..=extent), rng.gen_range(0.0..=extent)];
    let robots = (0..m).map(|_| point()).collect();
    let targets = (0..n).map(|_| point()).collect();
    let inst = MrrInstance {
        seed,
        beta,
        robots,
        targets,
    };
    inst.validate()?;
    Ok(inst)
}

/// Robot tree-cost oracles `MST_j(S) + beta |S|`.
pub fn rtc_oracles(inst: &MrrInstance) -> Result<Vec<MstOracle>> {
    inst.metrics()?
        .into_iter()
        .map(|metric| MstOracle::new(metric, inst.beta))
        .collect()
}

/// Open path from the robot through `targets` (0-based) in order.
#[derive(Debug, Clone, PartialEq)]
pub struct RobotPath {
    pub targets: Vec<usize>,
    /// Sum of consecutive distances plus `beta` per visited target.
    pub cost: f64,
}

impl RobotPath {
    pub fn empty() -> Self {
        Self {
            targets: Vec::new(),
            cost: 0.0,
        }
    }

    pub fn new(metric: &Metric, beta: f64, targets: Vec<usize>) -> Self {
        let cost = path_cost(metric, beta, &targets);
        Self { targets, cost }
    }
}

/// Serialized as the list of 1-based targets.
impl Serialize for RobotPath {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.targets.iter().map(|t| t + 1))
    }
}

pub fn path_cost(metric: &Metric, beta: f64, targets: &[usize]) -> f64 {
    let mut cost = 0.0;
    let mut at = 0;
    for &t in targets {
        cost += metric.dist(at, t + 1) + beta;
        at = t + 1;
    }
    cost
}

/// Depth-first preorder of `tree` from the root, children ascending.
pub fn shortcut_path(metric: &Metric, beta: f64, tree: &SpanningTree) -> RobotPath {
    let mut order = Vec::with_capacity(tree.nodes.len().saturating_sub(1));
    let mut stack = vec![0usize];
    while let Some(node) = stack.pop() {
        if node != 0 {
            order.push(node - 1);
        }
        stack.extend(tree.children(node).into_iter().rev());
    }
    RobotPath::new(metric, beta, order)
}

/// Inserts target `t` where the open path grows least; ties go to the earliest slot.
pub fn insertion_extend(
    metric: &Metric,
    beta: f64,
    path: &RobotPath,
    t: usize,
) -> Result<RobotPath> {
    if path.targets.contains(&t) {
        return Err(Error::Domain(format!(
            "target {} is already on the path",
            t + 1
        )));
    }
    let node = t + 1;
    let len = path.targets.len();
    let mut best: Option<(f64, usize)> = None;
    for slot in 0..=len {
        let prev = if slot == 0 {
            0
        } else {
            path.targets[slot - 1] + 1
        };
        let delta = if slot == len {
            metric.dist(prev, node)
        } else {
            let next = path.targets[slot] + 1;
            metric.dist(prev, node) + metric.dist(node, next) - metric.dist(prev, next)
        };
        if best.is_none_or(|(d, _)| delta < d) {
            best = Some((delta, slot));
        }
    }
    let (_, slot) = best.expect("at least one slot");
    let mut targets = path.targets.clone();
    targets.insert(slot, t);
    Ok(RobotPath::new(metric, beta, targets))
}

/// Builds a path by inserting `targets` one after another.
pub fn insertion_path(
    metric: &Metric,
    beta: f64,
    targets: impl IntoIterator<Item = usize>,
) -> Result<RobotPath> {
    let mut path = RobotPath::empty();
    for t in targets {
        path = insertion_extend(metric, beta, &path, t)?;
    }
    Ok(path)
}

/// Sequential auction: each round the robot-target pair whose cheapest
/// insertion gives the smallest total path cost wins. Ties go to the smaller
/// target, then the smaller robot.
pub fn auction_path(inst: &MrrInstance) -> Result<(Vec<RobotPath>, Partition)> {
    let metrics = inst.metrics()?;
    let (m, n) = (inst.m(), inst.n());
    let mut paths = vec![RobotPath::empty(); m];
    let mut assignment = vec![0usize; n];
    let mut unassigned: Vec<usize> = (0..n).collect();
    while !unassigned.is_empty() {
        let mut winner: Option<(RobotPath, usize, usize)> = None;
        for (k, &t) in unassigned.iter().enumerate() {
            for (j, metric) in metrics.iter().enumerate() {
                let bid = insertion_extend(metric, inst.beta, &paths[j], t)?;
                if winner.as_ref().is_none_or(|(w, _, _)| bid.cost < w.cost) {
                    winner = Some((bid, k, j));
                }
            }
        }
        let (path, k, j) = winner.expect("targets and robots are nonempty");
        assignment[unassigned.remove(k)] = j;
        paths[j] = path;
    }
    Ok((paths, Partition::new(m, assignment)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "GREEDY")]
    Greedy,
    #[serde(rename = "MMIN")]
    Mmin,
    #[serde(rename = "MMIN_GREEDY")]
    MminGreedy,
    #[serde(rename = "AUCTION_PATH")]
    AuctionPath,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Greedy,
        Algorithm::Mmin,
        Algorithm::MminGreedy,
        Algorithm::AuctionPath,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Greedy => "GREEDY",
            Algorithm::Mmin => "MMIN",
            Algorithm::MminGreedy => "MMIN_GREEDY",
            Algorithm::AuctionPath => "AUCTION_PATH",
        }
    }

    /// How the reported paths are built.
    pub fn path_rule(self) -> &'static str {
        match self {
            Algorithm::Greedy => "short-cut MST preorder",
            Algorithm::Mmin | Algorithm::MminGreedy => {
                "cheaper of ascending-target insertion and short-cut MST preorder"
            }
            Algorithm::AuctionPath => "auction insertion order",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_uppercase().replace('-', "_");
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == key)
            .ok_or_else(|| Error::Invalid(format!("unknown algorithm {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    /// Solver for the initial partition of MMIN.
    pub init_mode: MlbMode,
    /// MMin iteration cap and per-iteration M-LB budget.
    pub mmin: MminConfig,
    /// Budget of the lower-bound M-LB.
    pub lb_mlb: MlbConfig,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            init_mode: MlbMode::Exact,
            mmin: MminConfig {
                max_iters: 100,
                mlb: MlbConfig {
                    node_limit: Some(20_000),
                },
            },
            lb_mlb: MlbConfig {
                node_limit: Some(100_000),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Timings {
    pub partition_ms: f64,
    pub path_ms: f64,
    pub lb_ms: f64,
}

impl Timings {
    pub fn total_ms(&self) -> f64 {
        self.partition_ms + self.path_ms + self.lb_ms
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MrrReport {
    pub algo: Algorithm,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub beta: f64,
    pub partition: Partition,
    pub paths: Vec<RobotPath>,
    pub path_rule: &'static str,
    /// `MST_j(S_j) + beta |S_j|` per robot.
    pub robot_rtc: Vec<f64>,
    pub rtc: f64,
    pub robot_rpc: Vec<f64>,
    pub rpc: f64,
    pub lb: f64,
    /// Whether the lower-bound M-LB was solved to optimality.
    pub lb_optimal: bool,
    pub alpha_max: f64,
    pub iters: usize,
    pub timings: Timings,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<MminTrace>,
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn max_of(values: &[f64]) -> f64 {
    values.iter().copied().fold(0.0, f64::max)
}

fn paths_for(
    inst: &MrrInstance,
    metrics: &[Arc<Metric>],
    algo: Algorithm,
    p: &Partition,
) -> Result<Vec<RobotPath>> {
    metrics
        .iter()
        .enumerate()
        .map(|(j, metric)| {
            let part = p.part(j);
            let shortcut = shortcut_path(metric, inst.beta, &mst(metric, part));
            match algo {
                Algorithm::Mmin | Algorithm::MminGreedy => {
                    let inserted = insertion_path(metric, inst.beta, part.iter())?;
                    Ok(if inserted.cost <= shortcut.cost {
                        inserted
                    } else {
                        shortcut
                    })
                }
                _ => Ok(shortcut),
            }
        })
        .collect()
}

/// Runs `algo` on `inst` and evaluates tree costs, path costs and the
/// cost-share lower bound at the returned partition.
pub fn run_pipeline(
    inst: &MrrInstance,
    algo: Algorithm,
    cfg: &PipelineConfig,
) -> Result<MrrReport> {
    let metrics = inst.metrics()?;
    let oracles = rtc_oracles(inst)?;
    let mut timings = Timings::default();

    let start = Instant::now();
    let mut trace = None;
    let mut auction_paths = None;
    let partition = match algo {
        Algorithm::Greedy => greedy(&oracles)?,
        Algorithm::Mmin | Algorithm::MminGreedy => {
            let init = if algo == Algorithm::Mmin {
                initial_partition(&oracles, cfg.init_mode, cfg.mmin.mlb)?
            } else {
                greedy(&oracles)?
            };
            let t = mmin(&oracles, &init, cfg.mmin)?;
            let best = t.best_partition.clone();
            trace = Some(t);
            best
        }
        Algorithm::AuctionPath => {
            let (paths, p) = auction_path(inst)?;
            auction_paths = Some(paths);
            p
        }
    };
    timings.partition_ms = elapsed_ms(start);

    let start = Instant::now();
    let paths = match auction_paths {
        Some(paths) => paths,
        None => paths_for(inst, &metrics, algo, &partition)?,
    };
    timings.path_ms = elapsed_ms(start);

    let start = Instant::now();
    let cert = mst_lower_bound(&metrics, inst.beta, &partition, cfg.lb_mlb)?;
    timings.lb_ms = elapsed_ms(start);

    let robot_rtc: Vec<f64> = partition
        .parts()
        .iter()
        .zip(&oracles)
        .map(|(&s, g)| g.eval(s))
        .collect();
    let robot_rpc: Vec<f64> = paths.iter().map(|p| p.cost).collect();
    Ok(MrrReport {
        algo,
        seed: inst.seed,
        n: inst.n(),
        m: inst.m(),
        beta: inst.beta,
        rtc: max_of(&robot_rtc),
        rpc: max_of(&robot_rpc),
        robot_rtc,
        robot_rpc,
        lb: cert.value,
        lb_optimal: cert.optimal,
        alpha_max: cert.alpha,
        iters: trace.as_ref().map_or(0, |t| t.len()),
        partition,
        paths,
        path_rule: algo.path_rule(),
        timings,
        trace,
    })
}

/// Recomputes every stored number of `report` from `inst` and reports the
/// first mismatch.
pub fn verify_report(inst: &MrrInstance, report: &MrrReport, cfg: &PipelineConfig) -> Result<()> {
    let metrics = inst.metrics()?;
    let oracles = rtc_oracles(inst)?;
    let p = &report.partition;
    if p.n() != inst.n() || p.m() != inst.m() || report.paths.len() != inst.m() {
        return Err(Error::Invalid(
            "report shape does not match the instance".into(),
        ));
    }
    let mismatch = |what: &str, stored: f64, fresh: f64| -> Result<()> {
        if stored == fresh {
            Ok(())
        } else {
            Err(Error::Invalid(format!(
                "{what}: stored {stored}, recomputed {fresh}"
            )))
        }
    };
    for (j, ((path, metric), g)) in report.paths.iter().zip(&metrics).zip(&oracles).enumerate() {
        let visited = Subset::from_indices(path.targets.iter().copied());
        if visited != p.part(j) || visited.len() != path.targets.len() {
            return Err(Error::Invalid(format!(
                "path of robot {} does not visit its part once",
                j + 1
            )));
        }
        mismatch(
            "robot rpc",
            report.robot_rpc[j],
            path_cost(metric, inst.beta, &path.targets),
        )?;
        mismatch("robot rtc", report.robot_rtc[j], g.eval(p.part(j)))?;
    }
    mismatch("rtc", report.rtc, salb_objective(&oracles, p).max(0.0))?;
    mismatch("rpc", report.rpc, max_of(&report.robot_rpc))?;
    let cert = mst_lower_bound(&metrics, inst.beta, p, cfg.lb_mlb)?;
    mismatch("lb", report.lb, cert.value)?;
    mismatch("alpha_max", report.alpha_max, cert.alpha)
}

/// Closed-form pseudo-curvature of `MST + beta |S|` for one robot:
/// `1 - min_i beta / (d(r, i) + beta)`; 0 with no targets.
pub fn mst_beta_pseudo_curvature(metric: &Metric, beta: f64) -> f64 {
    if metric.n() == 0 {
        return 0.0;
    }
    if beta == 0.0 {
        return 1.0;
    }
    let min_ratio = (1..=metric.n())
        .map(|i| beta / (metric.dist(0, i) + beta))
        .fold(f64::INFINITY, f64::min);
    1.0 - min_ratio
}

/// Largest per-robot pseudo-curvature of the instance.
pub fn instance_pseudo_curvature(inst: &MrrInstance) -> Result<f64> {
    Ok(inst
        .metrics()?
        .iter()
        .map(|metric| mst_beta_pseudo_curvature(metric, inst.beta))
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setfn::{pseudo_curvature, Decomposition, ModularFn};

    fn line(points: &[f64]) -> Metric {
        let root = [0.0, 0.0];
        let pts: Vec<[f64; 2]> = points.iter().map(|&x| [x, 0.0]).collect();
        Metric::euclidean(root, &pts).unwrap()
    }

    #[test]
    fn generation_is_deterministic() {
        let a = generate_instance(1, 5, 50, 0.0, DEFAULT_EXTENT).unwrap();
        let b = generate_instance(1, 5, 50, 0.0, DEFAULT_EXTENT).unwrap();
        assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
        assert_eq!((a.m(), a.n()), (5, 50));
        let c = generate_instance(2, 5, 50, 0.0, DEFAULT_EXTENT).unwrap();
        assert_ne!(a.targets[0], c.targets[0]);
        assert_eq!(MrrInstance::from_json(&a.to_json().unwrap()).unwrap(), a);
        assert!(a
            .targets
            .iter()
            .flatten()
            .all(|&c| (0.0..=DEFAULT_EXTENT).contains(&c)));
    }

    #[test]
    fn rtc_oracle_values() {
        let inst = MrrInstance {
            seed: 0,
            beta: 10.0,
            robots: vec![[0.0, 0.0]],
            targets: vec![[3.0, 4.0], [6.0, 8.0], [0.0, 1.0]],
        };
        let g = &rtc_oracles(&inst).unwrap()[0];
        assert_eq!(g.eval(Subset::singleton(0)), 15.0);
        // root-t3 (1), t3-t1 (sqrt 18), t1-t2 (5)
        assert!((g.eval(Subset::full(3)) - (6.0 + 18f64.sqrt() + 30.0)).abs() < 1e-12);
        let zero = MrrInstance { beta: 0.0, ..inst };
        assert_eq!(
            rtc_oracles(&zero).unwrap()[0].eval(Subset::singleton(0)),
            5.0
        );
    }

    #[test]
    fn shortcut_of_star_and_path() {
        // unit star: pairwise target distance 2 (not Euclidean, hand metric)
        let d = vec![
            vec![0.0, 1.0, 1.0, 1.0],
            vec![1.0, 0.0, 2.0, 2.0],
            vec![1.0, 2.0, 0.0, 2.0],
            vec![1.0, 2.0, 2.0, 0.0],
        ];
        let star = Metric::new(d).unwrap();
        let tree = mst(&star, Subset::full(3));
        let path = shortcut_path(&star, 0.0, &tree);
        assert_eq!(path.targets, vec![0, 1, 2]);
        assert_eq!(path.cost, 5.0);
        assert!(path.cost <= 2.0 * tree.cost);

        let colinear = line(&[1.0, 2.0, 3.0]);
        let tree = mst(&colinear, Subset::full(3));
        let path = shortcut_path(&colinear, 0.0, &tree);
        assert_eq!((path.targets, path.cost), (vec![0, 1, 2], 3.0));

        let single = line(&[4.0]);
        assert_eq!(
            shortcut_path(&single, 0.0, &mst(&single, Subset::full(1))).cost,
            4.0
        );
    }

    #[test]
    fn insertion_slots() {
        let metric = line(&[1.0, 2.0, 3.0]);
        let empty = RobotPath::empty();
        assert_eq!(insertion_extend(&metric, 0.0, &empty, 1).unwrap().cost, 2.0);
        let outer = RobotPath::new(&metric, 0.0, vec![0, 2]);
        let filled = insertion_extend(&metric, 0.0, &outer, 1).unwrap();
        assert_eq!((filled.targets, filled.cost), (vec![0, 1, 2], 3.0));
        assert!(insertion_extend(&metric, 0.0, &outer, 0).is_err());

        // a far point behind the root still goes to the cheaper back end
        let metric = line(&[1.0, 2.0, -10.0, 0.5]);
        let path = RobotPath::new(&metric, 0.0, vec![0, 1]);
        let grown = insertion_extend(&metric, 0.0, &path, 2).unwrap();
        assert_eq!((grown.targets, grown.cost), (vec![0, 1, 2], 14.0));
        assert_eq!(insertion_extend(&metric, 5.0, &path, 2).unwrap().cost, 29.0);
        // a point between the root and the path goes to the front
        let front = insertion_extend(&metric, 0.0, &path, 3).unwrap();
        assert_eq!((front.targets, front.cost), (vec![3, 0, 1], 2.0));
    }

    #[test]
    fn auction_edge_cases() {
        let inst = MrrInstance {
            seed: 0,
            beta: 0.0,
            robots: vec![[0.0, 0.0], [10.0, 0.0]],
            targets: vec![[8.0, 0.0]],
        };
        let (paths, p) = auction_path(&inst).unwrap();
        assert_eq!(p.assignment(), &[1]);
        assert_eq!(paths[1].cost, 2.0);

        let solo = MrrInstance {
            robots: vec![[0.0, 0.0]],
            targets: vec![[1.0, 0.0], [3.0, 0.0], [2.0, 0.0]],
            ..inst.clone()
        };
        let (paths, _) = auction_path(&solo).unwrap();
        let metrics = solo.metrics().unwrap();
        let by_hand = insertion_path(&metrics[0], 0.0, [0, 2, 1]).unwrap();
        assert_eq!(paths[0], by_hand);
        assert_eq!(paths[0].targets, vec![0, 2, 1]);
    }

    #[test]
    fn auction_round_by_round() {
        // robots at x=0 and x=10; targets at x=1, 2, 9, 5
        let inst = MrrInstance {
            seed: 0,
            beta: 0.0,
            robots: vec![[0.0, 0.0], [10.0, 0.0]],
            targets: vec![[1.0, 0.0], [2.0, 0.0], [9.0, 0.0], [5.0, 0.0]],
        };
        // round 1: (t1, r1) and (t3, r2) both bid 1; t1 wins on index
        // round 2: r1 bids 2 for t2, r2 bids 1 for t3 -> (t3, r2)
        // round 3: r1 bids 2 for t2 -> (t2, r1)
        // round 4: t4 costs 5 from either robot; robot 1 wins the tie
        let (paths, p) = auction_path(&inst).unwrap();
        assert_eq!(p.assignment(), &[0, 0, 1, 0]);
        assert_eq!(paths[0].targets, vec![0, 1, 3]);
        assert_eq!(paths[0].cost, 5.0);
        assert_eq!(paths[1].targets, vec![2]);
    }

    #[test]
    fn pipelines_on_empty_instance() {
        let inst = generate_instance(3, 2, 0, 0.0, DEFAULT_EXTENT).unwrap();
        for algo in Algorithm::ALL {
            let r = run_pipeline(&inst, algo, &PipelineConfig::default()).unwrap();
            assert_eq!((r.rtc, r.rpc, r.lb), (0.0, 0.0, 0.0));
            verify_report(&inst, &r, &PipelineConfig::default()).unwrap();
        }
    }

    #[test]
    fn pipelines_are_consistent() {
        let cfg = PipelineConfig::default();
        for beta in [0.0, 30.0] {
            let inst = generate_instance(1, 3, 12, beta, DEFAULT_EXTENT).unwrap();
            let greedy = run_pipeline(&inst, Algorithm::Greedy, &cfg).unwrap();
            let hybrid = run_pipeline(&inst, Algorithm::MminGreedy, &cfg).unwrap();
            assert!(hybrid.rtc <= greedy.rtc);
            for algo in Algorithm::ALL {
                let r = run_pipeline(&inst, algo, &cfg).unwrap();
                verify_report(&inst, &r, &cfg).unwrap();
                assert!(r.lb <= r.rtc + 1e-9, "{algo}: lb {} rtc {}", r.lb, r.rtc);
                assert!(r.alpha_max >= 1.0 && r.alpha_max.is_finite());
                if algo != Algorithm::AuctionPath {
                    for (rpc, rtc) in r.robot_rpc.iter().zip(&r.robot_rtc) {
                        assert!(*rpc <= 2.0 * rtc + 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn algorithm_names_round_trip() {
        for algo in Algorithm::ALL {
            assert_eq!(algo.name().parse::<Algorithm>().unwrap(), algo);
        }
        assert_eq!(
            "mmin-greedy".parse::<Algorithm>().unwrap(),
            Algorithm::MminGreedy
        );
        assert!("SIMULATED_ANNEALING".parse::<Algorithm>().is_err());
    }

    #[test]
    fn closed_form_pseudo_curvature() {
        let metric = line(&[5.0, 15.0]);
        assert_eq!(mst_beta_pseudo_curvature(&metric, 0.0), 1.0);
        assert_eq!(mst_beta_pseudo_curvature(&metric, 5.0), 0.75);
        let arc = Arc::new(metric.clone());
        for beta in [1.0, 5.0, 60.0] {
            let d = Decomposition::new(
                Box::new(MstOracle::new(arc.clone(), 0.0).unwrap()),
                Box::new(ModularFn::new(0.0, vec![beta; 2])),
            )
            .unwrap();
            let general = pseudo_curvature(&d).unwrap();
            assert!((general - mst_beta_pseudo_curvature(&metric, beta)).abs() < 1e-12);
        }
    }
}
