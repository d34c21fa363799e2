//! Minimax load balancing over set-function costs: the objective, the greedy
//! and modularization-minimization heuristics, an exhaustive reference solver
//! and lower-bound certificates.

use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interp::submodular_minorization;
use crate::metric::{bird_weights, Metric, MstOracle};
use crate::mlb::{solve_mlb, solve_mlb_exact, solve_mlb_lst, MlbConfig, MlbProblem, MlbSolution};
pub use crate::partition::Partition;
use crate::setfn::{ModularFn, SetFunction, TOL};
use crate::subset::Subset;

/// Largest `m^n` accepted by [`brute_force_salb`].
pub const MAX_BRUTE_FORCE_ASSIGNMENTS: u64 = 10_000_000;
/// Minorizer validity is enumerated up to this ground-set size.
pub const MINORIZER_CHECK_LIMIT: usize = 10;

fn check_oracles<G: SetFunction>(gs: &[G]) -> Result<usize> {
    let n = gs
        .first()
        .ok_or_else(|| Error::Invalid("need at least one part".into()))?
        .n();
    if gs.iter().any(|g| g.n() != n) {
        return Err(Error::Invalid("oracles disagree on the ground set".into()));
    }
    Ok(n)
}

/// `max_j g_j(S_j)`.
pub fn salb_objective<G: SetFunction>(gs: &[G], p: &Partition) -> f64 {
    p.parts()
        .iter()
        .zip(gs)
        .map(|(&s, g)| g.eval(s))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Repeatedly lets every part propose the unassigned element that keeps its
/// own cost lowest, then grants the cheapest proposal. Ties go to the smaller
/// element, then the smaller part.
pub fn greedy<G: SetFunction>(gs: &[G]) -> Result<Partition> {
    let n = check_oracles(gs)?;
    let m = gs.len();
    let mut parts = vec![Subset::EMPTY; m];
    let mut unassigned = Subset::full(n);
    let mut assignment = vec![0; n];
    while !unassigned.is_empty() {
        let mut winner: Option<(f64, usize, usize)> = None;
        for (j, g) in gs.iter().enumerate() {
            let mut pick: Option<(f64, usize)> = None;
            for i in unassigned.iter() {
                let v = g.eval(parts[j].with(i));
                if pick.is_none_or(|(best, _)| v < best) {
                    pick = Some((v, i));
                }
            }
            let (v, i) = pick.expect("unassigned is nonempty");
            if winner.is_none_or(|(best, _, _)| v < best) {
                winner = Some((v, i, j));
            }
        }
        let (_, i, j) = winner.expect("m >= 1");
        parts[j] = parts[j].with(i);
        unassigned = unassigned.without(i);
        assignment[i] = j;
    }
    Partition::new(m, assignment)
}

/// Which marginals build the modular model around an anchor set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scheme {
    /// Additions priced at `g(i | S')`, removals at `g(i | S' - i)`.
    Eq5,
    /// Removals priced at `g(i | V - i)` instead.
    M1,
    /// Additions priced at `g(i | ∅)` instead.
    M2,
}

/// Modular model `M` of `g` with `M(anchor) = g(anchor)`:
/// `M(S) = g(S') + sum_{S - S'} add_i - sum_{S' - S} remove_i`.
pub fn modular_approx<G: SetFunction + ?Sized>(g: &G, anchor: Subset, scheme: Scheme) -> ModularFn {
    let n = g.n();
    let full = Subset::full(n);
    let g_anchor = g.eval(anchor);
    let g_full = g.eval(full);
    let g_empty = g.eval(Subset::EMPTY);
    let mut weights = vec![0.0; n];
    let mut removed_sum = 0.0;
    for (i, w) in weights.iter_mut().enumerate() {
        if anchor.contains(i) {
            *w = match scheme {
                Scheme::Eq5 | Scheme::M2 => g_anchor - g.eval(anchor.without(i)),
                Scheme::M1 => g_full - g.eval(full.without(i)),
            };
            removed_sum += *w;
        } else {
            *w = match scheme {
                Scheme::Eq5 | Scheme::M1 => g.eval(anchor.with(i)) - g_anchor,
                Scheme::M2 => g.eval(Subset::singleton(i)) - g_empty,
            };
        }
    }
    ModularFn::new(g_anchor - removed_sum, weights)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MlbMode {
    #[default]
    Exact,
    Lst,
}

/// Solves an M-LB: exactly when no node budget is set, otherwise under the budget.
fn solve_model(p: &MlbProblem, mlb: MlbConfig, warm: Option<&Partition>) -> Result<MlbSolution> {
    if mlb.node_limit.is_none() {
        solve_mlb_exact(p)
    } else {
        solve_mlb(p, mlb, warm)
    }
}

/// Optimum of the singleton model `sum_{i in S} g_j({i})`.
pub fn initial_partition<G: SetFunction>(
    gs: &[G],
    mode: MlbMode,
    mlb: MlbConfig,
) -> Result<Partition> {
    check_oracles(gs)?;
    let models: Vec<ModularFn> = gs.iter().map(ModularFn::from_singletons).collect();
    let p = MlbProblem::from_models(&models)?;
    let sol = match mode {
        MlbMode::Lst if p.is_nonnegative() => solve_mlb_lst(&p)?,
        _ => solve_model(&p, mlb, None)?,
    };
    Ok(sol.partition)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MminConfig {
    pub max_iters: usize,
    pub mlb: MlbConfig,
}

impl Default for MminConfig {
    fn default() -> Self {
        Self {
            max_iters: 100,
            mlb: MlbConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    FixedPoint,
    Cycle,
    IterationCap,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MminStep {
    pub iteration: usize,
    pub partition: Partition,
    /// `max_j g_j(S_j)`.
    pub objective: f64,
    /// Optimal value of the modular model that produced this partition.
    pub model_objective: Option<f64>,
    /// Whether that model was solved to proven optimality.
    pub model_optimal: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MminTrace {
    pub init: MminStep,
    pub iterations: Vec<MminStep>,
    pub best_partition: Partition,
    pub best_objective: f64,
    pub best_iteration: usize,
    pub termination: Termination,
}

impl MminTrace {
    pub fn len(&self) -> usize {
        self.iterations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.iterations.is_empty()
    }
}

/// Modularization-minimization: fit [`Scheme::Eq5`] models at the current
/// partition, re-solve the M-LB, and repeat until the partition repeats
/// (immediately or after a cycle) or `max_iters` models have been solved. The
/// best partition under the true objective is kept throughout.
pub fn mmin<G: SetFunction>(gs: &[G], init: &Partition, cfg: MminConfig) -> Result<MminTrace> {
    let n = check_oracles(gs)?;
    if init.n() != n || init.m() != gs.len() {
        return Err(Error::Invalid(format!(
            "initial partition has shape {}x{}, oracles need {}x{n}",
            init.m(),
            init.n(),
            gs.len()
        )));
    }
    let init_step = MminStep {
        iteration: 0,
        partition: init.clone(),
        objective: salb_objective(gs, init),
        model_objective: None,
        model_optimal: false,
    };
    let mut best = (init.clone(), init_step.objective, 0);
    let mut visited: HashSet<Partition> = HashSet::from([init.clone()]);
    let mut iterations: Vec<MminStep> = Vec::new();
    let mut prev = init.clone();
    let mut termination = Termination::IterationCap;

    for k in 1..=cfg.max_iters {
        let models: Vec<ModularFn> = gs
            .iter()
            .enumerate()
            .map(|(j, g)| modular_approx(g, prev.part(j), Scheme::Eq5))
            .collect();
        let p = MlbProblem::from_models(&models)?;
        let sol = solve_model(&p, cfg.mlb, Some(&prev))?;
        let objective = salb_objective(gs, &sol.partition);
        if objective < best.1 - TOL {
            best = (sol.partition.clone(), objective, k);
        }
        let next = sol.partition.clone();
        iterations.push(MminStep {
            iteration: k,
            partition: sol.partition,
            objective,
            model_objective: Some(sol.makespan),
            model_optimal: sol.optimal,
        });
        if next == prev {
            termination = Termination::FixedPoint;
            break;
        }
        if !visited.insert(next.clone()) {
            termination = Termination::Cycle;
            break;
        }
        prev = next;
    }

    Ok(MminTrace {
        init: init_step,
        iterations,
        best_partition: best.0,
        best_objective: best.1,
        best_iteration: best.2,
        termination,
    })
}

/// Exhaustive minimization of [`salb_objective`] over all `m^n` assignments.
/// The first assignment (lexicographically) within tolerance of the optimum wins.
pub fn brute_force_salb<G: SetFunction>(gs: &[G]) -> Result<(Partition, f64)> {
    let n = check_oracles(gs)?;
    let m = gs.len();
    let count = (m as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if count > MAX_BRUTE_FORCE_ASSIGNMENTS {
        return Err(Error::Capability {
            what: "brute-force assignments",
            size: usize::try_from(count).unwrap_or(usize::MAX),
            limit: MAX_BRUTE_FORCE_ASSIGNMENTS as usize,
        });
    }
    let tables: Option<Vec<Vec<f64>>> = (n <= 16).then(|| {
        gs.iter()
            .map(|g| Subset::full(n).subsets().map(|s| g.eval(s)).collect())
            .collect()
    });
    let value = |parts: &[Subset]| -> f64 {
        parts
            .iter()
            .enumerate()
            .map(|(j, &s)| match &tables {
                Some(t) => t[j][s.bits() as usize],
                None => gs[j].eval(s),
            })
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let mut assignment = vec![0usize; n];
    let mut best: Option<(Vec<usize>, f64)> = None;
    loop {
        let mut parts = vec![Subset::EMPTY; m];
        for (i, &j) in assignment.iter().enumerate() {
            parts[j] = parts[j].with(i);
        }
        let v = value(&parts);
        if best.as_ref().is_none_or(|(_, b)| v < b - TOL) {
            best = Some((assignment.clone(), v));
        }
        // odometer, last position fastest
        let mut pos = n;
        loop {
            if pos == 0 {
                let (a, v) = best.expect("at least one assignment");
                return Ok((Partition::new(m, a)?, v));
            }
            pos -= 1;
            assignment[pos] += 1;
            if assignment[pos] < m {
                break;
            }
            assignment[pos] = 0;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LowerBoundCert {
    /// Certifying factor: `alpha * g_j >= M_j` for every part.
    pub alpha: f64,
    /// Per-part factors used to scale the minorizers (all equal to `alpha` unless stated).
    pub part_alphas: Vec<f64>,
    pub minorizations: Vec<ModularFn>,
    /// Best partition found for the minorizer M-LB.
    pub partition: Partition,
    /// `max_j M_j(S''_j)` at that partition.
    pub mlb_value: f64,
    /// Proven lower bound on the minorizer M-LB optimum (`mlb_value` when `optimal`).
    pub mlb_bound: f64,
    pub optimal: bool,
    /// The certified bound `mlb_bound / alpha`.
    pub value: f64,
}

impl LowerBoundCert {
    /// Recomputes `max_j M_j(S''_j) / alpha` from the stored fields.
    pub fn recompute(&self) -> f64 {
        let top = self
            .partition
            .parts()
            .iter()
            .zip(&self.minorizations)
            .map(|(&s, mj)| mj.eval(s))
            .fold(f64::NEG_INFINITY, f64::max);
        top / self.alpha
    }
}

/// Lower bound on the SALB optimum from `alpha`-approximate minorizers:
/// `(1 / alpha) * min over partitions of max_j M_j(S_j)`.
pub fn lower_bound<G: SetFunction>(
    gs: &[G],
    minorizations: Vec<ModularFn>,
    alpha: f64,
    mlb: MlbConfig,
) -> Result<LowerBoundCert> {
    let n = check_oracles(gs)?;
    if !alpha.is_finite() || alpha < 1.0 {
        return Err(Error::Domain(format!(
            "alpha must be a finite value >= 1, got {alpha}"
        )));
    }
    if minorizations.len() != gs.len() || minorizations.iter().any(|mj| mj.weights.len() != n) {
        return Err(Error::Invalid(
            "one minorizer per part over the same ground set".into(),
        ));
    }
    if n <= MINORIZER_CHECK_LIMIT {
        for (j, (g, mj)) in gs.iter().zip(&minorizations).enumerate() {
            if let Some(s) = Subset::full(n)
                .subsets()
                .find(|&s| alpha * g.eval(s) < mj.eval(s) - TOL)
            {
                return Err(Error::Domain(format!(
                    "minorizer of part {} exceeds alpha * g at {s}",
                    j + 1
                )));
            }
        }
    }
    let p = MlbProblem::from_models(&minorizations)?;
    let sol = solve_model(&p, mlb, None)?;
    Ok(LowerBoundCert {
        alpha,
        part_alphas: vec![alpha; gs.len()],
        mlb_value: sol.makespan,
        mlb_bound: sol.lower_bound,
        optimal: sol.optimal,
        value: sol.lower_bound / alpha,
        partition: sol.partition,
        minorizations,
    })
}

/// Lower bound for MST-with-waiting-time costs from Bird cost shares. Part
/// `j` uses `alpha_j * sum_{i in S} (w_i + beta)` with
/// `alpha_j = MST_j^beta(S'_j) / sum_{i in S'_j} (w_i + beta)`, anchored at
/// `S'_j`; the certificate uses `alpha = max_j alpha_j`. An empty anchor gets
/// `alpha_j = 1`.
pub fn mst_lower_bound(
    metrics: &[Arc<Metric>],
    beta: f64,
    anchor: &Partition,
    mlb: MlbConfig,
) -> Result<LowerBoundCert> {
    let oracles = metrics
        .iter()
        .map(|m| MstOracle::new(m.clone(), beta))
        .collect::<Result<Vec<_>>>()?;
    let n = check_oracles(&oracles)?;
    if anchor.n() != n || anchor.m() != metrics.len() {
        return Err(Error::Invalid(
            "anchor partition does not match the metrics".into(),
        ));
    }
    let mut part_alphas = Vec::with_capacity(metrics.len());
    let mut minorizations = Vec::with_capacity(metrics.len());
    for (j, (metric, g)) in metrics.iter().zip(&oracles).enumerate() {
        let shares: Vec<f64> = bird_weights(metric)
            .weights
            .iter()
            .map(|w| w + beta)
            .collect();
        let part = anchor.part(j);
        let alpha_j = if part.is_empty() {
            1.0
        } else {
            let denom: f64 = part.iter().map(|i| shares[i]).sum();
            if denom <= 0.0 {
                return Err(Error::Degenerate(format!(
                    "cost shares of part {} sum to zero (coincident points)",
                    j + 1
                )));
            }
            (g.eval(part) / denom).max(1.0)
        };
        part_alphas.push(alpha_j);
        minorizations.push(ModularFn::new(
            0.0,
            shares.iter().map(|w| alpha_j * w).collect(),
        ));
    }
    let alpha = part_alphas.iter().copied().fold(1.0, f64::max);
    let mut cert = lower_bound(&oracles, minorizations, alpha, mlb)?;
    cert.part_alphas = part_alphas;
    Ok(cert)
}

/// Exact-minorizer lower bound for normalized nondecreasing submodular costs.
pub fn smlb_lower_bound<G: SetFunction>(
    fs: &[G],
    anchor: &Partition,
    mlb: MlbConfig,
) -> Result<LowerBoundCert> {
    let n = check_oracles(fs)?;
    if anchor.n() != n || anchor.m() != fs.len() {
        return Err(Error::Invalid(
            "anchor partition does not match the oracles".into(),
        ));
    }
    let minorizations = fs
        .iter()
        .enumerate()
        .map(|(j, f)| submodular_minorization(f, anchor.part(j)))
        .collect::<Result<Vec<_>>>()?;
    lower_bound(fs, minorizations, 1.0, mlb)
}
