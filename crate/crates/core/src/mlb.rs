//! Modular load balancing: assign targets to machines minimizing the largest
//! `b_j + sum_{i in S_j} c_ij` (unrelated-machines makespan with offsets).

use serde::{Deserialize, Serialize};

use crate::error::{capability, Error, Result};
use crate::partition::Partition;
use crate::setfn::ModularFn;
use crate::simplex::{solve_lp, Bound, LpProblem, LpStatus, Relation, Sense};

/// Largest target count [`solve_mlb_exact`] accepts.
pub const MAX_EXACT_TARGETS: usize = 30;

/// `costs[i][j]` is the increment of machine `j` when it receives target `i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MlbProblem {
    pub m: usize,
    #[serde(rename = "b")]
    pub offsets: Vec<f64>,
    #[serde(rename = "c")]
    pub costs: Vec<Vec<f64>>,
}

impl MlbProblem {
    pub fn new(offsets: Vec<f64>, costs: Vec<Vec<f64>>) -> Result<Self> {
        let p = MlbProblem {
            m: offsets.len(),
            offsets,
            costs,
        };
        p.validate()?;
        Ok(p)
    }

    /// One machine per modular function: `b_j` from the offset, `c_ij` from the weights.
    pub fn from_models(models: &[ModularFn]) -> Result<Self> {
        let n = models.first().map_or(0, |m| m.weights.len());
        if models.iter().any(|m| m.weights.len() != n) {
            return Err(Error::Invalid("modular functions disagree on n".into()));
        }
        let costs = (0..n)
            .map(|i| models.iter().map(|m| m.weights[i]).collect())
            .collect();
        Self::new(models.iter().map(|m| m.offset).collect(), costs)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.offsets.len() != self.m {
            return Err(Error::Invalid(format!(
                "{} offsets for {} machines",
                self.offsets.len(),
                self.m
            )));
        }
        for (i, row) in self.costs.iter().enumerate() {
            if row.len() != self.m {
                return Err(Error::Invalid(format!(
                    "target {} has {} costs",
                    i + 1,
                    row.len()
                )));
            }
        }
        let finite = self
            .offsets
            .iter()
            .chain(self.costs.iter().flatten())
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::Invalid("non-finite load data".into()));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.costs.len()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.offsets
            .iter()
            .chain(self.costs.iter().flatten())
            .all(|&v| v >= 0.0)
    }

    pub fn loads(&self, assignment: &[usize]) -> Vec<f64> {
        let mut loads = self.offsets.clone();
        for (i, &j) in assignment.iter().enumerate() {
            loads[j] += self.costs[i][j];
        }
        loads
    }

    pub fn makespan(&self, assignment: &[usize]) -> f64 {
        self.loads(assignment)
            .into_iter()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    fn tolerance(&self) -> f64 {
        let scale: f64 = self.offsets.iter().fold(0.0, |a: f64, b| a.max(b.abs()))
            + self
                .costs
                .iter()
                .map(|r| r.iter().fold(0.0, |a: f64, c| a.max(c.abs())))
                .sum::<f64>();
        1e-9 * (1.0 + scale)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MlbSolution {
    pub partition: Partition,
    pub makespan: f64,
    /// Proven lower bound on the optimum; equals `makespan` when `optimal`.
    pub lower_bound: f64,
    pub optimal: bool,
    pub nodes: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MlbConfig {
    /// Branch-and-bound node budget per search phase; `None` searches to completion.
    pub node_limit: Option<u64>,
}

/// Exact optimum by branch-and-bound. Among optimal assignments the
/// lexicographically smallest assignment vector is returned.
pub fn solve_mlb_exact(p: &MlbProblem) -> Result<MlbSolution> {
    capability("exact M-LB target count", p.n(), MAX_EXACT_TARGETS)?;
    solve_mlb(p, MlbConfig::default(), None)
}

/// Branch-and-bound under a node budget, seeded with `warm_start` when given.
/// Without a budget the result is optimal; with one, `optimal` and
/// `lower_bound` say what was proven.
pub fn solve_mlb(
    p: &MlbProblem,
    cfg: MlbConfig,
    warm_start: Option<&Partition>,
) -> Result<MlbSolution> {
    p.validate()?;
    let n = p.n();
    let m = p.m;
    if let Some(w) = warm_start {
        if w.n() != n || w.m() != m {
            return Err(Error::Invalid(
                "warm start does not match the problem".into(),
            ));
        }
    }
    let tol = p.tolerance();
    let limit = cfg.node_limit.unwrap_or(u64::MAX);

    // Branch on targets whose machine choice matters most first.
    let mut order: Vec<usize> = (0..n).collect();
    let spread = |i: usize| {
        let row = &p.costs[i];
        row.iter().fold(f64::NEG_INFINITY, |a: f64, &b| a.max(b))
            - row.iter().fold(f64::INFINITY, |a: f64, &b| a.min(b))
    };
    order.sort_by(|&a, &b| spread(b).total_cmp(&spread(a)).then(a.cmp(&b)));

    let mut incumbent = greedy_assignment(p, &order);
    if let Some(w) = warm_start {
        if p.makespan(w.assignment()) < p.makespan(&incumbent) {
            incumbent = w.assignment().to_vec();
        }
    }
    local_search(p, &mut incumbent, tol);

    let mut search = Search::new(p, tol, limit);
    search.best_val = p.makespan(&incumbent);
    search.best = incumbent;
    let root_bound = search.bound(&order, 0);
    search.optimize(&order, 0);
    let mut nodes = search.nodes;
    let mut optimal = !search.exhausted;
    let mut lower_bound = if optimal {
        search.best_val
    } else {
        root_bound.min(search.best_val)
    };
    if !optimal {
        if let Ok(lp) = lp_relaxation_bound(p) {
            lower_bound = lower_bound.max(lp - tol);
        }
        if lower_bound >= search.best_val - tol {
            optimal = true;
        }
    }
    let mut assignment = search.best.clone();
    let mut makespan = search.best_val;

    if optimal {
        lower_bound = makespan;
        let mut canon = Search::new(p, tol, limit);
        let identity: Vec<usize> = (0..n).collect();
        canon.target = Some(makespan);
        canon.canonical(&identity, 0);
        nodes += canon.nodes;
        if canon.found {
            assignment = canon.best;
            makespan = p.makespan(&assignment);
        }
    }

    Ok(MlbSolution {
        partition: Partition::new(m, assignment)?,
        makespan,
        lower_bound,
        optimal,
        nodes,
    })
}

/// Each target in `order` goes to the machine with the smallest resulting load.
fn greedy_assignment(p: &MlbProblem, order: &[usize]) -> Vec<usize> {
    let mut loads = p.offsets.clone();
    let mut assignment = vec![0; p.n()];
    for &i in order {
        let j = (0..p.m)
            .min_by(|&a, &b| (loads[a] + p.costs[i][a]).total_cmp(&(loads[b] + p.costs[i][b])))
            .expect("m >= 1");
        loads[j] += p.costs[i][j];
        assignment[i] = j;
    }
    assignment
}

/// Moves single targets off critical machines while that strictly lowers the
/// larger of the two loads involved.
#[allow(clippy::needless_range_loop)]
fn local_search(p: &MlbProblem, assignment: &mut [usize], tol: f64) {
    let mut loads = p.loads(assignment);
    for _ in 0..(p.n() * p.m * 50).max(1) {
        let top = loads.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut moved = false;
        'scan: for i in 0..p.n() {
            let from = assignment[i];
            if loads[from] < top - tol {
                continue;
            }
            for to in (0..p.m).filter(|&to| to != from) {
                let new_from = loads[from] - p.costs[i][from];
                let new_to = loads[to] + p.costs[i][to];
                if new_from.max(new_to) < loads[from].max(loads[to]) - tol {
                    loads[from] = new_from;
                    loads[to] = new_to;
                    assignment[i] = to;
                    moved = true;
                    break 'scan;
                }
            }
        }
        if !moved {
            break;
        }
    }
}

struct Search<'a> {
    p: &'a MlbProblem,
    tol: f64,
    limit: u64,
    nodes: u64,
    exhausted: bool,
    loads: Vec<f64>,
    /// Per machine, sum of the negative costs of still-unassigned targets.
    neg_rem: Vec<f64>,
    /// Sum over unassigned targets of their cheapest cost.
    min_rem: f64,
    assignment: Vec<usize>,
    best: Vec<usize>,
    best_val: f64,
    /// Canonical mode: accept the first leaf within tolerance of this value.
    target: Option<f64>,
    found: bool,
}

impl<'a> Search<'a> {
    fn new(p: &'a MlbProblem, tol: f64, limit: u64) -> Self {
        let mut neg_rem = vec![0.0; p.m];
        let mut min_rem = 0.0;
        for row in &p.costs {
            for (j, &c) in row.iter().enumerate() {
                neg_rem[j] += c.min(0.0);
            }
            min_rem += row.iter().copied().fold(f64::INFINITY, f64::min);
        }
        Search {
            p,
            tol,
            limit,
            nodes: 0,
            exhausted: false,
            loads: p.offsets.clone(),
            neg_rem,
            min_rem,
            assignment: vec![0; p.n()],
            best: Vec::new(),
            best_val: f64::INFINITY,
            target: None,
            found: false,
        }
    }

    /// Lower bound on the makespan of any completion of the current node.
    fn bound(&self, order: &[usize], pos: usize) -> f64 {
        let m = self.p.m;
        let floor: Vec<f64> = (0..m).map(|j| self.loads[j] + self.neg_rem[j]).collect();
        let mut lb = floor.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let total: f64 = self.loads.iter().sum::<f64>() + self.min_rem;
        lb = lb.max(total / m as f64);
        for &i in &order[pos..] {
            let row = &self.p.costs[i];
            let cheapest = (0..m)
                .map(|j| floor[j] + row[j].max(0.0))
                .fold(f64::INFINITY, f64::min);
            lb = lb.max(cheapest);
        }
        lb
    }

    fn take(&mut self, i: usize) {
        let row = &self.p.costs[i];
        for (j, &c) in row.iter().enumerate() {
            self.neg_rem[j] -= c.min(0.0);
        }
        self.min_rem -= row.iter().copied().fold(f64::INFINITY, f64::min);
    }

    fn give_back(&mut self, i: usize) {
        let row = &self.p.costs[i];
        for (j, &c) in row.iter().enumerate() {
            self.neg_rem[j] += c.min(0.0);
        }
        self.min_rem += row.iter().copied().fold(f64::INFINITY, f64::min);
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.limit {
            self.exhausted = true;
        }
        self.exhausted
    }

    fn optimize(&mut self, order: &[usize], pos: usize) {
        if self.tick() {
            return;
        }
        if pos == order.len() {
            let v = self.p.makespan(&self.assignment);
            if v < self.best_val - self.tol {
                self.best_val = v;
                self.best = self.assignment.clone();
            }
            return;
        }
        if self.bound(order, pos) >= self.best_val - self.tol {
            return;
        }
        let i = order[pos];
        let mut machines: Vec<usize> = (0..self.p.m).collect();
        let row = &self.p.costs[i];
        machines.sort_by(|&a, &b| {
            (self.loads[a] + row[a])
                .total_cmp(&(self.loads[b] + row[b]))
                .then(a.cmp(&b))
        });
        self.take(i);
        for j in machines {
            self.loads[j] += self.p.costs[i][j];
            self.assignment[i] = j;
            self.optimize(order, pos + 1);
            self.loads[j] -= self.p.costs[i][j];
            if self.exhausted {
                break;
            }
        }
        self.give_back(i);
    }

    fn canonical(&mut self, order: &[usize], pos: usize) {
        let target = self.target.expect("canonical search needs a target");
        if self.tick() {
            return;
        }
        if pos == order.len() {
            if self.p.makespan(&self.assignment) <= target + self.tol {
                self.best = self.assignment.clone();
                self.found = true;
            }
            return;
        }
        if self.bound(order, pos) > target + self.tol {
            return;
        }
        let i = order[pos];
        self.take(i);
        for j in 0..self.p.m {
            self.loads[j] += self.p.costs[i][j];
            self.assignment[i] = j;
            self.canonical(order, pos + 1);
            self.loads[j] -= self.p.costs[i][j];
            if self.exhausted || self.found {
                break;
            }
        }
        self.give_back(i);
    }
}

/// Variables `x_ij` for allowed pairs, plus `y` when minimizing the makespan.
fn assignment_lp(
    p: &MlbProblem,
    allowed: &dyn Fn(usize, usize) -> bool,
    cap: Option<f64>,
) -> Option<(LpProblem, Vec<(usize, usize)>)> {
    let n = p.n();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..p.m).map(move |j| (i, j)))
        .filter(|&(i, j)| allowed(i, j))
        .collect();
    for i in 0..n {
        if !pairs.iter().any(|&(a, _)| a == i) {
            return None;
        }
    }
    let with_y = cap.is_none();
    let nv = pairs.len() + usize::from(with_y);
    let mut objective = vec![0.0; nv];
    if with_y {
        objective[nv - 1] = 1.0;
    }
    let mut lp = LpProblem::new(Sense::Minimize, objective);
    if with_y {
        lp.bounds[nv - 1] = Bound::FREE;
    }
    for i in 0..n {
        let mut row = vec![0.0; nv];
        for (k, &(a, _)) in pairs.iter().enumerate() {
            if a == i {
                row[k] = 1.0;
            }
        }
        lp.rows
            .push(crate::simplex::Row::new(row, Relation::Eq, 1.0));
    }
    for j in 0..p.m {
        let mut row = vec![0.0; nv];
        for (k, &(i, b)) in pairs.iter().enumerate() {
            if b == j {
                row[k] = p.costs[i][j];
            }
        }
        let rhs = match cap {
            Some(t) => t - p.offsets[j],
            None => {
                row[nv - 1] = -1.0;
                -p.offsets[j]
            }
        };
        lp.rows
            .push(crate::simplex::Row::new(row, Relation::Le, rhs));
    }
    Some((lp, pairs))
}

/// Optimal value of the LP relaxation of the assignment MILP; a lower bound
/// on the M-LB optimum that holds for data of any sign.
pub fn lp_relaxation_bound(p: &MlbProblem) -> Result<f64> {
    p.validate()?;
    let (lp, _) = assignment_lp(p, &|_, _| true, None).expect("all pairs allowed");
    let s = solve_lp(&lp)?;
    match s.status {
        LpStatus::Optimal => Ok(s.value),
        status => Err(Error::Numerical(format!("relaxation returned {status:?}"))),
    }
}

/// Parametric-pruning LP rounding for nonnegative data: find the smallest
/// threshold `T` whose pruned assignment LP is feasible, then round an
/// extreme point by matching fractional targets to distinct machines. The
/// result is at most `2T <= 2 OPT`.
pub fn solve_mlb_lst(p: &MlbProblem) -> Result<MlbSolution> {
    p.validate()?;
    if !p.is_nonnegative() {
        return Err(Error::Precondition(
            "LP rounding needs nonnegative offsets and costs; use solve_mlb_exact".into(),
        ));
    }
    let n = p.n();
    let m = p.m;
    let tol = p.tolerance();
    let max_b = p.offsets.iter().copied().fold(0.0, f64::max);
    if n == 0 {
        return Ok(MlbSolution {
            partition: Partition::new(m, vec![])?,
            makespan: max_b,
            lower_bound: max_b,
            optimal: true,
            nodes: 0,
        });
    }
    let entry = |i: usize, j: usize| p.offsets[j] + p.costs[i][j];
    let t_min = (0..n)
        .map(|i| (0..m).map(|j| entry(i, j)).fold(f64::INFINITY, f64::min))
        .fold(max_b, f64::max);
    let mut breaks: Vec<f64> = (0..n)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .map(|(i, j)| entry(i, j))
        .filter(|&v| v >= t_min)
        .collect();
    breaks.push(t_min);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    let min_y = |cut: f64| -> Result<f64> {
        let (lp, _) = assignment_lp(p, &|i, j| entry(i, j) <= cut + tol, None)
            .ok_or_else(|| Error::Numerical("pruned LP lost a target".into()))?;
        let s = solve_lp(&lp)?;
        match s.status {
            LpStatus::Optimal => Ok(s.value),
            status => Err(Error::Numerical(format!("pruned LP returned {status:?}"))),
        }
    };

    // y*(k) is nonincreasing in k, so "y*(k) <= breaks[k]" is monotone.
    let (mut lo, mut hi) = (0usize, breaks.len());
    let mut y_cache: Vec<Option<f64>> = vec![None; breaks.len()];
    let y_at = |k: usize, cache: &mut Vec<Option<f64>>| -> Result<f64> {
        if let Some(v) = cache[k] {
            return Ok(v);
        }
        let v = min_y(breaks[k])?;
        cache[k] = Some(v);
        Ok(v)
    };
    while lo < hi {
        let mid = (lo + hi) / 2;
        if y_at(mid, &mut y_cache)? <= breaks[mid] + tol {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let threshold = if lo == breaks.len() {
        y_at(breaks.len() - 1, &mut y_cache)?
    } else if lo > 0 {
        breaks[lo].min(y_at(lo - 1, &mut y_cache)?)
    } else {
        breaks[lo]
    };

    let mut slack = tol;
    let (solution, pairs) = loop {
        let (lp, pairs) = assignment_lp(
            p,
            &|i, j| entry(i, j) <= threshold + tol,
            Some(threshold + slack),
        )
        .ok_or_else(|| Error::Numerical("threshold LP lost a target".into()))?;
        let s = solve_lp(&lp)?;
        if s.status == LpStatus::Optimal {
            break (s, pairs);
        }
        slack *= 10.0;
        if slack > 1e-5 * (1.0 + threshold.abs()) {
            return Err(Error::Numerical(
                "threshold LP infeasible at its own optimum".into(),
            ));
        }
    };

    const FRAC: f64 = 1e-7;
    let mut assignment = vec![usize::MAX; n];
    let mut support: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        let x = solution.x[k];
        if x >= 1.0 - FRAC {
            assignment[i] = j;
        } else if x > FRAC {
            support[i].push(j);
        }
    }
    let fractional: Vec<usize> = (0..n).filter(|&i| assignment[i] == usize::MAX).collect();
    let mut owner: Vec<Option<usize>> = vec![None; m];
    for &i in &fractional {
        let mut seen = vec![false; m];
        augment(i, &support, &mut owner, &mut seen);
    }
    for (j, o) in owner.iter().enumerate() {
        if let Some(i) = *o {
            assignment[i] = j;
        }
    }
    // A vertex always admits the matching; numerical leftovers go to their best machine.
    for i in 0..n {
        if assignment[i] == usize::MAX {
            let loads = p.loads_partial(&assignment);
            assignment[i] = (0..m)
                .filter(|&j| entry(i, j) <= threshold + tol)
                .min_by(|&a, &b| (loads[a] + p.costs[i][a]).total_cmp(&(loads[b] + p.costs[i][b])))
                .expect("every target has an allowed machine");
        }
    }
    let makespan = p.makespan(&assignment);
    Ok(MlbSolution {
        partition: Partition::new(m, assignment)?,
        makespan,
        lower_bound: threshold,
        optimal: makespan <= threshold + tol,
        nodes: 0,
    })
}

fn augment(
    i: usize,
    support: &[Vec<usize>],
    owner: &mut [Option<usize>],
    seen: &mut [bool],
) -> bool {
    for &j in &support[i] {
        if seen[j] {
            continue;
        }
        seen[j] = true;
        if owner[j].is_none_or(|k| augment(k, support, owner, seen)) {
            owner[j] = Some(i);
            return true;
        }
    }
    false
}

impl MlbProblem {
    fn loads_partial(&self, assignment: &[usize]) -> Vec<f64> {
        let mut loads = self.offsets.clone();
        for (i, &j) in assignment.iter().enumerate() {
            if j != usize::MAX {
                loads[j] += self.costs[i][j];
            }
        }
        loads
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_targets() -> MlbProblem {
        MlbProblem::new(
            vec![0.0, 0.0],
            vec![vec![3.0, 1.0], vec![2.0, 2.0], vec![1.0, 3.0]],
        )
        .unwrap()
    }

    #[test]
    fn exact_small_instance() {
        let s = solve_mlb_exact(&three_targets()).unwrap();
        assert_eq!(s.makespan, 3.0);
        assert!(s.optimal);
        // lexicographically smallest optimum
        assert_eq!(s.partition.assignment(), &[1, 0, 0]);
    }

    #[test]
    fn exact_degenerate_shapes() {
        let empty = MlbProblem::new(vec![2.0, 5.0], vec![]).unwrap();
        assert_eq!(solve_mlb_exact(&empty).unwrap().makespan, 5.0);
        let one = MlbProblem::new(vec![1.0], vec![vec![2.0], vec![3.0]]).unwrap();
        assert_eq!(solve_mlb_exact(&one).unwrap().makespan, 6.0);
        let big = MlbProblem::new(vec![0.0], vec![vec![1.0]; 31]).unwrap();
        assert!(matches!(
            solve_mlb_exact(&big),
            Err(Error::Capability { .. })
        ));
    }

    #[test]
    fn exact_handles_negative_costs() {
        // moving target 2 onto machine 1 lowers that machine
        let p = MlbProblem::new(vec![5.0, 1.0], vec![vec![-4.0, 2.0], vec![3.0, 3.0]]).unwrap();
        let s = solve_mlb_exact(&p).unwrap();
        assert_eq!(s.makespan, 4.0);
        assert_eq!(s.partition.assignment(), &[0, 0]);
    }

    #[test]
    fn budgeted_search_reports_a_valid_bound() {
        let costs: Vec<Vec<f64>> = (0..40)
            .map(|i| vec![(i % 7 + 1) as f64, (i % 5 + 2) as f64, (i % 3 + 3) as f64])
            .collect();
        let p = MlbProblem::new(vec![0.0; 3], costs).unwrap();
        let s = solve_mlb(
            &p,
            MlbConfig {
                node_limit: Some(200),
            },
            None,
        )
        .unwrap();
        assert!(s.lower_bound <= s.makespan + 1e-9);
        assert!(s.lower_bound >= lp_relaxation_bound(&p).unwrap() - 1e-6);
        assert_eq!(s.makespan, p.makespan(s.partition.assignment()));
    }

    #[test]
    fn warm_start_is_never_worsened() {
        let p = three_targets();
        let warm = Partition::new(2, vec![1, 1, 0]).unwrap();
        let s = solve_mlb(
            &p,
            MlbConfig {
                node_limit: Some(1),
            },
            Some(&warm),
        )
        .unwrap();
        assert!(s.makespan <= p.makespan(warm.assignment()));
    }

    #[test]
    fn lst_within_factor_two() {
        let p = three_targets();
        let s = solve_mlb_lst(&p).unwrap();
        assert!(s.makespan <= 6.0 + 1e-9);
        assert!(s.lower_bound <= 3.0 + 1e-9);
        let one = MlbProblem::new(vec![1.0], vec![vec![2.0], vec![3.0]]).unwrap();
        assert_eq!(solve_mlb_lst(&one).unwrap().makespan, 6.0);
    }

    #[test]
    fn lst_rejects_negative_data() {
        let p = MlbProblem::new(vec![0.0, 0.0], vec![vec![-1.0, 1.0]]).unwrap();
        assert!(matches!(solve_mlb_lst(&p), Err(Error::Precondition(_))));
    }

    #[test]
    fn relaxation_bound_of_small_instance() {
        // splitting target 2 evenly balances both machines at 2
        let lp = lp_relaxation_bound(&three_targets()).unwrap();
        assert!((lp - 2.0).abs() < 1e-9);
    }

    #[test]
    fn json_schema_mirrors_fields() {
        let json = serde_json::to_string(&three_targets()).unwrap();
        assert_eq!(
            json,
            r#"{"m":2,"b":[0.0,0.0],"c":[[3.0,1.0],[2.0,2.0],[1.0,3.0]]}"#
        );
    }
}
