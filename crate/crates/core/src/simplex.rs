//! Dense two-phase primal simplex with Bland's anti-cycling rule.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const PIVOT_EPS: f64 = 1e-11;
const COST_EPS: f64 = 1e-9;
const MAX_PIVOTS: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

impl Row {
    pub fn new(coeffs: Vec<f64>, relation: Relation, rhs: f64) -> Self {
        Self {
            coeffs,
            relation,
            rhs,
        }
    }
}

/// Variable bounds; `None` is infinite on that side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bound {
    pub lower: Option<f64>,
    pub upper: Option<f64>,
}

impl Bound {
    pub const NONNEGATIVE: Bound = Bound {
        lower: Some(0.0),
        upper: None,
    };
    pub const FREE: Bound = Bound {
        lower: None,
        upper: None,
    };
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpProblem {
    pub sense: Sense,
    pub objective: Vec<f64>,
    pub rows: Vec<Row>,
    pub bounds: Vec<Bound>,
}

impl LpProblem {
    /// Problem over nonnegative variables.
    pub fn new(sense: Sense, objective: Vec<f64>) -> Self {
        let bounds = vec![Bound::NONNEGATIVE; objective.len()];
        Self {
            sense,
            objective,
            rows: Vec::new(),
            bounds,
        }
    }

    pub fn with_row(mut self, coeffs: Vec<f64>, relation: Relation, rhs: f64) -> Self {
        self.rows.push(Row::new(coeffs, relation, rhs));
        self
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if self.bounds.len() != n {
            return Err(Error::Invalid(format!(
                "{} bounds for {n} variables",
                self.bounds.len()
            )));
        }
        if self.objective.iter().any(|c| !c.is_finite()) {
            return Err(Error::Invalid(
                "objective has a non-finite coefficient".into(),
            ));
        }
        for (k, row) in self.rows.iter().enumerate() {
            if row.coeffs.len() != n {
                return Err(Error::Invalid(format!(
                    "row {k} has {} coefficients, expected {n}",
                    row.coeffs.len()
                )));
            }
            if !row.rhs.is_finite() || row.coeffs.iter().any(|c| !c.is_finite()) {
                return Err(Error::Invalid(format!("row {k} has non-finite data")));
            }
        }
        for (k, b) in self.bounds.iter().enumerate() {
            let bad = |v: Option<f64>| v.is_some_and(|x| !x.is_finite());
            if bad(b.lower) || bad(b.upper) {
                return Err(Error::Invalid(format!(
                    "variable {k} has a non-finite bound"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: f64,
    pub x: Vec<f64>,
}

/// How an original variable maps onto nonnegative tableau columns.
#[derive(Debug, Clone, Copy)]
enum VarMap {
    /// `x = shift + col`
    Shifted { col: usize, shift: f64 },
    /// `x = upper - col`
    Mirrored { col: usize, upper: f64 },
    /// `x = pos - neg`
    Split { pos: usize, neg: usize },
}

struct Tableau {
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> f64 {
        self.rows[r][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.rows[r].clone();
        for (k, row) in self.rows.iter_mut().enumerate() {
            if k == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
                row[c] = 0.0;
            }
        }
        self.basis[r] = c;
    }

    fn reduced_costs(&self, cost: &[f64]) -> Vec<f64> {
        let mut d = cost.to_vec();
        d.push(0.0);
        for (r, row) in self.rows.iter().enumerate() {
            let cb = cost[self.basis[r]];
            if cb != 0.0 {
                for (dj, v) in d.iter_mut().zip(row) {
                    *dj -= cb * v;
                }
            }
        }
        d
    }

    /// Minimizes `cost` over columns `< allowed`; returns false when unbounded.
    fn optimize(&mut self, cost: &[f64], allowed: usize, pivots: &mut usize) -> Result<bool> {
        loop {
            let d = self.reduced_costs(cost);
            let Some(enter) = (0..allowed).find(|&j| d[j] < -COST_EPS) else {
                return Ok(true);
            };
            let mut leave: Option<(usize, f64)> = None;
            for r in 0..self.rows.len() {
                let a = self.rows[r][enter];
                if a > PIVOT_EPS {
                    let ratio = self.rhs(r) / a;
                    let better = match leave {
                        None => true,
                        Some((lr, lratio)) => {
                            ratio < lratio - PIVOT_EPS
                                || (ratio <= lratio + PIVOT_EPS && self.basis[r] < self.basis[lr])
                        }
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            let Some((r, _)) = leave else {
                return Ok(false);
            };
            self.pivot(r, enter);
            *pivots += 1;
            if *pivots > MAX_PIVOTS {
                return Err(Error::Numerical(format!(
                    "simplex exceeded {MAX_PIVOTS} pivots"
                )));
            }
        }
    }
}

/// Solves `p`; infeasible and unbounded problems are statuses, not errors.
pub fn solve_lp(p: &LpProblem) -> Result<LpSolution> {
    p.validate()?;
    let n = p.num_vars();

    // Nonnegative structural columns.
    let mut maps = Vec::with_capacity(n);
    let mut ncols = 0;
    let mut bound_rows: Vec<(usize, f64)> = Vec::new();
    for b in &p.bounds {
        let map = match (b.lower, b.upper) {
            (Some(l), u) => {
                if let Some(u) = u {
                    if u < l {
                        return Ok(LpSolution {
                            status: LpStatus::Infeasible,
                            value: f64::NAN,
                            x: vec![],
                        });
                    }
                    bound_rows.push((ncols, u - l));
                }
                VarMap::Shifted {
                    col: ncols,
                    shift: l,
                }
            }
            (None, Some(u)) => VarMap::Mirrored {
                col: ncols,
                upper: u,
            },
            (None, None) => {
                ncols += 1;
                VarMap::Split {
                    pos: ncols - 1,
                    neg: ncols,
                }
            }
        };
        ncols += 1;
        maps.push(map);
    }

    // Rows over structural columns with rhs >= 0.
    let mut rows: Vec<(Vec<f64>, Relation, f64)> = Vec::new();
    for row in &p.rows {
        let mut coeffs = vec![0.0; ncols];
        let mut rhs = row.rhs;
        for (k, &a) in row.coeffs.iter().enumerate() {
            match maps[k] {
                VarMap::Shifted { col, shift } => {
                    coeffs[col] += a;
                    rhs -= a * shift;
                }
                VarMap::Mirrored { col, upper } => {
                    coeffs[col] -= a;
                    rhs -= a * upper;
                }
                VarMap::Split { pos, neg } => {
                    coeffs[pos] += a;
                    coeffs[neg] -= a;
                }
            }
        }
        rows.push((coeffs, row.relation, rhs));
    }
    for (col, ub) in bound_rows {
        let mut coeffs = vec![0.0; ncols];
        coeffs[col] = 1.0;
        rows.push((coeffs, Relation::Le, ub));
    }
    for (coeffs, rel, rhs) in rows.iter_mut() {
        if *rhs < 0.0 {
            coeffs.iter_mut().for_each(|c| *c = -*c);
            *rhs = -*rhs;
            *rel = match rel {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
    }

    // Column layout: structural | slack/surplus | artificial.
    let nslack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
    let nart = rows.iter().filter(|r| r.1 != Relation::Le).count();
    let art_start = ncols + nslack;
    let width = art_start + nart;
    let mut t = Tableau {
        rows: Vec::with_capacity(rows.len()),
        basis: Vec::with_capacity(rows.len()),
        width,
    };
    let (mut s, mut a) = (ncols, art_start);
    for (coeffs, rel, rhs) in &rows {
        let mut line = vec![0.0; width + 1];
        line[..ncols].copy_from_slice(coeffs);
        line[width] = *rhs;
        match rel {
            Relation::Le => {
                line[s] = 1.0;
                t.basis.push(s);
                s += 1;
            }
            Relation::Ge => {
                line[s] = -1.0;
                s += 1;
                line[a] = 1.0;
                t.basis.push(a);
                a += 1;
            }
            Relation::Eq => {
                line[a] = 1.0;
                t.basis.push(a);
                a += 1;
            }
        }
        t.rows.push(line);
    }

    let mut pivots = 0;
    if nart > 0 {
        let mut phase1 = vec![0.0; width];
        phase1[art_start..].iter_mut().for_each(|c| *c = 1.0);
        t.optimize(&phase1, width, &mut pivots)?;
        let infeas: f64 = (0..t.rows.len())
            .filter(|&r| t.basis[r] >= art_start)
            .map(|r| t.rhs(r))
            .sum();
        let scale = 1.0 + rows.iter().map(|r| r.2.abs()).fold(0.0, f64::max);
        if infeas > 1e-9 * scale {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                value: f64::NAN,
                x: vec![],
            });
        }
        // Drive remaining artificials out of the basis; drop redundant rows.
        let mut r = 0;
        while r < t.rows.len() {
            if t.basis[r] >= art_start {
                if let Some(c) = (0..art_start).find(|&c| t.rows[r][c].abs() > 1e-9) {
                    t.pivot(r, c);
                } else {
                    t.rows.remove(r);
                    t.basis.remove(r);
                    continue;
                }
            }
            r += 1;
        }
    }

    let sign = match p.sense {
        Sense::Minimize => 1.0,
        Sense::Maximize => -1.0,
    };
    let mut cost = vec![0.0; width];
    for (k, &c) in p.objective.iter().enumerate() {
        match maps[k] {
            VarMap::Shifted { col, .. } => cost[col] += sign * c,
            VarMap::Mirrored { col, .. } => cost[col] -= sign * c,
            VarMap::Split { pos, neg } => {
                cost[pos] += sign * c;
                cost[neg] -= sign * c;
            }
        }
    }
    if !t.optimize(&cost, art_start, &mut pivots)? {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            value: f64::NAN,
            x: vec![],
        });
    }

    let mut col_val = vec![0.0; width];
    for (r, &b) in t.basis.iter().enumerate() {
        col_val[b] = t.rhs(r);
    }
    let x: Vec<f64> = maps
        .iter()
        .map(|m| match *m {
            VarMap::Shifted { col, shift } => shift + col_val[col],
            VarMap::Mirrored { col, upper } => upper - col_val[col],
            VarMap::Split { pos, neg } => col_val[pos] - col_val[neg],
        })
        .collect();
    let value = p.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    Ok(LpSolution {
        status: LpStatus::Optimal,
        value,
        x,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_feasible(p: &LpProblem, s: &LpSolution) {
        for row in &p.rows {
            let lhs: f64 = row.coeffs.iter().zip(&s.x).map(|(a, x)| a * x).sum();
            let ok = match row.relation {
                Relation::Le => lhs <= row.rhs + 1e-7,
                Relation::Ge => lhs >= row.rhs - 1e-7,
                Relation::Eq => (lhs - row.rhs).abs() <= 1e-7,
            };
            assert!(ok, "{row:?} violated by {:?}", s.x);
        }
        for (b, x) in p.bounds.iter().zip(&s.x) {
            assert!(b.lower.is_none_or(|l| *x >= l - 1e-7));
            assert!(b.upper.is_none_or(|u| *x <= u + 1e-7));
        }
    }

    #[test]
    fn interpolation_lp() {
        let mut p = LpProblem::new(Sense::Maximize, vec![1.0; 3]);
        for i in 0..3 {
            let mut c = vec![0.0; 3];
            c[i] = 1.0;
            p = p.with_row(c, Relation::Le, 6.0);
        }
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let mut c = vec![0.0; 3];
            c[i] = 1.0;
            c[j] = 1.0;
            p = p.with_row(c, Relation::Le, 10.0);
        }
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.value - 15.0).abs() < 1e-9);
        assert_feasible(&p, &s);
    }

    #[test]
    fn trivial_cases() {
        let p = LpProblem::new(Sense::Maximize, vec![1.0])
            .with_row(vec![1.0], Relation::Le, 0.0)
            .with_row(vec![1.0], Relation::Ge, 0.0);
        let s = solve_lp(&p).unwrap();
        assert_eq!((s.status, s.value), (LpStatus::Optimal, 0.0));

        let p = LpProblem::new(Sense::Maximize, vec![1.0, 1.0]).with_row(
            vec![1.0, 1.0],
            Relation::Le,
            1.0,
        );
        let s = solve_lp(&p).unwrap();
        assert!((s.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let p = LpProblem::new(Sense::Minimize, vec![1.0])
            .with_row(vec![1.0], Relation::Ge, 2.0)
            .with_row(vec![1.0], Relation::Le, 1.0);
        assert_eq!(solve_lp(&p).unwrap().status, LpStatus::Infeasible);

        let p = LpProblem::new(Sense::Maximize, vec![1.0, 0.0]).with_row(
            vec![-1.0, 1.0],
            Relation::Le,
            1.0,
        );
        assert_eq!(solve_lp(&p).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn free_and_bounded_variables() {
        // min x s.t. x >= -3 written as a row, x free
        let mut p =
            LpProblem::new(Sense::Minimize, vec![1.0]).with_row(vec![1.0], Relation::Ge, -3.0);
        p.bounds[0] = Bound::FREE;
        let s = solve_lp(&p).unwrap();
        assert!((s.value + 3.0).abs() < 1e-12);

        // max x + y, x in [1, 2], y <= 5 (no lower bound), x + y <= 4
        let mut p = LpProblem::new(Sense::Maximize, vec![1.0, 2.0]).with_row(
            vec![1.0, 1.0],
            Relation::Le,
            4.0,
        );
        p.bounds[0] = Bound {
            lower: Some(1.0),
            upper: Some(2.0),
        };
        p.bounds[1] = Bound {
            lower: None,
            upper: Some(5.0),
        };
        let s = solve_lp(&p).unwrap();
        assert_feasible(&p, &s);
        assert!((s.value - 7.0).abs() < 1e-9, "{s:?}");
    }

    #[test]
    fn redundant_equalities() {
        let p = LpProblem::new(Sense::Minimize, vec![1.0, 1.0])
            .with_row(vec![1.0, 1.0], Relation::Eq, 2.0)
            .with_row(vec![2.0, 2.0], Relation::Eq, 4.0)
            .with_row(vec![1.0, 0.0], Relation::Ge, 0.5);
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.value - 2.0).abs() < 1e-9);
        assert_feasible(&p, &s);
    }

    #[test]
    fn rejects_malformed_rows() {
        let p =
            LpProblem::new(Sense::Minimize, vec![1.0, 1.0]).with_row(vec![1.0], Relation::Le, 1.0);
        assert!(matches!(solve_lp(&p), Err(Error::Invalid(_))));
    }
}
