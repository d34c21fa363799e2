//! Set-function oracles and the operations defined directly on them.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{capability, Error, Result};
use crate::metric::{mst_cost, Metric};
use crate::subset::{Subset, MAX_ENUMERATION};

/// Absolute tolerance for every inequality check on oracle values.
pub const TOL: f64 = 1e-9;

/// Classes a set function is declared to belong to. Declarations are promises;
/// [`crate::audit`] can check them exhaustively on small ground sets.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub normalized: bool,
    pub nonnegative: bool,
    pub nondecreasing: bool,
    pub subadditive: bool,
    pub submodular: bool,
    pub s_minimal: bool,
}

impl Flags {
    /// Flags of a normalized nonnegative nondecreasing submodular function.
    pub fn polymatroid() -> Self {
        Flags {
            normalized: true,
            nonnegative: true,
            nondecreasing: true,
            subadditive: true,
            submodular: true,
            s_minimal: true,
        }
    }
}

/// Deterministic set function `g: 2^V -> R` over `V = {1, .., n}`.
pub trait SetFunction: Send + Sync {
    fn n(&self) -> usize;
    fn eval(&self, s: Subset) -> f64;
    fn flags(&self) -> Flags;
}

impl<T: SetFunction + ?Sized> SetFunction for &T {
    fn n(&self) -> usize {
        (**self).n()
    }
    fn eval(&self, s: Subset) -> f64 {
        (**self).eval(s)
    }
    fn flags(&self) -> Flags {
        (**self).flags()
    }
}

impl<T: SetFunction + ?Sized> SetFunction for Box<T> {
    fn n(&self) -> usize {
        (**self).n()
    }
    fn eval(&self, s: Subset) -> f64 {
        (**self).eval(s)
    }
    fn flags(&self) -> Flags {
        (**self).flags()
    }
}

impl<T: SetFunction + ?Sized> SetFunction for Arc<T> {
    fn n(&self) -> usize {
        (**self).n()
    }
    fn eval(&self, s: Subset) -> f64 {
        (**self).eval(s)
    }
    fn flags(&self) -> Flags {
        (**self).flags()
    }
}

/// Oracle backed by a closure.
pub struct FnOracle<F> {
    n: usize,
    flags: Flags,
    f: F,
}

impl<F: Fn(Subset) -> f64 + Send + Sync> FnOracle<F> {
    pub fn new(n: usize, flags: Flags, f: F) -> Self {
        Self { n, flags, f }
    }
}

impl<F: Fn(Subset) -> f64 + Send + Sync> SetFunction for FnOracle<F> {
    fn n(&self) -> usize {
        self.n
    }
    fn eval(&self, s: Subset) -> f64 {
        (self.f)(s)
    }
    fn flags(&self) -> Flags {
        self.flags
    }
}

/// `M(S) = offset + sum_{i in S} weights[i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModularFn {
    pub offset: f64,
    pub weights: Vec<f64>,
}

impl ModularFn {
    pub fn new(offset: f64, weights: Vec<f64>) -> Self {
        Self { offset, weights }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(0.0, vec![0.0; n])
    }

    /// `S -> sum_{i in S} g({i})`, the singleton model of a normalized `g`.
    pub fn from_singletons<G: SetFunction>(g: &G) -> Self {
        Self::new(
            0.0,
            (0..g.n()).map(|i| g.eval(Subset::singleton(i))).collect(),
        )
    }

    pub fn eval(&self, s: Subset) -> f64 {
        self.offset + s.iter().map(|i| self.weights[i]).sum::<f64>()
    }
}

impl SetFunction for ModularFn {
    fn n(&self) -> usize {
        self.weights.len()
    }
    fn eval(&self, s: Subset) -> f64 {
        ModularFn::eval(self, s)
    }
    fn flags(&self) -> Flags {
        let nonneg_weights = self.weights.iter().all(|&c| c >= 0.0);
        Flags {
            normalized: self.offset == 0.0,
            nonnegative: self.offset >= 0.0 && nonneg_weights,
            nondecreasing: nonneg_weights,
            subadditive: self.offset >= 0.0,
            submodular: true,
            s_minimal: nonneg_weights,
        }
    }
}

/// Marginal gain `g(i | S) = g(S + i) - g(S)`; `i` is a 0-based index.
pub fn marginal<G: SetFunction + ?Sized>(g: &G, i: usize, s: Subset) -> Result<f64> {
    if i >= g.n() {
        return Err(Error::Domain(format!(
            "element {} outside ground set",
            i + 1
        )));
    }
    if s.contains(i) {
        return Err(Error::Domain(format!("element {} already in {s}", i + 1)));
    }
    Ok(g.eval(s.with(i)) - g.eval(s))
}

/// Curvature at `s`: one minus the smallest ratio `g(i | A - i) / g({i})` over
/// `A ⊆ s` and `i ∈ A`, by full enumeration. Values above one can occur for
/// non-monotone `g`; they are returned as computed.
pub fn curvature<G: SetFunction + ?Sized>(g: &G, s: Subset) -> Result<f64> {
    capability("curvature subset size", s.len(), MAX_ENUMERATION)?;
    let singles: Vec<f64> = (0..g.n()).map(|i| g.eval(Subset::singleton(i))).collect();
    for i in s.iter() {
        if singles[i] <= 0.0 {
            return Err(Error::Domain(format!(
                "curvature needs g({{{}}}) > 0, got {}",
                i + 1,
                singles[i]
            )));
        }
    }
    if s.is_empty() {
        return Ok(0.0);
    }
    let mut min_ratio = f64::INFINITY;
    for a in s.subsets() {
        let ga = g.eval(a);
        for i in a.iter() {
            let ratio = (ga - g.eval(a.without(i))) / singles[i];
            if ratio < min_ratio {
                min_ratio = ratio;
            }
        }
    }
    Ok(1.0 - min_ratio)
}

/// Split `g = g_plus + f_plus` with `f_plus` nonnegative submodular or modular.
pub struct Decomposition {
    pub g_plus: Box<dyn SetFunction>,
    pub f_plus: Box<dyn SetFunction>,
}

impl Decomposition {
    pub fn new(g_plus: Box<dyn SetFunction>, f_plus: Box<dyn SetFunction>) -> Result<Self> {
        if g_plus.n() != f_plus.n() {
            return Err(Error::Invalid(format!(
                "decomposition parts disagree on n: {} vs {}",
                g_plus.n(),
                f_plus.n()
            )));
        }
        Ok(Self { g_plus, f_plus })
    }

    pub fn n(&self) -> usize {
        self.g_plus.n()
    }

    pub fn eval(&self, s: Subset) -> f64 {
        self.g_plus.eval(s) + self.f_plus.eval(s)
    }
}

/// `1 - min_i f_plus(i | V - i) / g({i})`, computable without enumerating subsets.
pub fn pseudo_curvature(d: &Decomposition) -> Result<f64> {
    let n = d.n();
    let full = Subset::full(n);
    let f_full = d.f_plus.eval(full);
    let mut min_ratio = f64::INFINITY;
    for i in 0..n {
        let gi = d.eval(Subset::singleton(i));
        if gi <= 0.0 {
            return Err(Error::Domain(format!(
                "pseudo-curvature needs g({{{}}}) > 0, got {gi}",
                i + 1
            )));
        }
        let ratio = (f_full - d.f_plus.eval(full.without(i))) / gi;
        min_ratio = min_ratio.min(ratio);
    }
    if n == 0 {
        return Ok(0.0);
    }
    Ok(1.0 - min_ratio)
}

/// Exhaustive `min_S g(S)`; ties go to the smallest mask.
pub fn minimize_unconstrained<G: SetFunction + ?Sized>(g: &G) -> Result<(Subset, f64)> {
    capability(
        "unconstrained minimization ground set",
        g.n(),
        MAX_ENUMERATION,
    )?;
    let mut best = (Subset::EMPTY, g.eval(Subset::EMPTY));
    for s in Subset::full(g.n()).subsets().skip(1) {
        let v = g.eval(s);
        if v < best.1 - TOL {
            best = (s, v);
        }
    }
    Ok(best)
}

/// Prize-collecting Steiner tree objective `MST(S) + p(V - S)`.
pub struct PcstOracle {
    metric: Arc<Metric>,
    prizes: Vec<f64>,
    total_prize: f64,
}

impl SetFunction for PcstOracle {
    fn n(&self) -> usize {
        self.metric.n()
    }
    fn eval(&self, s: Subset) -> f64 {
        let collected: f64 = s.iter().map(|i| self.prizes[i]).sum();
        mst_cost(&self.metric, s) + (self.total_prize - collected)
    }
    fn flags(&self) -> Flags {
        Flags {
            nonnegative: true,
            subadditive: true,
            ..Flags::default()
        }
    }
}

pub fn pcst_oracle(metric: Arc<Metric>, prizes: Vec<f64>) -> Result<PcstOracle> {
    if prizes.len() != metric.n() {
        return Err(Error::Invalid(format!(
            "{} prizes for {} elements",
            prizes.len(),
            metric.n()
        )));
    }
    if let Some(i) = prizes.iter().position(|&p| p.is_nan() || p < 0.0) {
        return Err(Error::Domain(format!(
            "prize of element {} is negative: {}",
            i + 1,
            prizes[i]
        )));
    }
    let total_prize = prizes.iter().sum();
    Ok(PcstOracle {
        metric,
        prizes,
        total_prize,
    })
}
