//! Subadditive interpolation of sampled submodular values, and Edmonds'
//! greedy algorithm for exact modular minorizers.
//!
//! Given samples `(C_k, f_k)`, the interpolant is
//! `g_C(S) = max { z(S) : z >= 0, z(C_k) <= f_k for all k }`, a linear program
//! over the polytope cut out by the sampled constraints only.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::setfn::{Flags, ModularFn, SetFunction};
use crate::simplex::{solve_lp, LpProblem, LpStatus, Relation, Sense};
use crate::subset::{GroundSet, Subset};

#[derive(Debug, Clone, PartialEq)]
pub struct SampleCollection {
    ground: GroundSet,
    samples: Vec<(Subset, f64)>,
}

impl SampleCollection {
    pub fn new(n: usize, samples: Vec<(Subset, f64)>) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        for (k, &(c, v)) in samples.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::Invalid(format!("sample {k} has an empty set")));
            }
            if !c.fits(n) {
                return Err(Error::Invalid(format!("sample {k} leaves the ground set")));
            }
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Domain(format!("sample {c} has value {v}")));
            }
            if samples[..k].iter().any(|&(d, _)| d == c) {
                return Err(Error::Invalid(format!("sample set {c} appears twice")));
            }
        }
        Ok(Self { ground, samples })
    }

    /// Samples every set in `sets` from `f`.
    pub fn from_function<G: SetFunction + ?Sized>(
        f: &G,
        sets: impl IntoIterator<Item = Subset>,
    ) -> Result<Self> {
        let samples = sets.into_iter().map(|c| (c, f.eval(c))).collect();
        Self::new(f.n(), samples)
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn samples(&self) -> &[(Subset, f64)] {
        &self.samples
    }

    pub fn polymatroid(&self) -> ImitatedPolymatroid {
        ImitatedPolymatroid {
            n: self.n(),
            rows: self.samples.clone(),
            covered: self
                .samples
                .iter()
                .fold(Subset::EMPTY, |acc, &(c, _)| acc.union(c)),
        }
    }
}

/// JSON form `{"n": int, "samples": [{"set": [elements], "value": real}, ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampleFile {
    pub n: usize,
    pub samples: Vec<SampleEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampleEntry {
    pub set: Vec<usize>,
    pub value: f64,
}

impl TryFrom<SampleFile> for SampleCollection {
    type Error = Error;

    fn try_from(file: SampleFile) -> Result<Self> {
        let samples = file
            .samples
            .iter()
            .map(|e| Ok((Subset::from_elements(&e.set, file.n)?, e.value)))
            .collect::<Result<Vec<_>>>()?;
        SampleCollection::new(file.n, samples)
    }
}

/// `{z >= 0 : z(C_k) <= f_k}` stored as its constraint rows.
#[derive(Debug, Clone, PartialEq)]
pub struct ImitatedPolymatroid {
    pub n: usize,
    pub rows: Vec<(Subset, f64)>,
    /// Union of the sampled sets; coordinates outside it are unconstrained.
    pub covered: Subset,
}

impl ImitatedPolymatroid {
    pub fn is_bounded(&self) -> bool {
        self.covered == Subset::full(self.n)
    }

    pub fn contains(&self, z: &[f64], tol: f64) -> bool {
        z.iter().all(|&v| v >= -tol)
            && self
                .rows
                .iter()
                .all(|&(c, f)| c.iter().map(|i| z[i]).sum::<f64>() <= f + tol)
    }
}

/// `g_C(S)`, by linear programming. Every element of `S` must lie in a sample.
pub fn interp_eval(coll: &SampleCollection, s: Subset) -> Result<f64> {
    let poly = coll.polymatroid();
    if let Some(i) = s.difference(poly.covered).iter().next() {
        return Err(Error::Unbounded { element: i + 1 });
    }
    if s.is_empty() {
        return Ok(0.0);
    }
    let n = coll.n();
    let objective = (0..n)
        .map(|i| if s.contains(i) { 1.0 } else { 0.0 })
        .collect();
    let mut lp = LpProblem::new(Sense::Maximize, objective);
    for &(c, f) in &poly.rows {
        let coeffs = (0..n)
            .map(|i| if c.contains(i) { 1.0 } else { 0.0 })
            .collect();
        lp = lp.with_row(coeffs, Relation::Le, f);
    }
    let sol = solve_lp(&lp)?;
    match sol.status {
        LpStatus::Optimal => Ok(sol.value),
        LpStatus::Unbounded => Err(Error::Unbounded {
            element: s
                .difference(poly.covered)
                .iter()
                .next()
                .map_or(0, |i| i + 1),
        }),
        LpStatus::Infeasible => Err(Error::Numerical(
            "interpolation LP reported infeasible".into(),
        )),
    }
}

/// The interpolant as an oracle; requires every element to be sampled.
pub struct InterpOracle {
    coll: SampleCollection,
}

impl InterpOracle {
    pub fn new(coll: SampleCollection) -> Result<Self> {
        let poly = coll.polymatroid();
        if let Some(i) = Subset::full(coll.n())
            .difference(poly.covered)
            .iter()
            .next()
        {
            return Err(Error::Unbounded { element: i + 1 });
        }
        Ok(Self { coll })
    }
}

impl SetFunction for InterpOracle {
    fn n(&self) -> usize {
        self.coll.n()
    }

    fn eval(&self, s: Subset) -> f64 {
        interp_eval(&self.coll, s).expect("coverage checked at construction")
    }

    fn flags(&self) -> Flags {
        Flags {
            normalized: true,
            nonnegative: true,
            nondecreasing: true,
            subadditive: true,
            submodular: false,
            s_minimal: true,
        }
    }
}

/// `w[v_h] = f(L(h)) - f(L(h-1))` along the prefixes `L(h)` of `order`
/// (0-based indices), so that `w(L(h)) = f(L(h))` for every prefix.
pub fn edmonds_greedy<G: SetFunction + ?Sized>(f: &G, order: &[usize]) -> Result<Vec<f64>> {
    let n = f.n();
    let mut seen = vec![false; n];
    if order.len() != n
        || !order
            .iter()
            .all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
    {
        return Err(Error::Domain(format!(
            "order {order:?} is not a permutation of {n} elements"
        )));
    }
    let mut w = vec![0.0; n];
    let mut prefix = Subset::EMPTY;
    let mut prev = f.eval(prefix);
    for &v in order {
        prefix = prefix.with(v);
        let cur = f.eval(prefix);
        w[v] = cur - prev;
        prev = cur;
    }
    Ok(w)
}

/// Exact modular minorizer of a polymatroid function at `anchor`: greedy
/// weights along the order that lists `anchor` first, then the rest, each
/// block ascending.
pub fn submodular_minorization<G: SetFunction + ?Sized>(
    f: &G,
    anchor: Subset,
) -> Result<ModularFn> {
    let flags = f.flags();
    if !(flags.submodular && flags.nondecreasing && flags.normalized) {
        return Err(Error::Domain(
            "exact minorization needs a normalized nondecreasing submodular function".into(),
        ));
    }
    let rest = Subset::full(f.n()).difference(anchor);
    let order: Vec<usize> = anchor.iter().chain(rest.iter()).collect();
    Ok(ModularFn::new(0.0, edmonds_greedy(f, &order)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::{audit, Property};
    use crate::setfn::fixtures::quad;
    use crate::setfn::FnOracle;

    fn proper_subsets() -> Vec<Subset> {
        (1..7).map(Subset).collect()
    }

    fn set(elements: &[usize]) -> Subset {
        Subset::from_elements(elements, 3).unwrap()
    }

    #[test]
    fn interpolates_quad() {
        let coll = SampleCollection::from_function(&quad(), proper_subsets()).unwrap();
        assert!((interp_eval(&coll, set(&[1])).unwrap() - 6.0).abs() < 1e-9);
        assert!((interp_eval(&coll, set(&[1, 2])).unwrap() - 10.0).abs() < 1e-9);
        assert!((interp_eval(&coll, Subset::full(3)).unwrap() - 15.0).abs() < 1e-9);
        assert_eq!(interp_eval(&coll, Subset::EMPTY).unwrap(), 0.0);
    }

    #[test]
    fn singleton_samples_are_box_constraints() {
        let values = [1.5, 2.0, 4.0];
        let coll = SampleCollection::new(
            3,
            (0..3).map(|i| (Subset::singleton(i), values[i])).collect(),
        )
        .unwrap();
        for s in Subset::full(3).subsets() {
            let want: f64 = s.iter().map(|i| values[i]).sum();
            assert!((interp_eval(&coll, s).unwrap() - want).abs() < 1e-9);
        }
    }

    #[test]
    fn uncovered_element_is_unbounded() {
        let coll = SampleCollection::new(3, vec![(set(&[1, 2]), 4.0)]).unwrap();
        assert!(matches!(
            interp_eval(&coll, set(&[3])),
            Err(Error::Unbounded { element: 3 })
        ));
        assert!(interp_eval(&coll, set(&[1])).is_ok());
        assert!(!coll.polymatroid().is_bounded());
        assert!(InterpOracle::new(coll).is_err());
    }

    #[test]
    fn interpolant_is_not_submodular() {
        let coll = SampleCollection::from_function(&quad(), proper_subsets()).unwrap();
        let g = InterpOracle::new(coll).unwrap();
        let r = audit(&g, Property::Submodular).unwrap();
        assert!(!r.holds);
        // g({1,2}) + g({1,3}) = 20 < 21 = g(V) + g({1})
        let w = r.witness.unwrap();
        assert_eq!(w.sets, vec![set(&[1, 2]), set(&[1, 3])]);
        assert!(audit(&g, Property::Subadditive).unwrap().holds);
        assert!(audit(&g, Property::Nondecreasing).unwrap().holds);
    }

    #[test]
    fn collection_validation() {
        assert!(SampleCollection::new(2, vec![(Subset::EMPTY, 1.0)]).is_err());
        assert!(SampleCollection::new(2, vec![(Subset(1), -1.0)]).is_err());
        assert!(SampleCollection::new(2, vec![(Subset(1), 1.0), (Subset(1), 2.0)]).is_err());
        assert!(SampleCollection::new(2, vec![(Subset(4), 1.0)]).is_err());
        let file: SampleFile =
            serde_json::from_str(r#"{"n":2,"samples":[{"set":[1,2],"value":3}]}"#).unwrap();
        let coll = SampleCollection::try_from(file).unwrap();
        assert_eq!(coll.samples(), &[(Subset(3), 3.0)]);
    }

    #[test]
    fn greedy_weights() {
        assert_eq!(
            edmonds_greedy(&quad(), &[0, 1, 2]).unwrap(),
            vec![6.0, 4.0, 2.0]
        );
        assert_eq!(
            edmonds_greedy(&quad(), &[2, 0, 1]).unwrap(),
            vec![4.0, 2.0, 6.0]
        );
        let m = ModularFn::new(0.0, vec![1.0, 5.0, 2.0]);
        assert_eq!(edmonds_greedy(&m, &[1, 2, 0]).unwrap(), m.weights);
        assert!(edmonds_greedy(&quad(), &[0, 0, 1]).is_err());
        assert!(edmonds_greedy(&quad(), &[0, 1]).is_err());
        assert!(edmonds_greedy(&quad(), &[0, 1, 3]).is_err());
    }

    #[test]
    fn minorization_is_anchored_and_below() {
        let f = quad();
        for anchor in Subset::full(3).subsets() {
            let mf = submodular_minorization(&f, anchor).unwrap();
            assert_eq!(mf.eval(anchor), f.eval(anchor));
            for s in Subset::full(3).subsets() {
                assert!(mf.eval(s) <= f.eval(s) + 1e-12);
            }
        }
        let mf = submodular_minorization(&f, set(&[1, 2])).unwrap();
        assert_eq!(mf.weights, vec![6.0, 4.0, 2.0]);
        let not_sub = FnOracle::new(3, Flags::default(), |s: Subset| s.len() as f64);
        assert!(matches!(
            submodular_minorization(&not_sub, Subset::EMPTY),
            Err(Error::Domain(_))
        ));
    }
}
