//! Exhaustive (and sampled) checks of the class inequalities a set function
//! declares in its [`Flags`].
//!
//! Each property is checked against a fixed family of witness shapes:
//!
//! | property      | witness          | violated when                          |
//! |---------------|------------------|----------------------------------------|
//! | normalized    | `(∅)`            | `g(∅) != 0`                            |
//! | nonnegative   | `(S)`            | `g(S) < 0`                             |
//! | nondecreasing | `(S, S + i)`     | `g(S) > g(S + i)`                      |
//! | subadditive   | `(S, T)`         | `g(S) + g(T) < g(S ∪ T)`               |
//! | submodular    | `(S + i, S + j)` | `g(S+i) + g(S+j) < g(S+i+j) + g(S)`    |
//! | s_minimal     | `({i}, S + i)`   | `g({i}) > g(S + i)`                    |
//!
//! The single-step shapes for monotonicity and submodularity detect a violation
//! whenever any violating pair exists. Among violations the reported witness has
//! the smallest total cardinality, then the lexicographically smallest masks.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{capability, Error, Result};
use crate::setfn::{SetFunction, TOL};
use crate::subset::{Subset, MAX_ENUMERATION};

/// Pair enumeration for subadditivity is `O(4^n)`, so it has its own bound.
pub const MAX_SUBADDITIVE_ENUMERATION: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Normalized,
    Nonnegative,
    Nondecreasing,
    Subadditive,
    Submodular,
    SMinimal,
}

impl Property {
    pub const ALL: [Property; 6] = [
        Property::Normalized,
        Property::Nonnegative,
        Property::Nondecreasing,
        Property::Subadditive,
        Property::Submodular,
        Property::SMinimal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Normalized => "normalized",
            Property::Nonnegative => "nonnegative",
            Property::Nondecreasing => "nondecreasing",
            Property::Subadditive => "subadditive",
            Property::Submodular => "submodular",
            Property::SMinimal => "s_minimal",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Violating subsets together with the values that were compared.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub sets: Vec<Subset>,
    pub lhs: f64,
    pub rhs: f64,
}

impl Witness {
    fn key(&self) -> (usize, Vec<u64>) {
        (
            self.sets.iter().map(|s| s.len()).sum(),
            self.sets.iter().map(|s| s.bits()).collect(),
        )
    }

    /// Re-evaluates the inequality; `true` iff it is still violated.
    pub fn replay<G: SetFunction + ?Sized>(&self, g: &G, property: Property) -> bool {
        let (lhs, rhs) = sides(g, property, &self.sets);
        violated(property, lhs, rhs)
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sets: Vec<String> = self.sets.iter().map(|s| s.to_string()).collect();
        write!(f, "{} ({} vs {})", sets.join(","), self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub property: Property,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "{}: OK", self.property),
            Some(w) => write!(f, "{}: FAIL witness {w}", self.property),
        }
    }
}

/// Result of a sampled audit: it can refute a property but never confirm it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampledAudit {
    pub property: Property,
    pub samples: usize,
    pub witness: Option<Witness>,
}

/// The two sides compared for a witness, arranged so that the property
/// requires `lhs >= rhs` (or `lhs == rhs` for normalization).
fn sides<G: SetFunction + ?Sized>(g: &G, property: Property, sets: &[Subset]) -> (f64, f64) {
    match property {
        Property::Normalized => (g.eval(sets[0]), 0.0),
        Property::Nonnegative => (g.eval(sets[0]), 0.0),
        Property::Nondecreasing | Property::SMinimal => (g.eval(sets[1]), g.eval(sets[0])),
        Property::Subadditive => (
            g.eval(sets[0]) + g.eval(sets[1]),
            g.eval(sets[0].union(sets[1])),
        ),
        Property::Submodular => (
            g.eval(sets[0]) + g.eval(sets[1]),
            g.eval(sets[0].union(sets[1])) + g.eval(sets[0].intersection(sets[1])),
        ),
    }
}

fn violated(property: Property, lhs: f64, rhs: f64) -> bool {
    match property {
        Property::Normalized => (lhs - rhs).abs() > TOL,
        _ => lhs < rhs - TOL,
    }
}

struct Search<'a, G: ?Sized> {
    g: &'a G,
    property: Property,
    best: Option<Witness>,
}

impl<G: SetFunction + ?Sized> Search<'_, G> {
    fn offer(&mut self, sets: Vec<Subset>, lhs: f64, rhs: f64) {
        if !violated(self.property, lhs, rhs) {
            return;
        }
        let w = Witness { sets, lhs, rhs };
        if self.best.as_ref().is_none_or(|b| w.key() < b.key()) {
            self.best = Some(w);
        }
    }

    fn offer_sets(&mut self, sets: Vec<Subset>) {
        let (lhs, rhs) = sides(self.g, self.property, &sets);
        self.offer(sets, lhs, rhs);
    }
}

/// Checks `property` by enumeration over all witness shapes.
pub fn audit<G: SetFunction + ?Sized>(g: &G, property: Property) -> Result<PropertyReport> {
    let n = g.n();
    capability("audit ground set", n, MAX_ENUMERATION)?;
    if property == Property::Subadditive {
        capability(
            "subadditivity audit ground set",
            n,
            MAX_SUBADDITIVE_ENUMERATION,
        )?;
    }
    let full = Subset::full(n);
    let values: Vec<f64> = full.subsets().map(|s| g.eval(s)).collect();
    let val = |s: Subset| values[s.bits() as usize];
    let mut search = Search {
        g,
        property,
        best: None,
    };

    match property {
        Property::Normalized => search.offer(vec![Subset::EMPTY], val(Subset::EMPTY), 0.0),
        Property::Nonnegative => {
            for s in full.subsets() {
                search.offer(vec![s], val(s), 0.0);
            }
        }
        Property::Nondecreasing => {
            for s in full.subsets() {
                for i in full.difference(s).iter() {
                    search.offer(vec![s, s.with(i)], val(s.with(i)), val(s));
                }
            }
        }
        Property::SMinimal => {
            for s in full.subsets() {
                for i in s.iter() {
                    let single = Subset::singleton(i);
                    if s != single {
                        search.offer(vec![single, s], val(s), val(single));
                    }
                }
            }
        }
        Property::Subadditive => {
            for s in full.subsets() {
                for t in full.subsets().filter(|t| t.bits() >= s.bits()) {
                    search.offer(vec![s, t], val(s) + val(t), val(s.union(t)));
                }
            }
        }
        Property::Submodular => {
            for s in full.subsets() {
                let rest = full.difference(s);
                for i in rest.iter() {
                    for j in rest.iter().filter(|&j| j > i) {
                        let (a, b) = (s.with(i), s.with(j));
                        search.offer(vec![a, b], val(a) + val(b), val(a.union(b)) + val(s));
                    }
                }
            }
        }
    }

    Ok(PropertyReport {
        property,
        holds: search.best.is_none(),
        witness: search.best,
    })
}

/// Audits every property in [`Property::ALL`]; subadditivity is skipped above
/// its enumeration bound rather than failing the whole run.
pub fn audit_all<G: SetFunction + ?Sized>(g: &G) -> Result<Vec<PropertyReport>> {
    let mut out = Vec::new();
    for p in Property::ALL {
        match audit(g, p) {
            Ok(r) => out.push(r),
            Err(Error::Capability { .. }) if p == Property::Subadditive => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Draws `samples` random witness candidates from a seeded generator.
pub fn audit_sampled<G: SetFunction + ?Sized>(
    g: &G,
    property: Property,
    samples: usize,
    seed: u64,
) -> SampledAudit {
    let n = g.n();
    let full = Subset::full(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut search = Search {
        g,
        property,
        best: None,
    };
    let random_set = |rng: &mut ChaCha8Rng| Subset(rng.gen::<u64>() & full.bits());
    for _ in 0..samples {
        let s = random_set(&mut rng);
        let sets = match property {
            Property::Normalized => vec![Subset::EMPTY],
            Property::Nonnegative => vec![s],
            Property::Subadditive => vec![s, random_set(&mut rng)],
            Property::Nondecreasing | Property::SMinimal | Property::Submodular => {
                if n == 0 {
                    continue;
                }
                let i = rng.gen_range(0..n);
                match property {
                    Property::Nondecreasing => vec![s.without(i), s.with(i)],
                    Property::SMinimal => vec![Subset::singleton(i), s.with(i)],
                    _ => {
                        let j = rng.gen_range(0..n);
                        if i == j {
                            continue;
                        }
                        let base = s.without(i).without(j);
                        vec![base.with(i.min(j)), base.with(i.max(j))]
                    }
                }
            }
        };
        search.offer_sets(sets);
    }
    SampledAudit {
        property,
        samples,
        witness: search.best,
    }
}
