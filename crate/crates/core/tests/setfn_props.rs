mod common;

use common::*;
use rand::Rng;
use salb::audit::{audit, Property};
use salb::facility::FacilityOracle;
use salb::interp::{InterpOracle, SampleCollection};
use salb::metric::MstOracle;
use salb::setfn::{curvature, pseudo_curvature, Decomposition};
use salb::{Flags, FnOracle, ModularFn, SetFunction, Subset};

/// Nondecreasing subadditive fixtures with positive singletons.
fn monotone_fixtures() -> Vec<Box<dyn SetFunction>> {
    let mut out: Vec<Box<dyn SetFunction>> = vec![Box::new(quad(3)), Box::new(quad(4))];
    for seed in 0..12 {
        out.push(Box::new(coverage(seed, 4 + seed as usize % 5, 6)));
    }
    out.push(Box::new(FacilityOracle::new(fl()).unwrap()));
    let sets = Subset::full(3)
        .subsets()
        .filter(|s| !s.is_empty() && s.len() < 3);
    out.push(Box::new(
        InterpOracle::new(SampleCollection::from_function(&quad(3), sets).unwrap()).unwrap(),
    ));
    out
}

#[test]
fn curvature_matches_enumeration() {
    for g in monotone_fixtures() {
        for s in Subset::full(g.n()).subsets() {
            let lib = curvature(&g, s).unwrap();
            let reference = if s.is_empty() {
                0.0
            } else {
                curvature_by_enumeration(g.as_ref(), s)
            };
            assert!((lib - reference).abs() < 1e-12, "S = {s}");
        }
    }
}

#[test]
fn marginals_respect_curvature() {
    for g in monotone_fixtures() {
        let full = Subset::full(g.n());
        for s in full.subsets() {
            let kappa = curvature(&g, s).unwrap();
            for sub in s.subsets() {
                for i in sub.iter() {
                    let gain = g.eval(sub) - g.eval(sub.without(i));
                    assert!(gain >= (1.0 - kappa) * g.eval(Subset::singleton(i)) - 1e-9);
                }
            }
        }
    }
}

#[test]
fn singleton_sums_are_sandwiched() {
    for g in monotone_fixtures() {
        let full = Subset::full(g.n());
        let kappa = curvature(&g, full).unwrap();
        for s in full.subsets() {
            let singles: f64 = s.iter().map(|i| g.eval(Subset::singleton(i))).sum();
            let value = g.eval(s);
            assert!(value <= singles + 1e-9);
            if kappa > 0.0 && kappa < 1.0 {
                assert!(singles <= value / (1.0 - kappa) + 1e-9);
            }
            let local = curvature(&g, s).unwrap();
            if local > 0.0 && local < 1.0 {
                let k = s.len() as f64;
                assert!(singles <= k * value / (1.0 + (k - 1.0) * (1.0 - local)) + 1e-9);
            }
        }
    }
}

#[test]
fn pseudo_curvature_bounds_curvature() {
    for seed in 0..20 {
        let n = 3 + seed as usize % 5;
        let plus = coverage(seed, n, 5);
        let mut r = rng(seed + 1000);
        let modular = ModularFn::new(0.0, (0..n).map(|_| r.gen_range(0..4) as f64).collect());
        let second = coverage(seed + 500, n, 4);
        let parts: [Box<dyn SetFunction>; 2] = [Box::new(modular), Box::new(second)];
        for f_plus in parts {
            let d = Decomposition::new(Box::new(coverage(seed, n, 5)), f_plus).unwrap();
            let kappa_hat = pseudo_curvature(&d).unwrap();
            let whole = FnOracle::new(n, plus.flags(), |s: Subset| d.eval(s));
            let kappa = curvature(&whole, Subset::full(n)).unwrap();
            assert!(
                kappa <= kappa_hat + 1e-9,
                "seed {seed}: {kappa} > {kappa_hat}"
            );
        }
    }
}

#[test]
fn witnesses_replay() {
    let mut oracles: Vec<Box<dyn SetFunction>> = vec![
        Box::new(MstOracle::new(shared(mst_b()), 0.0).unwrap()),
        Box::new(MstOracle::new(shared(mst_a()), 0.0).unwrap()),
        Box::new(FacilityOracle::new(fl()).unwrap()),
    ];
    for seed in 0..30 {
        let n = 2 + seed as usize % 4;
        let mut r = rng(seed);
        let table: Vec<f64> = (0..1 << n).map(|_| r.gen_range(-2..10) as f64).collect();
        oracles.push(Box::new(FnOracle::new(
            n,
            Flags::default(),
            move |s: Subset| table[s.bits() as usize],
        )));
    }
    let mut failures = 0;
    for g in &oracles {
        for p in Property::ALL {
            let report = audit(g, p).unwrap();
            if let Some(w) = &report.witness {
                failures += 1;
                assert!(!report.holds);
                assert!(w.replay(g, p), "{p} witness does not replay");
            }
        }
    }
    assert!(failures > 30);
}
