//! Fixtures and brute-force reference oracles shared by the integration tests.
//! None of the oracles below call into the library's solvers.
#![allow(dead_code)]

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use salb::facility::FacilityInstance;
use salb::metric::Metric;
use salb::{Flags, FnOracle, Subset};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn set(elements: &[usize], n: usize) -> Subset {
    Subset::from_elements(elements, n).unwrap()
}

pub fn mst_a() -> Metric {
    Metric::new(vec![
        vec![0.0, 5.0, 3.0, 5.0],
        vec![5.0, 0.0, 3.0, 5.0],
        vec![3.0, 3.0, 0.0, 3.0],
        vec![5.0, 5.0, 3.0, 0.0],
    ])
    .unwrap()
}

pub fn mst_b() -> Metric {
    Metric::new(vec![
        vec![0.0, 5.0, 3.0, 3.0],
        vec![5.0, 0.0, 3.0, 3.0],
        vec![3.0, 3.0, 0.0, 6.0],
        vec![3.0, 3.0, 6.0, 0.0],
    ])
    .unwrap()
}

pub fn fl() -> FacilityInstance {
    FacilityInstance::new(
        vec![1.0, 1.0],
        vec![vec![1.0, 3.0], vec![1.0, 1.5], vec![2.0, 1.0]],
    )
    .unwrap()
}

pub type Oracle = FnOracle<Box<dyn Fn(Subset) -> f64 + Send + Sync>>;

/// `f(S) = (7 - |S|)|S|`; a polymatroid for `n <= 4`.
pub fn quad(n: usize) -> Oracle {
    assert!(n <= 4, "quad is decreasing beyond four elements");
    FnOracle::new(
        n,
        Flags::polymatroid(),
        Box::new(|s: Subset| {
            let k = s.len() as f64;
            (7.0 - k) * k
        }),
    )
}

/// Weighted coverage `f(S) = sum of weights of items covered by S`; every
/// element covers at least one item of positive weight.
pub fn coverage(seed: u64, n: usize, items: usize) -> Oracle {
    let mut r = rng(seed);
    let weights: Vec<f64> = (0..items).map(|_| r.gen_range(1..=9) as f64).collect();
    let covers: Vec<u64> = (0..n)
        .map(|_| {
            let mut mask = 0u64;
            while mask == 0 {
                mask = r.gen::<u64>() & ((1u64 << items) - 1);
            }
            mask
        })
        .collect();
    FnOracle::new(
        n,
        Flags::polymatroid(),
        Box::new(move |s: Subset| {
            let covered = s.iter().fold(0u64, |acc, i| acc | covers[i]);
            (0..items)
                .filter(|k| covered >> k & 1 == 1)
                .map(|k| weights[k])
                .sum()
        }),
    )
}

/// Uniform points in `[0, 100]^2`, root first.
pub fn euclidean(seed: u64, n: usize) -> Metric {
    let mut r = rng(seed);
    let mut p = || [r.gen_range(0.0..100.0), r.gen_range(0.0..100.0)];
    let root = p();
    let pts: Vec<[f64; 2]> = (0..n).map(|_| p()).collect();
    Metric::euclidean(root, &pts).unwrap()
}

/// Shortest-path closure of random integer edge weights: a metric that is
/// generally not Euclidean.
#[allow(clippy::needless_range_loop)]
pub fn graph_metric(seed: u64, n: usize) -> Metric {
    let mut r = rng(seed);
    let k = n + 1;
    let mut d = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let w = r.gen_range(1..=20) as f64;
            d[i][j] = w;
            d[j][i] = w;
        }
    }
    for via in 0..k {
        for i in 0..k {
            for j in 0..k {
                if d[i][via] + d[via][j] < d[i][j] {
                    d[i][j] = d[i][via] + d[via][j];
                }
            }
        }
    }
    Metric::new(d).unwrap()
}

/// Minimum spanning tree cost over `{root} ∪ S` by decoding every Prüfer
/// sequence (Cayley enumeration).
pub fn mst_by_pruefer(metric: &Metric, s: Subset) -> f64 {
    let nodes: Vec<usize> = std::iter::once(0).chain(s.iter().map(|i| i + 1)).collect();
    let k = nodes.len();
    match k {
        1 => return 0.0,
        2 => return metric.dist(nodes[0], nodes[1]),
        _ => {}
    }
    let len = k - 2;
    let mut seq = vec![0usize; len];
    let mut best = f64::INFINITY;
    loop {
        let mut degree = vec![1usize; k];
        for &v in &seq {
            degree[v] += 1;
        }
        let mut cost = 0.0;
        for &v in &seq {
            let leaf = (0..k).find(|&u| degree[u] == 1).unwrap();
            cost += metric.dist(nodes[leaf], nodes[v]);
            degree[leaf] -= 1;
            degree[v] -= 1;
        }
        let rest: Vec<usize> = (0..k).filter(|&u| degree[u] == 1).collect();
        cost += metric.dist(nodes[rest[0]], nodes[rest[1]]);
        best = best.min(cost);

        let mut pos = len;
        loop {
            if pos == 0 {
                return best;
            }
            pos -= 1;
            seq[pos] += 1;
            if seq[pos] < k {
                break;
            }
            seq[pos] = 0;
        }
    }
}

/// Facility location by trying every nonempty facility set directly.
pub fn facility_by_enumeration(inst: &FacilityInstance, s: Subset) -> f64 {
    if s.is_empty() {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    for mask in 1u64..(1 << inst.facilities) {
        let open: f64 = (0..inst.facilities)
            .filter(|j| mask >> j & 1 == 1)
            .map(|j| inst.open[j])
            .sum();
        let serve: f64 = s
            .iter()
            .map(|i| {
                (0..inst.facilities)
                    .filter(|j| mask >> j & 1 == 1)
                    .map(|j| inst.connect[i][j])
                    .fold(f64::INFINITY, f64::min)
            })
            .sum();
        best = best.min(open + serve);
    }
    best
}

/// Every assignment of `n` items to `m` machines, last item fastest.
pub fn assignments(m: usize, n: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = (m as u64).pow(n as u32);
    (0..total).map(move |mut code| {
        let mut a = vec![0; n];
        for slot in a.iter_mut().rev() {
            *slot = (code % m as u64) as usize;
            code /= m as u64;
        }
        a
    })
}

/// `(best makespan, first optimal assignment)` by enumeration.
pub fn makespan_by_enumeration(b: &[f64], c: &[Vec<f64>]) -> (f64, Vec<usize>) {
    let m = b.len();
    let n = c.len();
    let mut best = (f64::INFINITY, Vec::new());
    for a in assignments(m, n) {
        let mut load = b.to_vec();
        for (i, &j) in a.iter().enumerate() {
            load[j] += c[i][j];
        }
        let v = load.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if v < best.0 - 1e-9 {
            best = (v, a);
        }
    }
    best
}

/// Cheapest open path from the root through all of `targets`, by permutation.
pub fn best_open_path(metric: &Metric, beta: f64, targets: &[usize]) -> f64 {
    fn go(metric: &Metric, at: usize, left: &mut Vec<usize>, acc: f64, best: &mut f64) {
        if acc >= *best {
            return;
        }
        if left.is_empty() {
            *best = acc;
            return;
        }
        for k in 0..left.len() {
            let t = left.remove(k);
            go(metric, t + 1, left, acc + metric.dist(at, t + 1), best);
            left.insert(k, t);
        }
    }
    let mut best = f64::INFINITY;
    go(metric, 0, &mut targets.to_vec(), 0.0, &mut best);
    best + beta * targets.len() as f64
}

/// `1 - min over A ⊆ S, i ∈ A with g({i}) > 0 of g(i | A - i) / g({i})`.
pub fn curvature_by_enumeration(g: &dyn salb::SetFunction, s: Subset) -> f64 {
    let mut worst: f64 = 1.0;
    for a in s.subsets() {
        for i in a.iter() {
            let single = g.eval(Subset::singleton(i));
            let gain = g.eval(a) - g.eval(a.without(i));
            worst = worst.min(gain / single);
        }
    }
    1.0 - worst
}

pub fn shared(metric: Metric) -> Arc<Metric> {
    Arc::new(metric)
}

/// Small seeded SALB instance with tree-cost oracles: m in {2, 3}, n in 3..=8.
pub fn mst_salb_instance(seed: u64) -> salb::mrr::MrrInstance {
    let m = 2 + (seed % 2) as usize;
    let n = 3 + (seed % 6) as usize;
    let beta = [0.0, 0.0, 10.0, 30.0][(seed / 2 % 4) as usize];
    salb::mrr::generate_instance(seed, m, n, beta, 100.0).unwrap()
}
