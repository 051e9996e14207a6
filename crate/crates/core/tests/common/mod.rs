//! Oracles computed straight from Cayley tables, independent of the library's
//! quantum group machinery.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_complex::Complex64;
use qgidem::cayley::CayleyTable;
use qgidem::linalg::CVec;

/// All subgroups by testing every subset (orders up to 16).
pub fn subgroups(g: &CayleyTable) -> Vec<BTreeSet<usize>> {
    let n = g.order();
    assert!(n <= 16);
    let t = g.table();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let has = |x: usize| mask & (1 << x) != 0;
        let closed = (0..n).filter(|&x| has(x)).all(|x| (0..n).filter(|&y| has(y)).all(|y| has(t[x * n + y])));
        // a nonempty finite subset closed under products is a subgroup
        if closed {
            out.push((0..n).filter(|&x| has(x)).collect());
        }
    }
    out
}

pub fn is_normal(g: &CayleyTable, h: &BTreeSet<usize>) -> bool {
    let n = g.order();
    let t = g.table();
    let inv = |x: usize| (0..n).find(|&y| t[x * n + y] == g.identity()).unwrap();
    (0..n).all(|x| h.iter().all(|&y| h.contains(&t[t[x * n + y] * n + inv(x)])))
}

pub fn state_fn(n: usize, h: &BTreeSet<usize>) -> CVec {
    CVec::from_fn(n, |x, _| Complex64::new(if h.contains(&x) { 1.0 / h.len() as f64 } else { 0.0 }, 0.0))
}

pub fn state_ga(n: usize, h: &BTreeSet<usize>) -> CVec {
    CVec::from_fn(n, |x, _| Complex64::new(if h.contains(&x) { 1.0 } else { 0.0 }, 0.0))
}

/// Convolution of measures on `G`: `(μ⋆ν)(x) = Σ_{yz=x} μ(y)ν(z)`.
pub fn convolve_measures(g: &CayleyTable, mu: &CVec, nu: &CVec) -> CVec {
    let n = g.order();
    let mut out = CVec::zeros(n);
    for y in 0..n {
        for z in 0..n {
            out[g.table()[y * n + z]] += mu[y] * nu[z];
        }
    }
    out
}

/// Pointwise product on `C*(G)` duals: `(ω⋆ν)(λ_x) = ω(λ_x)ν(λ_x)`.
pub fn convolve_pointwise(mu: &CVec, nu: &CVec) -> CVec {
    mu.component_mul(nu)
}

pub fn sup(v: &CVec) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Hausdorff distance between two finite sets of vectors (sup norm).
pub fn hausdorff(a: &[CVec], b: &[CVec]) -> f64 {
    let one_way = |x: &[CVec], y: &[CVec]| {
        x.iter().map(|u| y.iter().map(|v| sup(&(u - v))).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

/// Covering pairs `(i, j)` of the inclusion order on a family of sets.
pub fn covers(sets: &[BTreeSet<usize>]) -> BTreeSet<(usize, usize)> {
    let lt = |a: &BTreeSet<usize>, b: &BTreeSet<usize>| a != b && a.is_subset(b);
    let mut out = BTreeSet::new();
    for i in 0..sets.len() {
        for j in 0..sets.len() {
            if lt(&sets[i], &sets[j]) && !sets.iter().any(|k| lt(&sets[i], k) && lt(k, &sets[j])) {
                out.insert((i, j));
            }
        }
    }
    out
}

pub const SMALL_GROUPS: [&str; 8] = ["Z2", "Z3", "Z4", "Z2xZ2", "Z6", "S3", "D4", "Q8"];
