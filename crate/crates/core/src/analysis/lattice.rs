use crate::qg::FiniteQuantumGroup;
use crate::state::{convolve_unchecked, State};
use crate::{Error, Result};

/// `ω ≺ ω′` iff `ω⋆ω′ = ω′`.
pub fn order_leq(qg: &FiniteQuantumGroup, omega: &State, other: &State, tol: f64) -> bool {
    convolve_unchecked(qg, omega, other).distance(other) <= tol
}

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeReport {
    pub reflexive: bool,
    pub antisymmetric: bool,
    pub transitive: bool,
    /// Largest `‖ω′⋆ω − ω′‖` over related pairs `ω ≺ ω′`.
    pub absorption_residual: f64,
}

impl LatticeReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.reflexive && self.antisymmetric && self.transitive && self.absorption_residual <= tol
    }
}

/// Hasse diagram of a set of idempotent states under `≺`.
#[derive(Clone, Debug, PartialEq)]
pub struct Lattice {
    /// `leq[i][j]` iff `states[i] ≺ states[j]`.
    pub leq: Vec<Vec<bool>>,
    /// Covering pairs `(i, j)`: `i ≺ j`, `i ≠ j`, nothing strictly between.
    pub covers: Vec<(usize, usize)>,
    pub report: LatticeReport,
}

impl Lattice {
    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    /// Number of pairs `i ≠ j` with `i ≺ j`.
    pub fn strict_pairs(&self) -> usize {
        let n = self.len();
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| i != j && self.leq[i][j]).count()
    }

    /// Indices `j` covering `i`.
    pub fn upper_covers(&self, i: usize) -> Vec<usize> {
        self.covers.iter().filter(|&&(a, _)| a == i).map(|&(_, b)| b).collect()
    }
}

pub fn build_lattice(qg: &FiniteQuantumGroup, states: &[State], tol: f64) -> Result<Lattice> {
    for s in states {
        s.check_parent(qg)?;
    }
    let n = states.len();
    let leq: Vec<Vec<bool>> =
        (0..n).map(|i| (0..n).map(|j| order_leq(qg, &states[i], &states[j], tol)).collect()).collect();
    let reflexive = (0..n).all(|i| leq[i][i]);
    for i in 0..n {
        for j in i + 1..n {
            if leq[i][j] && leq[j][i] {
                let d = states[i].distance(&states[j]);
                if d > tol {
                    return Err(Error::Order(format!("states {i} and {j} precede each other but differ by {d:.3e}")));
                }
            }
        }
    }
    let transitive = (0..n).all(|i| (0..n).all(|j| !leq[i][j] || (0..n).all(|k| !leq[j][k] || leq[i][k])));
    let mut absorption: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            if leq[i][j] {
                absorption = absorption.max(convolve_unchecked(qg, &states[j], &states[i]).distance(&states[j]));
            }
        }
    }
    let mut covers = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && leq[i][j] && !(0..n).any(|k| k != i && k != j && leq[i][k] && leq[k][j]) {
                covers.push((i, j));
            }
        }
    }
    Ok(Lattice {
        leq,
        covers,
        report: LatticeReport { reflexive, antisymmetric: true, transitive, absorption_residual: absorption },
    })
}
