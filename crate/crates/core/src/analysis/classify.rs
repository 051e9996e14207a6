use crate::gns::GnsData;
use crate::linalg::{self, CMat};
use crate::qg::FiniteQuantumGroup;
use crate::state::State;
use crate::unitary::MultUnitary;
use crate::{tol, Error, Result};

use super::quotient::attempt_quotient;
use super::subalgebra::{invariant_subalgebra, Subalgebra, Subspace};

/// `N_ω = {a : ω(a*a) = 0}`, the kernel of the Gram matrix of `ω`.
pub fn null_space(qg: &FiniteQuantumGroup, omega: &State) -> Subspace {
    let g = qg.gram_of(omega.coeffs());
    let scale = linalg::frob(&g).max(1.0);
    Subspace::from_orthonormal(linalg::psd_kernel(&g, tol::CLASSIFICATION * scale))
}

/// Largest distance from `N` of `e_i v`, `v e_i` and `v*` over basis `e_i`
/// and spanning `v`.
pub fn ideal_residual(qg: &FiniteQuantumGroup, n: &Subspace) -> f64 {
    let mut worst: f64 = 0.0;
    for v in n.columns() {
        worst = worst.max(n.residual(&qg.star(&v)));
        for i in 0..qg.dim() {
            let e = qg.basis(i);
            worst = worst.max(n.residual(&qg.mul(&e, &v))).max(n.residual(&qg.mul(&v, &e)));
        }
    }
    worst
}

pub fn is_ideal(qg: &FiniteQuantumGroup, n: &Subspace, tol: f64) -> bool {
    ideal_residual(qg, n) <= tol
}

/// Relative distance of `V*(1⊗c)V` from `B(H)⊗π(C)`, maximized over a basis of `C`.
pub fn symmetry_residual(gns: &GnsData, v: &MultUnitary, c: &Subspace) -> f64 {
    let n = v.dim();
    let reps: Vec<CMat> = c.columns().map(|x| gns.represent(&x)).collect();
    // row-major vec of each π(c) spans the admissible second legs
    let legs = CMat::from_fn(n * n, reps.len(), |r, k| reps[k][(r / n, r % n)]);
    let legs = linalg::orth(&legs);
    let vm = &v.v;
    let id = CMat::identity(n, n);
    let mut worst: f64 = 0.0;
    for p in &reps {
        let x = vm.adjoint() * linalg::kron(&id, p) * vm;
        let norm = linalg::frob(&x);
        if norm == 0.0 {
            continue;
        }
        // X̃[(i,p),(j,q)] = X[(i,j),(p,q)]; each row of X̃ is a second leg
        let rows = CMat::from_fn(n * n, n * n, |jq, ip| {
            let (i, pp, j, q) = (ip / n, ip % n, jq / n, jq % n);
            x[(i * n + j, pp * n + q)]
        });
        let out = linalg::outside_residual_cols(&legs, &rows);
        worst = worst.max(out * (n as f64).sqrt() / norm);
    }
    worst
}

pub fn is_symmetric(gns: &GnsData, v: &MultUnitary, c: &Subalgebra, tol: f64) -> bool {
    symmetry_residual(gns, v, c.space()) <= tol
}

/// Residuals behind the three criteria.
#[derive(Clone, Debug, PartialEq)]
pub struct Witnesses {
    pub ideal_residual: f64,
    pub symmetry_residual: f64,
    /// Largest residual met while building the quotient.
    pub quotient_residual: f64,
    pub quotient_built: bool,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub state: State,
    pub null_space_dim: usize,
    pub subalgebra_dim: usize,
    pub is_haar: bool,
    pub witnesses: Witnesses,
}

fn verdict(name: &str, r: f64) -> Result<bool> {
    if r <= tol::CLASSIFICATION {
        Ok(true)
    } else if r > tol::CROSS_CHECK {
        Ok(false)
    } else {
        Err(Error::EquivalenceViolation(format!("{name} residual {r:.3e} lies between the pass and fail thresholds")))
    }
}

/// Evaluates symmetry of `C_ω`, ideal-ness of `N_ω` and the quotient
/// construction; all three must agree.
pub fn classify(qg: &FiniteQuantumGroup, gns: &GnsData, v: &MultUnitary, omega: &State) -> Result<Classification> {
    let mut c = invariant_subalgebra(qg, omega)?;
    let n = null_space(qg, omega);
    let ideal = ideal_residual(qg, &n);
    let sym = symmetry_residual(gns, v, c.space());
    let attempt = attempt_quotient(qg, omega, &n);
    let q_res = attempt.residual();
    let witnesses = Witnesses {
        ideal_residual: ideal,
        symmetry_residual: sym,
        quotient_residual: q_res,
        quotient_built: attempt.built.is_some(),
    };
    let a = verdict("ideal", ideal)?;
    let b = verdict("symmetry", sym)?;
    let q = verdict("quotient", q_res)? && attempt.built.is_some();
    if a != b || b != q {
        return Err(Error::EquivalenceViolation(format!("ideal {a}, symmetric {b}, quotient {q}: {witnesses:?}")));
    }
    c.set_symmetric(b);
    Ok(Classification { state: omega.clone(), null_space_dim: n.dim(), subalgebra_dim: c.dim(), is_haar: a, witnesses })
}
