//! Functionals, states and the convolution algebra `A*`.

use std::collections::BTreeSet;
use std::ops::Deref;

use crate::cayley::CayleyTable;
use crate::linalg::{self, c, frob, sup_norm, CMat, CVec};
use crate::qg::{function_algebra, group_algebra, FiniteQuantumGroup, QgId};
use crate::{tol, Error, Result};

/// Linear functional on `A`, stored by its values on the basis and tagged
/// with the quantum group it lives on.
#[derive(Clone, Debug, PartialEq)]
pub struct Functional {
    qg: QgId,
    coeffs: CVec,
}

impl Functional {
    pub fn new(qg: &FiniteQuantumGroup, coeffs: CVec) -> Result<Self> {
        if coeffs.len() != qg.dim() {
            return Err(Error::Dimension(format!("functional of length {} on dim {}", coeffs.len(), qg.dim())));
        }
        Ok(Self { qg: qg.id().clone(), coeffs })
    }

    pub fn counit(qg: &FiniteQuantumGroup) -> Self {
        Self { qg: qg.id().clone(), coeffs: qg.counit().clone() }
    }

    pub fn haar(qg: &FiniteQuantumGroup) -> Self {
        Self { qg: qg.id().clone(), coeffs: qg.haar().clone() }
    }

    /// `k`-th element of the basis dual to the basis of `A`.
    pub fn dual_basis(qg: &FiniteQuantumGroup, k: usize) -> Self {
        Self { qg: qg.id().clone(), coeffs: qg.basis(k) }
    }

    pub fn qg_id(&self) -> &QgId {
        &self.qg
    }

    pub fn coeffs(&self) -> &CVec {
        &self.coeffs
    }

    pub fn eval(&self, a: &CVec) -> crate::C64 {
        self.coeffs.dot(a)
    }

    pub fn check_parent(&self, qg: &FiniteQuantumGroup) -> Result<()> {
        if &self.qg == qg.id() {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    /// `_bω(c) = ω(cb)`.
    pub fn right_weighted(&self, qg: &FiniteQuantumGroup, b: &CVec) -> Self {
        let coeffs = CVec::from_fn(qg.dim(), |i, _| self.eval(&qg.mul(&qg.basis(i), b)));
        Self { qg: self.qg.clone(), coeffs }
    }

    /// `ω_b(c) = ω(bc)`.
    pub fn left_weighted(&self, qg: &FiniteQuantumGroup, b: &CVec) -> Self {
        let coeffs = CVec::from_fn(qg.dim(), |i, _| self.eval(&qg.mul(b, &qg.basis(i))));
        Self { qg: self.qg.clone(), coeffs }
    }

    pub fn scale(&self, s: crate::C64) -> Self {
        Self { qg: self.qg.clone(), coeffs: &self.coeffs * s }
    }

    pub fn sub(&self, other: &Functional) -> Self {
        Self { qg: self.qg.clone(), coeffs: &self.coeffs - &other.coeffs }
    }

    /// Sup-norm distance of coefficient vectors.
    pub fn distance(&self, other: &Functional) -> f64 {
        sup_norm(&(&self.coeffs - &other.coeffs))
    }
}

/// A positive normalized functional.
#[derive(Clone, Debug, PartialEq)]
pub struct State(Functional);

impl State {
    pub fn new(qg: &FiniteQuantumGroup, f: Functional, tol: f64) -> Result<Self> {
        f.check_parent(qg)?;
        let defect = state_defect(qg, &f);
        if defect > tol {
            return Err(Error::NotState(format!("positivity/normalization defect {defect:.3e}")));
        }
        Ok(Self(f))
    }

    pub fn from_coeffs(qg: &FiniteQuantumGroup, coeffs: CVec, tol: f64) -> Result<Self> {
        Self::new(qg, Functional::new(qg, coeffs)?, tol)
    }

    /// Wraps a functional known to be a state by construction.
    pub(crate) fn trusted(f: Functional) -> Self {
        Self(f)
    }

    pub fn counit(qg: &FiniteQuantumGroup) -> Self {
        Self(Functional::counit(qg))
    }

    pub fn haar(qg: &FiniteQuantumGroup) -> Self {
        Self(Functional::haar(qg))
    }

    pub fn functional(&self) -> &Functional {
        &self.0
    }
}

impl Deref for State {
    type Target = Functional;

    fn deref(&self) -> &Functional {
        &self.0
    }
}

/// Matrix acting on A-coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearOperator(pub CMat);

impl LinearOperator {
    pub fn matrix(&self) -> &CMat {
        &self.0
    }

    pub fn apply(&self, a: &CVec) -> CVec {
        &self.0 * a
    }

    pub fn identity(n: usize) -> Self {
        Self(CMat::identity(n, n))
    }
}

/// `(ω⋆ν)(a) = (ω⊗ν)Δ(a)`.
pub fn convolve(qg: &FiniteQuantumGroup, omega: &Functional, nu: &Functional) -> Result<Functional> {
    omega.check_parent(qg)?;
    nu.check_parent(qg)?;
    Ok(convolve_unchecked(qg, omega, nu))
}

pub(crate) fn convolve_unchecked(qg: &FiniteQuantumGroup, omega: &Functional, nu: &Functional) -> Functional {
    let n = qg.dim();
    let coeffs = CVec::from_fn(n, |i, _| {
        qg.comult().row(i).iter().map(|&(jk, d)| d * omega.coeffs[jk / n] * nu.coeffs[jk % n]).sum()
    });
    Functional { qg: omega.qg.clone(), coeffs }
}

/// `L_ω = (ω⊗id)Δ`.
pub fn left_slice(qg: &FiniteQuantumGroup, omega: &Functional) -> LinearOperator {
    let n = qg.dim();
    let mut m = CMat::zeros(n, n);
    for i in 0..n {
        for &(jk, d) in qg.comult().row(i) {
            m[(jk % n, i)] += d * omega.coeffs[jk / n];
        }
    }
    LinearOperator(m)
}

/// `R_ω = (id⊗ω)Δ`.
pub fn right_slice(qg: &FiniteQuantumGroup, omega: &Functional) -> LinearOperator {
    let n = qg.dim();
    let mut m = CMat::zeros(n, n);
    for i in 0..n {
        for &(jk, d) in qg.comult().row(i) {
            m[(jk / n, i)] += d * omega.coeffs[jk % n];
        }
    }
    LinearOperator(m)
}

/// Combined defect of being a state: normalization, hermiticity of the Gram
/// matrix `ω(e_i* e_j)` and its most negative eigenvalue.
pub fn state_defect(qg: &FiniteQuantumGroup, f: &Functional) -> f64 {
    let gram = qg.gram_of(&f.coeffs);
    let norm = (f.eval(qg.unit()) - c(1.0)).norm();
    let herm = frob(&(&gram - gram.adjoint()));
    let neg = (-linalg::min_eigenvalue(&gram)).max(0.0);
    norm.max(herm).max(neg)
}

pub fn is_state(qg: &FiniteQuantumGroup, f: &Functional, tol: f64) -> bool {
    f.qg_id() == qg.id() && state_defect(qg, f) <= tol
}

/// `‖ω⋆ω − ω‖_∞`.
pub fn idempotency_residual(qg: &FiniteQuantumGroup, f: &Functional) -> f64 {
    f.distance(&convolve_unchecked(qg, f, f))
}

pub fn is_idempotent(qg: &FiniteQuantumGroup, f: &Functional, tol: f64) -> bool {
    is_state(qg, f, tol.max(tol::POSITIVITY)) && idempotency_residual(qg, f) <= tol
}

fn ensure_built_from(qg: &FiniteQuantumGroup, expected: &FiniteQuantumGroup, what: &str) -> Result<()> {
    if qg.id() == expected.id() {
        Ok(())
    } else {
        Err(Error::Dimension(format!("quantum group is not the {what} of the given group")))
    }
}

/// Uniform measure on a subgroup, `ω_H(δ_x) = [x∈H]/|H|`, on `C(G)`.
pub fn subgroup_state_fn(qg: &FiniteQuantumGroup, g: &CayleyTable, h: &BTreeSet<usize>) -> Result<State> {
    ensure_built_from(qg, &function_algebra(g), "function algebra")?;
    g.check_subgroup(h)?;
    let k = h.len() as f64;
    let coeffs = CVec::from_fn(g.order(), |x, _| c(if h.contains(&x) { 1.0 / k } else { 0.0 }));
    Ok(State(Functional { qg: qg.id().clone(), coeffs }))
}

/// Indicator functional `λ_x ↦ [x∈S]` on `C*(G)`; a state exactly when `S`
/// is a subgroup.
pub fn indicator_functional_ga(qg: &FiniteQuantumGroup, g: &CayleyTable, s: &BTreeSet<usize>) -> Result<Functional> {
    ensure_built_from(qg, &group_algebra(g), "group algebra")?;
    let coeffs = CVec::from_fn(g.order(), |x, _| c(if s.contains(&x) { 1.0 } else { 0.0 }));
    Functional::new(qg, coeffs)
}

/// Indicator of a subgroup on `C*(G)`, a positive definite function.
pub fn subgroup_state_ga(qg: &FiniteQuantumGroup, g: &CayleyTable, h: &BTreeSet<usize>) -> Result<State> {
    let f = indicator_functional_ga(qg, g, h)?;
    g.check_subgroup(h)?;
    Ok(State(f))
}

/// If `T` commutes with every `R_ν` (ν over the dual basis), returns
/// `μ = ε∘T`, for which `T = L_μ`; otherwise `None`.
pub fn recover_slice(qg: &FiniteQuantumGroup, t: &LinearOperator, tol: f64) -> Result<Option<Functional>> {
    let n = qg.dim();
    if t.0.shape() != (n, n) {
        return Err(Error::Dimension("operator does not act on A".into()));
    }
    for k in 0..n {
        let r = right_slice(qg, &Functional::dual_basis(qg, k)).0;
        if frob(&(&t.0 * &r - &r * &t.0)) > tol {
            return Ok(None);
        }
    }
    let mu = Functional { qg: qg.id().clone(), coeffs: t.0.transpose() * qg.counit() };
    let defect = frob(&(left_slice(qg, &mu).0 - &t.0));
    if defect > tol {
        return Err(Error::Consistency(format!("T commutes with all R_ν but differs from L_(ε∘T) by {defect:.3e}")));
    }
    Ok(Some(mu))
}
