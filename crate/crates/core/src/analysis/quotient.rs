use crate::linalg::{self, c, frob, kron, sup_norm, vec_norm, CMat, CVec};
use crate::qg::{FiniteQuantumGroup, QgParts, ValidationReport};
use crate::state::{is_idempotent, left_slice, Functional, State};
use crate::tensor::StructureTensor;
use crate::{tol, Error, Result};

use super::classify::{ideal_residual, null_space};
use super::subalgebra::{invariant_subalgebra, Subspace};

/// Structure constants below this modulus are rounding noise.
const DROP: f64 = 1e-14;

/// `B = A/N_ω` with `π: A → B` and the Haar state `μ` of `B`.
#[derive(Clone, Debug)]
pub struct QuotientQG {
    pub quotient: FiniteQuantumGroup,
    /// `π` as an `m × n` matrix.
    pub projection: CMat,
    /// `h`-orthonormal lift `B → A`, a right inverse of `π`.
    pub lift: CMat,
    pub haar_mu: State,
    pub report: QuotientReport,
}

/// Residuals of the quotient construction.
#[derive(Clone, Debug)]
pub struct QuotientReport {
    pub kernel_product: f64,
    pub kernel_star: f64,
    pub kernel_coproduct: f64,
    pub kernel_counit: f64,
    pub kernel_antipode: f64,
    pub kernel_state: f64,
    /// `‖π(L_ω(e)) − π(1)‖` for the positive `e` with `ω(e) = 1`.
    pub unit: f64,
    /// `‖μ∘π − ω‖_∞`.
    pub pullback: f64,
    /// Distance between `ker π` and `N_ω`.
    pub kernel_identity: f64,
    pub homomorphism: f64,
    pub coproduct_intertwining: f64,
    /// Condition number of the Gram matrix of `μ`.
    pub mu_gram_condition: f64,
    pub validation: Option<ValidationReport>,
}

impl QuotientReport {
    fn kernel_max(&self) -> f64 {
        [
            self.kernel_product,
            self.kernel_star,
            self.kernel_coproduct,
            self.kernel_counit,
            self.kernel_antipode,
            self.kernel_state,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn max_residual(&self) -> f64 {
        let v = self.validation.as_ref().map_or(0.0, |v| v.max_residual());
        [
            self.kernel_max(),
            self.unit,
            self.pullback,
            self.kernel_identity,
            self.homomorphism,
            self.coproduct_intertwining,
            v,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn passed(&self, tol: f64) -> bool {
        self.max_residual() <= tol
            && self.mu_gram_condition.is_finite()
            && self.validation.as_ref().is_some_and(|v| v.passed())
    }
}

pub(super) struct QuotientAttempt {
    pub report: QuotientReport,
    pub built: Option<QuotientQG>,
}

impl QuotientAttempt {
    pub fn residual(&self) -> f64 {
        let failed_validation = self.report.validation.as_ref().is_some_and(|v| !v.passed());
        if failed_validation {
            f64::INFINITY
        } else {
            self.report.max_residual()
        }
    }
}

/// Builds the quotient structure on the `h`-orthogonal complement of `N`,
/// recording how far each step is from being well defined.
pub(super) fn attempt_quotient(qg: &FiniteQuantumGroup, omega: &State, nsp: &Subspace) -> QuotientAttempt {
    let n = qg.dim();
    let g = qg.haar_gram();
    let w = linalg::null_space(&(nsp.basis().adjoint() * &g));
    let m = w.ncols();
    let wg = w.adjoint() * &g * &w;
    let lift = &w * linalg::hermitian_map(&wg, |l| l.powf(-0.5));
    let proj = lift.adjoint() * &g;
    let pi2 = kron(&proj, &proj);

    let mut report = QuotientReport {
        kernel_product: 0.0,
        kernel_star: 0.0,
        kernel_coproduct: 0.0,
        kernel_counit: 0.0,
        kernel_antipode: 0.0,
        kernel_state: 0.0,
        unit: 0.0,
        pullback: 0.0,
        kernel_identity: 0.0,
        homomorphism: 0.0,
        coproduct_intertwining: 0.0,
        mu_gram_condition: f64::INFINITY,
        validation: None,
    };
    for v in nsp.columns() {
        report.kernel_star = report.kernel_star.max(vec_norm(&(&proj * qg.star(&v))));
        report.kernel_coproduct = report.kernel_coproduct.max(vec_norm(&(&pi2 * qg.coproduct(&v))));
        report.kernel_counit = report.kernel_counit.max(qg.counit_of(&v).norm());
        report.kernel_antipode = report.kernel_antipode.max(vec_norm(&(&proj * qg.antipode(&v))));
        report.kernel_state = report.kernel_state.max(omega.eval(&v).norm());
        for i in 0..n {
            let e = qg.basis(i);
            let l = vec_norm(&(&proj * qg.mul(&e, &v)));
            let r = vec_norm(&(&proj * qg.mul(&v, &e)));
            report.kernel_product = report.kernel_product.max(l).max(r);
        }
    }
    report.kernel_identity = nsp.distance(&Subspace::from_orthonormal(linalg::null_space(&proj)));
    if report.kernel_max() > tol::CROSS_CHECK {
        return QuotientAttempt { report, built: None };
    }

    let cols: Vec<CVec> = (0..m).map(|a| lift.column(a).into_owned()).collect();
    let mut mult = Vec::new();
    for a in 0..m {
        for b in 0..m {
            let p = &proj * qg.mul(&cols[a], &cols[b]);
            mult.extend(p.iter().enumerate().filter(|(_, z)| z.norm() > DROP).map(|(k, &z)| (a * m + b, k, z)));
        }
    }
    let mut comult = Vec::new();
    for (a, col) in cols.iter().enumerate() {
        let d = &pi2 * qg.coproduct(col);
        comult.extend(d.iter().enumerate().filter(|(_, z)| z.norm() > DROP).map(|(jk, &z)| (a, jk, z)));
    }
    let unit = unit_image(qg, omega, &proj);
    report.unit = vec_norm(&(&unit - &proj * qg.unit()));
    let star = &proj * qg.star_matrix() * linalg::conj_mat(&lift);
    let antipode = &proj * qg.antipode_matrix() * &lift;
    let counit = lift.transpose() * qg.counit();
    let mu = lift.transpose() * omega.coeffs();
    report.pullback = sup_norm(&(proj.transpose() * &mu - omega.coeffs()));

    let parts = QgParts {
        dim: m,
        mult: StructureTensor::from_entries(m * m, m, mult),
        unit,
        star,
        comult: StructureTensor::from_entries(m, m * m, comult),
        counit,
        antipode,
        haar: mu.clone(),
        tol: qg.tol(),
    };
    let quotient = match FiniteQuantumGroup::from_parts(parts) {
        Ok(q) => q,
        Err(_) => return QuotientAttempt { report, built: None },
    };

    let mut hom: f64 = 0.0;
    for i in 0..n {
        let pa = proj.column(i).into_owned();
        for j in 0..n {
            let pb = proj.column(j).into_owned();
            let lhs = &proj * qg.mul(&qg.basis(i), &qg.basis(j));
            hom = hom.max(vec_norm(&(lhs - quotient.mul(&pa, &pb))));
        }
    }
    report.homomorphism = hom;
    let lhs = quotient.comult_matrix() * &proj;
    report.coproduct_intertwining = frob(&(lhs - &pi2 * qg.comult_matrix()));
    let gram = quotient.haar_gram();
    let (eig, _) = linalg::hermitian_eigen(&gram);
    let (lo, hi) = eig.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    report.mu_gram_condition = if lo > tol::POSITIVITY { hi / lo } else { f64::INFINITY };
    let validation = quotient.validate(tol::CLASSIFICATION);
    let ok = validation.passed();
    report.validation = Some(validation);
    if !ok || report.max_residual() > tol::CLASSIFICATION {
        return QuotientAttempt { report, built: None };
    }
    let haar_mu = State::trusted(Functional::haar(&quotient));
    QuotientAttempt {
        built: Some(QuotientQG { quotient, projection: proj, lift, haar_mu, report: report.clone() }),
        report,
    }
}

/// `π(L_ω(e))` with `e = L_ω(g)/ω(g)` for the first basis element `g = e_i* e_i`
/// with `ω(g) > 0`.
fn unit_image(qg: &FiniteQuantumGroup, omega: &State, proj: &CMat) -> CVec {
    let l = left_slice(qg, omega);
    for i in 0..qg.dim() {
        let ei = qg.basis(i);
        let g = qg.mul(&qg.star(&ei), &ei);
        let w = omega.eval(&g).re;
        if w > tol::CLASSIFICATION {
            let e = l.apply(&g) / c(w);
            return proj * l.apply(&e);
        }
    }
    proj * qg.unit()
}

/// Quotient quantum group of a Haar idempotent.
pub fn quotient_quantum_group(qg: &FiniteQuantumGroup, omega: &State) -> Result<QuotientQG> {
    omega.check_parent(qg)?;
    if !is_idempotent(qg, omega, tol::CLASSIFICATION) {
        return Err(Error::NotIdempotent(crate::state::idempotency_residual(qg, omega)));
    }
    let nsp = null_space(qg, omega);
    let ideal = ideal_residual(qg, &nsp);
    if ideal > tol::CLASSIFICATION {
        return Err(Error::NotIdeal(ideal));
    }
    let attempt = attempt_quotient(qg, omega, &nsp);
    if attempt.report.kernel_coproduct > tol::CROSS_CHECK {
        return Err(Error::Consistency(format!(
            "(π⊗π)Δ does not vanish on N_ω: {:.3e}",
            attempt.report.kernel_coproduct
        )));
    }
    attempt.built.ok_or_else(|| {
        let summary = attempt.report.validation.as_ref().map_or_else(String::new, |v| v.failure_summary());
        Error::Validation(format!("quotient construction failed: {:?} {summary}", attempt.report))
    })
}

/// `{a : (π⊗id)Δ(a) = 1_B⊗a}` compared with `L_ω(A)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousReport {
    pub fixed_dim: usize,
    pub invariant_dim: usize,
    pub distance: f64,
}

impl HomogeneousReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.fixed_dim == self.invariant_dim && self.distance <= tol
    }
}

pub fn homogeneous_space_check(qg: &FiniteQuantumGroup, omega: &State, q: &QuotientQG) -> Result<HomogeneousReport> {
    let n = qg.dim();
    let id = CMat::identity(n, n);
    let unit_b = CMat::from_column_slice(q.quotient.dim(), 1, q.quotient.unit().as_slice());
    let m = kron(&q.projection, &id) * qg.comult_matrix() - kron(&unit_b, &id);
    let fixed = Subspace::from_orthonormal(linalg::null_space(&m));
    let inv = invariant_subalgebra(qg, omega)?;
    Ok(HomogeneousReport { fixed_dim: fixed.dim(), invariant_dim: inv.dim(), distance: fixed.distance(inv.space()) })
}
