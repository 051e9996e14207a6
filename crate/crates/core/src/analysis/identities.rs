use crate::gns::GnsData;
use crate::linalg::{self, frob, sup_norm, CMat};
use crate::qg::FiniteQuantumGroup;
use crate::state::{convolve_unchecked, left_slice, State};
use crate::unitary::MultUnitary;

/// `max_b ‖ω ⋆ _bω − ω(b) ω‖_∞` over basis elements `b`.
pub fn omegac_residual(qg: &FiniteQuantumGroup, omega: &State) -> f64 {
    (0..qg.dim())
        .map(|k| {
            let b = qg.basis(k);
            let lhs = convolve_unchecked(qg, omega, &omega.right_weighted(qg, &b));
            lhs.distance(&omega.scale(omega.eval(&b)))
        })
        .fold(0.0, f64::max)
}

/// `max_a |ω(S(a)) − ω(a)|` over basis elements.
pub fn antipode_invariance(qg: &FiniteQuantumGroup, omega: &State) -> f64 {
    sup_norm(&(qg.antipode_matrix().transpose() * omega.coeffs() - omega.coeffs()))
}

/// `p = (id⊗ω)V` as an operator on `H`.
pub fn v_projection(qg: &FiniteQuantumGroup, gns: &GnsData, v: &MultUnitary, omega: &State) -> CMat {
    v.slice_second_leg(qg, gns, omega.coeffs())
}

/// `(‖p² − p‖, ‖p − p*‖)`.
pub fn projection_residuals(p: &CMat) -> (f64, f64) {
    (frob(&(p * p - p)), frob(&(p - p.adjoint())))
}

/// `max |ω(ac) − ω(a)ω(c)|` and `max |ω(ca) − ω(c)ω(a)|` for `c` spanning
/// `L_ω(A)` and `a` spanning `A`.
pub fn multiplicative_domain_check(qg: &FiniteQuantumGroup, omega: &State) -> f64 {
    let c = linalg::orth(left_slice(qg, omega).matrix());
    let mut worst: f64 = 0.0;
    for cv in c.column_iter().map(|x| x.into_owned()) {
        let wc = omega.eval(&cv);
        for i in 0..qg.dim() {
            let a = qg.basis(i);
            let wa = omega.eval(&a);
            worst = worst
                .max((omega.eval(&qg.mul(&a, &cv)) - wa * wc).norm())
                .max((omega.eval(&qg.mul(&cv, &a)) - wc * wa).norm());
        }
    }
    worst
}
