//! GNS space of the Haar state.
//!
//! `H` is `A` itself with `⟨a, b⟩ = h(a*b)`. Because `h` is faithful the
//! left regular representation on `H` is faithful, so operator norms and
//! operator identities are computed there.

use crate::linalg::{self, frob, CMat, CVec};
use crate::qg::FiniteQuantumGroup;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct GnsData {
    /// `h(e_i* e_j)`.
    pub gram: CMat,
    /// Columns are the A-coordinates of an orthonormal basis of `H`
    /// (`gram^{-1/2}`).
    pub onb: CMat,
    /// Inverse of `onb` (`gram^{1/2}`), mapping A-coordinates to ONB coordinates.
    pub onb_inv: CMat,
    /// `π(e_i)` in ONB coordinates.
    pub left_reg: Vec<CMat>,
}

pub fn gns(qg: &FiniteQuantumGroup) -> Result<GnsData> {
    let gram = qg.haar_gram();
    let min = linalg::min_eigenvalue(&gram);
    if min <= qg.tol() {
        return Err(Error::NotFaithful(min));
    }
    let onb = linalg::hermitian_map(&gram, |l| l.powf(-0.5));
    let onb_inv = linalg::hermitian_map(&gram, f64::sqrt);
    let left_reg = qg.left_mult_basis().iter().map(|l| &onb_inv * l * &onb).collect();
    Ok(GnsData { gram, onb, onb_inv, left_reg })
}

impl GnsData {
    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    /// `π(a)` in ONB coordinates.
    pub fn represent(&self, a: &CVec) -> CMat {
        let n = self.dim();
        self.left_reg.iter().zip(a.iter()).fold(CMat::zeros(n, n), |acc, (m, &x)| acc + m * x)
    }

    /// ONB coordinates of `Λ(a)`.
    pub fn vector(&self, a: &CVec) -> CVec {
        &self.onb_inv * a
    }

    /// Reads an operator on `H` back into `A`: returns `a` with `π(a)` closest
    /// to `x` together with the residual `‖π(a) − x‖`.
    pub fn element_of(&self, x: &CMat, unit: &CVec) -> (CVec, f64) {
        // π(a) Λ(1) = Λ(a)
        let a = &self.onb * (x * (&self.onb_inv * unit));
        let res = frob(&(self.represent(&a) - x));
        (a, res)
    }

    /// `‖onb* gram onb − 1‖`.
    pub fn orthonormality_residual(&self) -> f64 {
        let n = self.dim();
        frob(&(self.onb.adjoint() * &self.gram * &self.onb - CMat::identity(n, n)))
    }

    /// Residuals of `left_reg` being a unital *-representation, plus the rank
    /// of its image (faithful iff the rank is `dim`).
    pub fn representation_residuals(&self, qg: &FiniteQuantumGroup) -> (f64, f64, f64, usize) {
        let n = self.dim();
        let mut mult = 0.0;
        let mut star = 0.0;
        for i in 0..n {
            let ei = qg.basis(i);
            star += frob(&(self.represent(&qg.star(&ei)) - self.left_reg[i].adjoint())).powi(2);
            for j in 0..n {
                let p = qg.mul(&ei, &qg.basis(j));
                mult += frob(&(self.represent(&p) - &self.left_reg[i] * &self.left_reg[j])).powi(2);
            }
        }
        let unital = frob(&(self.represent(qg.unit()) - CMat::identity(n, n)));
        let flat = CMat::from_fn(n * n, n, |r, i| self.left_reg[i][(r / n, r % n)]);
        (mult.sqrt(), star.sqrt(), unital, linalg::rank(&flat))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::CayleyTable;
    use crate::linalg::c;
    use crate::qg::{function_algebra, group_algebra};

    #[test]
    fn gram_of_function_algebra_z2() {
        let q = function_algebra(&CayleyTable::builtin("Z2").unwrap());
        let d = gns(&q).unwrap();
        let expected = CMat::from_diagonal(&CVec::from_element(2, c(0.5)));
        assert!(frob(&(&d.gram - expected)) < 1e-15);
        assert!(d.orthonormality_residual() < 1e-14);
    }

    #[test]
    fn gram_of_group_algebra_is_identity() {
        let q = group_algebra(&CayleyTable::builtin("Z2").unwrap());
        let d = gns(&q).unwrap();
        assert!(frob(&(&d.gram - CMat::identity(2, 2))) < 1e-15);
    }

    #[test]
    fn trivial_gram() {
        let q = group_algebra(&CayleyTable::builtin("Z1").unwrap());
        let d = gns(&q).unwrap();
        assert_eq!(d.gram[(0, 0)], c(1.0));
    }

    #[test]
    fn left_regular_representation_is_faithful() {
        for q in [
            group_algebra(&CayleyTable::builtin("S3").unwrap()),
            function_algebra(&CayleyTable::builtin("D4").unwrap()),
        ] {
            let d = gns(&q).unwrap();
            let (m, s, u, rank) = d.representation_residuals(&q);
            assert!(m < 1e-12 && s < 1e-12 && u < 1e-12);
            assert_eq!(rank, q.dim());
            let a = q.basis(3) + q.basis(1) * c(2.0);
            let (back, res) = d.element_of(&d.represent(&a), q.unit());
            assert!(res < 1e-12);
            assert!(crate::linalg::vec_norm(&(back - a)) < 1e-12);
        }
    }

    #[test]
    fn non_faithful_haar_is_rejected() {
        let q = group_algebra(&CayleyTable::builtin("Z2").unwrap());
        let bad = q.with_haar(q.counit().clone()).unwrap();
        // ε(λ_x* λ_y) = 1 for all x, y: rank one Gram
        assert!(matches!(gns(&bad), Err(Error::NotFaithful(_))));
    }
}
