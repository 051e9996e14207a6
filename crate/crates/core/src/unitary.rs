//! Right multiplicative unitary `V(Λ(a)⊗Λ(b)) = (Λ⊗Λ)(Δ(a)(1⊗b))`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::gns::GnsData;
use crate::linalg::{frob, kron, kron_vec, vec_norm, CMat, CVec};
use crate::qg::FiniteQuantumGroup;
use crate::{Error, Result, C64};

#[derive(Clone, Debug)]
pub struct MultUnitary {
    /// `n² × n²` matrix on `H⊗H` in ONB coordinates.
    pub v: CMat,
    n: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UnitaryReport {
    pub unitarity: f64,
    pub pentagon: f64,
    /// `max_a ‖Δ(a) − V(a⊗1)V*‖` over basis elements.
    pub coproduct: f64,
    /// `S((σ⊗id)V) = (σ⊗id)V*` over matrix-unit functionals `σ`.
    pub antipode: f64,
    /// Largest distance of a second-leg slice of `V` from `π(A)`.
    pub slice_membership: f64,
    /// Dimension of the span of the slices `(σ⊗id)V`.
    pub slice_rank: usize,
}

impl UnitaryReport {
    pub fn passed(&self, tol: f64, dim: usize) -> bool {
        self.unitarity <= tol
            && self.pentagon <= tol
            && self.coproduct <= tol
            && self.antipode <= tol
            && self.slice_membership <= tol
            && self.slice_rank == dim
    }
}

/// Builds `V` and checks unitarity, the pentagon equation, coproduct
/// implementation and the antipode slice identity.
///
/// A failing unitarity or pentagon check points at a Haar state that is not
/// invariant; the residuals are surfaced in the error and nothing is repaired.
pub fn multiplicative_unitary(qg: &FiniteQuantumGroup, gns: &GnsData) -> Result<MultUnitary> {
    let u = MultUnitary::build(qg, gns);
    let r = u.check(qg, gns);
    let tol = qg.tol();
    if r.unitarity > tol || r.pentagon > tol {
        return Err(Error::RightInvarianceDefect(format!(
            "unitarity {:.3e}, pentagon {:.3e}",
            r.unitarity, r.pentagon
        )));
    }
    if !r.passed(tol, qg.dim()) {
        return Err(Error::Consistency(format!("multiplicative unitary checks: {r:?}")));
    }
    Ok(u)
}

impl MultUnitary {
    /// Assembles `V` without checking anything.
    pub fn build(qg: &FiniteQuantumGroup, gns: &GnsData) -> Self {
        let n = qg.dim();
        let one = qg.unit();
        let mut va = CMat::zeros(n * n, n * n);
        for i in 0..n {
            let d = qg.coproduct(&qg.basis(i));
            for j in 0..n {
                va.set_column(i * n + j, &qg.mul2(&d, &kron_vec(one, &qg.basis(j))));
            }
        }
        let v = kron(&gns.onb_inv, &gns.onb_inv) * va * kron(&gns.onb, &gns.onb);
        Self { v, n }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Second-leg block `V_ij` (first leg matrix unit `E_ij`), an operator on `H`.
    pub fn block(&self, i: usize, j: usize) -> CMat {
        let n = self.n;
        CMat::from_fn(n, n, |p, q| self.v[(i * n + p, j * n + q)])
    }

    /// Slices `a_ij = (σ_ij⊗id)V` read into `A`, with the worst membership residual.
    pub fn slices(&self, qg: &FiniteQuantumGroup, gns: &GnsData) -> (Vec<Vec<CVec>>, f64) {
        let mut worst: f64 = 0.0;
        let out = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        let (a, r) = gns.element_of(&self.block(i, j), qg.unit());
                        worst = worst.max(r);
                        a
                    })
                    .collect()
            })
            .collect();
        (out, worst)
    }

    /// `(id⊗ω)V` for a functional `ω` on `A`, an operator on `H`.
    pub fn slice_second_leg(&self, qg: &FiniteQuantumGroup, gns: &GnsData, omega: &CVec) -> CMat {
        let (a, _) = self.slices(qg, gns);
        CMat::from_fn(self.n, self.n, |i, j| omega.dot(&a[i][j]))
    }

    fn apply12(&self, x: &CVec) -> CVec {
        let n = self.n;
        let xm = CMat::from_fn(n * n, n, |r, c| x[r * n + c]);
        let y = &self.v * xm;
        CVec::from_fn(n * n * n, |k, _| y[(k / n, k % n)])
    }

    fn apply23(&self, x: &CVec) -> CVec {
        let n = self.n;
        let xm = CMat::from_fn(n * n, n, |bc, a| x[a * n * n + bc]);
        let y = &self.v * xm;
        CVec::from_fn(n * n * n, |k, _| y[(k % (n * n), k / (n * n))])
    }

    fn apply13(&self, x: &CVec) -> CVec {
        let n = self.n;
        let xm = CMat::from_fn(n * n, n, |ac, b| x[(ac / n) * n * n + b * n + ac % n]);
        let y = &self.v * xm;
        CVec::from_fn(n * n * n, |k, _| {
            let (a, b, c) = (k / (n * n), (k / n) % n, k % n);
            y[(a * n + c, b)]
        })
    }

    /// `V12 V13 V23 − V23 V12` on probe vectors: every basis vector of
    /// `H⊗H⊗H` when `n ≤ 6`, otherwise 32 seeded Gaussian unit vectors.
    /// Returns the Frobenius norm over basis probes, or the largest probe
    /// defect for random probes.
    pub fn pentagon_residual(&self) -> f64 {
        let n3 = self.n.pow(3);
        let defect = |x: &CVec| {
            let lhs = self.apply12(&self.apply13(&self.apply23(x)));
            let rhs = self.apply23(&self.apply12(x));
            vec_norm(&(lhs - rhs))
        };
        if self.n <= 6 {
            (0..n3)
                .map(|i| {
                    let mut x = CVec::zeros(n3);
                    x[i] = C64::new(1.0, 0.0);
                    defect(&x).powi(2)
                })
                .sum::<f64>()
                .sqrt()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            (0..32)
                .map(|_| {
                    let x = CVec::from_fn(n3, |_, _| {
                        C64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng))
                    });
                    defect(&(&x / C64::new(vec_norm(&x), 0.0)))
                })
                .fold(0.0, f64::max)
        }
    }

    pub fn check(&self, qg: &FiniteQuantumGroup, gns: &GnsData) -> UnitaryReport {
        let n = self.n;
        let id = CMat::identity(n * n, n * n);
        let vh = self.v.adjoint();
        let unitarity = frob(&(&vh * &self.v - &id)).max(frob(&(&self.v * &vh - &id)));

        let idn = CMat::identity(n, n);
        let mut coproduct: f64 = 0.0;
        for i in 0..n {
            let mut delta = CMat::zeros(n * n, n * n);
            for &(jk, c) in qg.comult().row(i) {
                delta += kron(&gns.left_reg[jk / n], &gns.left_reg[jk % n]) * c;
            }
            let implemented = &self.v * kron(&gns.left_reg[i], &idn) * &vh;
            coproduct = coproduct.max(frob(&(delta - implemented)));
        }

        let (a, slice_membership) = self.slices(qg, gns);
        let mut antipode = 0.0;
        let mut flat = CMat::zeros(n, n * n);
        for i in 0..n {
            for j in 0..n {
                antipode += vec_norm(&(qg.antipode(&a[i][j]) - qg.star(&a[j][i]))).powi(2);
                flat.set_column(i * n + j, &a[i][j]);
            }
        }
        UnitaryReport {
            unitarity,
            pentagon: self.pentagon_residual(),
            coproduct,
            antipode: antipode.sqrt(),
            slice_membership,
            slice_rank: crate::linalg::rank(&flat),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::CayleyTable;
    use crate::gns::gns;
    use crate::linalg::c;
    use crate::qg::{dual, function_algebra, group_algebra};

    fn build(q: &FiniteQuantumGroup) -> (GnsData, MultUnitary) {
        let g = gns(q).unwrap();
        let u = multiplicative_unitary(q, &g).unwrap();
        (g, u)
    }

    #[test]
    fn group_algebra_z2_is_a_permutation() {
        let q = group_algebra(&CayleyTable::builtin("Z2").unwrap());
        let (_, u) = build(&q);
        // V(λ_x⊗λ_y) = λ_x⊗λ_{xy}
        let mut expected = CMat::zeros(4, 4);
        for x in 0..2 {
            for y in 0..2 {
                expected[(x * 2 + (x ^ y), x * 2 + y)] = c(1.0);
            }
        }
        assert!(frob(&(&u.v - expected)) < 1e-14);
    }

    #[test]
    fn trivial_unitary() {
        let q = function_algebra(&CayleyTable::builtin("Z1").unwrap());
        let (_, u) = build(&q);
        assert!((u.v[(0, 0)] - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn pentagon_on_function_algebra_z2() {
        let q = function_algebra(&CayleyTable::builtin("Z2").unwrap());
        let (_, u) = build(&q);
        assert!(u.pentagon_residual() <= 1e-12);
    }

    #[test]
    fn checks_pass_on_samples() {
        for q in [
            group_algebra(&CayleyTable::builtin("S3").unwrap()),
            function_algebra(&CayleyTable::builtin("S3").unwrap()),
            dual(&function_algebra(&CayleyTable::builtin("Z4").unwrap())).unwrap(),
            function_algebra(&CayleyTable::builtin("Q8").unwrap()),
        ] {
            let g = gns(&q).unwrap();
            let u = MultUnitary::build(&q, &g);
            let r = u.check(&q, &g);
            assert!(r.passed(1e-10, q.dim()), "{r:?}");
        }
    }

    #[test]
    fn pentagon_detects_broken_unitary() {
        let q = function_algebra(&CayleyTable::builtin("Z3").unwrap());
        let g = gns(&q).unwrap();
        let mut u = MultUnitary::build(&q, &g);
        // swap two columns: still unitary, no longer pentagonal
        u.v.swap_columns(1, 2);
        assert!(u.pentagon_residual() > 1e-3);
    }

    #[test]
    fn counit_slice_is_identity() {
        let q = function_algebra(&CayleyTable::builtin("S3").unwrap());
        let (g, u) = build(&q);
        let p = u.slice_second_leg(&q, &g, q.counit());
        assert!(frob(&(p - CMat::identity(6, 6))) < 1e-12);
    }
}
