use crate::linalg::{self, frob, kron, outside_residual, outside_residual_cols, CMat, CVec};
use crate::qg::FiniteQuantumGroup;
use crate::state::{is_idempotent, left_slice, right_slice, Functional, LinearOperator, State};
use crate::{gns::GnsData, tol, Error, Result};

/// Linear subspace of `A`, stored by orthonormal coordinate columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace(CMat);

impl Subspace {
    /// Span of the columns of `m`.
    pub fn span(m: &CMat) -> Self {
        Self(linalg::orth(m))
    }

    pub fn zero(n: usize) -> Self {
        Self(CMat::zeros(n, 0))
    }

    pub fn whole(n: usize) -> Self {
        Self(CMat::identity(n, n))
    }

    pub(crate) fn from_orthonormal(m: CMat) -> Self {
        Self(m)
    }

    pub fn basis(&self) -> &CMat {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.ncols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn columns(&self) -> impl Iterator<Item = CVec> + '_ {
        self.0.column_iter().map(|c| c.into_owned())
    }

    /// Distance of `x` from the subspace.
    pub fn residual(&self, x: &CVec) -> f64 {
        outside_residual(&self.0, x)
    }

    /// Largest distance of a column of `other` from this subspace.
    pub fn contains_residual(&self, other: &CMat) -> f64 {
        outside_residual_cols(&self.0, other)
    }

    /// Symmetric distance between two subspaces; infinite on dimension mismatch.
    pub fn distance(&self, other: &Subspace) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        linalg::subspace_distance(&self.0, &other.0)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SubalgebraFlags {
    pub is_algebra: bool,
    pub is_selfadjoint: bool,
    pub is_right_invariant: bool,
    pub is_symmetric: Option<bool>,
    pub is_expected: bool,
}

/// Subspace `C ⊆ A` with cached structural flags and, when expected, its
/// conditional expectation.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    space: Subspace,
    flags: SubalgebraFlags,
    exp: Option<LinearOperator>,
}

impl Subalgebra {
    /// Computes the flags of `span(m)`. The expectation, when one exists,
    /// is the `h`-orthogonal projection.
    pub fn from_span(qg: &FiniteQuantumGroup, m: &CMat, tol: f64) -> Self {
        let space = Subspace::span(m);
        let mut flags = SubalgebraFlags {
            is_algebra: algebra_residual(qg, &space) <= tol,
            is_selfadjoint: star_residual(qg, &space) <= tol,
            is_right_invariant: right_invariance_residual(qg, &space) <= tol,
            ..SubalgebraFlags::default()
        };
        let mut exp = None;
        if flags.is_algebra && flags.is_selfadjoint {
            let e = h_orthogonal_projection(qg, &space);
            let sub = Self { space: space.clone(), flags, exp: None };
            if verify_conditional_expectation(qg, &e, &sub).passed(tol) {
                flags.is_expected = true;
                exp = Some(e);
            }
        }
        Self { space, flags, exp }
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn basis(&self) -> &CMat {
        self.space.basis()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn flags(&self) -> SubalgebraFlags {
        self.flags
    }

    pub fn expectation(&self) -> Option<&LinearOperator> {
        self.exp.as_ref()
    }

    pub(crate) fn set_symmetric(&mut self, value: bool) {
        self.flags.is_symmetric = Some(value);
    }
}

fn algebra_residual(qg: &FiniteQuantumGroup, s: &Subspace) -> f64 {
    let cols: Vec<CVec> = s.columns().collect();
    let mut worst: f64 = 0.0;
    for a in &cols {
        for b in &cols {
            worst = worst.max(s.residual(&qg.mul(a, b)));
        }
    }
    worst.max(s.residual(qg.unit()))
}

fn star_residual(qg: &FiniteQuantumGroup, s: &Subspace) -> f64 {
    s.columns().map(|a| s.residual(&qg.star(&a))).fold(0.0, f64::max)
}

/// Largest distance of `R_φ(c)` from `C`, over the dual basis `φ` and a basis of `C`.
fn right_invariance_residual(qg: &FiniteQuantumGroup, s: &Subspace) -> f64 {
    (0..qg.dim())
        .map(|k| s.contains_residual(&(right_slice(qg, &Functional::dual_basis(qg, k)).0 * s.basis())))
        .fold(0.0, f64::max)
}

/// Orthogonal projection onto `C` for `⟨a, b⟩ = h(a* b)`.
pub fn h_orthogonal_projection(qg: &FiniteQuantumGroup, c: &Subspace) -> LinearOperator {
    let n = qg.dim();
    if c.dim() == 0 {
        return LinearOperator(CMat::zeros(n, n));
    }
    let g = qg.haar_gram();
    let b = c.basis();
    let inner = b.adjoint() * &g * b;
    let inv = inner.try_inverse().expect("Haar Gram is positive definite on subspaces");
    LinearOperator(b * inv * b.adjoint() * g)
}

/// Residuals of the conditional expectation properties.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpectationReport {
    pub idempotent: f64,
    pub range: f64,
    /// Smallest eigenvalue of `[π(E(e_i* e_j))]`.
    pub min_choi_eigenvalue: f64,
    pub bimodule: f64,
    pub h_preserving: f64,
    /// Distance from the `h`-orthogonal projection onto `C`.
    pub h_orthogonal: f64,
    /// `dim C + dim ker E − dim A`.
    pub decomposition_dim_defect: i64,
    /// Distance between `ker E` and `{a : h(c* a) = 0 ∀c ∈ C}`.
    pub complement: f64,
}

impl ExpectationReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.residuals().iter().all(|&(_, r)| r <= tol)
            && self.min_choi_eigenvalue >= -tol
            && self.decomposition_dim_defect == 0
    }

    pub fn residuals(&self) -> [(&'static str, f64); 6] {
        [
            ("idempotent", self.idempotent),
            ("range", self.range),
            ("bimodule", self.bimodule),
            ("h_preserving", self.h_preserving),
            ("h_orthogonal", self.h_orthogonal),
            ("complement", self.complement),
        ]
    }
}

/// Checks that `E` is a conditional expectation onto `C` that preserves `h`.
pub fn verify_conditional_expectation(
    qg: &FiniteQuantumGroup,
    e: &LinearOperator,
    c: &Subalgebra,
) -> ExpectationReport {
    let n = qg.dim();
    let m = e.matrix();
    let cs = c.space();
    let idempotent = frob(&(m * m - m));
    let range = cs.contains_residual(m).max(frob(&(m * cs.basis() - cs.basis())));
    let h = qg.haar();
    let h_preserving = linalg::sup_norm(&(m.transpose() * h - h));
    let h_orthogonal = frob(&(m - h_orthogonal_projection(qg, cs).0));

    let mut bimodule: f64 = 0.0;
    for cv in cs.columns() {
        let lc = qg.left_mult_matrix(&cv);
        let rc = qg.right_mult_matrix(&cv);
        bimodule = bimodule.max(frob(&(m * &lc - &lc * m))).max(frob(&(m * &rc - &rc * m)));
    }

    let min_choi_eigenvalue = match crate::gns::gns(qg) {
        Ok(g) => choi_min_eigenvalue(qg, &g, m),
        Err(_) => f64::NEG_INFINITY,
    };

    let ker = linalg::null_space(m);
    let decomposition_dim_defect = (cs.dim() + ker.ncols()) as i64 - n as i64;
    let perp = linalg::null_space(&(cs.basis().adjoint() * qg.haar_gram()));
    let complement = Subspace::from_orthonormal(ker).distance(&Subspace::from_orthonormal(perp));
    ExpectationReport {
        idempotent,
        range,
        min_choi_eigenvalue,
        bimodule,
        h_preserving,
        h_orthogonal,
        decomposition_dim_defect,
        complement,
    }
}

/// Smallest eigenvalue of the block matrix `[π(E(e_i* e_j))]_{ij}`.
fn choi_min_eigenvalue(qg: &FiniteQuantumGroup, g: &GnsData, e: &CMat) -> f64 {
    let n = qg.dim();
    let sp = qg.star_products();
    let mut block = CMat::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let x = sp.row(i * n + j).transpose();
            let pe = g.represent(&(e * x));
            block.view_mut((i * n, j * n), (n, n)).copy_from(&pe);
        }
    }
    linalg::min_eigenvalue(&block)
}

/// `C_ω = L_ω(A)` with expectation `L_ω`, all invariants verified.
pub fn invariant_subalgebra(qg: &FiniteQuantumGroup, omega: &State) -> Result<Subalgebra> {
    omega.check_parent(qg)?;
    let res = crate::state::idempotency_residual(qg, omega);
    if !is_idempotent(qg, omega, tol::CLASSIFICATION) {
        return Err(Error::NotIdempotent(res));
    }
    let l = left_slice(qg, omega);
    let space = Subspace::span(l.matrix());
    let flags = SubalgebraFlags {
        is_algebra: algebra_residual(qg, &space) <= tol::CROSS_CHECK,
        is_selfadjoint: star_residual(qg, &space) <= tol::CROSS_CHECK,
        is_right_invariant: right_invariance_residual(qg, &space) <= tol::CROSS_CHECK,
        is_symmetric: None,
        is_expected: true,
    };
    let sub = Subalgebra { space, flags, exp: Some(l.clone()) };
    let report = verify_conditional_expectation(qg, &l, &sub);
    let cond = cond_residual(qg, l.matrix());
    if !(flags.is_algebra && flags.is_selfadjoint && flags.is_right_invariant)
        || !report.passed(tol::CROSS_CHECK)
        || cond > tol::CROSS_CHECK
    {
        return Err(Error::Consistency(format!(
            "L_ω(A) fails the expected subalgebra checks: {flags:?}, cond {cond:.3e}, {report:?}"
        )));
    }
    Ok(sub)
}

/// `max ‖L(a)L(b) − L(L(a)b)‖` over basis pairs.
fn cond_residual(qg: &FiniteQuantumGroup, l: &CMat) -> f64 {
    let n = qg.dim();
    let la: Vec<CVec> = (0..n).map(|i| l.column(i).into_owned()).collect();
    let mut worst: f64 = 0.0;
    for a in &la {
        for j in 0..n {
            let b = qg.basis(j);
            let lhs = qg.mul(a, &la[j]);
            let rhs = l * qg.mul(a, &b);
            worst = worst.max(linalg::vec_norm(&(lhs - rhs)));
        }
    }
    worst
}

/// `ω_C = ε∘E_C` with `E_C` the `h`-orthogonal projection onto `C`.
pub fn state_from_subalgebra(qg: &FiniteQuantumGroup, c: &Subalgebra) -> Result<State> {
    if !c.flags().is_right_invariant {
        return Err(Error::NotExpected("subalgebra is not right invariant".into()));
    }
    let e = match c.expectation() {
        Some(e) => e.clone(),
        None => {
            let e = h_orthogonal_projection(qg, c.space());
            let report = verify_conditional_expectation(qg, &e, c);
            if !report.passed(tol::CROSS_CHECK) {
                return Err(Error::NotExpected(format!(
                    "h-orthogonal projection is not a conditional expectation: {report:?}"
                )));
            }
            e
        }
    };
    let f = Functional::new(qg, e.matrix().transpose() * qg.counit())?;
    let state = State::new(qg, f, tol::CROSS_CHECK)?;
    if !is_idempotent(qg, &state, tol::CROSS_CHECK) {
        return Err(Error::NotIdempotent(crate::state::idempotency_residual(qg, &state)));
    }
    Ok(state)
}

/// Checks for the restriction `α = Δ|_C` as a coaction.
#[derive(Clone, Debug, PartialEq)]
pub struct CoactionReport {
    /// Distance of `Δ(C)` from `C⊗A`.
    pub membership: f64,
    /// `‖(id⊗ε)α(c) − c‖`.
    pub counit: f64,
    /// `dim span{α(c)(1⊗a)}` against `dim C · dim A`.
    pub density_rank: usize,
    pub density_expected: usize,
    /// `dim span{c a}` against `dim A`.
    pub nondegenerate_rank: usize,
    pub dim: usize,
}

impl CoactionReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.membership <= tol
            && self.counit <= tol
            && self.density_rank == self.density_expected
            && self.nondegenerate_rank == self.dim
    }
}

pub fn coaction_checks(qg: &FiniteQuantumGroup, c: &Subalgebra) -> CoactionReport {
    let n = qg.dim();
    let cols: Vec<CVec> = c.space().columns().collect();
    let q = c.basis();
    let ca = kron(q, &CMat::identity(n, n));
    let mut membership: f64 = 0.0;
    let mut counit: f64 = 0.0;
    let mut density = CMat::zeros(n * n, cols.len() * n);
    let mut products = CMat::zeros(n, cols.len() * n);
    for (k, cv) in cols.iter().enumerate() {
        let d = qg.coproduct(cv);
        membership = membership.max(outside_residual(&ca, &d));
        let back = CVec::from_fn(n, |j, _| (0..n).map(|l| d[j * n + l] * qg.counit()[l]).sum());
        counit = counit.max(linalg::vec_norm(&(back - cv)));
        for a in 0..n {
            let ea = qg.basis(a);
            density.set_column(k * n + a, &qg.mul2(&d, &linalg::kron_vec(qg.unit(), &ea)));
            products.set_column(k * n + a, &qg.mul(cv, &ea));
        }
    }
    CoactionReport {
        membership,
        counit,
        density_rank: linalg::rank(&density),
        density_expected: cols.len() * n,
        nondegenerate_rank: linalg::rank(&products),
        dim: n,
    }
}
