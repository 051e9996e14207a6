//! Finite quantum groups by structure constants.
//!
//! Elements of `A` are coefficient vectors in a fixed basis `e_0..e_{n-1}`;
//! elements of `A⊗A` use the index `j*n + k` for `e_j⊗e_k`. The star is
//! antilinear and stored as a matrix applied to conjugated coordinates:
//! `a* = star · conj(a)`. Functionals (counit, Haar state) are stored by
//! their values on the basis, `ω(a) = Σ ω_i a_i` with no conjugation.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cayley::CayleyTable;
use crate::linalg::{self, c, conj_mat, conj_vec, frob, kron, kron_vec, vec_norm, CMat, CVec};
use crate::tensor::StructureTensor;
use crate::{tol, Error, Result, C64};

/// Content hash identifying a quantum group; functionals carry it to refuse
/// mixing objects from different algebras.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QgId(pub String);

impl fmt::Display for QgId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Raw structure data, as read from a file or produced by a constructor.
#[derive(Clone, Debug)]
pub struct QgParts {
    pub dim: usize,
    pub mult: StructureTensor,
    pub unit: CVec,
    pub star: CMat,
    pub comult: StructureTensor,
    pub counit: CVec,
    pub antipode: CMat,
    pub haar: CVec,
    pub tol: f64,
}

#[derive(Clone, Debug)]
pub struct FiniteQuantumGroup {
    parts: QgParts,
    id: QgId,
    star_products: OnceLock<CMat>,
    comult_dense: OnceLock<CMat>,
    left_mult: OnceLock<Vec<CMat>>,
}

impl FiniteQuantumGroup {
    /// Checks shapes only; axioms are checked by [`validate`](Self::validate).
    pub fn from_parts(parts: QgParts) -> Result<Self> {
        let n = parts.dim;
        let dim_err = |m: String| Err(Error::Dimension(m));
        if n == 0 {
            return dim_err("dim must be positive".into());
        }
        if parts.mult.outer_len() != n * n || parts.mult.inner_len() != n {
            return dim_err(format!(
                "mult is {}x{}, expected {}x{n}",
                parts.mult.outer_len(),
                parts.mult.inner_len(),
                n * n
            ));
        }
        if parts.comult.outer_len() != n || parts.comult.inner_len() != n * n {
            return dim_err(format!(
                "comult is {}x{}, expected {n}x{}",
                parts.comult.outer_len(),
                parts.comult.inner_len(),
                n * n
            ));
        }
        for (name, len) in [("unit", parts.unit.len()), ("counit", parts.counit.len()), ("haar", parts.haar.len())] {
            if len != n {
                return dim_err(format!("{name} has length {len}, expected {n}"));
            }
        }
        for (name, m) in [("star", &parts.star), ("antipode", &parts.antipode)] {
            if m.shape() != (n, n) {
                return dim_err(format!("{name} is {:?}, expected ({n}, {n})", m.shape()));
            }
        }
        if parts.tol.is_nan() || parts.tol <= 0.0 {
            return dim_err("tolerance must be positive".into());
        }
        let id = content_hash(&parts);
        Ok(Self {
            parts,
            id,
            star_products: OnceLock::new(),
            comult_dense: OnceLock::new(),
            left_mult: OnceLock::new(),
        })
    }

    pub fn parts(&self) -> &QgParts {
        &self.parts
    }

    pub fn into_parts(self) -> QgParts {
        self.parts
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.parts.dim
    }

    pub fn id(&self) -> &QgId {
        &self.id
    }

    pub fn tol(&self) -> f64 {
        self.parts.tol
    }

    pub fn unit(&self) -> &CVec {
        &self.parts.unit
    }

    pub fn counit(&self) -> &CVec {
        &self.parts.counit
    }

    pub fn haar(&self) -> &CVec {
        &self.parts.haar
    }

    pub fn star_matrix(&self) -> &CMat {
        &self.parts.star
    }

    pub fn antipode_matrix(&self) -> &CMat {
        &self.parts.antipode
    }

    pub fn mult(&self) -> &StructureTensor {
        &self.parts.mult
    }

    pub fn comult(&self) -> &StructureTensor {
        &self.parts.comult
    }

    pub fn with_tol(&self, tol: f64) -> Result<Self> {
        Self::from_parts(QgParts { tol, ..self.parts.clone() })
    }

    /// Same algebra and coalgebra with a different functional declared as
    /// the Haar state.
    pub fn with_haar(&self, haar: CVec) -> Result<Self> {
        Self::from_parts(QgParts { haar, ..self.parts.clone() })
    }

    pub fn basis(&self, i: usize) -> CVec {
        let mut v = CVec::zeros(self.dim());
        v[i] = c(1.0);
        v
    }

    pub fn mul(&self, a: &CVec, b: &CVec) -> CVec {
        let n = self.dim();
        let mut out = CVec::zeros(n);
        for i in 0..n {
            if a[i] == C64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                if b[j] == C64::new(0.0, 0.0) {
                    continue;
                }
                let ab = a[i] * b[j];
                for &(k, v) in self.parts.mult.row(i * n + j) {
                    out[k] += ab * v;
                }
            }
        }
        out
    }

    pub fn star(&self, a: &CVec) -> CVec {
        &self.parts.star * conj_vec(a)
    }

    pub fn antipode(&self, a: &CVec) -> CVec {
        &self.parts.antipode * a
    }

    pub fn counit_of(&self, a: &CVec) -> C64 {
        self.parts.counit.dot(a)
    }

    pub fn haar_of(&self, a: &CVec) -> C64 {
        self.parts.haar.dot(a)
    }

    /// `Δ(a)` as a vector on `A⊗A`.
    pub fn coproduct(&self, a: &CVec) -> CVec {
        let n = self.dim();
        let mut out = CVec::zeros(n * n);
        for i in 0..n {
            if a[i] == C64::new(0.0, 0.0) {
                continue;
            }
            for &(jk, v) in self.parts.comult.row(i) {
                out[jk] += a[i] * v;
            }
        }
        out
    }

    /// Product in `A⊗A`.
    pub fn mul2(&self, x: &CVec, y: &CVec) -> CVec {
        let n = self.dim();
        let nz = |v: &CVec| -> Vec<(usize, C64)> {
            v.iter().enumerate().filter(|(_, z)| **z != C64::new(0.0, 0.0)).map(|(i, z)| (i, *z)).collect()
        };
        let (xs, ys) = (nz(x), nz(y));
        let mut out = CVec::zeros(n * n);
        for &(ij, xv) in &xs {
            let (i, j) = (ij / n, ij % n);
            for &(pq, yv) in &ys {
                let (p, q) = (pq / n, pq % n);
                let s = xv * yv;
                let left = self.parts.mult.row(i * n + p);
                let right = self.parts.mult.row(j * n + q);
                for &(k, v1) in left {
                    for &(l, v2) in right {
                        out[k * n + l] += s * v1 * v2;
                    }
                }
            }
        }
        out
    }

    /// Star in `A⊗A`.
    pub fn star2(&self, x: &CVec) -> CVec {
        kron(&self.parts.star, &self.parts.star) * conj_vec(x)
    }

    /// Matrix of `x ↦ a·x`.
    pub fn left_mult_matrix(&self, a: &CVec) -> CMat {
        let n = self.dim();
        let mut m = CMat::zeros(n, n);
        for j in 0..n {
            m.set_column(j, &self.mul(a, &self.basis(j)));
        }
        m
    }

    /// Matrix of `x ↦ x·a`.
    pub fn right_mult_matrix(&self, a: &CVec) -> CMat {
        let n = self.dim();
        let mut m = CMat::zeros(n, n);
        for j in 0..n {
            m.set_column(j, &self.mul(&self.basis(j), a));
        }
        m
    }

    /// Left multiplication matrices of the basis elements.
    pub fn left_mult_basis(&self) -> &[CMat] {
        self.left_mult.get_or_init(|| (0..self.dim()).map(|i| self.left_mult_matrix(&self.basis(i))).collect())
    }

    /// `Δ` as a dense `n² × n` matrix.
    pub fn comult_matrix(&self) -> &CMat {
        self.comult_dense.get_or_init(|| self.parts.comult.to_matrix())
    }

    /// `n² × n` matrix whose row `i*n + j` holds the coordinates of `e_i* e_j`.
    pub fn star_products(&self) -> &CMat {
        self.star_products.get_or_init(|| {
            let n = self.dim();
            let stars: Vec<CVec> = (0..n).map(|i| self.star(&self.basis(i))).collect();
            let mut m = CMat::zeros(n * n, n);
            for i in 0..n {
                for j in 0..n {
                    let p = self.mul(&stars[i], &self.basis(j));
                    m.set_row(i * n + j, &p.transpose());
                }
            }
            m
        })
    }

    /// Gram matrix `G[i][j] = f(e_i* e_j)` of a functional given by its values.
    pub fn gram_of(&self, f: &CVec) -> CMat {
        let n = self.dim();
        let v = self.star_products() * f;
        CMat::from_fn(n, n, |i, j| v[i * n + j])
    }

    pub fn haar_gram(&self) -> CMat {
        self.gram_of(&self.parts.haar)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let d = self.mul(&self.basis(i), &self.basis(j)) - self.mul(&self.basis(j), &self.basis(i));
                vec_norm(&d) <= self.tol()
            })
        })
    }

    pub fn is_cocommutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            let d = self.coproduct(&self.basis(i));
            let flipped = CVec::from_fn(n * n, |jk, _| d[(jk % n) * n + jk / n]);
            vec_norm(&(d - flipped)) <= self.tol()
        })
    }

    /// Checks every Hopf and Haar axiom and the cancellation laws.
    pub fn validate(&self, tol: f64) -> ValidationReport {
        validate(self, tol)
    }

    /// Like [`validate`](Self::validate) but as a `Result`.
    pub fn ensure_valid(&self) -> Result<ValidationReport> {
        let report = self.validate(self.tol());
        if report.passed() {
            Ok(report)
        } else {
            Err(Error::Validation(report.failure_summary()))
        }
    }
}

fn content_hash(p: &QgParts) -> QgId {
    let mut h = Sha256::new();
    h.update((p.dim as u64).to_le_bytes());
    let mut put = |z: C64| {
        h.update(z.re.to_bits().to_le_bytes());
        h.update(z.im.to_bits().to_le_bytes());
    };
    for t in [&p.mult, &p.comult] {
        for (o, i, v) in t.entries() {
            put(C64::new(o as f64, i as f64));
            put(v);
        }
    }
    for v in [&p.unit, &p.counit, &p.haar] {
        v.iter().copied().for_each(&mut put);
    }
    for m in [&p.star, &p.antipode] {
        m.iter().copied().for_each(&mut put);
    }
    let digest = h.finalize();
    QgId(digest.iter().take(8).map(|b| format!("{b:02x}")).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// Passes when `value ≤ threshold`.
    Residual,
    /// Passes when `value > threshold`.
    LowerBound,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub kind: CheckKind,
    pub passed: bool,
}

impl AxiomCheck {
    pub fn residual(name: &str, value: f64, threshold: f64) -> Self {
        Self { name: name.into(), value, threshold, kind: CheckKind::Residual, passed: value <= threshold }
    }

    pub fn lower_bound(name: &str, value: f64, threshold: f64) -> Self {
        Self { name: name.into(), value, threshold, kind: CheckKind::LowerBound, passed: value > threshold }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ValidationReport {
    pub dim: usize,
    pub checks: Vec<AxiomCheck>,
    /// Ranks of `span Δ(A)(A⊗1)` and `span Δ(A)(1⊗A)`.
    pub cancellation_ranks: (usize, usize),
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Largest value among residual-type checks.
    pub fn max_residual(&self) -> f64 {
        self.checks.iter().filter(|c| c.kind == CheckKind::Residual).map(|c| c.value).fold(0.0, f64::max)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn failure_summary(&self) -> String {
        self.failures().map(|c| format!("{} = {:.3e}", c.name, c.value)).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim {}: {}", self.dim, if self.passed() { "PASS" } else { "FAIL" })?;
        for ch in &self.checks {
            let op = match ch.kind {
                CheckKind::Residual => "<=",
                CheckKind::LowerBound => ">",
            };
            writeln!(
                f,
                "  [{}] {:<28} {:>11.3e}  ({op} {:.1e})",
                if ch.passed { "ok" } else { "!!" },
                ch.name,
                ch.value,
                ch.threshold
            )?;
        }
        Ok(())
    }
}

fn validate(qg: &FiniteQuantumGroup, tol: f64) -> ValidationReport {
    let n = qg.dim();
    let e: Vec<CVec> = (0..n).map(|i| qg.basis(i)).collect();
    let one = qg.unit().clone();
    let mut checks = Vec::new();
    let mut push = |name: &str, sq: f64| checks.push(AxiomCheck::residual(name, sq.sqrt(), tol));
    let sq = |v: CVec| v.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let sqc = |z: C64| z.norm_sqr();

    let prods: Vec<Vec<CVec>> = (0..n).map(|i| (0..n).map(|j| qg.mul(&e[i], &e[j])).collect()).collect();
    let deltas: Vec<CVec> = e.iter().map(|x| qg.coproduct(x)).collect();

    // algebra
    let mut r = 0.0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                r += sq(qg.mul(&prods[i][j], &e[k]) - qg.mul(&e[i], &prods[j][k]));
            }
        }
    }
    push("associativity", r);
    push("unit", e.iter().map(|x| sq(qg.mul(&one, x) - x) + sq(qg.mul(x, &one) - x)).sum());
    let star = qg.star_matrix();
    push("star_involution", frob(&(star * conj_mat(star) - CMat::identity(n, n))).powi(2));
    let stars: Vec<CVec> = e.iter().map(|x| qg.star(x)).collect();
    let mut r = 0.0;
    for i in 0..n {
        for j in 0..n {
            r += sq(qg.star(&prods[i][j]) - qg.mul(&stars[j], &stars[i]));
        }
    }
    push("star_antimultiplicative", r);

    // coalgebra
    let mut r = 0.0;
    for i in 0..n {
        let mut left = CVec::zeros(n * n * n);
        let mut right = CVec::zeros(n * n * n);
        for &(jk, v) in qg.comult().row(i) {
            let (j, k) = (jk / n, jk % n);
            left += kron_vec(&e[j], &deltas[k]) * v;
            right += kron_vec(&deltas[j], &e[k]) * v;
        }
        r += sq(left - right);
    }
    push("coassociativity", r);
    let (mut rl, mut rr) = (0.0, 0.0);
    for i in 0..n {
        let mut l = CVec::zeros(n);
        let mut rt = CVec::zeros(n);
        for &(jk, v) in qg.comult().row(i) {
            let (j, k) = (jk / n, jk % n);
            l[k] += qg.counit()[j] * v;
            rt[j] += qg.counit()[k] * v;
        }
        rl += sq(l - &e[i]);
        rr += sq(rt - &e[i]);
    }
    push("counit_law", rl + rr);

    // compatibility
    let mut r = 0.0;
    for i in 0..n {
        for j in 0..n {
            r += sq(qg.coproduct(&prods[i][j]) - qg.mul2(&deltas[i], &deltas[j]));
        }
    }
    push("comult_multiplicative", r);
    push("comult_star", (0..n).map(|i| sq(qg.coproduct(&stars[i]) - qg.star2(&deltas[i]))).sum());
    push("comult_unital", sq(qg.coproduct(&one) - kron_vec(&one, &one)));
    let mut r = sqc(qg.counit_of(&one) - c(1.0));
    for i in 0..n {
        r += sqc(qg.counit_of(&stars[i]) - qg.counit()[i].conj());
        for j in 0..n {
            r += sqc(qg.counit_of(&prods[i][j]) - qg.counit()[i] * qg.counit()[j]);
        }
    }
    push("counit_character", r);

    // antipode
    let s = qg.antipode_matrix();
    let (mut rl, mut rr) = (0.0, 0.0);
    for i in 0..n {
        let mut l = CVec::zeros(n);
        let mut rt = CVec::zeros(n);
        for &(jk, v) in qg.comult().row(i) {
            let (j, k) = (jk / n, jk % n);
            l += qg.mul(&s.column(j).into_owned(), &e[k]) * v;
            rt += qg.mul(&e[j], &s.column(k).into_owned()) * v;
        }
        let target = &one * qg.counit()[i];
        rl += sq(l - &target);
        rr += sq(rt - &target);
    }
    push("antipode_law", rl + rr);
    push("antipode_involutive", frob(&(s * s - CMat::identity(n, n))).powi(2));
    push("antipode_star", frob(&(s * star - star * conj_mat(s))).powi(2));

    // Haar state
    let gram = qg.haar_gram();
    push("haar_normalized", sqc(qg.haar_of(&one) - c(1.0)));
    push("haar_hermitian", frob(&(&gram - gram.adjoint())).powi(2));
    let min_eig = linalg::min_eigenvalue(&gram);
    push("haar_positive", (-min_eig).max(0.0).powi(2));
    let (mut rl, mut rr) = (0.0, 0.0);
    for i in 0..n {
        let mut l = CVec::zeros(n);
        let mut rt = CVec::zeros(n);
        for &(jk, v) in qg.comult().row(i) {
            let (j, k) = (jk / n, jk % n);
            l[k] += qg.haar()[j] * v;
            rt[j] += qg.haar()[k] * v;
        }
        let target = &one * qg.haar()[i];
        rl += sq(l - &target);
        rr += sq(rt - target);
    }
    push("haar_left_invariant", rl);
    push("haar_right_invariant", rr);
    checks.push(AxiomCheck::lower_bound("haar_faithful", min_eig, tol));

    // cancellation laws as rank conditions
    let mut left_span = CMat::zeros(n * n, n * n);
    let mut right_span = CMat::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            left_span.set_column(i * n + j, &qg.mul2(&deltas[i], &kron_vec(&e[j], &one)));
            right_span.set_column(i * n + j, &qg.mul2(&deltas[i], &kron_vec(&one, &e[j])));
        }
    }
    let ranks = (linalg::rank(&left_span), linalg::rank(&right_span));
    checks.push(AxiomCheck::residual("cancellation_left_rank_defect", (n * n - ranks.0) as f64, 0.0));
    checks.push(AxiomCheck::residual("cancellation_right_rank_defect", (n * n - ranks.1) as f64, 0.0));

    ValidationReport { dim: n, checks, cancellation_ranks: ranks }
}

/// Commutative quantum group `C(G)` of functions on a finite group, in the
/// basis of point masses `δ_x`.
pub fn function_algebra(g: &CayleyTable) -> FiniteQuantumGroup {
    let n = g.order();
    let mult = StructureTensor::from_entries(n * n, n, (0..n).map(|x| (x * n + x, x, c(1.0))));
    let comult = StructureTensor::from_entries(
        n,
        n * n,
        (0..n).flat_map(|y| (0..n).map(move |z| (y, z))).map(|(y, z)| (g.mul(y, z), y * n + z, c(1.0))),
    );
    let mut antipode = CMat::zeros(n, n);
    for x in 0..n {
        antipode[(g.inv(x), x)] = c(1.0);
    }
    FiniteQuantumGroup::from_parts(QgParts {
        dim: n,
        mult,
        unit: CVec::from_element(n, c(1.0)),
        star: CMat::identity(n, n),
        comult,
        counit: CVec::from_fn(n, |x, _| c(if x == g.identity() { 1.0 } else { 0.0 })),
        antipode,
        haar: CVec::from_element(n, c(1.0 / n as f64)),
        tol: tol::VALIDATION,
    })
    .expect("shapes are consistent by construction")
}

/// Cocommutative quantum group `C*(G)` in the basis of translations `λ_x`.
pub fn group_algebra(g: &CayleyTable) -> FiniteQuantumGroup {
    let n = g.order();
    let mult = StructureTensor::from_entries(
        n * n,
        n,
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).map(|(x, y)| (x * n + y, g.mul(x, y), c(1.0))),
    );
    let comult = StructureTensor::from_entries(n, n * n, (0..n).map(|x| (x, x * n + x, c(1.0))));
    let mut inv = CMat::zeros(n, n);
    for x in 0..n {
        inv[(g.inv(x), x)] = c(1.0);
    }
    let e = g.identity();
    FiniteQuantumGroup::from_parts(QgParts {
        dim: n,
        mult,
        unit: CVec::from_fn(n, |x, _| c(if x == e { 1.0 } else { 0.0 })),
        star: inv.clone(),
        comult,
        counit: CVec::from_element(n, c(1.0)),
        antipode: inv,
        haar: CVec::from_fn(n, |x, _| c(if x == e { 1.0 } else { 0.0 })),
        tol: tol::VALIDATION,
    })
    .expect("shapes are consistent by construction")
}

/// Dual quantum group on `A*`, written in the basis dual to that of `A`.
///
/// Product is convolution, coproduct is the transpose of multiplication, the
/// star is `ω* = conj ∘ ω ∘ (S(·))*` and the antipode is `ω ↦ ω∘S`. The dual
/// Haar state is fixed by `ĥ(h(·a)) = c·ε(a)` with `c` chosen so that
/// `ĥ(ε) = 1`.
pub fn dual(qg: &FiniteQuantumGroup) -> Result<FiniteQuantumGroup> {
    qg.ensure_valid()?;
    let n = qg.dim();
    // m̂[j][k][i] = d[i][j][k]
    let mult = StructureTensor::from_entries(n * n, n, qg.comult().entries().map(|(i, jk, v)| (jk, i, v)));
    // d̂[i][j][k] = m[j][k][i]
    let comult = StructureTensor::from_entries(n, n * n, qg.mult().entries().map(|(jk, i, v)| (i, jk, v)));
    let s = qg.antipode_matrix();
    let m = qg.star_matrix() * conj_mat(s);
    let star = conj_mat(&m).transpose();
    let antipode = s.transpose();

    // φ_k = h(· a_k) with H[i][j] = h(e_i e_j)
    let hmat = CMat::from_fn(n, n, |i, j| qg.haar_of(&qg.mul(&qg.basis(i), &qg.basis(j))));
    let hinv = hmat.try_inverse().ok_or_else(|| Error::NotFaithful(linalg::min_eigenvalue(&qg.haar_gram())))?;
    let raw: CVec = (qg.counit().transpose() * &hinv).transpose();
    let norm = raw.dot(qg.counit());
    if norm.norm() < tol::CONSTRUCTION {
        return Err(Error::Consistency("dual Haar normalization vanishes".into()));
    }
    let haar = raw / norm;

    FiniteQuantumGroup::from_parts(QgParts {
        dim: n,
        mult,
        unit: qg.counit().clone(),
        star,
        comult,
        counit: qg.unit().clone(),
        antipode,
        haar,
        tol: qg.tol(),
    })
}

/// Residuals for `t` (columns: images of the basis of `b` in `a`) being an
/// isomorphism of quantum groups `b → a`.
pub fn isomorphism_report(
    a: &FiniteQuantumGroup,
    b: &FiniteQuantumGroup,
    t: &CMat,
    tol: f64,
) -> Result<ValidationReport> {
    let n = a.dim();
    if b.dim() != n || t.shape() != (n, n) {
        return Err(Error::Dimension("isomorphism needs equal dimensions and a square map".into()));
    }
    let sq = |v: CVec| v.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let tt = kron(t, t);
    let (mut rm, mut rs, mut rd, mut re) = (0.0, 0.0, 0.0, 0.0);
    for i in 0..n {
        let bi = b.basis(i);
        let ti = t * &bi;
        for j in 0..n {
            let bj = b.basis(j);
            rm += sq(t * b.mul(&bi, &bj) - a.mul(&ti, &(t * &bj)));
        }
        rs += sq(t * b.star(&bi) - a.star(&ti));
        rd += sq(&tt * b.coproduct(&bi) - a.coproduct(&ti));
        re += (a.counit_of(&ti) - b.counit_of(&bi)).norm_sqr();
    }
    let checks = vec![
        AxiomCheck::residual("iso_product", rm.sqrt(), tol),
        AxiomCheck::residual("iso_unit", vec_norm(&(t * b.unit() - a.unit())), tol),
        AxiomCheck::residual("iso_star", rs.sqrt(), tol),
        AxiomCheck::residual("iso_coproduct", rd.sqrt(), tol),
        AxiomCheck::residual("iso_counit", re.sqrt(), tol),
        AxiomCheck::residual("iso_antipode", frob(&(a.antipode_matrix() * t - t * b.antipode_matrix())), tol),
        AxiomCheck::residual("iso_haar", vec_norm(&(t.transpose() * a.haar() - b.haar())), tol),
        AxiomCheck::residual("iso_rank_defect", (n - linalg::rank(t)) as f64, 0.0),
    ];
    Ok(ValidationReport { dim: n, checks, cancellation_ranks: (0, 0) })
}
