//! JSON documents, built-in specs and subgroup oracles.
//!
//! Complex numbers are always `[re, im]` arrays. Structure tensors are sparse
//! lists of `[i, j, k, re, im]`; the star and antipode are dense row-major
//! matrices of pairs.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::analysis::{Classification, Lattice, QuotientQG};
use crate::cayley::CayleyTable;
use crate::linalg::{CMat, CVec};
use crate::qg::{dual, function_algebra, group_algebra, FiniteQuantumGroup, QgId, QgParts};
use crate::state::{subgroup_state_fn, Functional, State};
use crate::tensor::StructureTensor;
use crate::{tol, Error, Result, C64};

pub type Pair = [f64; 2];

fn pair(z: C64) -> Pair {
    [z.re, z.im]
}

fn unpair(p: &Pair) -> C64 {
    C64::new(p[0], p[1])
}

pub fn vec_to_pairs(v: &CVec) -> Vec<Pair> {
    v.iter().copied().map(pair).collect()
}

pub fn pairs_to_vec(p: &[Pair]) -> CVec {
    CVec::from_iterator(p.len(), p.iter().map(unpair))
}

pub fn mat_to_pairs(m: &CMat) -> Vec<Vec<Pair>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| pair(m[(i, j)])).collect()).collect()
}

pub fn pairs_to_mat(rows: &[Vec<Pair>], what: &str) -> Result<CMat> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|row| row.len() != c) {
        return Err(Error::Parse(format!("`{what}`: rows of unequal length")));
    }
    Ok(CMat::from_fn(r, c, |i, j| unpair(&rows[i][j])))
}

/// Sparse structure constant `[i, j, k, re, im]`.
pub type Triplet = (usize, usize, usize, f64, f64);

/// JSON form of a finite quantum group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QgDoc {
    pub dim: usize,
    #[serde(default = "default_tol")]
    pub tol: f64,
    /// `e_i e_j = Σ_k m[i][j][k] e_k`.
    pub mult: Vec<Triplet>,
    /// `Δ(e_i) = Σ_{j,k} d[i][j][k] e_j⊗e_k`.
    pub comult: Vec<Triplet>,
    pub unit: Vec<Pair>,
    pub counit: Vec<Pair>,
    pub haar: Vec<Pair>,
    pub star: Vec<Vec<Pair>>,
    pub antipode: Vec<Vec<Pair>>,
    /// Content hash, written for reference and ignored on read.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<QgId>,
}

fn default_tol() -> f64 {
    tol::VALIDATION
}

impl From<&FiniteQuantumGroup> for QgDoc {
    fn from(qg: &FiniteQuantumGroup) -> Self {
        let n = qg.dim();
        let p = qg.parts();
        let mult = p.mult.entries().map(|(ij, k, z)| (ij / n, ij % n, k, z.re, z.im)).collect();
        let comult = p.comult.entries().map(|(i, jk, z)| (i, jk / n, jk % n, z.re, z.im)).collect();
        Self {
            dim: n,
            tol: qg.tol(),
            mult,
            comult,
            unit: vec_to_pairs(&p.unit),
            counit: vec_to_pairs(&p.counit),
            haar: vec_to_pairs(&p.haar),
            star: mat_to_pairs(&p.star),
            antipode: mat_to_pairs(&p.antipode),
            id: Some(qg.id().clone()),
        }
    }
}

impl TryFrom<QgDoc> for FiniteQuantumGroup {
    type Error = Error;

    fn try_from(doc: QgDoc) -> Result<Self> {
        let n = doc.dim;
        let check = |name: &str, t: &[Triplet]| -> Result<()> {
            match t.iter().position(|&(i, j, k, _, _)| i >= n || j >= n || k >= n) {
                Some(p) => Err(Error::Dimension(format!("`{name}` entry {p} has an index ≥ dim {n}"))),
                None => Ok(()),
            }
        };
        check("mult", &doc.mult)?;
        check("comult", &doc.comult)?;
        let mult = StructureTensor::from_entries(
            n * n,
            n,
            doc.mult.iter().map(|&(i, j, k, re, im)| (i * n + j, k, C64::new(re, im))),
        );
        let comult = StructureTensor::from_entries(
            n,
            n * n,
            doc.comult.iter().map(|&(i, j, k, re, im)| (i, j * n + k, C64::new(re, im))),
        );
        FiniteQuantumGroup::from_parts(QgParts {
            dim: n,
            mult,
            unit: pairs_to_vec(&doc.unit),
            star: pairs_to_mat(&doc.star, "star")?,
            comult,
            counit: pairs_to_vec(&doc.counit),
            antipode: pairs_to_mat(&doc.antipode, "antipode")?,
            haar: pairs_to_vec(&doc.haar),
            tol: doc.tol,
        })
    }
}

/// A functional tagged with the content hash of its quantum group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateDoc {
    pub qg: QgId,
    pub coeffs: Vec<Pair>,
}

impl From<&Functional> for StateDoc {
    fn from(f: &Functional) -> Self {
        Self { qg: f.qg_id().clone(), coeffs: vec_to_pairs(f.coeffs()) }
    }
}

impl StateDoc {
    /// Reads the state back, checking the parent hash and positivity.
    pub fn to_state(&self, qg: &FiniteQuantumGroup) -> Result<State> {
        if &self.qg != qg.id() {
            return Err(Error::ParentMismatch);
        }
        State::from_coeffs(qg, pairs_to_vec(&self.coeffs), tol::CROSS_CHECK)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    pub ideal: f64,
    pub symmetry: f64,
    pub quotient: f64,
}

/// Per-state classification record.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationDoc {
    pub coeffs: Vec<Pair>,
    pub null_space_dim: usize,
    pub subalgebra_dim: usize,
    pub is_haar: bool,
    pub quotient_built: bool,
    pub residuals: Residuals,
}

impl From<&Classification> for ClassificationDoc {
    fn from(c: &Classification) -> Self {
        let w = &c.witnesses;
        Self {
            coeffs: vec_to_pairs(c.state.coeffs()),
            null_space_dim: c.null_space_dim,
            subalgebra_dim: c.subalgebra_dim,
            is_haar: c.is_haar,
            quotient_built: w.quotient_built,
            residuals: Residuals {
                ideal: w.ideal_residual,
                symmetry: w.symmetry_residual,
                quotient: sanitize(w.quotient_residual),
            },
        }
    }
}

/// JSON has no infinity; non-finite residuals are written as `-1`.
fn sanitize(x: f64) -> f64 {
    if x.is_finite() {
        x
    } else {
        -1.0
    }
}

/// Hasse diagram: `covers[i]` lists the states covering state `i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeDoc {
    pub nodes: Vec<Vec<Pair>>,
    pub covers: Vec<Vec<usize>>,
    pub strict_pairs: usize,
    pub reflexive: bool,
    pub antisymmetric: bool,
    pub transitive: bool,
    pub absorption_residual: f64,
}

impl LatticeDoc {
    pub fn new(states: &[State], lattice: &Lattice) -> Self {
        Self {
            nodes: states.iter().map(|s| vec_to_pairs(s.coeffs())).collect(),
            covers: (0..lattice.len()).map(|i| lattice.upper_covers(i)).collect(),
            strict_pairs: lattice.strict_pairs(),
            reflexive: lattice.report.reflexive,
            antisymmetric: lattice.report.antisymmetric,
            transitive: lattice.report.transitive,
            absorption_residual: lattice.report.absorption_residual,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuotientDoc {
    pub quotient: QgDoc,
    /// `π: A → B`, `dim B × dim A`.
    pub projection: Vec<Vec<Pair>>,
    pub haar_mu: Vec<Pair>,
    pub max_residual: f64,
    pub mu_gram_condition: f64,
}

impl From<&QuotientQG> for QuotientDoc {
    fn from(q: &QuotientQG) -> Self {
        Self {
            quotient: QgDoc::from(&q.quotient),
            projection: mat_to_pairs(&q.projection),
            haar_mu: vec_to_pairs(q.haar_mu.coeffs()),
            max_residual: q.report.max_residual(),
            mu_gram_condition: sanitize(q.report.mu_gram_condition),
        }
    }
}

pub fn qg_to_json(qg: &FiniteQuantumGroup) -> String {
    serde_json::to_string_pretty(&QgDoc::from(qg)).expect("quantum group documents serialize")
}

/// Parses a quantum group document without validating axioms.
pub fn qg_from_json(s: &str) -> Result<FiniteQuantumGroup> {
    let doc: QgDoc = serde_json::from_str(s).map_err(|e| Error::Parse(format!("quantum group JSON: {e}")))?;
    FiniteQuantumGroup::try_from(doc)
}

pub fn save_qg(qg: &FiniteQuantumGroup, path: &Path) -> Result<()> {
    std::fs::write(path, qg_to_json(qg))?;
    Ok(())
}

pub fn read_cayley(path: &Path) -> Result<CayleyTable> {
    let s = std::fs::read_to_string(path)?;
    serde_json::from_str(&s).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Algebra built over a group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// `C(G)`.
    Function,
    /// `C*(G)`.
    Group,
}

impl Kind {
    fn flip(self) -> Self {
        match self {
            Kind::Function => Kind::Group,
            Kind::Group => Kind::Function,
        }
    }
}

/// Parsed `("dual:")* ("fn"|"ga") ":" GROUP`, where `GROUP` is a built-in
/// name or a path to a Cayley table JSON file.
#[derive(Clone, Debug, PartialEq)]
pub struct BuiltinSpec {
    pub duals: usize,
    pub kind: Kind,
    pub group_name: String,
    pub group: CayleyTable,
}

impl BuiltinSpec {
    pub fn parse(spec: &str) -> Result<Self> {
        let mut rest = spec.trim();
        let mut duals = 0;
        while let Some(r) = rest.strip_prefix("dual:") {
            duals += 1;
            rest = r;
        }
        let (kind, name) = if let Some(r) = rest.strip_prefix("fn:") {
            (Kind::Function, r)
        } else if let Some(r) = rest.strip_prefix("ga:") {
            (Kind::Group, r)
        } else {
            return Err(Error::Parse(format!("`{spec}`: expected [dual:]*(fn|ga):GROUP")));
        };
        let group = match CayleyTable::builtin(name) {
            Ok(g) => g,
            Err(_) if Path::new(name).is_file() => read_cayley(Path::new(name))?,
            Err(e) => return Err(e),
        };
        Ok(Self { duals, kind, group_name: name.to_string(), group })
    }

    pub fn build(&self) -> Result<FiniteQuantumGroup> {
        let mut qg = match self.kind {
            Kind::Function => function_algebra(&self.group),
            Kind::Group => group_algebra(&self.group),
        };
        for _ in 0..self.duals {
            qg = dual(&qg)?;
        }
        Ok(qg)
    }

    /// Kind of the group construction the result is isomorphic to, with the
    /// identity map on coordinates.
    pub fn effective_kind(&self) -> Kind {
        if self.duals.is_multiple_of(2) {
            self.kind
        } else {
            self.kind.flip()
        }
    }

    /// Subgroup states `ω_H` for all subgroups `H`, on `qg = self.build()`.
    pub fn oracle_states(&self, qg: &FiniteQuantumGroup) -> Result<Vec<(BTreeSet<usize>, State)>> {
        let g = &self.group;
        let reference = match self.effective_kind() {
            Kind::Function => function_algebra(g),
            Kind::Group => group_algebra(g),
        };
        g.subgroups()
            .into_iter()
            .map(|h| {
                let s = match self.effective_kind() {
                    Kind::Function => subgroup_state_fn(&reference, g, &h)?,
                    Kind::Group => crate::state::subgroup_state_ga(&reference, g, &h)?,
                };
                let state = State::from_coeffs(qg, s.coeffs().clone(), tol::CROSS_CHECK)?;
                Ok((h, state))
            })
            .collect()
    }
}

/// Where a quantum group comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum Source {
    Builtin(BuiltinSpec),
    File(std::path::PathBuf),
}

impl Source {
    pub fn parse(input: &str) -> Result<Self> {
        let path = Path::new(input);
        if path.is_file() {
            return Ok(Source::File(path.to_path_buf()));
        }
        BuiltinSpec::parse(input).map(Source::Builtin)
    }

    pub fn builtin(&self) -> Option<&BuiltinSpec> {
        match self {
            Source::Builtin(b) => Some(b),
            Source::File(_) => None,
        }
    }

    /// Loads without validating.
    pub fn load_unchecked(&self) -> Result<FiniteQuantumGroup> {
        match self {
            Source::Builtin(b) => b.build(),
            Source::File(p) => {
                let s = std::fs::read_to_string(p)?;
                qg_from_json(&s).map_err(|e| match e {
                    Error::Parse(m) => Error::Parse(format!("{}: {m}", p.display())),
                    other => other,
                })
            }
        }
    }
}

/// Loads a spec or file and validates it at `tol`.
pub fn load(input: &str, tol: f64) -> Result<FiniteQuantumGroup> {
    let qg = Source::parse(input)?.load_unchecked()?;
    let report = qg.validate(tol);
    if !report.passed() {
        return Err(Error::Validation(report.failure_summary()));
    }
    Ok(qg)
}
