//! Demo operations returning JSON.

use std::collections::BTreeSet;

use qgidem::analysis::{
    build_lattice, classify, coaction_checks, homogeneous_space_check, invariant_subalgebra, quotient_quantum_group,
};
use qgidem::linalg::{c, CVec};
use qgidem::state::idempotency_residual;
use qgidem::{
    cesaro_limit, cesaro_walk, gns, multiplicative_unitary, solve_idempotents, tol, BuiltinSpec, CayleyTable, Error,
    Result, SolveConfig, State,
};
use serde::Serialize;

/// Largest walk the page may request.
pub const MAX_STEPS: usize = 20_000;

fn parse_list<T: serde::de::DeserializeOwned>(s: &str, what: &str) -> Result<Vec<T>> {
    serde_json::from_str(s).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn real_parts(v: &CVec) -> Vec<f64> {
    v.iter().map(|z| z.re).collect()
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("demo output serializes")
}

pub fn builtins() -> String {
    to_json(&CayleyTable::BUILTIN_NAMES)
}

#[derive(Serialize)]
struct StateRow {
    coeffs: Vec<f64>,
    /// `None` when the three criteria disagree.
    haar: Option<bool>,
    null_space_dim: usize,
    subalgebra_dim: usize,
    subgroup: Option<Vec<usize>>,
}

#[derive(Serialize)]
struct Analysis {
    dim: usize,
    commutative: bool,
    cocommutative: bool,
    states: Vec<StateRow>,
    covers: Vec<(usize, usize)>,
}

pub fn analyze(spec: &str, starts: usize, seed: u64) -> Result<String> {
    let b = BuiltinSpec::parse(spec)?;
    let qg = b.build()?;
    let g = gns(&qg)?;
    let v = multiplicative_unitary(&qg, &g)?;
    let states = solve_idempotents(&qg, &SolveConfig { starts, seed, ..SolveConfig::default() })?;
    let oracle = b.oracle_states(&qg)?;
    let rows = states
        .iter()
        .map(|s| {
            let subgroup = oracle.iter().find(|(_, o)| o.distance(s) <= 1e-7).map(|(h, _)| h.iter().copied().collect());
            let row = match classify(&qg, &g, &v, s) {
                Ok(cl) => StateRow {
                    coeffs: real_parts(s.coeffs()),
                    haar: Some(cl.is_haar),
                    null_space_dim: cl.null_space_dim,
                    subalgebra_dim: cl.subalgebra_dim,
                    subgroup,
                },
                Err(Error::EquivalenceViolation(_)) => StateRow {
                    coeffs: real_parts(s.coeffs()),
                    haar: None,
                    null_space_dim: 0,
                    subalgebra_dim: 0,
                    subgroup,
                },
                Err(e) => return Err(e),
            };
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let lattice = build_lattice(&qg, &states, tol::CROSS_CHECK)?;
    Ok(to_json(&Analysis {
        dim: qg.dim(),
        commutative: qg.is_commutative(),
        cocommutative: qg.is_cocommutative(),
        states: rows,
        covers: lattice.covers,
    }))
}

#[derive(Serialize)]
struct Walk {
    distances: Vec<f64>,
    limit: Vec<f64>,
    limit_idempotency: f64,
    limit_is_haar: bool,
}

pub fn walk(spec: &str, coeffs: &str, steps: usize) -> Result<String> {
    if !(1..=MAX_STEPS).contains(&steps) {
        return Err(Error::Parse(format!("steps must lie in 1..={MAX_STEPS}")));
    }
    let qg = BuiltinSpec::parse(spec)?.build()?;
    let x: Vec<f64> = parse_list(coeffs, "coefficients")?;
    if x.len() != qg.dim() {
        return Err(Error::Dimension(format!("{} coefficients for dimension {}", x.len(), qg.dim())));
    }
    let mu = State::from_coeffs(&qg, CVec::from_iterator(x.len(), x.iter().map(|&t| c(t))), tol::POSITIVITY)?;
    let limit = cesaro_limit(&qg, &mu)?;
    let means = cesaro_walk(&qg, &mu, steps)?;
    Ok(to_json(&Walk {
        distances: means.iter().map(|nu| nu.distance(&limit)).collect(),
        limit: real_parts(limit.coeffs()),
        limit_idempotency: idempotency_residual(&qg, &limit),
        limit_is_haar: limit.distance(&State::haar(&qg)) <= tol::CROSS_CHECK,
    }))
}

#[derive(Serialize)]
struct Quotient {
    dim: usize,
    haar_mu: Vec<f64>,
    max_residual: f64,
    passed: bool,
    fixed_dim: usize,
    invariant_dim: usize,
    coaction_rank: usize,
    coaction_expected: usize,
}

pub fn quotient(spec: &str, subgroup: &str) -> Result<String> {
    let b = BuiltinSpec::parse(spec)?;
    let qg = b.build()?;
    let want: BTreeSet<usize> = parse_list::<usize>(subgroup, "subgroup")?.into_iter().collect();
    b.group.check_subgroup(&want)?;
    let omega = b
        .oracle_states(&qg)?
        .into_iter()
        .find(|(h, _)| *h == want)
        .map(|(_, s)| s)
        .ok_or_else(|| Error::NotSubgroup(format!("{want:?}")))?;
    let q = quotient_quantum_group(&qg, &omega)?;
    let hom = homogeneous_space_check(&qg, &omega, &q)?;
    let co = coaction_checks(&qg, &invariant_subalgebra(&qg, &omega)?);
    Ok(to_json(&Quotient {
        dim: q.quotient.dim(),
        haar_mu: real_parts(q.haar_mu.coeffs()),
        max_residual: q.report.max_residual(),
        passed: q.report.passed(tol::CLASSIFICATION)
            && hom.passed(tol::CLASSIFICATION)
            && co.passed(tol::CLASSIFICATION),
        fixed_dim: hom.fixed_dim,
        invariant_dim: hom.invariant_dim,
        coaction_rank: co.density_rank,
        coaction_expected: co.density_expected,
    }))
}
