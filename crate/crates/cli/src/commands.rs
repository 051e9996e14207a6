//! One function per subcommand.

use std::collections::{BTreeSet, HashSet};

use qgidem::analysis::{
    build_lattice, classify as classify_state, coaction_checks, homogeneous_space_check, invariant_subalgebra,
    quotient_quantum_group,
};
use qgidem::io::{self, ClassificationDoc, Kind, LatticeDoc, QuotientDoc};
use qgidem::linalg::{c, CVec};
use qgidem::solver::solve_idempotents_report;
use qgidem::state::idempotency_residual;
use qgidem::{
    cesaro_limit, cesaro_walk, gns, multiplicative_unitary, tol, BuiltinSpec, Error, FiniteQuantumGroup, Result,
    SolveConfig, Source, State, StateDoc,
};
use serde_json::json;

use crate::report::Report;
use crate::{Common, StateArg};

/// Distance under which a found state is identified with an oracle state.
const ORACLE_MATCH: f64 = 1e-7;

fn solve_config(common: &Common) -> SolveConfig {
    SolveConfig { starts: common.starts, seed: common.seed, ..SolveConfig::default() }
}

fn builtin(common: &Common) -> Result<BuiltinSpec> {
    Source::parse(&common.input)?
        .builtin()
        .cloned()
        .ok_or_else(|| Error::Parse(format!("`{}`: the subgroup oracle needs a built-in group spec", common.input)))
}

fn short(v: &CVec) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|z| if z.im.abs() < 1e-12 { format!("{:.4}", z.re) } else { format!("{:.4}{:+.4}i", z.re, z.im) })
        .collect();
    format!("[{}]", parts.join(", "))
}

fn set_str(h: &BTreeSet<usize>) -> String {
    let v: Vec<String> = h.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", v.join(","))
}

/// Found states matched to subgroup states.
struct OracleMatch {
    spec: BuiltinSpec,
    subgroups: Vec<BTreeSet<usize>>,
    /// `of_found[i]` is the subgroup closest to found state `i`, if close enough.
    of_found: Vec<Option<usize>>,
    hausdorff: f64,
}

impl OracleMatch {
    fn new(common: &Common, qg: &FiniteQuantumGroup, found: &[State]) -> Result<Self> {
        let spec = builtin(common)?;
        let oracle = spec.oracle_states(qg)?;
        let dist = |a: &State, b: &State| a.distance(b);
        let nearest =
            |s: &State, pool: &mut dyn Iterator<Item = &State>| pool.map(|o| dist(s, o)).fold(f64::INFINITY, f64::min);
        let mut hausdorff: f64 = 0.0;
        let mut of_found = Vec::with_capacity(found.len());
        for s in found {
            let (k, d) = oracle
                .iter()
                .enumerate()
                .map(|(k, (_, o))| (k, dist(s, o)))
                .fold((usize::MAX, f64::INFINITY), |best, x| if x.1 < best.1 { x } else { best });
            hausdorff = hausdorff.max(d);
            of_found.push((d <= ORACLE_MATCH).then_some(k));
        }
        for (_, o) in &oracle {
            hausdorff = hausdorff.max(nearest(o, &mut found.iter()));
        }
        let subgroups = oracle.into_iter().map(|(h, _)| h).collect();
        Ok(Self { spec, subgroups, of_found, hausdorff })
    }

    fn is_haar(&self, k: usize) -> bool {
        match self.spec.effective_kind() {
            Kind::Function => true,
            Kind::Group => self.spec.group.is_normal(&self.subgroups[k]),
        }
    }

    fn record(&self, report: &mut Report, found: usize) {
        report.residual("oracle_hausdorff", self.hausdorff, ORACLE_MATCH);
        report.count("oracle_count_difference", found.abs_diff(self.subgroups.len()));
        report.count("oracle_unmatched", self.of_found.iter().filter(|m| m.is_none()).count());
    }
}

fn found_states(common: &Common, qg: &FiniteQuantumGroup, report: &mut Report) -> Result<Vec<State>> {
    let solved = solve_idempotents_report(qg, &solve_config(common))?;
    report.line(format!(
        "found {} idempotent states ({} of {} starts converged)",
        solved.states.len(),
        solved.converged_starts,
        solved.total_starts
    ));
    let worst = solved.states.iter().map(|s| idempotency_residual(qg, s)).fold(0.0, f64::max);
    report.residual("idempotency", worst, common.tol);
    Ok(solved.states)
}

pub fn validate(common: &Common) -> Result<Report> {
    let qg = Source::parse(&common.input)?.load_unchecked()?;
    let v = qg.validate(common.tol);
    let mut report = Report::new("validate", &common.input, &qg);
    report.line(format!("cancellation ranks {:?}", v.cancellation_ranks));
    report.result = serde_json::to_value(&v)?;
    for check in v.checks {
        report.push(check);
    }
    Ok(report)
}

pub fn idempotents(common: &Common) -> Result<Report> {
    let qg = io::load(&common.input, common.tol)?;
    let mut report = Report::new("idempotents", &common.input, &qg);
    let states = found_states(common, &qg, &mut report)?;
    for (i, s) in states.iter().enumerate() {
        report.line(format!("{i:>3}: {}", short(s.coeffs())));
    }
    let mut result = json!({ "found": states.iter().map(|s| StateDoc::from(s.functional())).collect::<Vec<_>>() });
    if common.oracle {
        let m = OracleMatch::new(common, &qg, &states)?;
        for (i, k) in m.of_found.iter().enumerate() {
            match k {
                Some(k) => report.line(format!("state {i} = subgroup {}", set_str(&m.subgroups[*k]))),
                None => report.line(format!("state {i} matches no subgroup")),
            }
        }
        m.record(&mut report, states.len());
        result["oracle"] = json!({
            "subgroups": m.subgroups,
            "of_found": m.of_found,
            "hausdorff": m.hausdorff,
        });
    }
    report.result = result;
    Ok(report)
}

pub fn classify(common: &Common) -> Result<Report> {
    let qg = io::load(&common.input, common.tol)?;
    let mut report = Report::new("classify", &common.input, &qg);
    let g = gns(&qg)?;
    let v = multiplicative_unitary(&qg, &g)?;
    let states = found_states(common, &qg, &mut report)?;
    let mut docs = Vec::with_capacity(states.len());
    let mut verdicts = Vec::with_capacity(states.len());
    let mut disagreements = Vec::new();
    for (i, s) in states.iter().enumerate() {
        match classify_state(&qg, &g, &v, s) {
            Ok(cl) => {
                report.line(format!(
                    "{i:>3}: {:<8} null space {:>2}, subalgebra {:>2}, residuals ideal {:.1e} symmetry {:.1e}",
                    if cl.is_haar { "Haar" } else { "non-Haar" },
                    cl.null_space_dim,
                    cl.subalgebra_dim,
                    cl.witnesses.ideal_residual,
                    cl.witnesses.symmetry_residual,
                ));
                verdicts.push(Some(cl.is_haar));
                docs.push(ClassificationDoc::from(&cl));
            }
            Err(Error::EquivalenceViolation(msg)) => {
                report.line(format!("{i:>3}: criteria disagree: {msg}"));
                verdicts.push(None);
                disagreements.push(i);
            }
            Err(e) => return Err(e),
        }
    }
    let haar = verdicts.iter().filter(|v| **v == Some(true)).count();
    report.line(format!("{haar} Haar, {} non-Haar", verdicts.iter().filter(|v| **v == Some(false)).count()));
    report.count("criteria_disagreements", disagreements.len());
    let mut result = json!({ "states": docs, "haar": haar, "disagreements": disagreements });
    if common.oracle {
        let m = OracleMatch::new(common, &qg, &states)?;
        m.record(&mut report, states.len());
        let mismatches = m
            .of_found
            .iter()
            .zip(&verdicts)
            .filter(|(k, v)| match (k, v) {
                (Some(k), Some(v)) => m.is_haar(*k) != *v,
                _ => true,
            })
            .count();
        report.count("oracle_haar_mismatches", mismatches);
        result["oracle_haar_mismatches"] = json!(mismatches);
    }
    report.result = result;
    Ok(report)
}

pub fn lattice(common: &Common) -> Result<Report> {
    let qg = io::load(&common.input, common.tol)?;
    let mut report = Report::new("lattice", &common.input, &qg);
    let states = found_states(common, &qg, &mut report)?;
    let lat = build_lattice(&qg, &states, tol::CROSS_CHECK)?;
    report.line(format!(
        "{} nodes, {} covering pairs, {} strict relations",
        lat.len(),
        lat.covers.len(),
        lat.strict_pairs()
    ));
    for (i, j) in &lat.covers {
        report.line(format!("{i} ≺ {j}"));
    }
    report.count("reflexive", usize::from(!lat.report.reflexive));
    report.count("antisymmetric", usize::from(!lat.report.antisymmetric));
    report.count("transitive", usize::from(!lat.report.transitive));
    report.residual("absorption", lat.report.absorption_residual, tol::CROSS_CHECK);
    let mut result = serde_json::to_value(LatticeDoc::new(&states, &lat))?;
    if common.oracle {
        let m = OracleMatch::new(common, &qg, &states)?;
        m.record(&mut report, states.len());
        let mismatches = comparability_mismatches(&m, &lat.leq);
        report.count("oracle_order_mismatches", mismatches);
        result["oracle_order_mismatches"] = json!(mismatches);
    }
    report.result = result;
    Ok(report)
}

/// Unordered comparable pairs of states against proper inclusions of the
/// matched subgroups. The orientation depends on the construction.
fn comparability_mismatches(m: &OracleMatch, leq: &[Vec<bool>]) -> usize {
    let mut from_states = HashSet::new();
    for (i, row) in leq.iter().enumerate() {
        for (j, &le) in row.iter().enumerate() {
            if i != j && le {
                match (m.of_found[i], m.of_found[j]) {
                    (Some(a), Some(b)) => {
                        from_states.insert((a.min(b), a.max(b)));
                    }
                    _ => return usize::MAX,
                }
            }
        }
    }
    let s = &m.subgroups;
    let mut from_groups = HashSet::new();
    for a in 0..s.len() {
        for b in 0..s.len() {
            if a != b && s[a].is_subset(&s[b]) {
                from_groups.insert((a.min(b), a.max(b)));
            }
        }
    }
    from_states.symmetric_difference(&from_groups).count()
}

fn resolve_state(common: &Common, qg: &FiniteQuantumGroup, arg: &StateArg) -> Result<State> {
    match arg {
        StateArg::Index(i) => {
            let states = qgidem::solve_idempotents(qg, &solve_config(common))?;
            let n = states.len();
            states.into_iter().nth(*i).ok_or_else(|| Error::Parse(format!("state index {i} out of range ({n} found)")))
        }
        StateArg::Subgroup(elems) => {
            let want: BTreeSet<usize> = elems.iter().copied().collect();
            let spec = builtin(common)?;
            spec.group.check_subgroup(&want)?;
            spec.oracle_states(qg)?
                .into_iter()
                .find(|(h, _)| *h == want)
                .map(|(_, s)| s)
                .ok_or_else(|| Error::NotSubgroup(set_str(&want)))
        }
        StateArg::Coeffs(v) => {
            if v.len() != qg.dim() {
                return Err(Error::Dimension(format!("{} coefficients for dimension {}", v.len(), qg.dim())));
            }
            State::from_coeffs(qg, CVec::from_iterator(v.len(), v.iter().map(|&x| c(x))), tol::POSITIVITY)
        }
        StateArg::File(p) => {
            let s = std::fs::read_to_string(p)?;
            let doc: StateDoc = serde_json::from_str(&s).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
            doc.to_state(qg)
        }
    }
}

pub fn quotient(common: &Common, arg: &StateArg) -> Result<Report> {
    let qg = io::load(&common.input, common.tol)?;
    let mut report = Report::new("quotient", &common.input, &qg);
    let omega = resolve_state(common, &qg, arg)?;
    let q = quotient_quantum_group(&qg, &omega)?;
    let hom = homogeneous_space_check(&qg, &omega, &q)?;
    let sub = invariant_subalgebra(&qg, &omega)?;
    let co = coaction_checks(&qg, &sub);
    report.line(format!("state {}", short(omega.coeffs())));
    report.line(format!("quotient dim {}, Haar state {}", q.quotient.dim(), short(q.haar_mu.coeffs())));
    report.line(format!("μ Gram condition number {:.3e}", q.report.mu_gram_condition));
    report.line(format!("fixed points dim {}, L_ω(A) dim {}", hom.fixed_dim, hom.invariant_dim));
    report.line(format!("coaction density rank {} of {}", co.density_rank, co.density_expected));
    report.residual("quotient_construction", q.report.max_residual(), tol::CLASSIFICATION);
    let cond = q.report.mu_gram_condition;
    report.residual("mu_gram_condition", if cond.is_finite() { cond } else { f64::MAX }, 1e12);
    if let Some(v) = &q.report.validation {
        report.count("quotient_axioms_failed", v.failures().count());
    }
    report.count("fixed_points_dim_difference", hom.fixed_dim.abs_diff(hom.invariant_dim));
    report.residual("fixed_points_distance", hom.distance, tol::CLASSIFICATION);
    report.residual("coaction_membership", co.membership, tol::CLASSIFICATION);
    report.residual("coaction_counit", co.counit, tol::CLASSIFICATION);
    report.count("coaction_density_defect", co.density_expected.abs_diff(co.density_rank));
    report.count("coaction_nondegeneracy_defect", co.dim.abs_diff(co.nondegenerate_rank));
    report.result = json!({
        "state": StateDoc::from(omega.functional()),
        "quotient": QuotientDoc::from(&q),
        "homogeneous": {
            "fixed_dim": hom.fixed_dim,
            "invariant_dim": hom.invariant_dim,
            "distance": hom.distance,
        },
        "coaction": {
            "membership": co.membership,
            "counit": co.counit,
            "density_rank": co.density_rank,
            "density_expected": co.density_expected,
            "nondegenerate_rank": co.nondegenerate_rank,
        },
    });
    Ok(report)
}

/// Steps `1, 2, 5, 10, 20, 50, …` up to `steps`, plus `steps` itself.
fn sample_points(steps: usize) -> Vec<usize> {
    let mut out: Vec<usize> = std::iter::successors(Some(1usize), |k| k.checked_mul(10))
        .take_while(|&k| k <= steps)
        .flat_map(|k| [k, 2 * k, 5 * k])
        .filter(|&k| k <= steps)
        .collect();
    if out.last() != Some(&steps) {
        out.push(steps);
    }
    out
}

pub fn walk(common: &Common, arg: &StateArg, steps: usize) -> Result<Report> {
    if steps == 0 {
        return Err(Error::Parse("--steps must be positive".into()));
    }
    let qg = io::load(&common.input, common.tol)?;
    let mut report = Report::new("walk", &common.input, &qg);
    let mu = resolve_state(common, &qg, arg)?;
    let limit = cesaro_limit(&qg, &mu)?;
    let means = cesaro_walk(&qg, &mu, steps)?;
    let mut worst_rate: f64 = 0.0;
    let mut samples = Vec::new();
    for (k, nu) in (1..).zip(&means) {
        let d = nu.distance(&limit);
        worst_rate = worst_rate.max(k as f64 * d);
    }
    for k in sample_points(steps) {
        let d = means[k - 1].distance(&limit);
        report.line(format!("k = {k:>6}: ‖ν_k − ν_∞‖ = {d:.3e}"));
        samples.push(json!({ "k": k, "distance": d }));
    }
    report.line(format!("limit {}", short(limit.coeffs())));
    let idem = idempotency_residual(&qg, &limit);
    report.residual("limit_idempotency", idem, tol::CROSS_CHECK);
    report.residual("max_k_times_distance", worst_rate, 10.0);
    report.result = json!({
        "initial": StateDoc::from(mu.functional()),
        "limit": StateDoc::from(limit.functional()),
        "limit_is_haar_state": limit.distance(&State::haar(&qg)) <= tol::CROSS_CHECK,
        "samples": samples,
        "max_k_times_distance": worst_rate,
    });
    Ok(report)
}

pub fn export(common: &Common) -> Result<Report> {
    let qg = Source::parse(&common.input)?.load_unchecked()?;
    let v = qg.validate(common.tol);
    let mut report = Report::new("export", &common.input, &qg);
    report.count("axioms_failed", v.failures().count());
    let doc = io::qg_to_json(&qg);
    match &common.out {
        Some(p) => {
            std::fs::write(p, &doc)?;
            report.line(format!("wrote {}", p.display()));
        }
        None => report.result = serde_json::from_str(&doc)?,
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_points_are_increasing_and_end_at_steps() {
        assert_eq!(sample_points(1), vec![1]);
        assert_eq!(sample_points(30), vec![1, 2, 5, 10, 20, 30]);
        assert_eq!(sample_points(1000), vec![1, 2, 5, 10, 20, 50, 100, 200, 500, 1000]);
    }
}
