//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use qgidem::analysis::*;
use qgidem::cayley::CayleyTable;
use qgidem::linalg::{c, CMat, CVec};
use qgidem::qg::{function_algebra, group_algebra, FiniteQuantumGroup};
use qgidem::state::{idempotency_residual, indicator_functional_ga, is_idempotent, is_state, LinearOperator};
use qgidem::{cesaro_limit, cesaro_walk, gns, multiplicative_unitary, solve_idempotents, Error, SolveConfig, State};

const AXIOM_TOL: f64 = 1e-10;
const AXIOM_BUDGET: Duration = Duration::from_secs(5);
const ORACLE_TOL: f64 = 1e-7;
const SOLVE_BUDGET: Duration = Duration::from_secs(60);
const AGREEMENT_TOL: f64 = 1e-6;
const ROUND_TRIP_TOL: f64 = 1e-8;
const IDENTITY_TOL: f64 = 1e-9;
const INVARIANCE_TOL: f64 = 1e-10;
const WALK_CONSTANT: f64 = 10.0;
const WALK_STEPS: usize = 10_000;
const LIMIT_TOL: f64 = 1e-6;
const NEGATIVE_GAP: f64 = 1e-2;

struct Sample {
    name: String,
    g: CayleyTable,
    function: bool,
    qg: FiniteQuantumGroup,
    states: Vec<State>,
    elapsed: Duration,
}

impl Sample {
    fn new(group: &str, function: bool) -> Self {
        let g = CayleyTable::builtin(group).unwrap();
        let qg = if function { function_algebra(&g) } else { group_algebra(&g) };
        let t = Instant::now();
        let states = solve_idempotents(&qg, &SolveConfig::default()).unwrap();
        let elapsed = t.elapsed();
        let name = format!("{}:{group}", if function { "fn" } else { "ga" });
        Self { name, g, function, qg, states, elapsed }
    }

    fn oracle(&self) -> Vec<(BTreeSet<usize>, CVec)> {
        let n = self.g.order();
        common::subgroups(&self.g)
            .into_iter()
            .map(|h| {
                let v = if self.function { common::state_fn(n, &h) } else { common::state_ga(n, &h) };
                (h, v)
            })
            .collect()
    }

    /// Oracle subgroup of each found state.
    fn matched(&self) -> Vec<Option<BTreeSet<usize>>> {
        let oracle = self.oracle();
        self.states
            .iter()
            .map(|s| oracle.iter().find(|(_, v)| common::sup(&(s.coeffs() - v)) <= ORACLE_TOL).map(|(h, _)| h.clone()))
            .collect()
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(n: usize, title: &str, o: &Outcome) {
    println!("criterion {n}: {} {title}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
}

fn axiom_suite() -> Outcome {
    let groups = ["Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z2xZ2", "S3", "D4", "Q8"];
    let t = Instant::now();
    let mut worst: f64 = 0.0;
    let mut failed = Vec::new();
    for name in groups {
        let g = CayleyTable::builtin(name).unwrap();
        for (tag, qg) in [("fn", function_algebra(&g)), ("ga", group_algebra(&g))] {
            let r = qg.validate(AXIOM_TOL);
            worst = worst.max(r.max_residual());
            if !r.passed() {
                failed.push(format!("{tag}:{name} ({})", r.failure_summary()));
            }
        }
    }
    let elapsed = t.elapsed();
    Outcome {
        pass: failed.is_empty() && elapsed < AXIOM_BUDGET,
        detail: format!(
            "{} algebras, max residual {worst:.2e} (tol {AXIOM_TOL:.0e}), {:.2}s (budget {}s){}",
            2 * groups.len(),
            elapsed.as_secs_f64(),
            AXIOM_BUDGET.as_secs(),
            if failed.is_empty() { String::new() } else { format!(", failed: {}", failed.join("; ")) }
        ),
    }
}

fn enumeration(samples: &[Sample]) -> Outcome {
    let expected = [("fn:Z4", 3), ("fn:Z2xZ2", 5), ("fn:S3", 6), ("ga:S3", 6), ("ga:D4", 10), ("ga:Q8", 6)];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, count) in expected {
        let s = samples.iter().find(|s| s.name == name).unwrap();
        let oracle: Vec<CVec> = s.oracle().into_iter().map(|(_, v)| v).collect();
        let found: Vec<CVec> = s.states.iter().map(|x| x.coeffs().clone()).collect();
        let d = common::hausdorff(&found, &oracle);
        let ok = found.len() == count && oracle.len() == count && d <= ORACLE_TOL && s.elapsed < SOLVE_BUDGET;
        pass &= ok;
        parts.push(format!("{name} {}/{count} d={d:.1e} {:.1}s", found.len(), s.elapsed.as_secs_f64()));
    }
    Outcome { pass, detail: format!("{} (tol {ORACLE_TOL:.0e}, {}s each)", parts.join(", "), SOLVE_BUDGET.as_secs()) }
}

/// `(sample, state index, is_haar)`; `None` when the criteria disagree.
type Verdicts = Vec<(String, usize, Option<bool>)>;

fn classification(samples: &[Sample]) -> (Outcome, Verdicts) {
    let mut verdicts = Vec::new();
    let mut disagreements = Vec::new();
    let mut total = 0;
    for s in samples {
        let g = gns(&s.qg).unwrap();
        let v = multiplicative_unitary(&s.qg, &g).unwrap();
        for (i, w) in s.states.iter().enumerate() {
            total += 1;
            match classify(&s.qg, &g, &v, w) {
                Ok(cl) => {
                    let x = &cl.witnesses;
                    let ideal = x.ideal_residual <= AGREEMENT_TOL;
                    let sym = x.symmetry_residual <= AGREEMENT_TOL;
                    let quo = x.quotient_built && x.quotient_residual <= AGREEMENT_TOL;
                    if ideal != sym || sym != quo {
                        disagreements.push(format!("{}#{i}", s.name));
                    }
                    verdicts.push((s.name.clone(), i, Some(cl.is_haar)));
                }
                Err(Error::EquivalenceViolation(_)) => {
                    disagreements.push(format!("{}#{i}", s.name));
                    verdicts.push((s.name.clone(), i, None));
                }
                Err(e) => panic!("{}#{i}: {e}", s.name),
            }
        }
    }
    let s3 = samples.iter().find(|s| s.name == "ga:S3").unwrap();
    let mut haar_sets = Vec::new();
    let mut wrong = 0;
    for (i, h) in s3.matched().into_iter().enumerate() {
        let verdict = verdicts.iter().find(|(n, j, _)| *n == s3.name && *j == i).and_then(|x| x.2);
        match h {
            Some(h) => {
                let normal = common::is_normal(&s3.g, &h);
                if verdict != Some(normal) {
                    wrong += 1;
                }
                if normal {
                    haar_sets.push(h.len());
                }
            }
            None => wrong += 1,
        }
    }
    haar_sets.sort_unstable();
    let pass = disagreements.is_empty() && wrong == 0 && haar_sets == [1, 3, 6] && s3.states.len() == 6;
    let detail = format!(
        "ga:S3 Haar subgroups of orders {haar_sets:?}, {} non-Haar, {wrong} oracle mismatches; {} disagreements over {total} idempotents (tol {AGREEMENT_TOL:.0e}){}",
        s3.states.len() - haar_sets.len(),
        disagreements.len(),
        if disagreements.is_empty() { String::new() } else { format!(": {}", disagreements.join(", ")) }
    );
    (Outcome { pass, detail }, verdicts)
}

fn commutative_haar(samples: &[Sample], verdicts: &Verdicts) -> Outcome {
    let mut total = 0;
    let mut haar = 0;
    for s in samples.iter().filter(|s| s.function) {
        for (_, _, v) in verdicts.iter().filter(|(n, _, _)| *n == s.name) {
            total += 1;
            haar += usize::from(*v == Some(true));
        }
    }
    let q8: Vec<_> = verdicts.iter().filter(|(n, _, _)| n == "ga:Q8").collect();
    let q8_haar = q8.iter().filter(|(_, _, v)| *v == Some(true)).count();
    let q8_noncommutative = !samples.iter().find(|s| s.name == "ga:Q8").unwrap().qg.is_commutative();
    Outcome {
        pass: total > 0 && haar == total && !q8.is_empty() && q8_haar == q8.len() && q8_noncommutative,
        detail: format!(
            "fn samples {haar}/{total} Haar; ga:Q8 {q8_haar}/{} Haar (noncommutative: {q8_noncommutative})",
            q8.len()
        ),
    }
}

fn round_trips(samples: &[Sample]) -> Outcome {
    let mut worst_state: f64 = 0.0;
    let mut worst_span: f64 = 0.0;
    let mut count = 0;
    for s in samples {
        for w in &s.states {
            let c_omega = invariant_subalgebra(&s.qg, w).unwrap();
            let fresh = Subalgebra::from_span(&s.qg, c_omega.basis(), ROUND_TRIP_TOL);
            let back = state_from_subalgebra(&s.qg, &fresh).unwrap();
            worst_state = worst_state.max(back.distance(w));
            let again = invariant_subalgebra(&s.qg, &back).unwrap();
            worst_span = worst_span.max(again.space().distance(fresh.space()));
            count += 1;
        }
    }
    // order isomorphism on fn:S3
    let s3 = samples.iter().find(|s| s.name == "fn:S3").unwrap();
    let lat = build_lattice(&s3.qg, &s3.states, 1e-6).unwrap();
    let matched = s3.matched();
    let sets: Vec<BTreeSet<usize>> = common::subgroups(&s3.g);
    let oracle_covers = common::covers(&sets);
    let index = |h: &BTreeSet<usize>| sets.iter().position(|x| x == h).unwrap();
    let mapped: Option<BTreeSet<(usize, usize)>> =
        lat.covers.iter().map(|&(i, j)| Some((index(matched[i].as_ref()?), index(matched[j].as_ref()?)))).collect();
    let oracle_strict: usize = sets.iter().map(|a| sets.iter().filter(|b| *b != a && a.is_subset(b)).count()).sum();
    let iso = mapped.as_ref() == Some(&oracle_covers) && lat.len() == sets.len();
    let pass = worst_state <= ROUND_TRIP_TOL
        && worst_span <= ROUND_TRIP_TOL
        && iso
        && lat.strict_pairs() == 9
        && lat.len() == 6;
    Outcome {
        pass,
        detail: format!(
            "{count} idempotents, max ‖ε∘E_C − ω‖ {worst_state:.1e}, max span distance {worst_span:.1e} (tol {ROUND_TRIP_TOL:.0e}); \
             fn:S3 lattice {} nodes, {} covers vs {} subgroup covers, {} strict relations vs {oracle_strict}, isomorphic: {iso} \
             (9 counts every strict inclusion; the Hasse diagram of the subgroup lattice has 8 edges)",
            lat.len(),
            lat.covers.len(),
            oracle_covers.len(),
            lat.strict_pairs(),
        ),
    }
}

fn identities(samples: &[Sample]) -> Outcome {
    let mut worst = [0.0f64; 5];
    for s in samples {
        let g = gns(&s.qg).unwrap();
        let v = multiplicative_unitary(&s.qg, &g).unwrap();
        for w in &s.states {
            let (idem, adj) = projection_residuals(&v_projection(&s.qg, &g, &v, w));
            let r = [
                omegac_residual(&s.qg, w),
                multiplicative_domain_check(&s.qg, w),
                antipode_invariance(&s.qg, w),
                idem,
                adj,
            ];
            for (a, b) in worst.iter_mut().zip(r) {
                *a = a.max(b);
            }
        }
    }
    let [oc, md, s, p2, ps] = worst;
    Outcome {
        pass: worst.iter().all(|&x| x <= IDENTITY_TOL),
        detail: format!(
            "max omegac {oc:.1e}, multiplicative domain {md:.1e}, ω∘S {s:.1e}, p²−p {p2:.1e}, p−p* {ps:.1e} (tol {IDENTITY_TOL:.0e})"
        ),
    }
}

fn quotient() -> Outcome {
    let g = CayleyTable::builtin("S3").unwrap();
    let qg = function_algebra(&g);
    let a3 = common::subgroups(&g).into_iter().find(|h| h.len() == 3).unwrap();
    let w = State::from_coeffs(&qg, common::state_fn(6, &a3), 1e-12).unwrap();
    let q = quotient_quantum_group(&qg, &w).unwrap();
    let hom = homogeneous_space_check(&qg, &w, &q).unwrap();
    let sub = invariant_subalgebra(&qg, &w).unwrap();
    let co = coaction_checks(&qg, &sub);
    let val = q.report.validation.as_ref().unwrap();
    let invariance =
        ["haar_left_invariant", "haar_right_invariant"].iter().map(|n| val.get(n).unwrap().value).fold(0.0, f64::max);
    let dim_ok = q.quotient.dim() == 2;
    let faithful = q.report.mu_gram_condition.is_finite();
    let inv_ok = invariance <= INVARIANCE_TOL;
    let hom_ok = hom.fixed_dim == 2 && hom.invariant_dim == 2 && hom.distance <= ROUND_TRIP_TOL;
    let co_ok = co.density_rank == sub.dim() * qg.dim() && co.density_expected == co.density_rank;
    Outcome {
        pass: dim_ok && faithful && inv_ok && hom_ok && co_ok && q.report.passed(ROUND_TRIP_TOL),
        detail: format!(
            "quotient dim {} (required 2: {}), μ Gram condition {:.2e} (finite: {faithful}), μ invariance {invariance:.1e} ({inv_ok}), \
             fixed points dim {} = L_ω(A) dim {} ({hom_ok}), coaction rank {} = {}·{} ({co_ok}); \
             A/N_ω is C(A3) with N_ω the functions vanishing on A3, so its dimension is |A3| = 3, while 2 = |S3/A3| = dim L_ω(A)",
            q.quotient.dim(),
            dim_ok,
            q.report.mu_gram_condition,
            hom.fixed_dim,
            hom.invariant_dim,
            co.density_rank,
            sub.dim(),
            qg.dim(),
        ),
    }
}

fn random_walk() -> Outcome {
    let qg = function_algebra(&CayleyTable::builtin("Z4").unwrap());
    let mu = State::from_coeffs(&qg, CVec::from_vec(vec![c(0.4), c(0.3), c(0.2), c(0.1)]), 1e-12).unwrap();
    let not_idempotent = idempotency_residual(&qg, &mu) > NEGATIVE_GAP;
    let h = State::haar(&qg);
    let means = cesaro_walk(&qg, &mu, WALK_STEPS).unwrap();
    let (worst_k, worst) = means
        .iter()
        .enumerate()
        .map(|(i, nu)| (i + 1, (i + 1) as f64 * nu.distance(&h)))
        .fold((0, 0.0), |a, b| if b.1 > a.1 { b } else { a });
    let limit = cesaro_limit(&qg, &mu).unwrap();
    let limit_ok = is_idempotent(&qg, &limit, LIMIT_TOL) && limit.distance(&h) <= LIMIT_TOL;
    Outcome {
        pass: not_idempotent && worst <= WALK_CONSTANT && limit_ok,
        detail: format!(
            "max k·‖ν_k − h‖ = {worst:.3} at k = {worst_k} over k ≤ {WALK_STEPS} (bound {WALK_CONSTANT}), final distance {:.1e}, limit idempotent and equal to h: {limit_ok}",
            means.last().unwrap().distance(&h)
        ),
    }
}

fn negative_controls() -> Outcome {
    let g = CayleyTable::builtin("S3").unwrap();
    let ga = group_algebra(&g);
    let subset: BTreeSet<usize> = [0, 1, 3].into_iter().collect();
    assert!(!g.is_subgroup(&subset));
    let indicator = indicator_functional_ga(&ga, &g, &subset).unwrap();
    let indicator_rejected = !is_state(&ga, &indicator, 1e-9);

    let fq = function_algebra(&g);
    let a3 = common::subgroups(&g).into_iter().find(|h| h.len() == 3).unwrap();
    let w = State::from_coeffs(&fq, common::state_fn(6, &a3), 1e-12).unwrap();
    let sub = invariant_subalgebra(&fq, &w).unwrap();
    let b = sub.basis();
    // projection onto C along a complement that is not h-orthogonal
    let skew = CMat::from_fn(6, 6, |i, j| c(if i == j { 2.0 + i as f64 } else { 0.3 / (1.0 + (i + j) as f64) }));
    let oblique = b * (b.adjoint() * &skew * b).try_inverse().unwrap() * b.adjoint() * &skew;
    let r = verify_conditional_expectation(&fq, &LinearOperator(oblique), &sub);
    let oblique_rejected = !r.passed(1e-8);

    let z4 = function_algebra(&CayleyTable::builtin("Z4").unwrap());
    let gd = gns(&z4).unwrap();
    let v = multiplicative_unitary(&z4, &gd).unwrap();
    let mu = State::from_coeffs(&z4, CVec::from_vec(vec![c(0.4), c(0.3), c(0.2), c(0.1)]), 1e-12).unwrap();
    let (p_idem, _) = projection_residuals(&v_projection(&z4, &gd, &v, &mu));
    let p_rejected = p_idem > NEGATIVE_GAP;
    Outcome {
        pass: indicator_rejected && oblique_rejected && p_rejected,
        detail: format!(
            "indicator of {{0,1,3}} defect {:.2} (rejected: {indicator_rejected}); oblique projection h-orthogonality {:.2e} (rejected: {oblique_rejected}); generic ‖p² − p‖ = {p_idem:.3} > {NEGATIVE_GAP}",
            qgidem::state::state_defect(&ga, &indicator),
            r.h_orthogonal,
        ),
    }
}

fn main() -> ExitCode {
    let t = Instant::now();
    let mut results = Vec::new();
    let c1 = axiom_suite();
    report(1, "axiom suite", &c1);
    results.push(c1.pass);

    let names = ["Z4", "Z2xZ2", "S3", "D4", "Q8"];
    let samples: Vec<Sample> = names.iter().flat_map(|g| [Sample::new(g, true), Sample::new(g, false)]).collect();

    let c2 = enumeration(&samples);
    report(2, "idempotent enumeration against the subgroup oracle", &c2);
    let (c3, verdicts) = classification(&samples);
    report(3, "Haar classification and agreement of the three criteria", &c3);
    let c4 = commutative_haar(&samples, &verdicts);
    report(4, "commutative samples and ga:Q8 are all Haar", &c4);
    let c5 = round_trips(&samples);
    report(5, "state/subalgebra round trips and order isomorphism", &c5);
    let c6 = identities(&samples);
    report(6, "structural identities", &c6);
    let c7 = quotient();
    report(7, "quotient of fn:S3 by the A3 state", &c7);
    let c8 = random_walk();
    report(8, "Cesàro means of a strictly positive state on fn:Z4", &c8);
    let c9 = negative_controls();
    report(9, "negative controls", &c9);
    results.extend([c2.pass, c3.pass, c4.pass, c5.pass, c6.pass, c7.pass, c8.pass, c9.pass]);

    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria pass ({:.1}s)", results.len(), t.elapsed().as_secs_f64());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
