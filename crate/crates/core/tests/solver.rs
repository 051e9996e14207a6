mod common;

use qgidem::cayley::CayleyTable;
use qgidem::linalg::CVec;
use qgidem::qg::{function_algebra, group_algebra};
use qgidem::solver::{solve_idempotents, solve_idempotents_report, SolveConfig};
use qgidem::state::{is_idempotent, Functional};

fn run(q: &qgidem::FiniteQuantumGroup, seed: u64) -> Vec<CVec> {
    let cfg = SolveConfig { seed, ..SolveConfig::default() };
    solve_idempotents(q, &cfg).unwrap().iter().map(|s| s.coeffs().clone()).collect()
}

#[test]
fn matches_subgroup_oracle_on_small_groups() {
    let expected = [("Z2", 2), ("Z3", 2), ("Z4", 3), ("Z2xZ2", 5), ("S3", 6), ("D4", 10), ("Q8", 6)];
    for (name, count) in expected {
        let g = CayleyTable::builtin(name).unwrap();
        let subs = common::subgroups(&g);
        assert_eq!(subs.len(), count, "oracle count for {name}");
        let fn_oracle: Vec<CVec> = subs.iter().map(|h| common::state_fn(g.order(), h)).collect();
        let ga_oracle: Vec<CVec> = subs.iter().map(|h| common::state_ga(g.order(), h)).collect();
        for (q, oracle) in [(function_algebra(&g), fn_oracle), (group_algebra(&g), ga_oracle)] {
            let found = run(&q, 0);
            assert_eq!(found.len(), count, "{name}");
            assert!(common::hausdorff(&found, &oracle) <= 1e-7, "{name}");
        }
    }
}

#[test]
fn outputs_are_idempotent_states() {
    for name in ["S3", "D4"] {
        let g = CayleyTable::builtin(name).unwrap();
        for q in [function_algebra(&g), group_algebra(&g)] {
            for s in solve_idempotents(&q, &SolveConfig::default()).unwrap() {
                assert!(is_idempotent(&q, &s, 1e-9));
            }
        }
    }
}

#[test]
fn result_contains_counit_and_haar_and_is_sorted() {
    let q = group_algebra(&CayleyTable::builtin("Q8").unwrap());
    let r = solve_idempotents_report(&q, &SolveConfig { starts: 3, ..SolveConfig::default() }).unwrap();
    let e = Functional::counit(&q);
    let h = Functional::haar(&q);
    assert!(r.states.iter().any(|s| s.distance(&e) < 1e-12));
    assert!(r.states.iter().any(|s| s.distance(&h) < 1e-12));
    let keys: Vec<Vec<(f64, f64)>> =
        r.states.iter().map(|s| s.coeffs().iter().map(|z| (z.re, z.im)).collect()).collect();
    let mut sorted = keys.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert_eq!(keys, sorted);
}

#[test]
fn deterministic_given_seed() {
    let q = function_algebra(&CayleyTable::builtin("D4").unwrap());
    let a = run(&q, 11);
    let b = run(&q, 11);
    assert_eq!(a, b);
}

#[test]
fn seeds_agree_as_sets() {
    let q = group_algebra(&CayleyTable::builtin("S3").unwrap());
    let a = run(&q, 1);
    let b = run(&q, 2);
    assert!(common::hausdorff(&a, &b) <= 1e-7);
}

#[test]
fn parallel_merge_equals_sequential_run() {
    use qgidem::solver::{dedup, Problem};
    let q = function_algebra(&CayleyTable::builtin("S3").unwrap());
    let cfg = SolveConfig { starts: 120, seed: 5, ..SolveConfig::default() };
    let p = Problem::new(&q, cfg.max_iter, cfg.newton_tol);
    let mut seq: Vec<CVec> =
        (0..cfg.starts).map(|i| p.run(p.start(cfg.seed, i))).filter(|o| o.converged).map(|o| o.coeffs).collect();
    seq.push(q.counit().clone());
    seq.push(q.haar().clone());
    let seq = dedup(seq, cfg.dedup_tol);
    let par: Vec<CVec> = solve_idempotents(&q, &cfg).unwrap().iter().map(|s| s.coeffs().clone()).collect();
    assert_eq!(seq, par);
}
