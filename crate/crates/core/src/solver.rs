//! Multi-start search for idempotent states.
//!
//! Candidates are vector states `ω(a) = h(x* a x)` of the Haar GNS space, so
//! positivity holds by construction. For each seeded start the residual
//! `[Re(ω⋆ω − ω), Im(ω⋆ω − ω), ω(1) − 1]` is driven to zero by a damped
//! Gauss-Newton (Levenberg-Marquardt) iteration in the real coordinates of `x`.

use nalgebra::{DMatrix, DVector};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use std::cmp::Ordering;

use crate::linalg::{c, sup_norm, CMat, CVec};
use crate::qg::FiniteQuantumGroup;
use crate::state::{self, Functional, State};
use crate::{tol, Error, Result, C64};

#[derive(Clone, Debug, PartialEq)]
pub struct SolveConfig {
    pub starts: usize,
    pub seed: u64,
    pub newton_tol: f64,
    pub dedup_tol: f64,
    pub max_iter: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self { starts: 500, seed: 0, newton_tol: tol::NEWTON, dedup_tol: tol::DEDUP, max_iter: 200 }
    }
}

impl SolveConfig {
    pub fn validate(&self) -> Result<()> {
        if self.starts == 0 || self.max_iter == 0 {
            return Err(Error::Parse("starts and max_iter must be positive".into()));
        }
        if !(self.newton_tol > 0.0 && self.dedup_tol > 0.0) {
            return Err(Error::Parse("tolerances must be positive".into()));
        }
        Ok(())
    }
}

/// Outcome of a single start.
#[derive(Clone, Debug)]
pub struct StartOutcome {
    pub coeffs: CVec,
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Precomputed data shared by all starts.
pub struct Problem<'a> {
    qg: &'a FiniteQuantumGroup,
    /// `T_i = G L_i`, so that `ω(e_i) = x^H T_i x`.
    t: Vec<CMat>,
    max_iter: usize,
    tol: f64,
}

impl<'a> Problem<'a> {
    pub fn new(qg: &'a FiniteQuantumGroup, max_iter: usize, tol: f64) -> Self {
        let g = qg.haar_gram();
        let t = qg.left_mult_basis().iter().map(|l| &g * l).collect();
        Self { qg, t, max_iter, tol }
    }

    fn n(&self) -> usize {
        self.qg.dim()
    }

    fn omega(&self, x: &CVec) -> CVec {
        let xh = x.adjoint();
        CVec::from_iterator(self.n(), self.t.iter().map(|t| (&xh * t * x)[(0, 0)]))
    }

    /// Residual vector and its real Jacobian with respect to `(Re x, Im x)`.
    fn residual(&self, x: &CVec, with_jacobian: bool) -> (DVector<f64>, Option<DMatrix<f64>>) {
        let n = self.n();
        let w = self.omega(x);
        let f = state::convolve_unchecked(self.qg, &self.wrap(&w), &self.wrap(&w)).coeffs() - &w;
        let norm = w.dot(self.qg.unit()) - c(1.0);
        let mut r = DVector::zeros(2 * n + 1);
        for i in 0..n {
            r[i] = f[i].re;
            r[n + i] = f[i].im;
        }
        r[2 * n] = norm.re;
        if !with_jacobian {
            return (r, None);
        }
        // d ω_i / d(Re x_a, Im x_a)
        let xc = x.map(|z| z.conj());
        let mut jw = CMat::zeros(n, 2 * n);
        for (i, t) in self.t.iter().enumerate() {
            let u = t * x;
            let v = t.transpose() * &xc;
            for a in 0..n {
                jw[(i, a)] = u[a] + v[a];
                jw[(i, n + a)] = C64::i() * (v[a] - u[a]);
            }
        }
        // d(ω⋆ω)_i = Σ d_i^{jk} (dω_j ω_k + ω_j dω_k)
        let mut m = -CMat::identity(n, n);
        for i in 0..n {
            for &(jk, d) in self.qg.comult().row(i) {
                let (j, k) = (jk / n, jk % n);
                m[(i, j)] += d * w[k];
                m[(i, k)] += d * w[j];
            }
        }
        let jf = m * &jw;
        let jn = self.qg.unit().transpose() * &jw;
        let mut jac = DMatrix::zeros(2 * n + 1, 2 * n);
        for col in 0..2 * n {
            for i in 0..n {
                jac[(i, col)] = jf[(i, col)].re;
                jac[(n + i, col)] = jf[(i, col)].im;
            }
            jac[(2 * n, col)] = jn[(0, col)].re;
        }
        (r, Some(jac))
    }

    fn wrap(&self, w: &CVec) -> Functional {
        Functional::new(self.qg, w.clone()).expect("length matches")
    }

    /// Runs Levenberg-Marquardt from `x0`.
    pub fn run(&self, x0: CVec) -> StartOutcome {
        let n = self.n();
        let mut x = x0;
        let (mut r, mut jac) = self.residual(&x, true);
        let mut cost = r.norm_squared();
        let mut lambda = 1e-3;
        let mut iterations = 0;
        while iterations < self.max_iter {
            if r.amax() <= self.tol * 1e-3 {
                break;
            }
            iterations += 1;
            let j = jac.as_ref().expect("jacobian present");
            let jt = j.transpose();
            let mut a = &jt * j;
            let g = &jt * &r;
            let scale = a.diagonal().max().max(1e-12);
            for k in 0..2 * n {
                a[(k, k)] += lambda * scale;
            }
            let Some(chol) = a.cholesky() else {
                lambda *= 10.0;
                continue;
            };
            let step = chol.solve(&(-g));
            let trial = CVec::from_fn(n, |k, _| x[k] + C64::new(step[k], step[n + k]));
            let (rt, _) = self.residual(&trial, false);
            let ct = rt.norm_squared();
            if ct < cost {
                x = trial;
                let (r2, j2) = self.residual(&x, true);
                r = r2;
                jac = j2;
                let improvement = cost - ct;
                cost = ct;
                lambda = (lambda / 3.0).max(1e-15);
                if improvement <= 1e-32 && cost > 0.0 {
                    break;
                }
            } else {
                lambda *= 4.0;
                if lambda > 1e12 {
                    break;
                }
            }
        }
        let residual = r.amax();
        StartOutcome { coeffs: self.omega(&x), residual, iterations, converged: residual <= self.tol }
    }

    /// Start vector for start `index`, scaled to `ω(1) = 1`. Starts cycle
    /// through dense Gaussian, randomly supported, log-normal amplitudes and
    /// normalized powers of `1 + y` for a sparse positive `y`.
    pub fn start(&self, seed: u64, index: usize) -> CVec {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let n = self.n();
        let gauss = |rng: &mut ChaCha8Rng| -> C64 {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            C64::new(re, im)
        };
        let mut x = CVec::from_fn(n, |_, _| gauss(&mut rng));
        match index % 5 {
            1 => {
                let keep: f64 = rng.random_range(0.0..1.0);
                let anchor = rng.random_range(0..n);
                for k in 0..n {
                    if k != anchor && rng.random_range(0.0..1.0) > keep {
                        x[k] = c(0.0);
                    }
                }
            }
            2 => {
                let spread: f64 = rng.random_range(0.0..4.0);
                for k in 0..n {
                    let z: f64 = StandardNormal.sample(&mut rng);
                    x[k] *= (spread * z).exp();
                }
            }
            3 | 4 => {
                let mut y = self.qg.unit().clone();
                for _ in 0..rng.random_range(1..=3usize) {
                    y[rng.random_range(0..n)] += c(rng.random_range(0.2..1.0));
                }
                let mut p = y.clone();
                for _ in 0..rng.random_range(0..2 * n) {
                    p = self.qg.mul(&p, &y);
                    p /= c(crate::linalg::vec_norm(&p));
                }
                x = p + x * c(1e-3);
            }
            _ => {}
        }
        let w1 = self.omega(&x).dot(self.qg.unit()).re;
        if w1 <= 1e-300 {
            return CVec::from_fn(n, |_, _| gauss(&mut rng));
        }
        x / c(w1.sqrt())
    }
}

fn lex_cmp(a: &CVec, b: &CVec) -> Ordering {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Merges candidates closer than `tol` (sup norm) and returns them in
/// lexicographic order of coefficients.
pub fn dedup(mut found: Vec<CVec>, tol: f64) -> Vec<CVec> {
    found.sort_by(lex_cmp);
    let mut out: Vec<CVec> = Vec::new();
    for v in found {
        if out.iter().all(|u| sup_norm(&(u - &v)) > tol) {
            out.push(v);
        }
    }
    out
}

fn run_starts(problem: &Problem<'_>, cfg: &SolveConfig) -> Vec<StartOutcome> {
    let one = |i: usize| problem.run(problem.start(cfg.seed, i));
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..cfg.starts).into_par_iter().map(one).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..cfg.starts).map(one).collect()
    }
}

/// Summary of a solve.
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub states: Vec<State>,
    pub converged_starts: usize,
    pub total_starts: usize,
}

/// Finds idempotent states by multi-start search. The counit and the Haar
/// state are always part of the result. Order is lexicographic in the
/// coefficients and independent of thread scheduling.
pub fn solve_idempotents(qg: &FiniteQuantumGroup, cfg: &SolveConfig) -> Result<Vec<State>> {
    Ok(solve_idempotents_report(qg, cfg)?.states)
}

pub fn solve_idempotents_report(qg: &FiniteQuantumGroup, cfg: &SolveConfig) -> Result<SolveReport> {
    cfg.validate()?;
    let problem = Problem::new(qg, cfg.max_iter, cfg.newton_tol);
    let outcomes = run_starts(&problem, cfg);
    let converged_starts = outcomes.iter().filter(|o| o.converged).count();
    let mut found: Vec<CVec> = outcomes.into_iter().filter(|o| o.converged).map(|o| o.coeffs).collect();
    found.push(qg.counit().clone());
    found.push(qg.haar().clone());
    let found = dedup(found, cfg.dedup_tol);
    let check_tol = cfg.newton_tol.max(tol::POSITIVITY) * 10.0;
    let mut states = Vec::with_capacity(found.len());
    for coeffs in found {
        let f = Functional::new(qg, coeffs)?;
        let defect = state::idempotency_residual(qg, &f);
        if defect > check_tol {
            return Err(Error::NotIdempotent(defect));
        }
        states.push(State::new(qg, f, check_tol)?);
    }
    Ok(SolveReport { states, converged_starts, total_starts: cfg.starts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::CayleyTable;
    use crate::qg::{function_algebra, group_algebra};

    fn cfg(starts: usize) -> SolveConfig {
        SolveConfig { starts, seed: 7, ..SolveConfig::default() }
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let q = group_algebra(&CayleyTable::builtin("S3").unwrap());
        let p = Problem::new(&q, 50, 1e-10);
        let x = p.start(3, 1);
        let (r0, j) = p.residual(&x, true);
        let j = j.unwrap();
        let n = q.dim();
        let h = 1e-6;
        for col in 0..2 * n {
            let mut xp = x.clone();
            let mut xm = x.clone();
            let d = if col < n { C64::new(h, 0.0) } else { C64::new(0.0, h) };
            xp[col % n] += d;
            xm[col % n] -= d;
            let fd = (p.residual(&xp, false).0 - p.residual(&xm, false).0) / (2.0 * h);
            assert!((fd - j.column(col)).amax() < 1e-6, "column {col}");
        }
        assert_eq!(r0.len(), 2 * n + 1);
    }

    #[test]
    fn trivial_group_has_one_idempotent() {
        let q = function_algebra(&CayleyTable::builtin("Z1").unwrap());
        assert_eq!(solve_idempotents(&q, &cfg(5)).unwrap().len(), 1);
    }

    #[test]
    fn z2_has_two() {
        let q = function_algebra(&CayleyTable::builtin("Z2").unwrap());
        let s = solve_idempotents(&q, &cfg(20)).unwrap();
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn rejects_bad_config() {
        let q = function_algebra(&CayleyTable::builtin("Z2").unwrap());
        assert!(solve_idempotents(&q, &SolveConfig { starts: 0, ..SolveConfig::default() }).is_err());
    }

    #[test]
    fn dedup_is_order_independent() {
        let a = CVec::from_vec(vec![c(1.0), c(0.0)]);
        let b = CVec::from_vec(vec![c(0.5), c(0.5)]);
        let a2 = &a + CVec::from_vec(vec![c(1e-9), c(0.0)]);
        let x = dedup(vec![a.clone(), b.clone(), a2.clone()], 1e-7);
        let y = dedup(vec![a2, b, a], 1e-7);
        assert_eq!(x.len(), 2);
        assert!(sup_norm(&(&x[0] - &y[0])) < 1e-8 && sup_norm(&(&x[1] - &y[1])) < 1e-12);
    }
}
