//! Cesàro averages of convolution powers.

use crate::linalg::{self, c, frob, CMat};
use crate::qg::FiniteQuantumGroup;
use crate::state::{convolve_unchecked, left_slice, Functional, State};
use crate::{tol, Error, Result};

/// `ν_k = (1/k) Σ_{j=1..k} μ^{⋆j}` for `k = 1..=steps`.
pub fn cesaro_walk(qg: &FiniteQuantumGroup, mu: &State, steps: usize) -> Result<Vec<State>> {
    mu.check_parent(qg)?;
    let mut out = Vec::with_capacity(steps);
    let mut power: Functional = mu.functional().clone();
    let mut sum = power.coeffs().clone();
    for k in 1..=steps {
        if k > 1 {
            power = convolve_unchecked(qg, &power, mu);
            sum += power.coeffs();
        }
        let avg = Functional::new(qg, &sum / c(k as f64))?;
        out.push(State::trusted(avg));
    }
    Ok(out)
}

/// Projection onto `ker(T − 1)` along `ran(T − 1)`, the Cesàro limit of the
/// powers of a power-bounded `T`.
pub fn mean_ergodic_projection(t: &CMat) -> Result<CMat> {
    let n = t.nrows();
    let d = t - CMat::identity(n, n);
    let ker = linalg::null_space(&d);
    let ran = linalg::orth(&d);
    if ker.ncols() + ran.ncols() != n {
        return Err(Error::Consistency(format!(
            "fixed space ({}) and range ({}) of T − 1 do not span",
            ker.ncols(),
            ran.ncols()
        )));
    }
    let mut basis = CMat::zeros(n, n);
    basis.view_mut((0, 0), (n, ker.ncols())).copy_from(&ker);
    basis.view_mut((0, ker.ncols()), (n, ran.ncols())).copy_from(&ran);
    let inv =
        basis.clone().try_inverse().ok_or_else(|| Error::Consistency("fixed space meets the range of T − 1".into()))?;
    let mut keep = CMat::zeros(n, n);
    for i in 0..ker.ncols() {
        keep[(i, i)] = c(1.0);
    }
    Ok(basis * keep * inv)
}

/// `ν_∞ = ε∘P` with `P` the mean ergodic projection of `L_μ`. The limit is
/// an idempotent state.
pub fn cesaro_limit(qg: &FiniteQuantumGroup, mu: &State) -> Result<State> {
    mu.check_parent(qg)?;
    let l = left_slice(qg, mu).0;
    let p = mean_ergodic_projection(&l)?;
    let drift = frob(&(&l * &p - &p));
    if drift > tol::CROSS_CHECK {
        return Err(Error::Consistency(format!("projection not fixed by L_μ ({drift:.3e})")));
    }
    let nu = Functional::new(qg, p.transpose() * qg.counit())?;
    State::new(qg, nu, tol::CROSS_CHECK)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::CayleyTable;
    use crate::linalg::CVec;
    use crate::qg::function_algebra;
    use crate::state::{is_idempotent, subgroup_state_fn};

    fn point_mass_mix(q: &FiniteQuantumGroup, weights: &[(usize, f64)]) -> State {
        let mut v = CVec::zeros(q.dim());
        for &(x, w) in weights {
            v[x] += c(w);
        }
        State::from_coeffs(q, v, 1e-12).unwrap()
    }

    #[test]
    fn lazy_walk_on_generator_tends_to_haar() {
        let g = CayleyTable::builtin("Z4").unwrap();
        let q = function_algebra(&g);
        let mu = point_mass_mix(&q, &[(0, 0.5), (1, 0.5)]);
        let lim = cesaro_limit(&q, &mu).unwrap();
        assert!(lim.distance(&Functional::haar(&q)) < 1e-10);
        let walk = cesaro_walk(&q, &mu, 400).unwrap();
        assert!(walk[399].distance(&lim) < 0.01);
    }

    #[test]
    fn periodic_walk_still_converges_in_mean() {
        let g = CayleyTable::builtin("Z4").unwrap();
        let q = function_algebra(&g);
        let mu = point_mass_mix(&q, &[(2, 1.0)]);
        let lim = cesaro_limit(&q, &mu).unwrap();
        let h = [0usize, 2].into_iter().collect();
        assert!(lim.distance(&subgroup_state_fn(&q, &g, &h).unwrap()) < 1e-10);
        let walk = cesaro_walk(&q, &mu, 101).unwrap();
        // odd averages overshoot by exactly 1/(2k)
        assert!((walk[100].distance(&lim) - 1.0 / 202.0).abs() < 1e-12);
        assert!(walk[99].distance(&lim) < 1e-12);
    }

    #[test]
    fn limit_is_idempotent() {
        let g = CayleyTable::builtin("S3").unwrap();
        let q = function_algebra(&g);
        let mu = point_mass_mix(&q, &[(0, 0.2), (1, 0.3), (3, 0.5)]);
        let lim = cesaro_limit(&q, &mu).unwrap();
        assert!(is_idempotent(&q, &lim, 1e-9));
    }

    #[test]
    fn idempotent_is_its_own_limit() {
        let g = CayleyTable::builtin("S3").unwrap();
        let q = function_algebra(&g);
        for h in g.subgroups() {
            let w = subgroup_state_fn(&q, &g, &h).unwrap();
            assert!(cesaro_limit(&q, &w).unwrap().distance(&w) < 1e-10);
        }
    }
}
