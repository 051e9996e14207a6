//! Dense complex linear algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};

use crate::{tol, C64};

pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn sup_norm(v: &CVec) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn frob(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn vec_norm(v: &CVec) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Kronecker product `a ⊗ b` with row index `i * b.nrows() + k`.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    CMat::from_fn(ar * br, ac * bc, |r, col| a[(r / br, col / bc)] * b[(r % br, col % bc)])
}

pub fn kron_vec(a: &CVec, b: &CVec) -> CVec {
    CVec::from_fn(a.len() * b.len(), |r, _| a[r / b.len()] * b[r % b.len()])
}

/// Convergence thresholds tried in turn until a decomposition reproduces its input.
const EPS_LADDER: [f64; 4] = [f64::EPSILON, 1e-16, 4.0 * f64::EPSILON, 1e-15];

fn unitary_defect(u: &CMat) -> f64 {
    let n = u.ncols();
    frob(&(u.adjoint() * u - CMat::identity(n, n)))
}

type Svd = (Vec<f64>, CMat, CMat);

/// Thin SVD `(σ, U, V)` with `a = U diag(σ) V*`, verified.
fn checked_svd(a: &CMat) -> Svd {
    let scale = frob(a).max(1.0);
    let n = a.nrows().min(a.ncols());
    let mut best: Option<(f64, Svd)> = None;
    for eps in EPS_LADDER {
        let Some(svd) = a.clone().try_svd(true, true, eps, 10_000) else {
            continue;
        };
        let u = svd.u.expect("u requested");
        let v = svd.v_t.expect("v_t requested").adjoint();
        let sv: Vec<f64> = svd.singular_values.iter().copied().collect();
        let d = CMat::from_diagonal(&CVec::from_iterator(n, sv.iter().map(|&x| c(x))));
        let err = frob(&(&u * d * v.adjoint() - a)) / scale + unitary_defect(&u) + unitary_defect(&v);
        if err <= 1e-12 {
            return (sv, u, v);
        }
        if best.as_ref().is_none_or(|(e, _)| err < *e) {
            best = Some((err, (sv, u, v)));
        }
    }
    best.expect("some SVD attempt converges").1
}

/// Eigen decomposition of the Hermitian part of `m`, verified.
pub fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let h = hermitian_part(m);
    let n = h.nrows();
    let scale = frob(&h).max(1.0);
    let mut best: Option<(f64, (Vec<f64>, CMat))> = None;
    for eps in EPS_LADDER {
        let Some(eig) = h.clone().try_symmetric_eigen(eps, 10_000) else {
            continue;
        };
        let vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        let d = CMat::from_diagonal(&CVec::from_iterator(n, vals.iter().map(|&x| c(x))));
        let vecs = eig.eigenvectors;
        let err = frob(&(&vecs * d * vecs.adjoint() - &h)) / scale + unitary_defect(&vecs);
        if err <= 1e-12 {
            return (vals, vecs);
        }
        if best.as_ref().is_none_or(|(e, _)| err < *e) {
            best = Some((err, (vals, vecs)));
        }
    }
    best.expect("some eigen attempt converges").1
}

/// Singular values and singular vectors, padding wide matrices with zero
/// rows so that `V` is always square.
fn padded_svd(a: &CMat) -> Svd {
    let (m, n) = a.shape();
    let padded = if m < n {
        let mut p = CMat::zeros(n, n);
        p.view_mut((0, 0), (m, n)).copy_from(a);
        p
    } else {
        a.clone()
    };
    checked_svd(&padded)
}

fn cutoff(sv: &[f64]) -> f64 {
    let max = sv.iter().copied().fold(0.0, f64::max);
    tol::RANK * max.max(1.0)
}

pub fn rank(a: &CMat) -> usize {
    if a.is_empty() {
        return 0;
    }
    let (sv, _, _) = checked_svd(a);
    let cut = cutoff(&sv);
    sv.iter().filter(|&&s| s > cut).count()
}

/// Orthonormal basis (columns) of the column space of `a`.
pub fn orth(a: &CMat) -> CMat {
    let n = a.nrows();
    if a.ncols() == 0 || n == 0 {
        return CMat::zeros(n, 0);
    }
    let (sv, u, _) = padded_svd(a);
    let cut = cutoff(&sv);
    let keep: Vec<usize> = (0..sv.len()).filter(|&i| sv[i] > cut).collect();
    CMat::from_fn(n, keep.len(), |r, col| u[(r, keep[col])])
}

/// Orthonormal basis (columns) of `{x : a x = 0}`.
pub fn null_space(a: &CMat) -> CMat {
    let n = a.ncols();
    if a.nrows() == 0 {
        return CMat::identity(n, n);
    }
    let (sv, _, v) = padded_svd(a);
    let cut = cutoff(&sv);
    let keep: Vec<usize> = (0..n).filter(|&i| i >= sv.len() || sv[i] <= cut).collect();
    CMat::from_fn(n, keep.len(), |r, col| v[(r, keep[col])])
}

/// Null space of a Hermitian PSD matrix using its eigen decomposition, with
/// an absolute eigenvalue cutoff.
pub fn psd_kernel(m: &CMat, cut: f64) -> CMat {
    let n = m.nrows();
    let (vals, vecs) = hermitian_eigen(m);
    let keep: Vec<usize> = (0..n).filter(|&i| vals[i] <= cut).collect();
    CMat::from_fn(n, keep.len(), |r, col| vecs[(r, keep[col])])
}

pub fn hermitian_part(m: &CMat) -> CMat {
    (m + m.adjoint()) * c(0.5)
}

pub fn min_eigenvalue(m: &CMat) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    hermitian_eigen(m).0.into_iter().fold(f64::INFINITY, f64::min)
}

/// Applies `f` to the eigenvalues of a Hermitian matrix.
pub fn hermitian_map(m: &CMat, f: impl Fn(f64) -> f64) -> CMat {
    let (vals, vecs) = hermitian_eigen(m);
    let d = CMat::from_diagonal(&CVec::from_iterator(m.nrows(), vals.iter().map(|&l| c(f(l)))));
    &vecs * d * vecs.adjoint()
}

/// Distance of `x` from the span of the orthonormal columns of `q`.
pub fn outside_residual(q: &CMat, x: &CVec) -> f64 {
    if q.ncols() == 0 {
        return vec_norm(x);
    }
    vec_norm(&(x - q * (q.adjoint() * x)))
}

/// Frobenius distance of the columns of `x` from the span of `q`.
pub fn outside_residual_cols(q: &CMat, x: &CMat) -> f64 {
    if q.ncols() == 0 {
        return frob(x);
    }
    frob(&(x - q * (q.adjoint() * x)))
}

/// Largest distance between two subspaces given by orthonormal bases; zero
/// iff the spans coincide.
pub fn subspace_distance(a: &CMat, b: &CMat) -> f64 {
    if a.ncols() != b.ncols() {
        return f64::INFINITY;
    }
    outside_residual_cols(a, b).max(outside_residual_cols(b, a))
}

pub fn conj_vec(v: &CVec) -> CVec {
    v.map(|z| z.conj())
}

pub fn conj_mat(m: &CMat) -> CMat {
    m.map(|z| z.conj())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_space_of_wide_matrix() {
        let a = CMat::from_row_slice(1, 3, &[c(1.0), c(1.0), c(0.0)]);
        let k = null_space(&a);
        assert_eq!(k.ncols(), 2);
        assert!(frob(&(&a * &k)) < 1e-12);
        assert_eq!(rank(&a), 1);
    }

    #[test]
    fn orth_drops_dependent_columns() {
        let a = CMat::from_row_slice(3, 3, &[c(1.0), c(2.0), c(0.0), c(0.0), c(0.0), c(1.0), c(1.0), c(2.0), c(0.0)]);
        let q = orth(&a);
        assert_eq!(q.ncols(), 2);
        assert!(frob(&(q.adjoint() * &q - CMat::identity(2, 2))) < 1e-12);
    }

    #[test]
    fn inverse_square_root_orthonormalizes() {
        let g = CMat::from_row_slice(2, 2, &[c(2.0), C64::new(0.0, 1.0), C64::new(0.0, -1.0), c(3.0)]);
        let q = hermitian_map(&g, |l| l.powf(-0.5));
        assert!(frob(&(q.adjoint() * &g * &q - CMat::identity(2, 2))) < 1e-12);
    }

    #[test]
    fn kron_shapes() {
        let a = CMat::identity(2, 2);
        let b = CMat::from_element(3, 1, c(1.0));
        let k = kron(&a, &b);
        assert_eq!(k.shape(), (6, 2));
        assert_eq!(k[(4, 1)], c(1.0));
        assert_eq!(k[(4, 0)], c(0.0));
    }
}
