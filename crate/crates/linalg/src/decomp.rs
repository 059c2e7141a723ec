//! Matrix decompositions sized for small dense problems.
//!
//! Everything here targets dimensions up to a few dozen, where cyclic Jacobi
//! sweeps and Householder QR are simple and accurate to near machine epsilon.

use num_complex::Complex64;

use crate::matrix::{vec_norm, ComplexMatrix};
use crate::{LinalgError, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues sorted descending and a unitary matrix whose columns
/// are the matching eigenvectors, so `h = v · diag(vals) · v†`. The input is
/// symmetrized first; callers are expected to pass matrices that are
/// Hermitian up to roundoff.
pub fn eigen_hermitian(h: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    assert!(h.is_square(), "eigen_hermitian needs a square matrix");
    let n = h.rows();

    // Work on the Hermitian part so tiny asymmetries cannot bias the sweep.
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| (h.get(i, j) + h.get(j, i).conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);

    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
    let tol = 1e-15 * scale;

    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a.get(p, q).norm_sqr();
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                let r = apq.norm();
                if r <= tol / (n as f64) {
                    continue;
                }
                let u = apq / r; // unit phase of the off-diagonal entry
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                // Root of t² − 2τt − 1 = 0 with the smaller magnitude.
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // Unitary G: identity except
                //   G[p,p]=c, G[p,q]=-s, G[q,p]=s·conj(u), G[q,q]=c·conj(u)
                let gpp = Complex64::new(c, 0.0);
                let gpq = Complex64::new(-s, 0.0);
                let gqp = u.conj() * s;
                let gqq = u.conj() * c;

                // a ← G† a G, touching only rows/columns p and q.
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, akp * gpp + akq * gqp);
                    a.set(k, q, akp * gpq + akq * gqq);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, gpp.conj() * apk + gqp.conj() * aqk);
                    a.set(q, k, gpq.conj() * apk + gqq.conj() * aqk);
                }
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, vkp * gpp + vkq * gqp);
                    v.set(k, q, vkp * gpq + vkq * gqq);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap());

    let vals: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let vecs = ComplexMatrix::from_fn(n, n, |i, j| v.get(i, order[j]));
    (vals, vecs)
}

/// Singular value decomposition `a = u · diag(s) · v†`.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub singular_values: Vec<f64>,
    pub v: ComplexMatrix,
}

/// SVD of an arbitrary rectangular matrix via the Hermitian eigenproblem of
/// the Gram matrix, with a re-orthonormalization pass on the left vectors.
/// Singular values come out sorted descending.
pub fn svd(a: &ComplexMatrix) -> Svd {
    let m = a.rows();
    let n = a.cols();
    if m < n {
        let t = svd(&a.adjoint());
        return Svd {
            u: t.v,
            singular_values: t.singular_values,
            v: t.u,
        };
    }

    let gram = a.adjoint().matmul(a); // n×n Hermitian PSD
    let (_evals, v) = eigen_hermitian(&gram);

    let mut u = ComplexMatrix::zeros(m, n);
    let mut s = vec![0.0f64; n];
    let mut have_u = vec![false; n];
    for j in 0..n {
        let w = a.matvec(&v.column(j));
        let norm = vec_norm(&w);
        s[j] = norm;
        if norm > 1e-200 {
            u.set_column(j, &w.iter().map(|z| z / norm).collect::<Vec<_>>());
            have_u[j] = true;
        }
    }

    // Modified Gram-Schmidt over the computed left vectors; columns whose
    // singular value underflowed (or that lost orthogonality to a larger
    // cluster) are replaced by completions from the standard basis. Columns
    // 0..j are final when column j is processed.
    let drop_tol = 1e-8;
    for j in 0..n {
        let mut col = u.column(j);
        if have_u[j] {
            for k in 0..j {
                let prev = u.column(k);
                let overlap = crate::matrix::inner(&prev, &col);
                for (ci, pi) in col.iter_mut().zip(&prev) {
                    *ci -= overlap * pi;
                }
            }
            let norm = vec_norm(&col);
            if norm > drop_tol {
                u.set_column(j, &col.iter().map(|z| z / norm).collect::<Vec<_>>());
                continue;
            }
        }
        // Completion: orthonormalize the standard basis vector that survives
        // projection against the finished columns best.
        let mut best: Vec<Complex64> = vec![ZERO; m];
        let mut best_norm = -1.0;
        for e in 0..m {
            let mut cand = vec![ZERO; m];
            cand[e] = ONE;
            for k in 0..j {
                let prev = u.column(k);
                let overlap = crate::matrix::inner(&prev, &cand);
                for (ci, pi) in cand.iter_mut().zip(&prev) {
                    *ci -= overlap * pi;
                }
            }
            let norm = vec_norm(&cand);
            if norm > best_norm {
                best_norm = norm;
                best = cand.iter().map(|z| z / norm).collect();
            }
        }
        u.set_column(j, &best);
        have_u[j] = true;
    }

    Svd {
        u,
        singular_values: s,
        v,
    }
}

/// Singular values only, sorted descending.
pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    svd(a).singular_values
}

/// Smallest singular value; zero for rank-deficient input.
pub fn smallest_singular_value(a: &ComplexMatrix) -> f64 {
    singular_values(a).last().copied().unwrap_or(0.0)
}

/// Householder QR factorization `a = q · r` with `q` unitary and `r` upper
/// triangular.
pub fn qr(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let m = a.rows();
    let n = a.cols();
    let mut r = a.clone();
    let mut q = ComplexMatrix::identity(m);

    for k in 0..n.min(m.saturating_sub(1)) {
        // Householder vector for column k below the diagonal.
        let x: Vec<Complex64> = (k..m).map(|i| r.get(i, k)).collect();
        let xnorm = vec_norm(&x);
        if xnorm < 1e-300 {
            continue;
        }
        let phase = if x[0].norm() > 1e-300 {
            x[0] / x[0].norm()
        } else {
            ONE
        };
        let alpha = -phase * xnorm;
        let mut v = x.clone();
        v[0] -= alpha;
        let vnorm = vec_norm(&v);
        if vnorm < 1e-300 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }

        // r ← (I − 2vv†) r on the trailing block.
        for j in k..n {
            let dot: Complex64 = (0..v.len()).map(|i| v[i].conj() * r.get(k + i, j)).sum();
            let two_dot = dot * 2.0;
            for i in 0..v.len() {
                let val = r.get(k + i, j) - two_dot * v[i];
                r.set(k + i, j, val);
            }
        }
        // q ← q (I − 2vv†)
        for i in 0..m {
            let dot: Complex64 = (0..v.len()).map(|l| q.get(i, k + l) * v[l]).sum();
            let two_dot = dot * 2.0;
            for l in 0..v.len() {
                let val = q.get(i, k + l) - two_dot * v[l].conj();
                q.set(i, k + l, val);
            }
        }
    }

    // Zero the strictly-lower part explicitly; it is numerically tiny.
    for i in 1..m {
        for j in 0..i.min(n) {
            r.set(i, j, ZERO);
        }
    }
    (q, r)
}

/// Determinant via LU elimination with partial pivoting.
pub fn determinant(a: &ComplexMatrix) -> Complex64 {
    assert!(a.is_square(), "determinant of non-square matrix");
    let n = a.rows();
    let mut m = a.clone();
    let mut det = ONE;
    for k in 0..n {
        let (pivot, pmag) = (k..n)
            .map(|i| (i, m.get(i, k).norm()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())
            .unwrap();
        if pmag == 0.0 {
            return ZERO;
        }
        if pivot != k {
            for j in 0..n {
                let a = m.get(k, j);
                let b = m.get(pivot, j);
                m.set(k, j, b);
                m.set(pivot, j, a);
            }
            det = -det;
        }
        let pk = m.get(k, k);
        det *= pk;
        for i in (k + 1)..n {
            let f = m.get(i, k) / pk;
            for j in k..n {
                let val = m.get(i, j) - f * m.get(k, j);
                m.set(i, j, val);
            }
        }
    }
    det
}

/// Matrix inverse by Gauss-Jordan elimination with partial pivoting.
pub fn inverse(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    assert!(a.is_square(), "inverse of non-square matrix");
    let n = a.rows();
    let mut m = a.clone();
    let mut inv = ComplexMatrix::identity(n);
    let scale = a.max_abs().max(f64::MIN_POSITIVE);

    for k in 0..n {
        let (pivot, pmag) = (k..n)
            .map(|i| (i, m.get(i, k).norm()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())
            .unwrap();
        if pmag <= 1e-14 * scale {
            return Err(LinalgError::SingularMatrix);
        }
        if pivot != k {
            for j in 0..n {
                let (a1, b1) = (m.get(k, j), m.get(pivot, j));
                m.set(k, j, b1);
                m.set(pivot, j, a1);
                let (a2, b2) = (inv.get(k, j), inv.get(pivot, j));
                inv.set(k, j, b2);
                inv.set(pivot, j, a2);
            }
        }
        let pk = m.get(k, k);
        for j in 0..n {
            m.set(k, j, m.get(k, j) / pk);
            inv.set(k, j, inv.get(k, j) / pk);
        }
        for i in 0..n {
            if i == k {
                continue;
            }
            let f = m.get(i, k);
            if f == ZERO {
                continue;
            }
            for j in 0..n {
                let v1 = m.get(i, j) - f * m.get(k, j);
                m.set(i, j, v1);
                let v2 = inv.get(i, j) - f * inv.get(k, j);
                inv.set(i, j, v2);
            }
        }
    }
    Ok(inv)
}

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Slightly negative eigenvalues from roundoff are clamped to zero.
pub fn sqrt_psd(h: &ComplexMatrix) -> ComplexMatrix {
    let (vals, vecs) = eigen_hermitian(h);
    let roots: Vec<Complex64> = vals
        .iter()
        .map(|&x| Complex64::new(x.max(0.0).sqrt(), 0.0))
        .collect();
    vecs.matmul(&ComplexMatrix::diagonal(&roots)).matmul(&vecs.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eigen_pauli_x() {
        let x = ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let (vals, vecs) = eigen_hermitian(&x);
        assert!((vals[0] - 1.0).abs() < 1e-14);
        assert!((vals[1] + 1.0).abs() < 1e-14);
        assert!(vecs.is_unitary(1e-13));
        let d = ComplexMatrix::diagonal(&[c(vals[0], 0.0), c(vals[1], 0.0)]);
        let rec = vecs.matmul(&d).matmul(&vecs.adjoint());
        assert!(rec.approx_eq(&x, 1e-13));
    }

    #[test]
    fn eigen_complex_hermitian() {
        // [[2, i], [-i, 3]] has eigenvalues (5 ± √5)/2.
        let h = ComplexMatrix::new(2, 2, vec![c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(3.0, 0.0)]).unwrap();
        let (vals, vecs) = eigen_hermitian(&h);
        let hi = (5.0 + 5.0f64.sqrt()) / 2.0;
        let lo = (5.0 - 5.0f64.sqrt()) / 2.0;
        assert!((vals[0] - hi).abs() < 1e-13);
        assert!((vals[1] - lo).abs() < 1e-13);
        let d = ComplexMatrix::diagonal(&[c(vals[0], 0.0), c(vals[1], 0.0)]);
        assert!(vecs.matmul(&d).matmul(&vecs.adjoint()).approx_eq(&h, 1e-13));
    }

    #[test]
    fn svd_reconstructs() {
        let a = ComplexMatrix::new(
            3,
            3,
            vec![
                c(0.3, -0.2), c(1.0, 0.5), c(-0.7, 0.0),
                c(0.0, 0.9), c(-0.4, 0.1), c(0.2, 0.2),
                c(1.1, 0.0), c(0.0, -0.3), c(0.5, 0.8),
            ],
        )
        .unwrap();
        let f = svd(&a);
        assert!(f.u.is_unitary(1e-12));
        assert!(f.v.is_unitary(1e-12));
        let s: Vec<Complex64> = f.singular_values.iter().map(|&x| c(x, 0.0)).collect();
        let rec = f.u.matmul(&ComplexMatrix::diagonal(&s)).matmul(&f.v.adjoint());
        assert!(rec.approx_eq(&a, 1e-12));
        for w in f.singular_values.windows(2) {
            assert!(w[0] >= w[1]);
        }
    }

    #[test]
    fn svd_rank_deficient() {
        let a = ComplexMatrix::new(2, 2, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let f = svd(&a);
        assert!((f.singular_values[0] - 1.0).abs() < 1e-14);
        assert!(f.singular_values[1].abs() < 1e-14);
        assert!(f.u.is_unitary(1e-12));
        assert!(f.v.is_unitary(1e-12));
    }

    #[test]
    fn qr_factorizes() {
        let a = ComplexMatrix::new(
            3,
            3,
            vec![
                c(1.0, 1.0), c(0.5, 0.0), c(0.0, -2.0),
                c(0.0, 0.3), c(2.0, 0.0), c(1.0, 1.0),
                c(-1.0, 0.0), c(0.0, 0.0), c(0.4, 0.7),
            ],
        )
        .unwrap();
        let (q, r) = qr(&a);
        assert!(q.is_unitary(1e-13));
        assert!(q.matmul(&r).approx_eq(&a, 1e-13));
        for i in 1..3 {
            for j in 0..i {
                assert!(r.get(i, j).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        let a = ComplexMatrix::new(2, 2, vec![c(1.0, 1.0), c(2.0, 0.0), c(0.0, -1.0), c(1.0, 0.0)]).unwrap();
        let inv = inverse(&a).unwrap();
        assert!(a.matmul(&inv).approx_eq(&ComplexMatrix::identity(2), 1e-13));
    }

    #[test]
    fn inverse_rejects_singular() {
        let a = ComplexMatrix::new(2, 2, vec![c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)]).unwrap();
        assert!(matches!(inverse(&a), Err(LinalgError::SingularMatrix)));
    }

    #[test]
    fn determinant_triangular() {
        let a = ComplexMatrix::new(2, 2, vec![c(2.0, 0.0), c(5.0, 1.0), c(0.0, 0.0), c(3.0, 0.0)]).unwrap();
        assert!((determinant(&a) - c(6.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn sqrt_psd_squares_back() {
        let h = ComplexMatrix::new(2, 2, vec![c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(3.0, 0.0)]).unwrap();
        let s = sqrt_psd(&h);
        assert!(s.matmul(&s).approx_eq(&h, 1e-12));
    }
}
