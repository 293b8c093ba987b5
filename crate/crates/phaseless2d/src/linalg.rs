//! Dense complex linear algebra kernels: a cyclic Jacobi eigensolver for
//! Hermitian matrices, LU-backed solves, and a (full) GMRES iteration.

use crate::{Complex, Error, Result};
use nalgebra::{DMatrix, DVector};

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// The input is re-Hermitized as (A + A*)/2 before the sweep so that
/// floating-point drift in upstream products cannot break the symmetry
/// assumptions. Returns eigenvalues in descending order with orthonormal
/// eigenvectors as matching columns, each column phase-fixed so its first
/// nonnegligible component has positive real part.
pub fn hermitian_eigen(a: &DMatrix<Complex>) -> Result<(Vec<f64>, DMatrix<Complex>)> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::ShapeMismatch(format!("{}x{} not square", a.nrows(), a.ncols())));
    }
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = 0.5 * (a[(i, j)] + a[(j, i)].conj());
        }
    }
    let mut v = DMatrix::<Complex>::identity(n, n);
    let norm = m.norm().max(f64::MIN_POSITIVE);

    for _sweep in 0..60 {
        // off-diagonal Frobenius mass
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m[(p, q)].norm_sqr();
            }
        }
        if (2.0 * off).sqrt() <= 1e-13 * norm {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let g = m[(p, q)];
                let absg = g.norm();
                if absg <= 1e-300 {
                    continue;
                }
                let u = g / absg; // phase
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let tau = (aqq - app) / (2.0 * absg);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let su = s * u;
                let suc = s * u.conj();
                // A <- A U, columns p and q (U_pp=c, U_pq=s, U_qp=-s conj(u), U_qq=c conj(u))
                for k in 0..n {
                    let akp = m[(k, p)];
                    let akq = m[(k, q)];
                    m[(k, p)] = c * akp - suc * akq;
                    m[(k, q)] = s * akp + c * u.conj() * akq;
                }
                // A <- U* A, rows p and q
                for k in 0..n {
                    let apk = m[(p, k)];
                    let aqk = m[(q, k)];
                    m[(p, k)] = c * apk - su * aqk;
                    m[(q, k)] = s * apk + c * u * aqk;
                }
                m[(p, q)] = Complex::new(0.0, 0.0);
                m[(q, p)] = Complex::new(0.0, 0.0);
                m[(p, p)] = Complex::new(m[(p, p)].re, 0.0);
                m[(q, q)] = Complex::new(m[(q, q)].re, 0.0);
                // V <- V U
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - suc * vkq;
                    v[(k, q)] = s * vkp + c * u.conj() * vkq;
                }
            }
        }
    }
    let mut off = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            off += m[(p, q)].norm_sqr();
        }
    }
    if (2.0 * off).sqrt() > 1e-10 * norm {
        return Err(Error::Eigen(format!(
            "Jacobi sweep did not converge: off-diagonal {:.3e} vs norm {:.3e}",
            (2.0 * off).sqrt(),
            norm
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    let eigs: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    order.sort_by(|&i, &j| eigs[j].partial_cmp(&eigs[i]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| eigs[i]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        let mut column = v.column(i).clone_owned();
        // deterministic phase: first nonnegligible component real positive
        let maxmod = column.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if let Some(z) = column.iter().find(|z| z.norm() > 1e-12 * maxmod) {
            let phase = z.conj() / z.norm();
            column *= phase;
        }
        vectors.set_column(col, &column);
    }
    Ok((values, vectors))
}

/// Solve A X = B for a dense complex square A by partial-pivot LU.
pub fn lu_solve(a: &DMatrix<Complex>, b: &DMatrix<Complex>) -> Result<DMatrix<Complex>> {
    let lu = a.clone().lu();
    lu.solve(b).ok_or_else(|| Error::SingularSystem("LU solve failed (singular matrix)".into()))
}

/// Largest singular value, via the Jacobi eigensolver on A* A.
pub fn spectral_norm(a: &DMatrix<Complex>) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    let ata = a.adjoint() * a;
    match hermitian_eigen(&ata) {
        Ok((vals, _)) => vals.first().copied().unwrap_or(0.0).max(0.0).sqrt(),
        Err(_) => a.norm(), // Frobenius upper bound as a last resort
    }
}

/// Full GMRES for `op(x) = b`; returns (solution, relative residual, iterations).
pub fn gmres<F>(op: F, b: &DVector<Complex>, tol: f64, max_iter: usize) -> Result<(DVector<Complex>, f64, usize)>
where
    F: Fn(&DVector<Complex>) -> DVector<Complex>,
{
    let n = b.len();
    let bnorm = b.norm();
    if bnorm == 0.0 {
        return Ok((DVector::zeros(n), 0.0, 0));
    }
    let m = max_iter.min(n);
    let mut basis: Vec<DVector<Complex>> = Vec::with_capacity(m + 1);
    let mut h = vec![vec![Complex::new(0.0, 0.0); m]; m + 1];
    let mut cs = vec![Complex::new(0.0, 0.0); m];
    let mut sn = vec![Complex::new(0.0, 0.0); m];
    let mut g = vec![Complex::new(0.0, 0.0); m + 1];

    // x0 = 0
    basis.push(b / Complex::new(bnorm, 0.0));
    g[0] = Complex::new(bnorm, 0.0);
    let mut iters = 0;
    let mut rel = 1.0;

    for j in 0..m {
        let mut w = op(&basis[j]);
        // modified Gram-Schmidt
        for (i, q) in basis.iter().enumerate() {
            let hij = q.dotc(&w);
            h[i][j] = hij;
            w -= q * hij;
        }
        let hnext = w.norm();
        h[j + 1][j] = Complex::new(hnext, 0.0);
        // Givens rotations on the new column
        for i in 0..j {
            let t = cs[i].conj() * h[i][j] + sn[i].conj() * h[i + 1][j];
            h[i + 1][j] = -sn[i] * h[i][j] + cs[i] * h[i + 1][j];
            h[i][j] = t;
        }
        let (c, s) = givens(h[j][j], h[j + 1][j]);
        cs[j] = c;
        sn[j] = s;
        h[j][j] = c.conj() * h[j][j] + s.conj() * h[j + 1][j];
        h[j + 1][j] = Complex::new(0.0, 0.0);
        g[j + 1] = -sn[j] * g[j];
        g[j] = cs[j].conj() * g[j];
        iters = j + 1;
        rel = g[j + 1].norm() / bnorm;
        if rel <= tol || hnext < 1e-300 {
            break;
        }
        basis.push(w / Complex::new(hnext, 0.0));
    }

    // back substitution
    let k = iters;
    let mut y = vec![Complex::new(0.0, 0.0); k];
    for i in (0..k).rev() {
        let mut acc = g[i];
        for (jj, yj) in y.iter().enumerate().take(k).skip(i + 1) {
            acc -= h[i][jj] * yj;
        }
        y[i] = acc / h[i][i];
    }
    let mut x = DVector::zeros(n);
    for (i, yi) in y.iter().enumerate() {
        x += &basis[i] * *yi;
    }
    Ok((x, rel, iters))
}

fn givens(a: Complex, b: Complex) -> (Complex, Complex) {
    if b.norm() == 0.0 {
        (Complex::new(1.0, 0.0), Complex::new(0.0, 0.0))
    } else {
        let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
        (a / r, b / r)
    }
}
