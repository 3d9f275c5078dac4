//! Small dense decompositions written against [`Real`] so they run unchanged in
//! double-double. Matrices here are at most 6x6; Jacobi methods are chosen for
//! their accuracy rather than speed.

use nalgebra::DMatrix;

use crate::real::Real;

const MAX_SWEEPS: usize = 80;

/// Lower-triangular `L` with `L Lᵀ = a`, or `None` if `a` is not positive definite.
pub fn cholesky<T: Real>(a: &DMatrix<T>) -> Option<DMatrix<T>> {
    let n = a.nrows();
    let mut l = DMatrix::<T>::zeros(n, n);
    for j in 0..n {
        let mut diag = a[(j, j)];
        for k in 0..j {
            diag -= l[(j, k)] * l[(j, k)];
        }
        if !(diag > T::zero()) {
            return None;
        }
        let ljj = diag.sqrt();
        l[(j, j)] = ljj;
        for i in (j + 1)..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / ljj;
        }
    }
    Some(l)
}

/// Eigenvalues of a symmetric matrix, ascending (cyclic Jacobi).
pub fn symmetric_eigenvalues<T: Real>(a: &DMatrix<T>) -> Vec<T> {
    let n = a.nrows();
    let mut m = a.clone();
    let tol = T::from_f64(T::UNIT_ROUNDOFF);
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                if apq.is_zero() {
                    continue;
                }
                let app = m[(p, p)];
                let aqq = m[(q, q)];
                if apq.abs() <= tol * (app.abs() * aqq.abs()).sqrt() {
                    continue;
                }
                rotated = true;
                let (c, s) = jacobi_rotation(app, aqq, apq);
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut eig: Vec<T> = (0..n).map(|i| m[(i, i)]).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).expect("NaN eigenvalue"));
    eig
}

/// Singular values, ascending (one-sided Hestenes-Jacobi on columns).
pub fn singular_values<T: Real>(a: &DMatrix<T>) -> Vec<T> {
    let (rows, cols) = a.shape();
    let mut u = a.clone();
    let tol = T::from_f64(T::UNIT_ROUNDOFF * rows as f64);
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let (mut alpha, mut beta, mut gamma) = (T::zero(), T::zero(), T::zero());
                for i in 0..rows {
                    alpha += u[(i, p)] * u[(i, p)];
                    beta += u[(i, q)] * u[(i, q)];
                    gamma += u[(i, p)] * u[(i, q)];
                }
                if gamma.is_zero() || gamma.abs() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let (c, s) = jacobi_rotation(alpha, beta, gamma);
                for i in 0..rows {
                    let up = u[(i, p)];
                    let uq = u[(i, q)];
                    u[(i, p)] = c * up - s * uq;
                    u[(i, q)] = s * up + c * uq;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<T> = (0..cols)
        .map(|j| {
            let mut norm2 = T::zero();
            for i in 0..rows {
                norm2 += u[(i, j)] * u[(i, j)];
            }
            norm2.sqrt()
        })
        .collect();
    sv.sort_by(|x, y| x.partial_cmp(y).expect("NaN singular value"));
    sv
}

/// Rotation `(c, s)` annihilating the off-diagonal of `[[app, apq], [apq, aqq]]`.
fn jacobi_rotation<T: Real>(app: T, aqq: T, apq: T) -> (T, T) {
    let two = T::from_f64(2.0);
    let zeta = (aqq - app) / (two * apq);
    let one = T::one();
    let t = if zeta >= T::zero() {
        one / (zeta + (one + zeta * zeta).sqrt())
    } else {
        -one / (-zeta + (one + zeta * zeta).sqrt())
    };
    let c = one / (one + t * t).sqrt();
    (c, c * t)
}

/// Largest absolute entry.
pub fn max_abs<T: Real>(a: &DMatrix<T>) -> T {
    a.iter().fold(T::zero(), |acc, &x| acc.max(x.abs()))
}
