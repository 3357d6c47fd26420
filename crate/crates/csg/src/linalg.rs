//! Dense symmetric eigensolver: cyclic Jacobi rotations.
//!
//! The matrices here are class-by-class (K x K, with K rarely beyond a few
//! hundred), so an O(K^3)-per-sweep Jacobi iteration is fast enough and buys
//! bit-stable, dependency-free results that are easy to check against
//! independent references.

use ndarray::Array2;

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;
const SYMMETRY_TOL: f64 = 1e-12;
const OFF_DIAG_TOL: f64 = 1e-12;

fn frobenius(a: &Array2<f64>) -> f64 {
    a.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn off_diagonal_norm(a: &Array2<f64>) -> f64 {
    let n = a.nrows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)] * a[(i, j)];
            }
        }
    }
    sum.sqrt()
}

fn check_symmetric(a: &Array2<f64>) -> Result<()> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::ShapeMismatch(format!(
            "eigensolver needs a square matrix, got {}x{}",
            n,
            a.ncols()
        )));
    }
    let mut max_dev = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            max_dev = max_dev.max((a[(i, j)] - a[(j, i)]).abs());
        }
    }
    if max_dev > SYMMETRY_TOL {
        return Err(Error::AsymmetricMatrix { max_dev });
    }
    Ok(())
}

/// Full eigendecomposition of a symmetric matrix.
///
/// Returns eigenvalues ascending and the matching eigenvectors as columns of
/// an orthogonal matrix. Iterates cyclic Jacobi sweeps until the
/// off-diagonal Frobenius norm falls below `1e-12 * ||A||_F`, erroring out
/// after 100 sweeps (unreachable for symmetric input in practice; Jacobi
/// converges quadratically).
pub fn symmetric_eigen(a: &Array2<f64>) -> Result<(Vec<f64>, Array2<f64>)> {
    check_symmetric(a)?;
    let n = a.nrows();
    let norm = frobenius(a);
    let mut m = a.clone();
    let mut v = Array2::eye(n);

    if norm > 0.0 {
        let mut converged = false;
        let mut residual = off_diagonal_norm(&m);
        for _sweep in 0..MAX_SWEEPS {
            if residual <= OFF_DIAG_TOL * norm {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = m[(p, q)];
                    if apq == 0.0 {
                        continue;
                    }
                    // Rotation angle zeroing A[p][q]: t solves
                    // t^2 + 2*theta*t - 1 = 0 with the smaller-|t| root.
                    let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                    let t = if theta >= 0.0 {
                        1.0 / (theta + (1.0 + theta * theta).sqrt())
                    } else {
                        1.0 / (theta - (1.0 + theta * theta).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    // A <- G' A G, columns then rows.
                    for i in 0..n {
                        let (aip, aiq) = (m[(i, p)], m[(i, q)]);
                        m[(i, p)] = c * aip - s * aiq;
                        m[(i, q)] = s * aip + c * aiq;
                    }
                    for i in 0..n {
                        let (api, aqi) = (m[(p, i)], m[(q, i)]);
                        m[(p, i)] = c * api - s * aqi;
                        m[(q, i)] = s * api + c * aqi;
                    }
                    for i in 0..n {
                        let (vip, viq) = (v[(i, p)], v[(i, q)]);
                        v[(i, p)] = c * vip - s * viq;
                        v[(i, q)] = s * vip + c * viq;
                    }
                }
            }
            residual = off_diagonal_norm(&m);
        }
        if !converged && residual > OFF_DIAG_TOL * norm {
            return Err(Error::EigenNoConvergence {
                sweeps: MAX_SWEEPS,
                residual,
            });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        m[(i, i)]
            .partial_cmp(&m[(j, j)])
            .expect("finite")
            .then(i.cmp(&j))
    });
    let values: Vec<f64> = order.iter().map(|&i| m[(i, i)]).collect();
    let mut vectors = Array2::zeros((n, n));
    for (new, &old) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, new)] = v[(i, old)];
        }
    }
    Ok((values, vectors))
}

/// Ascending eigenvalues of a symmetric matrix.
pub fn eigenvalues_symmetric(a: &Array2<f64>) -> Result<Vec<f64>> {
    symmetric_eigen(a).map(|(values, _)| values)
}
