//! Laplacian spectrum of the class graph and the CSG score.
//!
//! The adjacency `W` from [`crate::similarity`] is treated as a weighted
//! graph on the `K` classes. Its Laplacian `L = D - W` is positive
//! semi-definite with a zero eigenvalue for the constant vector; the
//! remaining eigenvalues measure how expensive it is to cut the graph apart.
//! Eigengaps are normalized by their position — the gap above `lambda_i`
//! (zero-based) is divided by `K - i`, its maximum attainable value — and
//! the CSG score is the sum of the running maximum of those normalized gaps.
//! Two exact anchors follow: `W = I` (isolated classes) gives CSG = 0 and
//! `W = J` (all-ones, indistinguishable classes) gives CSG = `K - 1`.

use std::time::Instant;

use ndarray::Array2;

use crate::dataset::EmbeddedDataset;
use crate::error::{Error, Result};
use crate::linalg::eigenvalues_symmetric;
use crate::report::ComplexityReport;
use crate::similarity::{bray_curtis_adjacency, monte_carlo_similarity, SimilarityParams};

/// Eigenvalue clamp: anything below `-NEG_EIGEN_TOL` is a hard error,
/// anything in `[-NEG_EIGEN_TOL, 0)` is numerical noise set to 0.
const NEG_EIGEN_TOL: f64 = 1e-8;

/// Ascending Laplacian eigenvalues plus their normalized gaps.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// `lambda_0 <= ... <= lambda_{K-1}`, clamped non-negative.
    pub eigenvalues: Vec<f64>,
    /// `gaps[i] = (lambda_{i+1} - lambda_i) / (K - i)`, length `K - 1`.
    pub gaps: Vec<f64>,
}

/// CSG score with the intermediates needed to audit it.
#[derive(Debug, Clone, PartialEq)]
pub struct CsgResult {
    /// In `[0, K-1]`.
    pub csg: f64,
    pub spectrum: Spectrum,
    /// Running maximum of the gaps; sums to `csg`.
    pub cummax_profile: Vec<f64>,
}

/// Graph Laplacian `L = D - W` with `D_i = sum_j w_ij`.
///
/// The diagonal of `W` cancels: `L_ii = sum_{j != i} w_ij`. Input must be
/// symmetric to 1e-12.
pub fn laplacian(w: &Array2<f64>) -> Result<Array2<f64>> {
    let k = w.nrows();
    if w.ncols() != k {
        return Err(Error::ShapeMismatch(format!(
            "adjacency must be square, got {}x{}",
            k,
            w.ncols()
        )));
    }
    let mut max_dev = 0.0f64;
    for i in 0..k {
        for j in (i + 1)..k {
            max_dev = max_dev.max((w[(i, j)] - w[(j, i)]).abs());
        }
    }
    if max_dev > 1e-12 {
        return Err(Error::AsymmetricMatrix { max_dev });
    }
    let mut l = Array2::zeros((k, k));
    for i in 0..k {
        let degree: f64 = (0..k).map(|j| w[(i, j)]).sum();
        for j in 0..k {
            l[(i, j)] = if i == j {
                degree - w[(i, j)]
            } else {
                -w[(i, j)]
            };
        }
    }
    Ok(l)
}

/// Position-normalized eigengaps of an ascending spectrum.
///
/// With zero-based indexing, the gap above `lambda_i` can be at most `K - i`
/// (it takes a merged component of at least `K - i` classes to push
/// `lambda_{i+1}` that high), so dividing by `K - i` maps every gap into
/// `[0, 1]`.
pub fn normalized_eigengaps(eigenvalues: &[f64]) -> Vec<f64> {
    let k = eigenvalues.len();
    (0..k.saturating_sub(1))
        .map(|i| ((eigenvalues[i + 1] - eigenvalues[i]) / (k - i) as f64).max(0.0))
        .collect()
}

/// Sum of the running maximum of the gaps, plus the profile itself.
pub fn csg_score(gaps: &[f64]) -> (f64, Vec<f64>) {
    let mut running = 0.0f64;
    let profile: Vec<f64> = gaps
        .iter()
        .map(|&g| {
            running = running.max(g);
            running
        })
        .collect();
    (profile.iter().sum(), profile)
}

/// Spectrum of the Laplacian of an adjacency matrix.
pub fn spectrum_from_adjacency(w: &Array2<f64>) -> Result<Spectrum> {
    let l = laplacian(w)?;
    let mut eigenvalues = eigenvalues_symmetric(&l)?;
    for v in &mut eigenvalues {
        if *v < -NEG_EIGEN_TOL {
            return Err(Error::NegativeEigenvalue { value: *v });
        }
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    let gaps = normalized_eigengaps(&eigenvalues);
    Ok(Spectrum { eigenvalues, gaps })
}

/// CSG of an adjacency matrix injected directly (no Monte-Carlo stage).
pub fn csg_from_adjacency(w: &Array2<f64>) -> Result<CsgResult> {
    let spectrum = spectrum_from_adjacency(w)?;
    let (csg, cummax_profile) = csg_score(&spectrum.gaps);
    Ok(CsgResult {
        csg,
        spectrum,
        cummax_profile,
    })
}

/// The full complexity pipeline: similarity, adjacency, spectrum, score.
///
/// Every intermediate lands in the report so the score can be audited or
/// recomputed offline.
pub fn csg_pipeline(ds: &EmbeddedDataset, params: &SimilarityParams) -> Result<ComplexityReport> {
    let start = Instant::now();
    let s = monte_carlo_similarity(ds, params)?;
    let w = bray_curtis_adjacency(&s.entries)?;
    let result = csg_from_adjacency(&w.entries)?;
    let wall_time_seconds = start.elapsed().as_secs_f64();
    Ok(ComplexityReport::assemble(
        ds,
        params,
        &s,
        &w,
        &result,
        wall_time_seconds,
    ))
}
