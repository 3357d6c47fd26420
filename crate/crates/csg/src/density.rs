//! k-nearest-neighbor hypercube density estimation.
//!
//! A class-conditional density at a query point is estimated from the
//! Chebyshev (L-infinity) radius `r` enclosing the `k` nearest members of the
//! class: the enclosing hypercube has volume `V = (2r)^d`, and the density is
//! `k / (M V)` for a pool of `M` points. The per-query densities against all
//! `K` classes are normalized to sum 1, giving a posterior under a uniform
//! class prior; that normalization makes the result invariant to translating
//! or uniformly rescaling the embedding.

use std::sync::atomic::{AtomicU64, Ordering};

use ndarray::{ArrayView1, ArrayView2};

use crate::dataset::EmbeddedDataset;
use crate::error::{Error, Result};

/// Tuning knobs for the hypercube estimator.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct DensityParams {
    /// Neighbors defining the hypercube radius.
    pub k: usize,
    /// Radius floor so coincident points yield a large finite density
    /// instead of an infinite one.
    pub epsilon_radius: f64,
}

impl Default for DensityParams {
    fn default() -> Self {
        DensityParams {
            k: 3,
            epsilon_radius: 1e-12,
        }
    }
}

impl DensityParams {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidParam(
                "neighbor count k must be at least 1".into(),
            ));
        }
        if !(self.epsilon_radius.is_finite() && self.epsilon_radius > 0.0) {
            return Err(Error::InvalidParam(format!(
                "epsilon_radius must be positive, got {}",
                self.epsilon_radius
            )));
        }
        Ok(())
    }
}

/// Normalized class likelihoods at one query point: non-negative, sum 1.
#[derive(Debug, Clone, PartialEq)]
pub struct LikelihoodVector {
    pub values: Vec<f64>,
}

/// Running count of hypercube-density evaluations; one likelihood vector
/// costs exactly K. The total is deterministic regardless of thread
/// interleaving.
#[derive(Debug, Default)]
pub struct EvalCounter(AtomicU64);

impl EvalCounter {
    pub fn new() -> Self {
        EvalCounter(AtomicU64::new(0))
    }

    pub fn add(&self, n: u64) {
        self.0.fetch_add(n, Ordering::Relaxed);
    }

    pub fn get(&self) -> u64 {
        self.0.load(Ordering::Relaxed)
    }
}

fn chebyshev(a: ArrayView1<f64>, b: ArrayView1<f64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
}

/// Chebyshev radius from `query` to its k-th nearest point among
/// `members` (row indices into `points`), skipping `exclude` if present.
///
/// Ties are broken by smaller row index. If fewer than `k` points remain
/// after exclusion, `k` is clamped; the effective count is returned
/// alongside the radius.
pub fn knn_radius(
    query: ArrayView1<f64>,
    points: ArrayView2<f64>,
    members: &[usize],
    k: usize,
    exclude: Option<usize>,
) -> Result<(f64, usize)> {
    let mut dists: Vec<(f64, usize)> = members
        .iter()
        .filter(|&&row| Some(row) != exclude)
        .map(|&row| (chebyshev(query, points.row(row)), row))
        .collect();
    if dists.is_empty() {
        return Err(Error::EmptyClassPool {
            class: exclude.unwrap_or(0),
        });
    }
    let k_eff = k.min(dists.len());
    let cmp = |a: &(f64, usize), b: &(f64, usize)| {
        a.0.partial_cmp(&b.0)
            .expect("finite distances")
            .then(a.1.cmp(&b.1))
    };
    let (_, kth, _) = dists.select_nth_unstable_by(k_eff - 1, cmp);
    Ok((kth.0, k_eff))
}

/// Hypercube density `k / (M V)` with `V = (2 max(r, epsilon))^d`.
///
/// An infinite density (radius at the epsilon floor in high dimension, where
/// `V` underflows) is clamped to `f64::MAX` so downstream normalization
/// stays finite. `V` can still overflow to infinity for huge radii in high
/// dimension; the resulting zero is left for the caller, which rejects the
/// vector only if every class degenerates at once.
pub fn hypercube_density(
    r: f64,
    k: usize,
    m_class: usize,
    d: usize,
    params: &DensityParams,
) -> f64 {
    assert!(m_class >= 1 && d >= 1 && k >= 1);
    let side = 2.0 * r.max(params.epsilon_radius);
    let volume = side.powi(d as i32);
    let density = k as f64 / (m_class as f64 * volume);
    if density.is_infinite() {
        f64::MAX
    } else {
        density
    }
}

/// Normalized class likelihoods at `query` against arbitrary per-class pools
/// of rows in `points`.
///
/// Each pool is one class's candidate neighbors; `exclude` removes the
/// query's own row from whichever pool contains it. Adds K to `counter`.
pub fn class_likelihood_in_pools(
    query: ArrayView1<f64>,
    points: ArrayView2<f64>,
    pools: &[Vec<usize>],
    params: &DensityParams,
    exclude: Option<usize>,
    counter: &EvalCounter,
) -> Result<LikelihoodVector> {
    params.validate()?;
    let d = points.ncols();
    let k_classes = pools.len();
    let mut raw = Vec::with_capacity(k_classes);
    for pool in pools {
        let (r, k_eff) = knn_radius(query, points, pool, params.k, exclude)?;
        let m_class = pool.len() - pool.iter().filter(|&&row| Some(row) == exclude).count();
        raw.push(hypercube_density(r, k_eff, m_class, d, params));
    }
    counter.add(k_classes as u64);

    // Scale by the max before summing so a pair of f64::MAX entries cannot
    // overflow the normalizer.
    let max = raw.iter().cloned().fold(0.0f64, f64::max);
    if max == 0.0 {
        return Err(Error::DegenerateDensities { classes: k_classes });
    }
    let scaled: Vec<f64> = raw.iter().map(|&v| v / max).collect();
    // Sum in value order rather than class order so the normalizer, and with
    // it the whole vector, is bitwise invariant under class reindexing.
    let mut ordered = scaled.clone();
    ordered.sort_unstable_by(f64::total_cmp);
    let sum: f64 = ordered.iter().sum();
    let values = scaled.into_iter().map(|v| v / sum).collect();
    Ok(LikelihoodVector { values })
}

/// Normalized class likelihoods at `query` against the full classes of `ds`.
pub fn class_likelihood_vector(
    query: ArrayView1<f64>,
    ds: &EmbeddedDataset,
    params: &DensityParams,
    exclude: Option<usize>,
    counter: &EvalCounter,
) -> Result<LikelihoodVector> {
    let pools: Vec<Vec<usize>> = (0..ds.n_classes())
        .map(|c| ds.class_members(c).to_vec())
        .collect();
    class_likelihood_in_pools(query, ds.points(), &pools, params, exclude, counter)
}
