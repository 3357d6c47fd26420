//! Monte-Carlo inter-class similarity and the Bray-Curtis class graph.
//!
//! Row `i` of the similarity matrix `S` answers: for a random member of
//! class `i`, how is likelihood distributed across the `K` classes? Each row
//! is the average of normalized likelihood vectors over up to `M` stratified
//! sample queries of the class; the densities themselves are always
//! estimated against the full class memberships, so `M` controls only the
//! Monte-Carlo resolution, not the sharpness of the estimator. `S` is
//! generally asymmetric; the adjacency `W` compares classes by their
//! *columns* (how every class sees class `i`) under the Bray-Curtis overlap,
//! yielding a symmetric weighted graph with unit diagonal.

use ndarray::Array2;
use rayon::prelude::*;

use crate::dataset::{stratified_sample, EmbeddedDataset};
use crate::density::{class_likelihood_in_pools, DensityParams, EvalCounter};
use crate::error::{Error, Result};

/// Tuning knobs for the Monte-Carlo similarity estimate.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SimilarityParams {
    /// Samples drawn per class (clamped to the class size).
    pub m: usize,
    /// Root seed; all sampling is a pure function of it.
    pub seed: u64,
    pub density: DensityParams,
}

impl Default for SimilarityParams {
    fn default() -> Self {
        SimilarityParams {
            m: 100,
            seed: 0,
            density: DensityParams::default(),
        }
    }
}

impl SimilarityParams {
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::InvalidParam(
                "samples per class must be at least 1".into(),
            ));
        }
        self.density.validate()
    }
}

/// The K x K Monte-Carlo similarity estimate. Rows are non-negative and sum
/// to 1; the matrix is not symmetric in general.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    pub entries: Array2<f64>,
    /// Per-class sample counts actually used (`min(M, |C_i|)`).
    pub effective_m: Vec<usize>,
    /// Total hypercube-density evaluations: `K * sum(effective_m)`.
    pub evaluations: u64,
}

/// Symmetric class-overlap graph: unit diagonal, entries in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct AdjacencyMatrix {
    pub entries: Array2<f64>,
}

/// Estimate the similarity matrix by stratified Monte-Carlo.
///
/// Per-class sampling uses an RNG substream keyed by the class *name*, so
/// relabeling classes by a permutation conjugates the result exactly.
/// Classes are evaluated in parallel but each row accumulates its queries in
/// a fixed order, so the entries are bit-identical for a given seed
/// regardless of thread count.
pub fn monte_carlo_similarity(
    ds: &EmbeddedDataset,
    params: &SimilarityParams,
) -> Result<SimilarityMatrix> {
    params.validate()?;
    let k = ds.n_classes();
    let queries = stratified_sample(ds, params.m, params.seed)?;
    let effective_m: Vec<usize> = queries.iter().map(Vec::len).collect();
    // Density pools are the entire classes; only the queries are sampled.
    let pools: Vec<Vec<usize>> = (0..k).map(|c| ds.class_members(c).to_vec()).collect();
    let counter = EvalCounter::new();

    let rows: Vec<Vec<f64>> = (0..k)
        .into_par_iter()
        .map(|i| -> Result<Vec<f64>> {
            let mut acc = vec![0.0f64; k];
            for &q in &queries[i] {
                let lv = class_likelihood_in_pools(
                    ds.point(q),
                    ds.points(),
                    &pools,
                    &params.density,
                    Some(q),
                    &counter,
                )?;
                for (a, v) in acc.iter_mut().zip(&lv.values) {
                    *a += v;
                }
            }
            let m = queries[i].len() as f64;
            for a in &mut acc {
                *a /= m;
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;

    let mut entries = Array2::zeros((k, k));
    for (i, row) in rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            entries[(i, j)] = v;
        }
    }
    Ok(SimilarityMatrix {
        entries,
        effective_m,
        evaluations: counter.get(),
    })
}

/// Bray-Curtis adjacency over the columns of a non-negative square matrix.
///
/// `w_ij = 1 - sum_k |S_ki - S_kj| / sum_k (S_ki + S_kj)`, with a pair of
/// all-zero columns defined as identical (`w = 1`).
pub fn bray_curtis_adjacency(entries: &Array2<f64>) -> Result<AdjacencyMatrix> {
    let k = entries.nrows();
    if entries.ncols() != k {
        return Err(Error::ShapeMismatch(format!(
            "similarity matrix must be square, got {}x{}",
            k,
            entries.ncols()
        )));
    }
    for ((i, j), &v) in entries.indexed_iter() {
        if v < 0.0 || v.is_nan() {
            return Err(Error::NegativeSimilarity { row: i, col: j });
        }
    }
    let mut w = Array2::zeros((k, k));
    for i in 0..k {
        w[(i, i)] = 1.0;
        for j in (i + 1)..k {
            let mut num = 0.0;
            let mut den = 0.0;
            for r in 0..k {
                let (a, b) = (entries[(r, i)], entries[(r, j)]);
                num += (a - b).abs();
                den += a + b;
            }
            let wij = if den == 0.0 { 1.0 } else { 1.0 - num / den };
            w[(i, j)] = wij;
            w[(j, i)] = wij;
        }
    }
    Ok(AdjacencyMatrix { entries: w })
}
