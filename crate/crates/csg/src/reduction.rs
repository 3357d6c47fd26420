//! How stable is the complexity score when the dataset shrinks?
//!
//! A sweep subsamples every class down to a series of ratios, re-runs the
//! full pipeline at each size (several times, with derived seeds, to expose
//! Monte-Carlo spread), and reports CSG mean and sample standard deviation
//! per ratio. A score that holds steady down to small ratios certifies that
//! the smaller dataset is as informative; a sharp rise marks where scarcity
//! starts inflating the overlap estimates.

use serde::{Deserialize, Serialize};

use crate::dataset::{subsample_ratio, EmbeddedDataset};
use crate::error::{Error, Result};
use crate::report::ComplexityReport;
use crate::seeding::derive_seed;
use crate::similarity::SimilarityParams;
use crate::spectral::csg_pipeline;

/// One ratio of the sweep: the subsample sizes and one pipeline report per
/// repeat.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub ratio: f64,
    /// Per-class member counts after subsampling (identical across repeats).
    pub counts_per_class: Vec<usize>,
    pub reports: Vec<ComplexityReport>,
    pub csg_mean: f64,
    /// Sample standard deviation over repeats; 0 for a single repeat.
    pub csg_std: f64,
}

/// A full reduction sweep, largest ratio first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub points: Vec<SweepPoint>,
    pub seed: u64,
    pub repeats: usize,
    pub params: SimilarityParams,
}

/// Run the pipeline over per-class subsamples at each ratio.
///
/// Ratios must be strictly decreasing in (0, 1]. Subsample seeds are derived
/// from `seed` per (ratio, repeat), so the sweep is a pure function of its
/// arguments; the pipeline itself keeps `params.seed`, which makes the
/// ratio-1.0 point identical to running [`csg_pipeline`] directly.
pub fn sweep(
    ds: &EmbeddedDataset,
    ratios: &[f64],
    params: &SimilarityParams,
    repeats: usize,
    seed: u64,
) -> Result<SweepResult> {
    if ratios.is_empty() {
        return Err(Error::InvalidParam("sweep needs at least one ratio".into()));
    }
    for pair in ratios.windows(2) {
        if pair[1] >= pair[0] {
            return Err(Error::InvalidParam(format!(
                "ratios must be strictly decreasing, got {} then {}",
                pair[0], pair[1]
            )));
        }
    }
    if repeats == 0 {
        return Err(Error::InvalidParam("repeats must be at least 1".into()));
    }
    params.validate()?;

    let mut points = Vec::with_capacity(ratios.len());
    for (pi, &ratio) in ratios.iter().enumerate() {
        let mut reports = Vec::with_capacity(repeats);
        let mut counts_per_class = Vec::new();
        for rep in 0..repeats {
            let sub_seed = derive_seed(seed, &format!("sweep-point{pi}-rep{rep}"));
            let sub = subsample_ratio(ds, ratio, sub_seed)?;
            if rep == 0 {
                counts_per_class = sub.class_sizes();
            }
            reports.push(csg_pipeline(&sub, params)?);
        }
        let n = reports.len() as f64;
        let csg_mean = reports.iter().map(|r| r.csg).sum::<f64>() / n;
        let csg_std = if reports.len() > 1 {
            let ss: f64 = reports.iter().map(|r| (r.csg - csg_mean).powi(2)).sum();
            (ss / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        points.push(SweepPoint {
            ratio,
            counts_per_class,
            reports,
            csg_mean,
            csg_std,
        });
    }
    Ok(SweepResult {
        points,
        seed,
        repeats,
        params: params.clone(),
    })
}

impl SweepResult {
    /// `ratio,count_per_class,csg_mean,csg_std` rows, largest ratio first.
    /// With unbalanced classes the count column carries the smallest class;
    /// the JSON form keeps the full per-class vector.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("ratio,count_per_class,csg_mean,csg_std\n");
        for p in &self.points {
            let count = p.counts_per_class.iter().min().copied().unwrap_or(0);
            out.push_str(&format!(
                "{},{count},{},{}\n",
                p.ratio, p.csg_mean, p.csg_std
            ));
        }
        out
    }
}
