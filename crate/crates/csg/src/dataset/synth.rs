//! Synthetic Gaussian-blob datasets and label-swap noise injection.

use ndarray::Array2;
use rand::seq::index;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::seeding::class_stream;

use super::EmbeddedDataset;

/// Deterministic anchor direction for class `c` in `dim` dimensions.
///
/// Anchors cycle through the coordinate axes with alternating sign and a
/// magnitude that grows once each +/- cycle is exhausted:
/// `+e0, +e1, ..., -e0, -e1, ..., +2*e0, ...`. Any two anchors are at least
/// distance 1 apart, so `separation * sigma` lower-bounds the nearest
/// inter-centroid distance.
fn anchor(c: usize, dim: usize) -> Vec<f64> {
    let axis = c % dim;
    let ring = c / dim;
    let magnitude = (1 + ring / 2) as f64;
    let sign = if ring.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut u = vec![0.0; dim];
    u[axis] = sign * magnitude;
    u
}

/// Generate `k` isotropic Gaussian blobs of `per_class` points each.
///
/// Class `c` is N(separation * sigma * anchor(c), sigma^2 I). Class names are
/// `class_0`, `class_1`, ... zero-padded so lexicographic order matches
/// numeric order for any `k`.
pub fn generate_blobs(
    k: usize,
    per_class: usize,
    dim: usize,
    separation: f64,
    sigma: f64,
    seed: u64,
) -> Result<EmbeddedDataset> {
    if k < 2 {
        return Err(Error::InvalidParam("need at least 2 classes".into()));
    }
    if per_class == 0 {
        return Err(Error::InvalidParam(
            "per-class count must be at least 1".into(),
        ));
    }
    if dim == 0 {
        return Err(Error::InvalidParam("dimension must be at least 1".into()));
    }
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidParam(format!(
            "sigma must be positive, got {sigma}"
        )));
    }
    if !separation.is_finite() {
        return Err(Error::InvalidParam("separation must be finite".into()));
    }

    let width = (k - 1).to_string().len();
    let class_names: Vec<String> = (0..k).map(|c| format!("class_{c:0width$}")).collect();

    let mut points = Array2::zeros((k * per_class, dim));
    let mut labels = Vec::with_capacity(k * per_class);
    for (c, name) in class_names.iter().enumerate() {
        let centroid: Vec<f64> = anchor(c, dim)
            .into_iter()
            .map(|u| separation * sigma * u)
            .collect();
        let mut rng = class_stream(seed, name);
        for i in 0..per_class {
            let row = c * per_class + i;
            for j in 0..dim {
                let z: f64 = rng.sample(StandardNormal);
                points[(row, j)] = centroid[j] + sigma * z;
            }
            labels.push(c);
        }
    }
    EmbeddedDataset::new(points, labels, class_names)
}

/// Relabel a fraction of each selected class uniformly over the selected
/// classes, entangling their distributions while leaving every other class
/// untouched.
///
/// `classes` must name at least two distinct classes; `frac` is the fraction
/// of each selected class that is redrawn. A redrawn member may keep its
/// original label, so `frac = 1` over two balanced classes yields two roughly
/// 50/50 mixtures.
pub fn swap_labels(
    ds: &EmbeddedDataset,
    classes: &[usize],
    frac: f64,
    seed: u64,
) -> Result<EmbeddedDataset> {
    let mut selected = classes.to_vec();
    selected.sort_unstable();
    selected.dedup();
    if selected.len() != classes.len() {
        return Err(Error::InvalidParam("swap classes must be distinct".into()));
    }
    if selected.len() < 2 {
        return Err(Error::InvalidParam(
            "need at least 2 classes to swap".into(),
        ));
    }
    if let Some(&c) = selected.iter().find(|&&c| c >= ds.n_classes()) {
        return Err(Error::InvalidParam(format!(
            "swap class {c} out of range for {} classes",
            ds.n_classes()
        )));
    }
    if !(0.0..=1.0).contains(&frac) {
        return Err(Error::InvalidParam(format!(
            "swap fraction must be in [0, 1], got {frac}"
        )));
    }

    let mut labels = ds.labels().to_vec();
    for &c in &selected {
        let members = ds.class_members(c);
        let n_swap = (frac * members.len() as f64).round() as usize;
        let mut rng = class_stream(seed, ds.class_name(c));
        let mut chosen: Vec<usize> = index::sample(&mut rng, members.len(), n_swap)
            .iter()
            .map(|i| members[i])
            .collect();
        chosen.sort_unstable();
        for row in chosen {
            labels[row] = selected[rng.random_range(0..selected.len())];
        }
    }
    ds.with_labels(labels)
}
