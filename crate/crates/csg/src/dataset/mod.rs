//! Labeled, embedded datasets and the operations that produce them.
//!
//! A dataset is `N` points in `R^d` with one of `K` class labels each.
//! Labels are arbitrary strings on disk and contiguous `0..K` indices in
//! memory; the mapping is the lexicographic order of the distinct label
//! strings, so class order is reproducible across loads.
//!
//! Everything here is deterministic: sampling, subsampling, blob generation
//! and label swapping are pure functions of their inputs and a 64-bit seed.

mod binary;
mod csvio;
mod synth;

pub use binary::{load_binary, save_binary};
pub use csvio::{load_csv, save_csv};
pub use synth::{generate_blobs, swap_labels};

use ndarray::{Array2, ArrayView1, ArrayView2};
use rand::seq::index;

use crate::error::{Error, Result};
use crate::seeding::class_stream;

/// N points in d dimensions with class labels over K classes.
///
/// Immutable after construction; all invariants (finite coordinates, labels
/// in range, no empty class) are checked by [`EmbeddedDataset::new`].
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedDataset {
    points: Array2<f64>,
    labels: Vec<usize>,
    class_names: Vec<String>,
    /// Per-class sorted row indices, rebuilt on construction.
    members: Vec<Vec<usize>>,
}

/// Borrowed view of one class: its index and the sorted rows that carry it.
#[derive(Debug, Clone, Copy)]
pub struct ClassView<'a> {
    pub class_index: usize,
    pub member_indices: &'a [usize],
}

impl ClassView<'_> {
    pub fn len(&self) -> usize {
        self.member_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.member_indices.is_empty()
    }
}

impl EmbeddedDataset {
    pub fn new(points: Array2<f64>, labels: Vec<usize>, class_names: Vec<String>) -> Result<Self> {
        let n = points.nrows();
        let k = class_names.len();
        if n == 0 {
            return Err(Error::EmptyDataset("no points".into()));
        }
        if points.ncols() == 0 {
            return Err(Error::ShapeMismatch(
                "dimension d must be at least 1".into(),
            ));
        }
        if labels.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "{} points but {} labels",
                n,
                labels.len()
            )));
        }
        if k == 0 {
            return Err(Error::EmptyDataset("no classes".into()));
        }
        for i in 0..k {
            for j in (i + 1)..k {
                if class_names[i] == class_names[j] {
                    return Err(Error::DuplicateClassName(class_names[i].clone()));
                }
            }
        }
        for ((row, col), &v) in points.indexed_iter() {
            if !v.is_finite() {
                return Err(Error::NonFiniteCoordinate { row, col });
            }
        }
        let mut members = vec![Vec::new(); k];
        for (row, &label) in labels.iter().enumerate() {
            if label >= k {
                return Err(Error::LabelOutOfRange { label, classes: k });
            }
            members[label].push(row);
        }
        if let Some(class) = members.iter().position(Vec::is_empty) {
            return Err(Error::EmptyClass { class });
        }
        Ok(Self {
            points,
            labels,
            class_names,
            members,
        })
    }

    /// Number of points N.
    pub fn n_points(&self) -> usize {
        self.points.nrows()
    }

    /// Embedding dimension d.
    pub fn dim(&self) -> usize {
        self.points.ncols()
    }

    /// Number of classes K.
    pub fn n_classes(&self) -> usize {
        self.class_names.len()
    }

    pub fn points(&self) -> ArrayView2<'_, f64> {
        self.points.view()
    }

    pub fn point(&self, row: usize) -> ArrayView1<'_, f64> {
        self.points.row(row)
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    pub fn class_name(&self, class: usize) -> &str {
        &self.class_names[class]
    }

    /// Sorted row indices of the members of `class`.
    pub fn class_members(&self, class: usize) -> &[usize] {
        &self.members[class]
    }

    pub fn class_view(&self, class: usize) -> ClassView<'_> {
        ClassView {
            class_index: class,
            member_indices: &self.members[class],
        }
    }

    /// Per-class member counts.
    pub fn class_sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }

    /// New dataset holding the given rows in the given order, same classes.
    /// Every class must keep at least one member.
    pub fn select_rows(&self, rows: &[usize]) -> Result<Self> {
        let mut points = Array2::zeros((rows.len(), self.dim()));
        let mut labels = Vec::with_capacity(rows.len());
        for (out, &row) in rows.iter().enumerate() {
            points.row_mut(out).assign(&self.points.row(row));
            labels.push(self.labels[row]);
        }
        Self::new(points, labels, self.class_names.clone())
    }

    /// Same points, new labels.
    pub(crate) fn with_labels(&self, labels: Vec<usize>) -> Result<Self> {
        Self::new(self.points.clone(), labels, self.class_names.clone())
    }
}

/// Draw up to `m` member rows per class, uniformly without replacement.
///
/// Classes smaller than `m` contribute all of their members. Each class uses
/// its own seeded substream, so the draw for one class does not depend on the
/// others. Returned index lists are sorted ascending.
pub fn stratified_sample(ds: &EmbeddedDataset, m: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    if m == 0 {
        return Err(Error::InvalidParam(
            "samples per class must be at least 1".into(),
        ));
    }
    let mut out = Vec::with_capacity(ds.n_classes());
    for c in 0..ds.n_classes() {
        let members = ds.class_members(c);
        let take = m.min(members.len());
        let mut rng = class_stream(seed, ds.class_name(c));
        let mut picked: Vec<usize> = index::sample(&mut rng, members.len(), take)
            .iter()
            .map(|i| members[i])
            .collect();
        picked.sort_unstable();
        out.push(picked);
    }
    Ok(out)
}

/// Reduce every class to `ceil(ratio * class size)` members, uniformly
/// without replacement. `ratio` must be in (0, 1]; K is preserved and no
/// class is ever emptied.
pub fn subsample_ratio(ds: &EmbeddedDataset, ratio: f64, seed: u64) -> Result<EmbeddedDataset> {
    if !(ratio > 0.0 && ratio <= 1.0) {
        return Err(Error::InvalidParam(format!(
            "subsample ratio must be in (0, 1], got {ratio}"
        )));
    }
    let mut kept = Vec::new();
    for c in 0..ds.n_classes() {
        let members = ds.class_members(c);
        let keep = (ratio * members.len() as f64).ceil() as usize;
        let keep = keep.clamp(1, members.len());
        let mut rng = class_stream(seed, ds.class_name(c));
        kept.extend(
            index::sample(&mut rng, members.len(), keep)
                .iter()
                .map(|i| members[i]),
        );
    }
    kept.sort_unstable();
    ds.select_rows(&kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn tiny() -> EmbeddedDataset {
        EmbeddedDataset::new(
            array![[0.0], [1.0], [10.0], [11.0]],
            vec![0, 0, 1, 1],
            vec!["a".into(), "b".into()],
        )
        .unwrap()
    }

    #[test]
    fn constructor_rejects_label_out_of_range() {
        let err = EmbeddedDataset::new(
            array![[0.0], [1.0]],
            vec![0, 2],
            vec!["a".into(), "b".into()],
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::LabelOutOfRange {
                label: 2,
                classes: 2
            }
        ));
    }

    #[test]
    fn constructor_rejects_empty_class() {
        let err = EmbeddedDataset::new(
            array![[0.0], [1.0]],
            vec![0, 0],
            vec!["a".into(), "b".into()],
        )
        .unwrap_err();
        assert!(matches!(err, Error::EmptyClass { class: 1 }));
    }

    #[test]
    fn constructor_rejects_non_finite() {
        let err = EmbeddedDataset::new(
            array![[0.0], [f64::NAN]],
            vec![0, 1],
            vec!["a".into(), "b".into()],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonFiniteCoordinate { row: 1, col: 0 }));
    }

    #[test]
    fn members_are_sorted_and_complete() {
        let ds = tiny();
        assert_eq!(ds.class_members(0), &[0, 1]);
        assert_eq!(ds.class_members(1), &[2, 3]);
        assert_eq!(ds.class_view(1).len(), 2);
    }

    #[test]
    fn stratified_sample_clamps_to_class_size() {
        let ds = tiny();
        let lists = stratified_sample(&ds, 100, 0).unwrap();
        assert_eq!(lists[0], vec![0, 1]);
        assert_eq!(lists[1], vec![2, 3]);
    }

    #[test]
    fn stratified_sample_is_deterministic() {
        let ds = big_one_class_heavy();
        let a = stratified_sample(&ds, 10, 42).unwrap();
        let b = stratified_sample(&ds, 10, 42).unwrap();
        assert_eq!(a, b);
        let c = stratified_sample(&ds, 10, 43).unwrap();
        assert_ne!(a, c);
    }

    fn big_one_class_heavy() -> EmbeddedDataset {
        // 1000 points in class "x", 5 in class "y"
        let n = 1005;
        let points = Array2::from_shape_fn((n, 1), |(i, _)| i as f64);
        let labels: Vec<usize> = (0..n).map(|i| usize::from(i >= 1000)).collect();
        EmbeddedDataset::new(points, labels, vec!["x".into(), "y".into()]).unwrap()
    }

    #[test]
    fn stratified_sample_is_uniform() {
        // Mean sampled row over many seeds approaches the class mean index 499.5.
        let ds = big_one_class_heavy();
        let mut grand = 0.0;
        let reps = 200;
        for seed in 0..reps {
            let lists = stratified_sample(&ds, 100, seed).unwrap();
            assert_eq!(lists[0].len(), 100);
            let mean: f64 = lists[0].iter().map(|&i| i as f64).sum::<f64>() / 100.0;
            grand += mean / reps as f64;
        }
        assert!((grand - 499.5).abs() < 10.0, "grand mean {grand}");
    }

    #[test]
    fn subsample_identity_at_ratio_one() {
        let ds = tiny();
        let sub = subsample_ratio(&ds, 1.0, 9).unwrap();
        assert_eq!(sub, ds);
    }

    #[test]
    fn subsample_halves_classes() {
        let n = 20;
        let points = Array2::from_shape_fn((n, 2), |(i, j)| (i * 2 + j) as f64);
        let labels: Vec<usize> = (0..n).map(|i| i % 2).collect();
        let ds = EmbeddedDataset::new(points, labels, vec!["a".into(), "b".into()]).unwrap();
        let sub = subsample_ratio(&ds, 0.5, 1).unwrap();
        assert_eq!(sub.class_sizes(), vec![5, 5]);
        assert_eq!(sub.n_classes(), 2);
    }

    #[test]
    fn subsample_never_empties_a_class() {
        let ds = tiny();
        let sub = subsample_ratio(&ds, 0.01, 3).unwrap();
        assert_eq!(sub.class_sizes(), vec![1, 1]);
    }

    #[test]
    fn subsample_rejects_bad_ratio() {
        let ds = tiny();
        assert!(subsample_ratio(&ds, 0.0, 0).is_err());
        assert!(subsample_ratio(&ds, 1.5, 0).is_err());
    }
}
