//! Classical geometric complexity measures, for side-by-side comparison
//! with the spectral score.
//!
//! Implemented: F1 (maximum per-feature Fisher discriminant ratio), N1
//! (fraction of points on inter-class edges of the Euclidean minimum
//! spanning tree), N2 (intra- over inter-class nearest-neighbor distance
//! ratio), N3 (leave-one-out 1-NN error rate), and T2 (points per
//! dimension). F1 and N2 are two-class measures averaged over all class
//! pairs; N1 and N3 are computed natively on the multiclass dataset.
//!
//! Degenerate geometry (zero variance with distinct means, coincident
//! points across classes) yields an infinity sentinel rather than an error;
//! sentinels are excluded from pair averages and counted.

use ndarray::ArrayView2;
use rand::seq::SliceRandom;

use crate::dataset::EmbeddedDataset;
use crate::error::{Error, Result};
use crate::seeding;

/// One of the implemented measures, mostly for CLI selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    F1,
    N1,
    N2,
    N3,
    T2,
}

impl Measure {
    pub const ALL: [Measure; 5] = [
        Measure::F1,
        Measure::N1,
        Measure::N2,
        Measure::N3,
        Measure::T2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::F1 => "f1",
            Measure::N1 => "n1",
            Measure::N2 => "n2",
            Measure::N3 => "n3",
            Measure::T2 => "t2",
        }
    }
}

impl std::str::FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "f1" => Ok(Measure::F1),
            "n1" => Ok(Measure::N1),
            "n2" => Ok(Measure::N2),
            "n3" => Ok(Measure::N3),
            "t2" => Ok(Measure::T2),
            other => Err(Error::InvalidParam(format!(
                "unknown measure {other:?} (expected one of f1, n1, n2, n3, t2)"
            ))),
        }
    }
}

/// A two-class measure evaluated on one pair of classes. `value` is
/// `f64::INFINITY` when the pair degenerated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairScore {
    pub class_a: usize,
    pub class_b: usize,
    pub value: f64,
}

/// A pairwise measure averaged over all class pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct PairAveraged {
    /// Mean over finite pair values; infinity if every pair degenerated.
    pub mean: f64,
    pub pairs: Vec<PairScore>,
    /// Pairs excluded from the mean as infinity sentinels.
    pub sentinel_count: usize,
}

/// All five measures on one dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct BaselineScores {
    pub f1: PairAveraged,
    pub n1: f64,
    pub n2: PairAveraged,
    pub n3: f64,
    pub t2: f64,
    /// `K (K - 1) / 2`.
    pub pair_count: usize,
}

fn sq_dist(points: ArrayView2<f64>, i: usize, j: usize) -> f64 {
    (0..points.ncols())
        .map(|c| {
            let d = points[(i, c)] - points[(j, c)];
            d * d
        })
        .sum()
}

/// Maximum per-feature Fisher discriminant ratio between two classes:
/// `max_j (mu1_j - mu2_j)^2 / (var1_j + var2_j)` with population variances.
///
/// A feature with zero total variance contributes 0 when the means agree
/// and an infinity sentinel when they differ.
pub fn f1_pair(ds: &EmbeddedDataset, a: usize, b: usize) -> Result<f64> {
    for &c in &[a, b] {
        if ds.class_members(c).len() < 2 {
            return Err(Error::ClassTooSmall {
                measure: "f1",
                min: 2,
            });
        }
    }
    let points = ds.points();
    let stats = |class: usize, feature: usize| -> (f64, f64) {
        let members = ds.class_members(class);
        let n = members.len() as f64;
        let mean = members.iter().map(|&r| points[(r, feature)]).sum::<f64>() / n;
        let var = members
            .iter()
            .map(|&r| {
                let d = points[(r, feature)] - mean;
                d * d
            })
            .sum::<f64>()
            / n;
        (mean, var)
    };
    let mut best = 0.0f64;
    for feature in 0..ds.dim() {
        let (m1, v1) = stats(a, feature);
        let (m2, v2) = stats(b, feature);
        let ratio = if v1 + v2 == 0.0 {
            if m1 == m2 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (m1 - m2) * (m1 - m2) / (v1 + v2)
        };
        best = best.max(ratio);
    }
    Ok(best)
}

/// Euclidean MST edges by Prim's algorithm, root 0, ties broken by smaller
/// vertex index.
fn mst_edges(points: ArrayView2<f64>) -> Vec<(usize, usize)> {
    let n = points.nrows();
    let mut in_tree = vec![false; n];
    let mut key = vec![f64::INFINITY; n];
    let mut parent = vec![usize::MAX; n];
    key[0] = 0.0;
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for _ in 0..n {
        let mut best = usize::MAX;
        for v in 0..n {
            if !in_tree[v] && (best == usize::MAX || key[v] < key[best]) {
                best = v;
            }
        }
        in_tree[best] = true;
        if parent[best] != usize::MAX {
            edges.push((parent[best], best));
        }
        for v in 0..n {
            if !in_tree[v] {
                let d = sq_dist(points, best, v);
                if d < key[v] {
                    key[v] = d;
                    parent[v] = best;
                }
            }
        }
    }
    edges
}

/// Fraction of points incident to an inter-class MST edge.
pub fn n1(ds: &EmbeddedDataset) -> Result<f64> {
    let n = ds.n_points();
    if n < 2 {
        return Err(Error::InvalidParam("n1 needs at least 2 points".into()));
    }
    let labels = ds.labels();
    let mut boundary = vec![false; n];
    for (u, v) in mst_edges(ds.points()) {
        if labels[u] != labels[v] {
            boundary[u] = true;
            boundary[v] = true;
        }
    }
    Ok(boundary.iter().filter(|&&b| b).count() as f64 / n as f64)
}

/// Intra- over inter-class nearest-neighbor distance ratio for two classes.
///
/// Returns the infinity sentinel when the inter-class distances sum to zero
/// (classes with coincident points).
pub fn n2_pair(ds: &EmbeddedDataset, a: usize, b: usize) -> Result<f64> {
    for &c in &[a, b] {
        if ds.class_members(c).len() < 2 {
            return Err(Error::ClassTooSmall {
                measure: "n2",
                min: 2,
            });
        }
    }
    let points = ds.points();
    let rows: Vec<(usize, usize)> = ds
        .class_members(a)
        .iter()
        .map(|&r| (r, a))
        .chain(ds.class_members(b).iter().map(|&r| (r, b)))
        .collect();
    let mut intra_sum = 0.0;
    let mut inter_sum = 0.0;
    for &(r, class) in &rows {
        let mut intra = f64::INFINITY;
        let mut inter = f64::INFINITY;
        for &(other, other_class) in &rows {
            if other == r {
                continue;
            }
            let d = sq_dist(points, r, other);
            if other_class == class {
                intra = intra.min(d);
            } else {
                inter = inter.min(d);
            }
        }
        intra_sum += intra.sqrt();
        inter_sum += inter.sqrt();
    }
    if inter_sum == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(intra_sum / inter_sum)
}

/// Leave-one-out 1-nearest-neighbor error rate; distance ties broken by
/// smaller row index.
pub fn n3(ds: &EmbeddedDataset) -> Result<f64> {
    let n = ds.n_points();
    if n < 2 {
        return Err(Error::InvalidParam("n3 needs at least 2 points".into()));
    }
    let points = ds.points();
    let labels = ds.labels();
    let mut errors = 0usize;
    for i in 0..n {
        let mut nearest = usize::MAX;
        let mut best = f64::INFINITY;
        for j in 0..n {
            if j == i {
                continue;
            }
            let d = sq_dist(points, i, j);
            if d < best {
                best = d;
                nearest = j;
            }
        }
        if labels[nearest] != labels[i] {
            errors += 1;
        }
    }
    Ok(errors as f64 / n as f64)
}

/// Points per dimension, `N / d`.
pub fn t2(ds: &EmbeddedDataset) -> Result<f64> {
    Ok(ds.n_points() as f64 / ds.dim() as f64)
}

fn pair_average(
    ds: &EmbeddedDataset,
    pair_fn: impl Fn(&EmbeddedDataset, usize, usize) -> Result<f64>,
) -> Result<PairAveraged> {
    let k = ds.n_classes();
    if k < 2 {
        return Err(Error::TooFewClasses { found: k });
    }
    let mut pairs = Vec::with_capacity(k * (k - 1) / 2);
    for a in 0..k {
        for b in (a + 1)..k {
            pairs.push(PairScore {
                class_a: a,
                class_b: b,
                value: pair_fn(ds, a, b)?,
            });
        }
    }
    let finite: Vec<f64> = pairs
        .iter()
        .map(|p| p.value)
        .filter(|v| v.is_finite())
        .collect();
    let sentinel_count = pairs.len() - finite.len();
    let mean = if finite.is_empty() {
        f64::INFINITY
    } else {
        finite.iter().sum::<f64>() / finite.len() as f64
    };
    Ok(PairAveraged {
        mean,
        pairs,
        sentinel_count,
    })
}

/// F1 averaged over all class pairs.
pub fn multiclass_f1(ds: &EmbeddedDataset) -> Result<PairAveraged> {
    pair_average(ds, f1_pair)
}

/// N2 averaged over all class pairs.
pub fn multiclass_n2(ds: &EmbeddedDataset) -> Result<PairAveraged> {
    pair_average(ds, n2_pair)
}

/// All five measures at once.
pub fn compute_all(ds: &EmbeddedDataset) -> Result<BaselineScores> {
    let k = ds.n_classes();
    Ok(BaselineScores {
        f1: multiclass_f1(ds)?,
        n1: n1(ds)?,
        n2: multiclass_n2(ds)?,
        n3: n3(ds)?,
        t2: t2(ds)?,
        pair_count: k * (k - 1) / 2,
    })
}

/// Sample Pearson correlation coefficient.
pub fn pearson_r(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::InvalidParam(format!(
            "correlation inputs differ in length: {} vs {}",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < 3 {
        return Err(Error::InvalidParam(
            "correlation needs at least 3 points".into(),
        ));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    if sxx == 0.0 {
        return Err(Error::ConstantVector("x"));
    }
    if syy == 0.0 {
        return Err(Error::ConstantVector("y"));
    }
    Ok(sxy / (sxx * syy).sqrt())
}

/// Pearson r with a two-sided permutation p-value.
///
/// `p = (1 + #{permutations with |r| >= |r_observed|}) / (1 + permutations)`,
/// so p is never 0 and is exact in expectation for exchangeable data.
pub fn pearson(xs: &[f64], ys: &[f64], permutations: usize, seed: u64) -> Result<(f64, f64)> {
    if permutations == 0 {
        return Err(Error::InvalidParam(
            "permutation count must be at least 1".into(),
        ));
    }
    let observed = pearson_r(xs, ys)?;
    let mut rng = seeding::stream(seeding::derive_seed(seed, "pearson-permutation"));
    let mut shuffled = ys.to_vec();
    let mut at_least = 0usize;
    for _ in 0..permutations {
        shuffled.shuffle(&mut rng);
        let r = pearson_r(xs, &shuffled)?;
        if r.abs() >= observed.abs() - 1e-12 {
            at_least += 1;
        }
    }
    let p = (1 + at_least) as f64 / (1 + permutations) as f64;
    Ok((observed, p))
}
