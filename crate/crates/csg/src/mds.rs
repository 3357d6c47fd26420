//! Classical (Torgerson) multidimensional scaling of the class graph.
//!
//! The adjacency `W` is turned into dissimilarities `1 - w_ij`, double-
//! centered into a Gram matrix, and projected onto its top two eigenpairs.
//! The result is a 2-D map of the classes in which well-separated classes
//! sit far apart; the residual stress records how faithful the flattening
//! is. Dissimilarities from Bray-Curtis weights are not guaranteed
//! Euclidean, so negative Gram eigenvalues are expected and clamped.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::linalg::symmetric_eigen;

/// 2-D class coordinates plus the residual of the fit.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassMap {
    /// K x 2; column 0 is the dominant axis. Centered on the origin.
    pub coordinates: Array2<f64>,
    /// `sum_{i<j} (|y_i - y_j| - d_ij)^2 / sum_{i<j} d_ij^2`; 0 when all
    /// dissimilarities are 0.
    pub stress: f64,
    pub class_names: Vec<String>,
}

/// Classical MDS of `1 - W` into two dimensions.
///
/// Deterministic: each axis's sign is fixed so its largest-magnitude
/// coordinate (first such index on ties) is non-negative.
pub fn classical_mds(w: &Array2<f64>, class_names: &[String]) -> Result<ClassMap> {
    let k = w.nrows();
    if w.ncols() != k || class_names.len() != k {
        return Err(Error::ShapeMismatch(format!(
            "adjacency is {}x{} with {} class names",
            k,
            w.ncols(),
            class_names.len()
        )));
    }

    let mut d2 = Array2::zeros((k, k));
    for i in 0..k {
        for j in 0..k {
            let d = 1.0 - w[(i, j)];
            d2[(i, j)] = d * d;
        }
    }

    // B = -1/2 J D2 J, J = I - (1/K) 11'. Row/column means subtract out.
    let grand = d2.sum() / (k * k) as f64;
    let row_means: Vec<f64> = (0..k).map(|i| d2.row(i).sum() / k as f64).collect();
    let mut b = Array2::zeros((k, k));
    for i in 0..k {
        for j in 0..k {
            b[(i, j)] = -0.5 * (d2[(i, j)] - row_means[i] - row_means[j] + grand);
        }
    }
    // Double centering is symmetric in exact arithmetic; round-off can leave
    // deviations just past the eigensolver's tolerance, so symmetrize.
    for i in 0..k {
        for j in (i + 1)..k {
            let avg = 0.5 * (b[(i, j)] + b[(j, i)]);
            b[(i, j)] = avg;
            b[(j, i)] = avg;
        }
    }

    let (values, vectors) = symmetric_eigen(&b)?;
    let mut coordinates = Array2::zeros((k, 2));
    for axis in 0..2usize {
        // Largest eigenvalue first; ascending order puts it last.
        let idx = k - 1 - axis;
        let scale = values[idx].max(0.0).sqrt();
        for i in 0..k {
            coordinates[(i, axis)] = scale * vectors[(i, idx)];
        }
        let mut lead = 0;
        for i in 1..k {
            if coordinates[(i, axis)].abs() > coordinates[(lead, axis)].abs() {
                lead = i;
            }
        }
        if coordinates[(lead, axis)] < 0.0 {
            for i in 0..k {
                coordinates[(i, axis)] = -coordinates[(i, axis)];
            }
        }
    }

    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..k {
        for j in (i + 1)..k {
            let dij = 1.0 - w[(i, j)];
            let dx = coordinates[(i, 0)] - coordinates[(j, 0)];
            let dy = coordinates[(i, 1)] - coordinates[(j, 1)];
            let fitted = (dx * dx + dy * dy).sqrt();
            num += (fitted - dij) * (fitted - dij);
            den += dij * dij;
        }
    }
    let stress = if den == 0.0 { 0.0 } else { num / den };

    Ok(ClassMap {
        coordinates,
        stress,
        class_names: class_names.to_vec(),
    })
}

impl ClassMap {
    /// `class,x,y` rows preceded by a comment line carrying the stress.
    pub fn to_csv(&self) -> String {
        let mut out = format!("# stress = {:e}\nclass,x,y\n", self.stress);
        for (i, name) in self.class_names.iter().enumerate() {
            out.push_str(&format!(
                "{name},{},{}\n",
                self.coordinates[(i, 0)],
                self.coordinates[(i, 1)]
            ));
        }
        out
    }
}
