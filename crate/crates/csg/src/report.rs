//! Serializable analysis results.
//!
//! A [`ComplexityReport`] records the CSG score together with every
//! intermediate (similarity, adjacency, spectrum, parameters, evaluation
//! count), so a consumer can recompute the score from the spectrum and audit
//! the run. Reports are versioned JSON; readers refuse versions newer than
//! they understand.

use serde::{Deserialize, Serialize};

use crate::dataset::EmbeddedDataset;
use crate::error::{Error, Result};
use crate::similarity::{AdjacencyMatrix, SimilarityMatrix, SimilarityParams};
use crate::spectral::{csg_score, normalized_eigengaps, CsgResult};

pub const FORMAT_VERSION: u32 = 1;

/// Parameters echoed into a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportParams {
    pub m_samples: usize,
    pub k_neighbors: usize,
    pub seed: u64,
    pub epsilon_radius: f64,
}

/// Complete, self-describing result of one pipeline run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexityReport {
    pub format_version: u32,
    pub tool_version: String,
    pub csg: f64,
    pub eigenvalues: Vec<f64>,
    pub gaps: Vec<f64>,
    pub cummax_profile: Vec<f64>,
    /// Row i: average likelihood profile of class i's samples.
    pub similarity: Vec<Vec<f64>>,
    /// Bray-Curtis weights between column signatures of `similarity`.
    pub adjacency: Vec<Vec<f64>>,
    pub class_names: Vec<String>,
    pub params: ReportParams,
    /// Samples actually drawn per class (`min(M, |C_i|)`).
    pub effective_m: Vec<usize>,
    /// Total hypercube-density evaluations: `K * sum(effective_m)`.
    pub evaluation_count: u64,
    pub wall_time_seconds: f64,
    /// Normalization convention for likelihood vectors, recorded because it
    /// shapes every downstream quantity.
    pub likelihood_normalization: String,
}

fn matrix_to_rows(m: &ndarray::Array2<f64>) -> Vec<Vec<f64>> {
    m.rows().into_iter().map(|r| r.to_vec()).collect()
}

impl ComplexityReport {
    pub(crate) fn assemble(
        ds: &EmbeddedDataset,
        params: &SimilarityParams,
        s: &SimilarityMatrix,
        w: &AdjacencyMatrix,
        result: &CsgResult,
        wall_time_seconds: f64,
    ) -> Self {
        ComplexityReport {
            format_version: FORMAT_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            csg: result.csg,
            eigenvalues: result.spectrum.eigenvalues.clone(),
            gaps: result.spectrum.gaps.clone(),
            cummax_profile: result.cummax_profile.clone(),
            similarity: matrix_to_rows(&s.entries),
            adjacency: matrix_to_rows(&w.entries),
            class_names: ds.class_names().to_vec(),
            params: ReportParams {
                m_samples: params.m,
                k_neighbors: params.density.k,
                seed: params.seed,
                epsilon_radius: params.density.epsilon_radius,
            },
            effective_m: s.effective_m.clone(),
            evaluation_count: s.evaluations,
            wall_time_seconds,
            likelihood_normalization: "per-query class likelihoods normalized to sum 1".into(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut out = serde_json::to_string_pretty(self)?;
        out.push('\n');
        Ok(out)
    }

    /// Parse a report, refusing format versions newer than this tool.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let found = value
            .get("format_version")
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| Error::InconsistentReport("missing format_version".into()))?
            as u32;
        if found > FORMAT_VERSION {
            return Err(Error::ReportVersionTooNew {
                found,
                supported: FORMAT_VERSION,
            });
        }
        Ok(serde_json::from_value(value)?)
    }

    /// Cross-check the redundant fields: gaps and CSG must be recomputable
    /// from the eigenvalues, the evaluation count from the sample counts,
    /// and all matrices must be K x K.
    pub fn validate(&self) -> Result<()> {
        let k = self.class_names.len();
        if self.eigenvalues.len() != k
            || self.gaps.len() != k.saturating_sub(1)
            || self.cummax_profile.len() != k.saturating_sub(1)
            || self.effective_m.len() != k
            || self.similarity.len() != k
            || self.similarity.iter().any(|row| row.len() != k)
            || self.adjacency.len() != k
            || self.adjacency.iter().any(|row| row.len() != k)
        {
            return Err(Error::InconsistentReport(format!(
                "field lengths do not match {k} classes"
            )));
        }
        let gaps = normalized_eigengaps(&self.eigenvalues);
        let close = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| (x - y).abs() <= 1e-9);
        if !close(&gaps, &self.gaps) {
            return Err(Error::InconsistentReport(
                "gaps are not the normalized eigengaps of the spectrum".into(),
            ));
        }
        let (csg, profile) = csg_score(&self.gaps);
        if (csg - self.csg).abs() > 1e-9 || !close(&profile, &self.cummax_profile) {
            return Err(Error::InconsistentReport(
                "csg is not the cumulative maximum of the gaps".into(),
            ));
        }
        let expected = (k as u64) * self.effective_m.iter().map(|&m| m as u64).sum::<u64>();
        if self.evaluation_count != expected {
            return Err(Error::InconsistentReport(format!(
                "evaluation_count {} != K * sum(effective_m) = {expected}",
                self.evaluation_count
            )));
        }
        Ok(())
    }

    /// Two-column CSV of the spectrum for plotting: `index,eigenvalue`.
    pub fn spectrum_csv(&self) -> String {
        let mut out = String::from("index,eigenvalue\n");
        for (i, v) in self.eigenvalues.iter().enumerate() {
            out.push_str(&format!("{i},{v}\n"));
        }
        out
    }
}
