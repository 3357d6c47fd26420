//! Spectral complexity analysis for labeled, embedded datasets.
//!
//! The central quantity is the cumulative spectral gradient (CSG): classes
//! are compared through a Monte-Carlo estimate of how much their estimated
//! densities overlap, the resulting class-similarity matrix is turned into a
//! graph, and the spectrum of that graph's Laplacian is condensed into a
//! single score. Low scores mean well-separated classes; the score approaches
//! `K - 1` as all `K` classes collapse onto one distribution.
//!
//! The pipeline, end to end:
//!
//! 1. [`dataset`] — load or synthesize a labeled point cloud.
//! 2. [`density`] — k-nearest-neighbor hypercube density estimates.
//! 3. [`similarity`] — Monte-Carlo class-similarity matrix `S` and the
//!    Bray-Curtis adjacency `W` built from its columns.
//! 4. [`spectral`] — Laplacian spectrum, normalized eigengaps, and the CSG
//!    score.
//!
//! Around the core sit [`mds`] (2-D class maps from `W`), [`baselines`]
//! (classical geometric complexity measures for comparison), [`reduction`]
//! (CSG stability under subsampling), and [`report`] (serializable results).
//!
//! ```
//! use csg::dataset::generate_blobs;
//! use csg::similarity::SimilarityParams;
//! use csg::spectral::csg_pipeline;
//!
//! let ds = generate_blobs(3, 200, 2, 8.0, 1.0, 42)?;
//! let report = csg_pipeline(&ds, &SimilarityParams::default())?;
//! assert!(report.csg < 0.1); // widely separated blobs are easy
//! # Ok::<(), csg::Error>(())
//! ```

pub mod baselines;
pub mod dataset;
pub mod density;
mod error;
pub mod linalg;
pub mod mds;
pub mod reduction;
pub mod report;
mod seeding;
pub mod similarity;
pub mod spectral;

pub use error::{Error, ErrorKind, Result};
pub use seeding::derive_seed;
