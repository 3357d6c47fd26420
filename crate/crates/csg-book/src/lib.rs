//! The guide under `book/` compiled as documentation.
//!
//! mdbook renders the chapters but cannot run examples that depend on
//! external crates, so each chapter is included here as a module's docs and
//! `cargo test -p csg-book` executes every fenced Rust block as a doc-test.
//! One module per chapter keeps failures attributable to their source file.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/datasets.md")]
pub mod datasets {}

#[doc = include_str!("../../../book/src/density.md")]
pub mod density {}

#[doc = include_str!("../../../book/src/similarity.md")]
pub mod similarity {}

#[doc = include_str!("../../../book/src/spectral.md")]
pub mod spectral {}

#[doc = include_str!("../../../book/src/class-maps.md")]
pub mod class_maps {}

#[doc = include_str!("../../../book/src/baselines.md")]
pub mod baselines {}

#[doc = include_str!("../../../book/src/reduction.md")]
pub mod reduction {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../book/src/determinism.md")]
pub mod determinism {}
