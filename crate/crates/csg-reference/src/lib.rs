//! Deliberately slow reference implementations for cross-checking `csg`.
//!
//! Nothing here shares code with the main crate: eigenvalues come from the
//! characteristic polynomial (n <= 4) or from Sturm-count bisection on a
//! Householder tridiagonalization (any n), and the geometric measures walk
//! a full Euclidean distance matrix. Test-only by design.

pub mod eigen;
pub mod measures;
