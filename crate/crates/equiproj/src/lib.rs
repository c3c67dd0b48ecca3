//! Recognize and construct k-equiprojective convex polyhedra.
//!
//! A convex polyhedron is k-equiprojective when its orthogonal shadow is a k-gon
//! for every direction not parallel to one of its faces. [`equi::decide`] answers
//! the question combinatorially by pairing edge-face duples; [`shadow::measure_k`]
//! checks it empirically by counting silhouettes over seeded random directions.

pub mod build;
pub mod equi;
pub mod io;
pub mod kernel;
pub mod poly;
pub mod report;
pub mod shadow;

pub use equi::{decide, CompensationCertificate, EdgeFaceDuple};
pub use kernel::{hull2d, hull3d, Scalar, Tolerance, Vec3};
pub use poly::{BuildError, Polyhedron};
pub use shadow::{measure_k, ShadowReport, Verdict};
