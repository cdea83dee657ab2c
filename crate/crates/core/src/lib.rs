//! Exact rational geometry of simplices and simplicial complexes.
//!
//! The crate is layered bottom-up:
//!
//! - [`linalg`]: rational scalars, vectors, matrices, row reduction, solving.
//! - [`affine`]: geometric independence, affine planes, affine maps.
//! - [`simplex`]: geometric simplices, barycentric coordinates, faces, cones,
//!   ray casting and the radial ball homeomorphism.
//! - [`feasibility`]: Fourier–Motzkin elimination, used to decide whether
//!   two open simplices meet.
//! - [`complex`]: simplicial complexes with validation, skeletons, stars
//!   and links.
//! - [`realization`]: point location, barycentric coordinate functions and
//!   piecewise-linear maps on the underlying space.
//! - [`document`]: the `.scx` text format.
//!
//! No floating point is used for any decision.

pub mod affine;
pub mod complex;
pub mod document;
pub mod error;
pub mod feasibility;
pub mod linalg;
pub mod realization;
pub mod simplex;

pub use affine::{AffineMap, AffinePlane, Extension, Independence, Membership, PointSet};
pub use complex::{AbstractSimplex, SimplicialComplex, ValidationReport};
pub use error::{Error, Result};
pub use linalg::{parse_scalar, Matrix, Scalar, Solution, Vector};
pub use realization::{Carrier, PlMap, PlValue};
pub use simplex::{
    BallPoint, BarycentricCoords, BarycentricResult, ConeCoords, GeometricSimplex,
    PointClassification, Ray, RayHit,
};
