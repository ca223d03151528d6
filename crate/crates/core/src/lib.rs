//! Centers, facial-structure predicates and extremal constructions for
//! d-dimensional simplices.
//!
//! Vertex indices are 0-based throughout.

pub mod centers;
pub mod cevians;
pub mod classify;
pub mod constructions;
pub mod error;
pub mod geometry;
pub mod io;
pub mod corpus;
pub mod tolerance;
pub mod verify;

pub use centers::{all_centers, CenterReport, FermatMode, FermatPoint};
pub use classify::{classify, ClassificationReport};
pub use cevians::{cevian_feet, CevianReport};
pub use error::{GeometryError, Result};
pub use geometry::{BarycentricCoords, DistanceMatrix, GramSpec, Point, Simplex};
pub use tolerance::Tolerance;
