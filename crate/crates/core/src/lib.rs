//! Exact volumes, bi-invariant curvature and Haar-measure concentration for
//! the compact classical groups `SU(n)`, `Spin(m)` and `USp(2n)`.

pub mod algebra;
pub mod cpn;
pub mod error;
pub mod exact;
pub mod haar;
pub mod linalg;
pub mod quadrature;
pub mod reproduce;
pub mod roots;
pub mod series;
pub mod tolerances;
pub mod volumes;

pub use error::{LocusError, Result};
pub use exact::ExactScalar;
pub use series::{MatrixGroup, Series, SeriesTag};
