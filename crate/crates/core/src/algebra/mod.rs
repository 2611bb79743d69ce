//! Lie algebra bases, structure constants and curvature.

pub mod basis;
pub mod curvature;
pub mod levy;
pub mod structure;

pub use basis::{build_basis, LieAlgebraBasis};
pub use curvature::{chi_coefficient, killing_form, ricci_tensor, riemann_tensor, CurvatureReport};
pub use structure::{structure_constants, StructureTensor};
