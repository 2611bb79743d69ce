//! `CPⁿ = SU(n+1)/U(n)`: Gell-Mann basis, quotient chart, invariant measure
//! and the Fubini-Study metric.

pub mod calibration;
pub mod chart;
pub mod checks;
pub mod fubini;
pub mod gellmann;

pub use calibration::{calibrate, calibration_check, Calibration, CALIBRATED};
pub use chart::{measure_density, QuotientChart, QuotientCoords};
pub use checks::{
    maurer_cartan_check, pullback_check, structure_check, vielbein_check, PointCheck,
};
pub use fubini::{
    band_mass, fs_metric_affine, fs_metric_angular, locus_projection, AngularCoords,
    AngularVelocity,
};
pub use gellmann::gellmann_basis;
