//! Haar sampling and concentration statistics.

pub mod experiment;
pub mod sampler;
pub mod stats;

pub use experiment::{
    concentration_experiment, cp_coordinate, histogram, su2_character_cdf, translation_invariance,
    ConcentrationReport, HistogramBin, Side,
};
pub use sampler::{sample, sample_so, sample_su, sample_usp, SamplerConfig};
pub use stats::{ks_test, ks_two_sample, sphere_band_mass, KsResult};
