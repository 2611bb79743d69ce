use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum LocusError {
    #[error("division by zero")]
    DivisionByZero,

    #[error("negative power of pi ({0}) is not representable exactly")]
    NegativePiPower(i64),

    #[error("logarithm of non-positive value")]
    NonPositiveLog,

    #[error("{group}: parameter n = {n} is below the minimum {min}")]
    RankTooSmall {
        group: &'static str,
        n: u32,
        min: u32,
    },

    #[error("center order {order} does not divide {center} (order of the center of {group})")]
    InvalidCenterOrder {
        group: String,
        order: u32,
        center: u32,
    },

    #[error("basis is not orthonormal: max |-1/2 Tr(T_i T_j) - delta_ij| = {residual:e}")]
    NonOrthonormalBasis { residual: f64 },

    #[error("Killing form routes disagree by {residual:e}")]
    KillingRouteMismatch { residual: f64 },

    #[error("Killing matrix is not a multiple of the identity (spread {spread:e})")]
    KillingNotScalar { spread: f64 },

    #[error("Ricci contraction differs from -K/4 by {residual:e}")]
    RicciMismatch { residual: f64 },

    #[error("quadrature disagrees with closed form by {residual:e}")]
    QuadratureMismatch { residual: f64 },

    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("samples must be sorted in non-decreasing order and free of NaN")]
    UnsortedSamples,

    #[error("at least {min} samples required, got {got}")]
    TooFewSamples { min: usize, got: usize },

    #[error("point at the chart boundary: {0}")]
    ChartBoundary(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, LocusError>;
