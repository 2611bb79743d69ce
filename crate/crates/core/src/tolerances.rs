//! Numerical tolerances shared by the library, the acceptance suite and the
//! `reproduce` report. Every threshold used to decide pass/fail lives here.

/// Basis invariants: anti-hermiticity, tracelessness, orthonormality.
pub const BASIS: f64 = 1e-12;

/// Structure constants below this magnitude are dropped.
pub const STRUCTURE_ZERO: f64 = 1e-12;

/// Total antisymmetry of `c_ijk` in an orthonormal basis.
pub const TOTAL_ANTISYMMETRY: f64 = 1e-10;

/// Jacobi identity residual.
pub const JACOBI: f64 = 1e-9;

/// Agreement between the two Killing form routes.
pub const KILLING_ROUTES: f64 = 1e-9;

/// Ricci by contraction against `-K/4`.
pub const RICCI_KILLING: f64 = 1e-9;

/// Killing symmetry and scalar-ness.
pub const KILLING_SYMMETRY: f64 = 1e-10;

/// Exact-to-log path agreement for volumes.
pub const VOLUME_LOG: f64 = 1e-10;

/// Ratio asymptotics window: `ratio / sqrt(2 pi e / scale)` must lie in
/// `[1 - RATIO_WINDOW, 1 + RATIO_WINDOW]`.
pub const RATIO_WINDOW: f64 = 0.02;

/// Quadrature against closed-form band masses.
pub const BAND_QUADRATURE: f64 = 1e-10;

/// Vielbein density against the closed-form measure density.
pub const VIELBEIN_DENSITY: f64 = 1e-8;

/// Angular against affine Fubini-Study line element.
pub const FS_PULLBACK: f64 = 1e-8;

/// Kahler potential Hessian (finite differences) against the closed form.
pub const FS_POTENTIAL: f64 = 1e-6;

/// Maurer-Cartan structure equation residual with finite-difference
/// exterior derivative.
pub const MAURER_CARTAN_STRUCTURE: f64 = 1e-4;

/// Analytic Maurer-Cartan form against central differences.
pub const MAURER_CARTAN_FD: f64 = 1e-5;

/// Integral of the invariant density against the volume quotient (relative).
pub const CALIBRATION: f64 = 1e-6;

/// Unitarity and symplectic residuals of Haar samples.
pub const SAMPLE_GROUP: f64 = 1e-12;

/// Monte Carlo agreement in binomial standard errors.
pub const MC_SIGMAS: f64 = 3.0;

/// Kolmogorov-Smirnov p-value threshold.
pub const KS_PVALUE: f64 = 0.01;

/// Orbit length of a two-plane rotation against `2 pi`.
pub const ORBIT_LENGTH: f64 = 1e-6;
