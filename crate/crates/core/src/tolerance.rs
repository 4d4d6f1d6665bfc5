//! Numeric thresholds shared across the crate.

pub use crate::curve::{CURVATURE_THRESHOLD, UNIT_SPEED_TOLERANCE};

/// `|a1^2 + a2^2 - 1|` allowed for ruling coefficients.
pub const RULING_UNIT: f64 = 1e-10;

/// A point is singular when `u^2 f^2 + g^2` falls below this.
pub const SINGULAR_NORM_SQUARED: f64 = 1e-20;

/// `|f|` at or below this counts as zero (developable, singular locus).
pub const CHAR_ZERO: f64 = 1e-8;

/// `|f|` plateau level reported as an interval by the root finder.
pub const ROOT_PLATEAU: f64 = 1e-10;

/// Bisection tolerance in `s` for roots of `f`.
pub const ROOT_TOLERANCE: f64 = 1e-10;

/// Smallest `|a1 kappa|` for which the singular parameter `1/(a1 kappa)` is emitted.
pub const SINGULAR_PARAMETER_FLOOR: f64 = 1e-12;

/// `|q_n'|` at or below this counts as a constant ruling.
pub const CYLINDRICAL: f64 = 1e-8;

/// Squared striction denominator below which the ruling is treated as constant.
pub const STRICTION_DENOMINATOR: f64 = 1e-18;

/// `max |H|` at or below this marks a minimal candidate.
pub const MINIMAL: f64 = 1e-7;

/// `max |a1|` (binormal) or `max |a2|` (principal normal) special cases.
pub const SPECIAL_COEFFICIENT: f64 = 1e-10;

/// Residual bound for the base-curve geodesic / asymptotic / curvature-line tests.
pub const BASE_CURVE_RESIDUAL: f64 = 1e-8;

/// `|g|` at or below this is a fold of a developable surface.
pub const FOLD: f64 = 1e-10;

/// `|a2 kappa|` at or below this makes a developable point planar.
pub const PLANAR: f64 = 1e-10;

/// Spread of dot products accepted as a constant angle.
pub const SLANT_SPREAD: f64 = 1e-6;

/// `kappa^2 cos^2(theta) + z^2` below which the central normal is undefined.
pub const CENTRAL_NORMAL_FLOOR: f64 = 1e-18;
