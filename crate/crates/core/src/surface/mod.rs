//! Generalized normal ruled surfaces `F(s, u) = alpha(s) + u (a1 N + a2 B)`.
//!
//! [`GnrSurface`] holds the base curve and ruling coefficients. Per-parameter
//! quantities (frame, coefficients, characterization functions) live in
//! [`LocalGeometry`]; per-point quantities in [`SurfacePointData`]; grid-wide
//! verdicts in the `analysis` functions.

mod analysis;
mod local;
mod point;

pub use analysis::{
    BaseCurveTests, ClassificationReport, KhIdentity, SingularLocus, SingularSample, StrictionSample, Verdict,
};
pub use local::LocalGeometry;
pub use point::{CharFunctionValues, SurfacePointData};

use crate::curve::{speed_check, CurveError, FramePolicy, ParametricCurve3, Vec3};
use crate::expr::{eval_scalar, parse, EvalError, ExprNode, Function, ParseError};
use crate::grid::{GridError, Interval};
use crate::parallel::Execution;
use crate::tolerance;
use thiserror::Error;

const VALIDATION_SAMPLES: usize = 65;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SurfaceError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Oracle(#[from] crate::oracle::OracleError),
    #[error("cannot parse ruling coefficient {name}: {source}")]
    Parse { name: &'static str, source: ParseError },
    #[error("ruling coefficient evaluation failed at s = {s}: {source}")]
    Eval { s: f64, source: EvalError },
    #[error("a1^2 + a2^2 = {norm_squared} at s = {s}, expected 1")]
    RulingNotUnit { s: f64, norm_squared: f64 },
    #[error("base curve is not unit speed (max | |alpha'| - 1 | = {max_deviation}); reparametrize by arclength or enable parameter-derivative compatibility")]
    NotUnitSpeed { max_deviation: f64 },
    #[error("singular point at (s, u) = ({s}, {u}): f = {f}, g = {g}")]
    SingularPoint { s: f64, u: f64, f: f64, g: f64 },
    #[error("ruling is constant at s = {s} (|q_n'|^2 = {norm_squared})")]
    CylindricalRuling { s: f64, norm_squared: f64 },
    #[error("surface is not developable near s = {s} (f = {f})")]
    NotDevelopable { s: f64, f: f64 },
    #[error("singular or fold point at (s, u) = ({s}, {u}): g = {g}")]
    SingularOrFoldPoint { s: f64, u: f64, g: f64 },
    #[error("tangent vector is not unit at t = {t} (|v| = {norm})")]
    NotUnitTangent { t: f64, norm: f64 },
}

/// Ruling coefficients `a1(s)`, `a2(s)`, optionally generated by an angle
/// `theta(s)` with `a1 = cos(theta)`, `a2 = sin(theta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RulingCoefficients {
    pub a1: ExprNode,
    pub a2: ExprNode,
    pub theta: Option<ExprNode>,
}

impl RulingCoefficients {
    pub fn new(a1: ExprNode, a2: ExprNode) -> Self {
        Self { a1, a2, theta: None }
    }

    pub fn from_angle(theta: ExprNode) -> Self {
        Self {
            a1: ExprNode::call(Function::Cos, theta.clone()),
            a2: ExprNode::call(Function::Sin, theta.clone()),
            theta: Some(theta),
        }
    }

    pub fn from_strings(a1: &str, a2: &str) -> Result<Self, SurfaceError> {
        let a1 = parse(a1).map_err(|source| SurfaceError::Parse { name: "a1", source })?;
        let a2 = parse(a2).map_err(|source| SurfaceError::Parse { name: "a2", source })?;
        Ok(Self::new(a1, a2))
    }

    pub fn angle_from_string(theta: &str) -> Result<Self, SurfaceError> {
        let theta = parse(theta).map_err(|source| SurfaceError::Parse { name: "theta", source })?;
        Ok(Self::from_angle(theta))
    }

    /// `a1(s)^2 + a2(s)^2`.
    pub fn norm_squared_at(&self, s: f64) -> Result<f64, SurfaceError> {
        let e = |x: &ExprNode| eval_scalar(x, s).map_err(|source| SurfaceError::Eval { s, source });
        let (a1, a2) = (e(&self.a1)?, e(&self.a2)?);
        Ok(a1 * a1 + a2 * a2)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceOptions {
    pub frame_policy: FramePolicy,
    pub u_range: Interval,
    /// Differentiate `a1`, `a2`, `tau` with respect to the raw curve parameter
    /// when reporting `f` (for curves that are not arclength parametrized).
    pub compat_parameter_derivatives: bool,
}

impl Default for SurfaceOptions {
    fn default() -> Self {
        Self {
            frame_policy: FramePolicy::Strict,
            u_range: Interval { min: -1.0, max: 1.0 },
            compat_parameter_derivatives: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GnrSurface {
    base: ParametricCurve3,
    ruling: RulingCoefficients,
    options: SurfaceOptions,
    execution: Execution,
}

impl GnrSurface {
    /// Validate and build. Without the compatibility flag the base curve must
    /// be unit speed; in all cases `a1^2 + a2^2 = 1` is checked on a grid.
    pub fn new(
        base: ParametricCurve3,
        ruling: RulingCoefficients,
        options: SurfaceOptions,
    ) -> Result<Self, SurfaceError> {
        if !options.compat_parameter_derivatives {
            let report = speed_check(&base, VALIDATION_SAMPLES)?;
            if !report.is_unit_speed {
                return Err(SurfaceError::NotUnitSpeed {
                    max_deviation: report.max_deviation,
                });
            }
        }
        for s in base.domain().samples(VALIDATION_SAMPLES)? {
            let norm_squared = ruling.norm_squared_at(s)?;
            if (norm_squared - 1.0).abs() > tolerance::RULING_UNIT {
                return Err(SurfaceError::RulingNotUnit { s, norm_squared });
            }
        }
        Ok(Self {
            base,
            ruling,
            options,
            execution: Execution::default(),
        })
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn execution(&self) -> Execution {
        self.execution
    }

    pub fn base(&self) -> &ParametricCurve3 {
        &self.base
    }

    pub fn ruling_coefficients(&self) -> &RulingCoefficients {
        &self.ruling
    }

    pub fn options(&self) -> &SurfaceOptions {
        &self.options
    }

    pub fn domain(&self) -> Interval {
        self.base.domain()
    }

    pub fn u_range(&self) -> Interval {
        self.options.u_range
    }

    pub fn compat(&self) -> bool {
        self.options.compat_parameter_derivatives
    }

    /// Unit ruling `q_n(s) = a1 N + a2 B`.
    pub fn ruling_at(&self, s: f64) -> Result<Vec3, SurfaceError> {
        Ok(self.local(s)?.ruling())
    }

    /// `F(s, u)`.
    pub fn position(&self, s: f64, u: f64) -> Result<Vec3, SurfaceError> {
        Ok(self.base.position(s)? + self.ruling_at(s)? * u)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    pub use crate::gallery::*;

    pub fn iv(a: f64, b: f64) -> crate::grid::Interval {
        crate::grid::Interval::new(a, b).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn non_unit_speed_needs_compat() {
        let base = ParametricCurve3::from_strings("sqrt(1+s^2)", "s", "ln(s+sqrt(1+s^2))", iv(-0.9, 0.9)).unwrap();
        let err = GnrSurface::new(
            base,
            RulingCoefficients::from_strings("s", "sqrt(1-s^2)").unwrap(),
            SurfaceOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, SurfaceError::NotUnitSpeed { .. }));
    }

    #[test]
    fn ruling_must_be_unit() {
        let err = GnrSurface::new(
            circular_helix_curve(iv(0.0, 1.0)),
            RulingCoefficients::from_strings("1.1*cos(s)", "sin(s)").unwrap(),
            SurfaceOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, SurfaceError::RulingNotUnit { .. }));
    }

    #[test]
    fn helicoid_ruling_and_position() {
        let h = helicoid();
        for &s in &[0.0, 0.7, 2.5] {
            let q = h.ruling_at(s).unwrap();
            assert!((q - Vec3::new(s.cos(), s.sin(), 0.0)).norm() < 1e-15);
            let p = h.position(s, 1.5).unwrap();
            assert!((p - Vec3::new(1.5 * s.cos(), 1.5 * s.sin(), s)).norm() < 1e-15);
        }
    }

    #[test]
    fn binormal_ruling() {
        let base = circular_helix_curve(iv(0.0, 3.0));
        let s = RulingCoefficients::from_strings("0", "1").unwrap();
        let surf = GnrSurface::new(base.clone(), s, SurfaceOptions::default()).unwrap();
        let frame = crate::curve::frenet_at(&base, 1.3, &FramePolicy::Strict).unwrap();
        assert!((surf.ruling_at(1.3).unwrap() - frame.binormal).norm() < 1e-15);
    }

    #[test]
    fn pedal_ruling_at_zero_is_principal_normal() {
        let q = pedal().ruling_at(0.0).unwrap();
        let r3 = 3f64.sqrt();
        assert!((q - Vec3::new(-r3 / 2.0, 0.0, -0.5)).norm() < 1e-13);
    }

    #[test]
    fn angle_form_matches_components() {
        let a = RulingCoefficients::angle_from_string("-s/2").unwrap();
        assert!((a.norm_squared_at(0.3).unwrap() - 1.0).abs() < 1e-15);
        assert!(a.theta.is_some());
    }
}
