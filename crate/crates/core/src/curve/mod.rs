//! Base curves and their Frenet apparatus.

mod arclength;
mod frame;

pub use arclength::{reparametrize_arclength, ArclengthMap};
pub use frame::{
    frenet_at, frenet_at_raw, is_general_helix, speed_check, torsion_invariant, FramePolicy, FrenetApparatus,
    HelixTest, SpeedReport, CURVATURE_THRESHOLD, UNIT_SPEED_TOLERANCE,
};

use crate::expr::{eval_jet, eval_scalar, parse, EvalError, ExprNode, Jet, ParseError};
use crate::grid::Interval;
use nalgebra::Vector3;
use std::sync::Arc;
use thiserror::Error;

pub type Vec3 = Vector3<f64>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("cannot parse {component} component: {source}")]
    Parse {
        component: &'static str,
        source: ParseError,
    },
    #[error("evaluation failed at s = {s}: {source}")]
    Eval { s: f64, source: EvalError },
    #[error("curve is not unit speed at s = {s} (speed {speed})")]
    NotUnitSpeed { s: f64, speed: f64 },
    #[error("curve is not regular at s = {s} (speed {speed})")]
    NonRegular { s: f64, speed: f64 },
    #[error("no Frenet frame at s = {s}: curvature {curvature} below threshold")]
    DegenerateFrame { s: f64, curvature: f64 },
    #[error("invalid frame policy: {0}")]
    InvalidFramePolicy(String),
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
}

/// Space curve `s -> (x(s), y(s), z(s))` on a closed domain.
///
/// A curve built with [`ParametricCurve3::arclength_parametrized`] is evaluated
/// through its arclength table: the parameter is then arclength and the
/// domain is `[0, length]`.
#[derive(Debug, Clone)]
pub struct ParametricCurve3 {
    components: [ExprNode; 3],
    domain: Interval,
    arclength: Option<Arc<ArclengthMap>>,
}

impl PartialEq for ParametricCurve3 {
    fn eq(&self, other: &Self) -> bool {
        self.components == other.components
            && self.domain == other.domain
            && self.arclength.is_some() == other.arclength.is_some()
    }
}

impl ParametricCurve3 {
    pub fn new(x: ExprNode, y: ExprNode, z: ExprNode, domain: Interval) -> Self {
        Self {
            components: [x, y, z],
            domain,
            arclength: None,
        }
    }

    pub fn from_strings(x: &str, y: &str, z: &str, domain: Interval) -> Result<Self, CurveError> {
        let p = |component, text: &str| parse(text).map_err(|source| CurveError::Parse { component, source });
        Ok(Self::new(p("x", x)?, p("y", y)?, p("z", z)?, domain))
    }

    pub fn components(&self) -> &[ExprNode; 3] {
        &self.components
    }

    /// Parameter domain (arclength domain for reparametrized curves).
    pub fn domain(&self) -> Interval {
        match &self.arclength {
            Some(map) => map.arclength_domain(),
            None => self.domain,
        }
    }

    pub fn is_arclength_parametrized(&self) -> bool {
        self.arclength.is_some()
    }

    /// The same curve without any arclength table.
    pub fn raw(&self) -> ParametricCurve3 {
        Self {
            components: self.components.clone(),
            domain: self.domain,
            arclength: None,
        }
    }

    /// Reparametrize by arclength using a table with `grid_size` cells.
    pub fn arclength_parametrized(&self, grid_size: usize) -> Result<ParametricCurve3, CurveError> {
        let map = reparametrize_arclength(&self.raw(), grid_size)?;
        Ok(Self {
            components: self.components.clone(),
            domain: self.domain,
            arclength: Some(Arc::new(map)),
        })
    }

    pub fn arclength_map(&self) -> Option<&ArclengthMap> {
        self.arclength.as_deref()
    }

    fn raw_jets(&self, t: f64) -> Result<[Jet; 3], CurveError> {
        let j = |e: &ExprNode| eval_jet(e, t).map_err(|source| CurveError::Eval { s: t, source });
        Ok([
            j(&self.components[0])?,
            j(&self.components[1])?,
            j(&self.components[2])?,
        ])
    }

    /// Component jets with respect to this curve's parameter.
    pub fn jets(&self, s: f64) -> Result<[Jet; 3], CurveError> {
        let Some(map) = &self.arclength else {
            return self.raw_jets(s);
        };
        let t0 = map.parameter_at(s)?;
        let raw = map.raw_curve().raw_jets(t0)?;
        let dx = raw.map(|j| j.differentiate());
        let speed = (dx[0] * dx[0] + dx[1] * dx[1] + dx[2] * dx[2]).sqrt();
        if speed.value() < 1e-9 {
            return Err(CurveError::NonRegular {
                s,
                speed: speed.value(),
            });
        }
        let inv_speed = Jet::constant(1.0) / speed;
        // t(sigma) solves dt/dsigma = 1/|alpha'(t)|; fill one Taylor order per pass.
        let mut taylor = [t0, 0.0, 0.0, 0.0, 0.0];
        for k in 0..crate::expr::JET_ORDER {
            let inner = Jet::from_taylor(taylor);
            let rate = inner.compose(inv_speed.derivatives());
            taylor[k + 1] = rate.taylor()[k] / (k + 1) as f64;
        }
        let t_of_sigma = Jet::from_taylor(taylor);
        Ok(raw.map(|j| t_of_sigma.compose(j.derivatives())))
    }

    /// Position and derivatives `[alpha, alpha', ..., alpha'''']` at `s`.
    pub fn derivatives(&self, s: f64) -> Result<[Vec3; 5], CurveError> {
        let jets = self.jets(s)?;
        let mut out = [Vec3::zeros(); 5];
        for (k, v) in out.iter_mut().enumerate() {
            *v = Vec3::new(jets[0].derivative(k), jets[1].derivative(k), jets[2].derivative(k));
        }
        Ok(out)
    }

    pub fn position(&self, s: f64) -> Result<Vec3, CurveError> {
        if let Some(map) = &self.arclength {
            return map.raw_curve().position(map.parameter_at(s)?);
        }
        let e = |c: &ExprNode| eval_scalar(c, s).map_err(|source| CurveError::Eval { s, source });
        Ok(Vec3::new(
            e(&self.components[0])?,
            e(&self.components[1])?,
            e(&self.components[2])?,
        ))
    }

    /// `|alpha'(s)|`.
    pub fn speed(&self, s: f64) -> Result<f64, CurveError> {
        Ok(self.derivatives(s)?[1].norm())
    }
}
