//! Scene description: base curve, ruling, frame policy and sampling.

use crate::error::CliError;
use gnr_core::curve::{FramePolicy, ParametricCurve3, Vec3};
use gnr_core::grid::{Interval, SampleGrid};
use gnr_core::surface::{GnrSurface, RulingCoefficients, SurfaceOptions};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Allowed `|a1^2 + a2^2 - 1|` at the sampled parameters.
const RULING_UNIT: f64 = 1e-8;
const RULING_SAMPLES: usize = 257;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneConfig {
    pub curve: CurveConfig,
    pub ruling: RulingConfig,
    #[serde(default)]
    pub frame_policy: FramePolicyConfig,
    pub sampling: SamplingConfig,
    #[serde(default)]
    pub compat_parameter_derivatives: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveConfig {
    pub x: String,
    pub y: String,
    pub z: String,
    pub domain: [f64; 2],
}

/// Either both coefficients or the angle `theta` with `a1 = cos`, `a2 = sin`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum RulingConfig {
    Coefficients { a1: String, a2: String },
    Angle { theta: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameMode {
    #[default]
    Strict,
    Fixed,
    RotationMinimizing,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FramePolicyConfig {
    #[serde(default)]
    pub mode: FrameMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n0: Option<[f64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplingConfig {
    pub ns: usize,
    pub nu: usize,
    pub u_range: [f64; 2],
}

/// A validated configuration turned into core objects.
#[derive(Debug, Clone)]
pub struct Scene {
    pub config: SceneConfig,
    pub surface: GnrSurface,
    pub grid: SampleGrid,
}

fn invalid(name: &'static str, detail: impl Into<String>) -> CliError {
    CliError::Invalid {
        name,
        detail: detail.into(),
    }
}

fn interval(name: &'static str, [a, b]: [f64; 2]) -> Result<Interval, CliError> {
    Interval::new(a, b).map_err(|e| invalid(name, e.to_string()))
}

impl SceneConfig {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text).map_err(|source| CliError::Json {
            path: path.to_path_buf(),
            source,
        })
    }

    fn frame_policy(&self) -> Result<FramePolicy, CliError> {
        let n0 = self.frame_policy.n0.map(|[x, y, z]| Vec3::new(x, y, z));
        match (self.frame_policy.mode, n0) {
            (FrameMode::Strict, None) => Ok(FramePolicy::Strict),
            (FrameMode::Strict, Some(_)) => Err(invalid("frame_policy.n0", "strict mode takes no n0")),
            (FrameMode::Fixed, Some(n)) => Ok(FramePolicy::fixed(n)),
            (FrameMode::Fixed, None) => Err(invalid("frame_policy.n0", "fixed mode needs n0")),
            (FrameMode::RotationMinimizing, n) => Ok(FramePolicy::RotationMinimizing { initial_normal: n }),
        }
    }

    fn ruling(&self) -> Result<RulingCoefficients, CliError> {
        let ruling = match &self.ruling {
            RulingConfig::Coefficients { a1, a2 } => RulingCoefficients::from_strings(a1, a2),
            RulingConfig::Angle { theta } => RulingCoefficients::angle_from_string(theta),
        };
        Ok(ruling?)
    }

    /// Validate and build the surface and sample grid.
    pub fn build(&self) -> Result<Scene, CliError> {
        let domain = interval("curve.domain", self.curve.domain)?;
        let u_range = interval("sampling.u_range", self.sampling.u_range)?;
        for (name, n) in [("sampling.ns", self.sampling.ns), ("sampling.nu", self.sampling.nu)] {
            if n < 2 {
                return Err(invalid(name, format!("must be at least 2, got {n}")));
            }
        }
        let base = ParametricCurve3::from_strings(&self.curve.x, &self.curve.y, &self.curve.z, domain)?;
        let ruling = self.ruling()?;
        for s in domain.samples(RULING_SAMPLES)? {
            let norm_squared = ruling.norm_squared_at(s)?;
            if (norm_squared - 1.0).abs() > RULING_UNIT {
                return Err(invalid(
                    "ruling_unit_norm",
                    format!("a1^2 + a2^2 = {norm_squared} at s = {s}"),
                ));
            }
        }
        let options = SurfaceOptions {
            frame_policy: self.frame_policy()?,
            u_range,
            compat_parameter_derivatives: self.compat_parameter_derivatives,
        };
        let surface = GnrSurface::new(base, ruling, options)?;
        let grid = SampleGrid::uniform(domain, self.sampling.ns, u_range, self.sampling.nu)?;
        Ok(Scene {
            config: self.clone(),
            surface,
            grid,
        })
    }
}
