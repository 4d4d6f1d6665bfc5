//! Frenet frame `{q_n, h, a}` of a GNR-surface, the angle `theta` with
//! `a1 = cos(theta)`, `a2 = sin(theta)`, and slant detection.

use crate::curve::Vec3;
use crate::expr::eval_scalar;
use crate::surface::{GnrSurface, LocalGeometry, SurfaceError};
use crate::tolerance;
use nalgebra::{Matrix3, SymmetricEigen};
use std::f64::consts::{PI, TAU};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuledFrenetFrame {
    pub s: f64,
    pub q_n: Vec3,
    /// Central normal.
    pub h: Vec3,
    /// Central tangent `q_n x h`.
    pub a: Vec3,
    /// `atan2(a2, a1)` in `(-pi, pi]`; see [`theta_along`] for a continuous branch.
    pub theta: f64,
    /// `theta' + tau`.
    pub z: f64,
}

impl LocalGeometry {
    pub fn ruled_frame(&self) -> Result<RuledFrenetFrame, SurfaceError> {
        let (a1, a2) = (self.a1[0], self.a2[0]);
        let z = self.theta_prime() + self.tau;
        let k = self.kappa * a1;
        let w2 = k * k + z * z;
        if w2 < tolerance::CENTRAL_NORMAL_FLOOR {
            return Err(SurfaceError::CylindricalRuling {
                s: self.s,
                norm_squared: w2,
            });
        }
        let w = w2.sqrt();
        let (t, n, b) = (self.tangent, self.normal, self.binormal);
        Ok(RuledFrenetFrame {
            s: self.s,
            q_n: self.ruling(),
            h: (t * -k - n * (z * a2) + b * (z * a1)) / w,
            a: (t * z - n * (k * a2) + b * (k * a1)) / w,
            theta: a2.atan2(a1),
            z,
        })
    }
}

pub fn frame_at(surface: &GnrSurface, s: f64) -> Result<RuledFrenetFrame, SurfaceError> {
    surface.local(s)?.ruled_frame()
}

/// `atan2(a2, a1)` unwrapped along increasing `s`. When the ruling was given
/// by an angle expression the branch at the first sample follows it.
pub fn theta_along(surface: &GnrSurface, s_samples: &[f64]) -> Result<Vec<f64>, SurfaceError> {
    let locals = surface.locals(s_samples)?;
    let mut out = Vec::with_capacity(locals.len());
    let mut prev: Option<f64> = None;
    for l in &locals {
        let raw = l.a2[0].atan2(l.a1[0]);
        let value = match prev {
            None => match &surface.ruling_coefficients().theta {
                Some(expr) => {
                    let target = eval_scalar(expr, l.s).map_err(|source| SurfaceError::Eval { s: l.s, source })?;
                    raw + TAU * ((target - raw) / TAU).round()
                }
                None => raw,
            },
            Some(p) => raw + TAU * ((p - raw + PI) / TAU).floor(),
        };
        out.push(value);
        prev = Some(value);
    }
    Ok(out)
}

/// Largest `|theta' + tau|`; zero exactly when `theta = -int tau ds` up to a constant.
pub fn theta_integral_condition(surface: &GnrSurface, s_samples: &[f64]) -> Result<f64, SurfaceError> {
    Ok(surface
        .locals(s_samples)?
        .iter()
        .map(|l| (l.theta_prime() + l.tau).abs())
        .fold(0.0, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlantKind {
    Q,
    H,
    A,
}

impl SlantKind {
    pub fn name(self) -> &'static str {
        match self {
            SlantKind::Q => "q",
            SlantKind::H => "h",
            SlantKind::A => "a",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlantReport {
    pub kind: SlantKind,
    pub axis: Vec3,
    /// `max - min` of `<v(s), axis>` over the samples.
    pub dot_spread: f64,
    pub verdict: bool,
}

/// Below this largest covariance eigenvalue the samples are one direction.
const CONSTANT_DIRECTION: f64 = 1e-24;

/// Direction `d` minimizing the variance of `<v_i, d>`: the eigenvector of the
/// sample covariance with the smallest eigenvalue. Oriented so the mean dot
/// product is non-negative.
pub fn estimate_axis(vectors: &[Vec3]) -> Vec3 {
    let n = vectors.len().max(1) as f64;
    let mean = vectors.iter().fold(Vec3::zeros(), |acc, v| acc + v) / n;
    let cov = vectors
        .iter()
        .fold(Matrix3::zeros(), |acc, v| acc + (v - mean) * (v - mean).transpose())
        / n;
    let eig = SymmetricEigen::new(cov);
    let axis = if eig.eigenvalues.max() <= CONSTANT_DIRECTION && mean.norm() > 0.0 {
        mean.normalize()
    } else {
        let i = eig.eigenvalues.imin();
        eig.eigenvectors.column(i).into_owned().normalize()
    };
    if axis.dot(&mean) < 0.0 {
        -axis
    } else {
        axis
    }
}

/// Constant-angle test for `q_n`, `h` or `a` against `axis`, or against an
/// estimated axis when none is given.
pub fn detect_slant(
    surface: &GnrSurface,
    s_samples: &[f64],
    kind: SlantKind,
    axis: Option<Vec3>,
) -> Result<SlantReport, SurfaceError> {
    let frames = surface
        .locals(s_samples)?
        .iter()
        .map(LocalGeometry::ruled_frame)
        .collect::<Result<Vec<_>, _>>()?;
    let vectors: Vec<Vec3> = frames
        .iter()
        .map(|f| match kind {
            SlantKind::Q => f.q_n,
            SlantKind::H => f.h,
            SlantKind::A => f.a,
        })
        .collect();
    let axis = match axis {
        Some(d) => d.normalize(),
        None => estimate_axis(&vectors),
    };
    let (lo, hi) = vectors
        .iter()
        .map(|v| v.dot(&axis))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), d| (lo.min(d), hi.max(d)));
    let dot_spread = hi - lo;
    Ok(SlantReport {
        kind,
        axis,
        dot_spread,
        verdict: dot_spread <= tolerance::SLANT_SPREAD,
    })
}
