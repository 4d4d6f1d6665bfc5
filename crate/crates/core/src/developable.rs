//! Shape operator and surface-curve invariants on developable GNR-surfaces.
//!
//! Quantities follow the arclength convention for `s`; in compatibility mode
//! surface curves are given in the raw parameter and converted internally.

use crate::curve::Vec3;
use crate::expr::{eval_jet, parse_in, ExprNode, Jet};
use crate::grid::Interval;
use crate::surface::{GnrSurface, LocalGeometry, SurfaceError};
use crate::tolerance;

/// Relative offset of the neighbors used by the developability gate.
const GATE_OFFSET: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeingartenData {
    /// Matrix in the basis `{dF/ds, dF/du}`.
    pub matrix: [[f64; 2]; 2],
    pub lambda1: f64,
    pub lambda2: f64,
    /// `g T`, the arclength `s`-partial.
    pub e1: Vec3,
    /// `q_n`.
    pub e2: Vec3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointClass {
    Planar,
    Parabolic,
}

/// Surface curve `t -> F(s(t), u(t))`.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceCurveSpec {
    pub s_of_t: ExprNode,
    pub u_of_t: ExprNode,
    pub domain: Interval,
}

impl SurfaceCurveSpec {
    pub fn from_strings(s_of_t: &str, u_of_t: &str, domain: Interval) -> Result<Self, SurfaceError> {
        Ok(Self {
            s_of_t: parse_in(s_of_t, "t").map_err(|source| SurfaceError::Parse { name: "s(t)", source })?,
            u_of_t: parse_in(u_of_t, "t").map_err(|source| SurfaceError::Parse { name: "u(t)", source })?,
            domain,
        })
    }

    fn jets(&self, t: f64) -> Result<(Jet, Jet), SurfaceError> {
        let j = |e: &ExprNode| eval_jet(e, t).map_err(|source| SurfaceError::Eval { s: t, source });
        Ok((j(&self.s_of_t)?, j(&self.u_of_t)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveOnSurfaceInvariants {
    pub kappa_g: f64,
    pub tau_g: f64,
    pub k_n: f64,
}

/// `|f| <= 1e-8` at `s` and at neighbors on both sides inside the domain.
fn developable_near(surface: &GnrSurface, local: &LocalGeometry) -> Result<(), SurfaceError> {
    let s = local.s;
    let h = GATE_OFFSET * s.abs().max(1.0);
    let domain = surface.domain();
    let check = |f: f64, at: f64| {
        if f.abs() > tolerance::CHAR_ZERO {
            Err(SurfaceError::NotDevelopable { s: at, f })
        } else {
            Ok(())
        }
    };
    check(local.f(), s)?;
    for x in [s - h, s + h] {
        if domain.contains(x) {
            check(surface.local(x)?.f(), x)?;
        }
    }
    Ok(())
}

fn developable_local(surface: &GnrSurface, s: f64) -> Result<LocalGeometry, SurfaceError> {
    let local = surface.local(s)?;
    developable_near(surface, &local)?;
    Ok(local)
}

fn regular_g(local: &LocalGeometry, u: f64) -> Result<f64, SurfaceError> {
    let g = local.g(u);
    if g.abs() <= tolerance::FOLD {
        return Err(SurfaceError::SingularOrFoldPoint { s: local.s, u, g });
    }
    Ok(g)
}

/// Shape operator `diag(-a2 kappa / g, 0)` with principal directions `g T`
/// and `q_n`, taken with respect to the ruling-constant normal `-a2 N + a1 B`
/// (the unit normal `U` times `sign g`).
pub fn weingarten(surface: &GnrSurface, s: f64, u: f64) -> Result<WeingartenData, SurfaceError> {
    let local = developable_local(surface, s)?;
    let g = regular_g(&local, u)?;
    let lambda1 = -local.a2[0] * local.kappa / g;
    Ok(WeingartenData {
        matrix: [[lambda1, 0.0], [0.0, 0.0]],
        lambda1,
        lambda2: 0.0,
        e1: local.tangent * g,
        e2: local.ruling(),
    })
}

/// Planar where `a2 kappa` vanishes, parabolic otherwise; never umbilic.
pub fn classify_point(surface: &GnrSurface, s: f64, u: f64) -> Result<PointClass, SurfaceError> {
    let local = developable_local(surface, s)?;
    regular_g(&local, u)?;
    Ok(if (local.a2[0] * local.kappa).abs() <= tolerance::PLANAR {
        PointClass::Planar
    } else {
        PointClass::Parabolic
    })
}

/// `k_n = C^2 a2 kappa g` for the unit tangent `C dF/ds + D dF/du`; `D` is
/// implied by unit length, so `C^2 g^2` may not exceed 1.
pub fn normal_curvature(surface: &GnrSurface, s: f64, u: f64, c: f64) -> Result<f64, SurfaceError> {
    let local = developable_local(surface, s)?;
    let g = local.g(u);
    let c_arc = c * local.speed;
    let along = (c_arc * g).powi(2);
    if along > 1.0 + tolerance::UNIT_SPEED_TOLERANCE {
        return Err(SurfaceError::NotUnitTangent {
            t: s,
            norm: along.sqrt(),
        });
    }
    Ok(c_arc * c_arc * local.a2[0] * local.kappa * g)
}

/// Geodesic curvature, geodesic torsion and normal curvature of a unit-speed
/// surface curve at `t`.
pub fn curve_invariants(
    surface: &GnrSurface,
    spec: &SurfaceCurveSpec,
    t: f64,
) -> Result<CurveOnSurfaceInvariants, SurfaceError> {
    let (sj, uj) = spec.jets(t)?;
    let (s, u) = (sj.value(), uj.value());
    let local = developable_local(surface, s)?;
    // Convert the s-velocity to arclength: dsigma/dt = v s', d2sigma/dt2 = v' s'^2 + v s''.
    let (v, vp) = (local.speed, local.speed_prime);
    let c = v * sj.derivative(1);
    let c_dot = vp * sj.derivative(1).powi(2) + v * sj.derivative(2);
    let d = uj.derivative(1);
    let d_dot = uj.derivative(2);

    let g = local.g(u);
    let (p, q) = (local.p(), local.q());
    let e = g * g + u * u * (p * p + q * q);
    let norm = (c * c * e + d * d).sqrt();
    if (norm - 1.0).abs() > tolerance::UNIT_SPEED_TOLERANCE {
        return Err(SurfaceError::NotUnitTangent { t, norm });
    }
    let (g_s, g_u) = (local.g_s(u), local.g_u());
    let a2k = local.a2[0] * local.kappa;
    Ok(CurveOnSurfaceInvariants {
        kappa_g: c * g * (d_dot - c * c * g * g_u) - d * (c * c * g_s + 2.0 * c * d * g_u + c_dot * g),
        tau_g: c * d * a2k,
        k_n: c * c * a2k * g,
    })
}

/// Largest `|kappa_g|` over `t_samples`.
pub fn geodesic_residual(
    surface: &GnrSurface,
    spec: &SurfaceCurveSpec,
    t_samples: &[f64],
) -> Result<f64, SurfaceError> {
    t_samples.iter().try_fold(0.0f64, |acc, &t| {
        Ok(acc.max(curve_invariants(surface, spec, t)?.kappa_g.abs()))
    })
}
