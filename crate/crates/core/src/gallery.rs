//! Reference surfaces with known closed forms.

use crate::curve::{FramePolicy, ParametricCurve3, Vec3};
use crate::grid::Interval;
use crate::surface::{GnrSurface, RulingCoefficients, SurfaceOptions};
use std::f64::consts::{PI, TAU};

fn iv(a: f64, b: f64) -> Interval {
    Interval::new(a, b).expect("valid interval")
}

fn build(base: ParametricCurve3, ruling: RulingCoefficients, options: SurfaceOptions) -> GnrSurface {
    GnrSurface::new(base, ruling, options).expect("reference surface is valid")
}

/// `(0, 0, s)` with `q_n = (cos s, sin s, 0)`: the right helicoid.
pub fn helicoid() -> GnrSurface {
    build(
        ParametricCurve3::from_strings("0", "0", "s", iv(0.0, TAU)).unwrap(),
        RulingCoefficients::from_strings("cos(s)", "sin(s)").unwrap(),
        SurfaceOptions {
            frame_policy: FramePolicy::fixed(Vec3::x()),
            u_range: iv(-2.0, 2.0),
            compat_parameter_derivatives: false,
        },
    )
}

/// Unit-speed circular helix `(cos(s/sqrt2), sin(s/sqrt2), s/sqrt2)`.
pub fn circular_helix_curve(domain: Interval) -> ParametricCurve3 {
    ParametricCurve3::from_strings("cos(s/sqrt(2))", "sin(s/sqrt(2))", "s/sqrt(2)", domain).unwrap()
}

/// Developable surface over the circular helix with `a1 = sin(s/2)`, `a2 = cos(s/2)`.
pub fn cylindrical_helix() -> GnrSurface {
    build(
        circular_helix_curve(iv(0.0, 4.0 * PI)),
        RulingCoefficients::from_strings("sin(s/2)", "cos(s/2)").unwrap(),
        SurfaceOptions {
            u_range: iv(-1.5, 1.5),
            ..Default::default()
        },
    )
}

/// Unit-speed pedal curve; its curvature vanishes at `s = +-pi`.
pub fn pedal_curve(domain: Interval) -> ParametricCurve3 {
    ParametricCurve3::from_strings(
        "1.5*cos(s/2) + (1/6)*cos(3*s/2)",
        "1.5*sin(s/2) + (1/6)*sin(3*s/2)",
        "sqrt(3)*cos(s/2)",
        domain,
    )
    .unwrap()
}

/// Pedal curve with `a1 = cos(s/2)`, `a2 = sin(s/2)` on `[-3.1, 3.1]`.
pub fn pedal() -> GnrSurface {
    build(
        pedal_curve(iv(-3.1, 3.1)),
        RulingCoefficients::from_strings("cos(s/2)", "sin(s/2)").unwrap(),
        SurfaceOptions {
            u_range: iv(-2.0, 2.0),
            ..Default::default()
        },
    )
}

/// `(sqrt(1+s^2), s, asinh s)` (speed `sqrt 2`) with `a1 = s`,
/// `a2 = sqrt(1-s^2)`, evaluated in the raw parameter.
pub fn asinh_helix() -> GnrSurface {
    build(
        ParametricCurve3::from_strings("sqrt(1+s^2)", "s", "ln(s+sqrt(1+s^2))", iv(-0.9, 0.9)).unwrap(),
        RulingCoefficients::from_strings("s", "sqrt(1-s^2)").unwrap(),
        SurfaceOptions {
            u_range: iv(-2.0, 2.0),
            compat_parameter_derivatives: true,
            ..Default::default()
        },
    )
}

/// Binormal surface of the unit circle: a cylinder.
pub fn cylinder() -> GnrSurface {
    build(
        ParametricCurve3::from_strings("cos(s)", "sin(s)", "0", iv(0.0, 6.0)).unwrap(),
        RulingCoefficients::from_strings("0", "1").unwrap(),
        SurfaceOptions {
            u_range: iv(-1.0, 1.0),
            ..Default::default()
        },
    )
}

/// Ruling angle `theta = -s/2` over the circular helix, so `theta' = -tau`.
pub fn helix_tangent_aligned() -> GnrSurface {
    build(
        circular_helix_curve(iv(-3.0, 3.0)),
        RulingCoefficients::angle_from_string("-s/2").unwrap(),
        SurfaceOptions {
            u_range: iv(-1.5, 1.5),
            ..Default::default()
        },
    )
}

/// Ruling angle `theta = -sqrt(3) cos(s/2)` over the pedal curve, so `theta' = -tau`.
pub fn pedal_tangent_aligned() -> GnrSurface {
    build(
        pedal_curve(iv(1.0, 3.0)),
        RulingCoefficients::angle_from_string("-sqrt(3)*cos(s/2)").unwrap(),
        SurfaceOptions {
            u_range: iv(-1.0, 1.0),
            ..Default::default()
        },
    )
}
