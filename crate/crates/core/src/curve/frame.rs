use super::{CurveError, ParametricCurve3, Vec3};

/// Curvature below which a curve counts as straight at a point.
pub const CURVATURE_THRESHOLD: f64 = 1e-9;
/// Allowed `| |alpha'| - 1 |` for a curve to count as unit speed.
pub const UNIT_SPEED_TOLERANCE: f64 = 1e-6;

const POLICY_TOLERANCE: f64 = 1e-9;
const TRANSPORT_STEPS: usize = 512;

/// How to pick `N` and `B` where the curve is straight.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum FramePolicy {
    /// Refuse: straight points are [`CurveError::DegenerateFrame`].
    #[default]
    Strict,
    /// Constant unit normal `N0`, perpendicular to the tangent; `B0 = T x N0`.
    FixedFrame { normal: Vec3 },
    /// Normal transported from the start of the domain by double reflection.
    /// Without an explicit initial normal one perpendicular to `T` is chosen.
    RotationMinimizing { initial_normal: Option<Vec3> },
}

impl FramePolicy {
    /// Fixed frame from `N0` and an optional `B0` that must equal `T x N0`
    /// wherever it is used.
    pub fn fixed(normal: Vec3) -> Self {
        FramePolicy::FixedFrame { normal }
    }
}

/// Frenet apparatus at one parameter value. Derivatives are taken with
/// respect to the curve's own parameter; `speed` is `|alpha'|` there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrenetApparatus {
    pub tangent: Vec3,
    pub normal: Vec3,
    pub binormal: Vec3,
    pub curvature: f64,
    pub torsion: f64,
    pub curvature_prime: f64,
    pub torsion_prime: f64,
    pub speed: f64,
    pub speed_prime: f64,
    /// The frame came from the policy rather than from the curve.
    pub policy_frame: bool,
}

fn det(a: &Vec3, b: &Vec3, c: &Vec3) -> f64 {
    a.dot(&b.cross(c))
}

/// Frenet apparatus from the arclength formulas `T = alpha'`, `kappa = |alpha''|`,
/// `tau = det(alpha', alpha'', alpha''')/kappa^2`. The curve must be unit speed.
pub fn frenet_at(curve: &ParametricCurve3, s: f64, policy: &FramePolicy) -> Result<FrenetApparatus, CurveError> {
    let d = curve.derivatives(s)?;
    let speed = d[1].norm();
    if (speed - 1.0).abs() > UNIT_SPEED_TOLERANCE {
        return Err(CurveError::NotUnitSpeed { s, speed });
    }
    let tangent = d[1] / speed;
    let curvature = d[2].norm();
    if curvature < CURVATURE_THRESHOLD {
        return policy_frame(curve, s, tangent, speed, policy, curvature);
    }
    let along = d[2] - tangent * d[2].dot(&tangent);
    let normal = along.normalize();
    let binormal = tangent.cross(&normal);
    let torsion = det(&d[1], &d[2], &d[3]) / (curvature * curvature);
    let curvature_prime = d[2].dot(&d[3]) / curvature;
    let torsion_prime =
        det(&d[1], &d[2], &d[4]) / (curvature * curvature) - 2.0 * torsion * curvature_prime / curvature;
    Ok(FrenetApparatus {
        tangent,
        normal,
        binormal,
        curvature,
        torsion,
        curvature_prime,
        torsion_prime,
        speed,
        speed_prime: d[1].dot(&d[2]) / speed,
        policy_frame: false,
    })
}

/// Frenet apparatus from the parametrization-invariant formulas
/// `kappa = |a' x a''|/|a'|^3`, `tau = det(a', a'', a''')/|a' x a''|^2`.
/// Derivatives of `kappa` and `tau` are with respect to the raw parameter.
pub fn frenet_at_raw(curve: &ParametricCurve3, s: f64, policy: &FramePolicy) -> Result<FrenetApparatus, CurveError> {
    let d = curve.derivatives(s)?;
    let speed = d[1].norm();
    if speed < 1e-9 {
        return Err(CurveError::NonRegular { s, speed });
    }
    let tangent = d[1] / speed;
    let speed_prime = d[1].dot(&d[2]) / speed;
    let c = d[1].cross(&d[2]);
    let c_norm = c.norm();
    let curvature = c_norm / speed.powi(3);
    if curvature < CURVATURE_THRESHOLD {
        return policy_frame(curve, s, tangent, speed, policy, curvature).map(|mut f| {
            f.speed_prime = speed_prime;
            f
        });
    }
    let binormal = c / c_norm;
    let normal = binormal.cross(&tangent);
    let c_prime = d[1].cross(&d[3]);
    let c_norm_prime = c.dot(&c_prime) / c_norm;
    let curvature_prime = c_norm_prime / speed.powi(3) - 3.0 * c_norm * speed_prime / speed.powi(4);
    let triple = det(&d[1], &d[2], &d[3]);
    let c2 = c_norm * c_norm;
    let torsion = triple / c2;
    let torsion_prime = det(&d[1], &d[2], &d[4]) / c2 - 2.0 * triple * c.dot(&c_prime) / (c2 * c2);
    Ok(FrenetApparatus {
        tangent,
        normal,
        binormal,
        curvature,
        torsion,
        curvature_prime,
        torsion_prime,
        speed,
        speed_prime,
        policy_frame: false,
    })
}

/// `det(a', a'', a''')/|a' x a''|^2`, valid for any regular parametrization.
pub fn torsion_invariant(curve: &ParametricCurve3, s: f64) -> Result<f64, CurveError> {
    let d = curve.derivatives(s)?;
    let c = d[1].cross(&d[2]);
    let curvature = c.norm() / d[1].norm().powi(3);
    if curvature < CURVATURE_THRESHOLD {
        return Err(CurveError::DegenerateFrame { s, curvature });
    }
    Ok(det(&d[1], &d[2], &d[3]) / c.norm_squared())
}

fn policy_frame(
    curve: &ParametricCurve3,
    s: f64,
    tangent: Vec3,
    speed: f64,
    policy: &FramePolicy,
    curvature: f64,
) -> Result<FrenetApparatus, CurveError> {
    let normal = match policy {
        FramePolicy::Strict => return Err(CurveError::DegenerateFrame { s, curvature }),
        FramePolicy::FixedFrame { normal } => {
            if (normal.norm() - 1.0).abs() > POLICY_TOLERANCE {
                return Err(CurveError::InvalidFramePolicy(format!(
                    "fixed normal {normal:?} is not a unit vector"
                )));
            }
            if normal.dot(&tangent).abs() > POLICY_TOLERANCE {
                return Err(CurveError::InvalidFramePolicy(format!(
                    "fixed normal {:?} is not perpendicular to the tangent {:?} at s = {s}",
                    normal, tangent
                )));
            }
            *normal
        }
        FramePolicy::RotationMinimizing { initial_normal } => transported_normal(curve, s, *initial_normal)?,
    };
    Ok(FrenetApparatus {
        tangent,
        normal,
        binormal: tangent.cross(&normal),
        curvature: 0.0,
        torsion: 0.0,
        curvature_prime: 0.0,
        torsion_prime: 0.0,
        speed,
        speed_prime: 0.0,
        policy_frame: true,
    })
}

fn any_perpendicular(t: &Vec3) -> Vec3 {
    let seed = if t.x.abs() < 0.9 { Vec3::x() } else { Vec3::y() };
    (seed - t * seed.dot(t)).normalize()
}

/// Double-reflection transport of a normal from the start of the domain to `s`.
fn transported_normal(curve: &ParametricCurve3, s: f64, initial: Option<Vec3>) -> Result<Vec3, CurveError> {
    let start = curve.domain().min;
    let tangent_at = |x: f64| -> Result<Vec3, CurveError> {
        let d = curve.derivatives(x)?;
        let v = d[1].norm();
        if v < 1e-9 {
            return Err(CurveError::NonRegular { s: x, speed: v });
        }
        Ok(d[1] / v)
    };
    let mut t_prev = tangent_at(start)?;
    let mut r = match initial {
        Some(n) => {
            let projected = n - t_prev * n.dot(&t_prev);
            if projected.norm() < POLICY_TOLERANCE {
                return Err(CurveError::InvalidFramePolicy(
                    "initial normal is parallel to the tangent".into(),
                ));
            }
            projected.normalize()
        }
        None => any_perpendicular(&t_prev),
    };
    let mut x_prev = curve.position(start)?;
    for i in 1..=TRANSPORT_STEPS {
        let si = start + (s - start) * i as f64 / TRANSPORT_STEPS as f64;
        let xi = curve.position(si)?;
        let ti = tangent_at(si)?;
        let v1 = xi - x_prev;
        let c1 = v1.norm_squared();
        if c1 > 0.0 {
            let r_l = r - v1 * (2.0 / c1 * v1.dot(&r));
            let t_l = t_prev - v1 * (2.0 / c1 * v1.dot(&t_prev));
            let v2 = ti - t_l;
            let c2 = v2.norm_squared();
            r = if c2 > 0.0 {
                r_l - v2 * (2.0 / c2 * v2.dot(&r_l))
            } else {
                r_l
            };
        }
        x_prev = xi;
        t_prev = ti;
    }
    Ok((r - t_prev * r.dot(&t_prev)).normalize())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpeedReport {
    pub is_unit_speed: bool,
    pub max_deviation: f64,
}

/// Largest `| |alpha'| - 1 |` over `samples` uniform points of the domain.
pub fn speed_check(curve: &ParametricCurve3, samples: usize) -> Result<SpeedReport, CurveError> {
    let grid = curve.domain().samples(samples).map_err(|_| CurveError::TooFewSamples {
        needed: 2,
        got: samples,
    })?;
    let mut max_deviation: f64 = 0.0;
    for s in grid {
        max_deviation = max_deviation.max((curve.speed(s)? - 1.0).abs());
    }
    Ok(SpeedReport {
        is_unit_speed: max_deviation <= UNIT_SPEED_TOLERANCE,
        max_deviation,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelixTest {
    pub is_helix: bool,
    /// `max - min` of `tau/kappa` over the samples.
    pub ratio_spread: f64,
    pub mean_ratio: f64,
}

/// General-helix test: `tau/kappa` constant over `samples` uniform points.
pub fn is_general_helix(curve: &ParametricCurve3, samples: usize) -> Result<HelixTest, CurveError> {
    let grid = curve.domain().samples(samples).map_err(|_| CurveError::TooFewSamples {
        needed: 2,
        got: samples,
    })?;
    let ratios = grid
        .iter()
        .map(|&s| {
            let f = frenet_at_raw(curve, s, &FramePolicy::Strict)?;
            Ok(f.torsion / f.curvature)
        })
        .collect::<Result<Vec<f64>, CurveError>>()?;
    let (lo, hi) = ratios.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &r| {
        (lo.min(r), hi.max(r))
    });
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let spread = hi - lo;
    Ok(HelixTest {
        is_helix: spread <= 1e-6 * mean.abs().max(1.0),
        ratio_spread: spread,
        mean_ratio: mean,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Interval;
    use approx::assert_relative_eq;

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    fn z_axis() -> ParametricCurve3 {
        ParametricCurve3::from_strings("0", "0", "s", Interval::new(0.0, 6.3).unwrap()).unwrap()
    }

    fn circular_helix() -> ParametricCurve3 {
        ParametricCurve3::from_strings(
            "cos(s/sqrt(2))",
            "sin(s/sqrt(2))",
            "s/sqrt(2)",
            Interval::new(0.0, 12.0).unwrap(),
        )
        .unwrap()
    }

    fn pedal() -> ParametricCurve3 {
        ParametricCurve3::from_strings(
            "1.5*cos(s/2) + (1/6)*cos(3*s/2)",
            "1.5*sin(s/2) + (1/6)*sin(3*s/2)",
            "sqrt(3)*cos(s/2)",
            Interval::new(-3.0, 3.0).unwrap(),
        )
        .unwrap()
    }

    fn asinh_curve() -> ParametricCurve3 {
        ParametricCurve3::from_strings(
            "sqrt(1+s^2)",
            "s",
            "ln(s+sqrt(1+s^2))",
            Interval::new(-0.9, 0.9).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn speed_checks() {
        let r = speed_check(&z_axis(), 16).unwrap();
        assert!(r.is_unit_speed);
        assert_eq!(r.max_deviation, 0.0);
        let r = speed_check(&circular_helix(), 64).unwrap();
        assert!(r.is_unit_speed && r.max_deviation <= 1e-12);
        let r = speed_check(&asinh_curve(), 33).unwrap();
        assert!(!r.is_unit_speed);
        assert_relative_eq!(r.max_deviation, SQRT2 - 1.0, epsilon = 1e-12);
        assert!(speed_check(&z_axis(), 1).is_err());
    }

    #[test]
    fn helix_frame_at_zero() {
        let f = frenet_at(&circular_helix(), 0.0, &FramePolicy::Strict).unwrap();
        assert_relative_eq!(f.curvature, 0.5, epsilon = 1e-14);
        assert_relative_eq!(f.torsion, 0.5, epsilon = 1e-14);
        assert!((f.tangent - Vec3::new(0.0, 1.0 / SQRT2, 1.0 / SQRT2)).norm() < 1e-14);
        assert!((f.normal - Vec3::new(-1.0, 0.0, 0.0)).norm() < 1e-14);
        assert!(f.curvature_prime.abs() < 1e-14 && f.torsion_prime.abs() < 1e-14);
    }

    #[test]
    fn straight_line_frames() {
        let line = z_axis();
        let err = frenet_at(&line, 1.0, &FramePolicy::Strict).unwrap_err();
        assert!(matches!(err, CurveError::DegenerateFrame { .. }));
        let f = frenet_at(&line, 1.0, &FramePolicy::fixed(Vec3::x())).unwrap();
        assert_eq!(f.curvature, 0.0);
        assert_eq!(f.torsion, 0.0);
        assert_eq!(f.normal, Vec3::x());
        assert_eq!(f.binormal, Vec3::y());
        assert!(f.policy_frame);
        let bad = frenet_at(&line, 1.0, &FramePolicy::fixed(Vec3::z()));
        assert!(matches!(bad, Err(CurveError::InvalidFramePolicy(_))));
        let rmf = frenet_at(
            &line,
            4.0,
            &FramePolicy::RotationMinimizing {
                initial_normal: Some(Vec3::y()),
            },
        )
        .unwrap();
        assert!((rmf.normal - Vec3::y()).norm() < 1e-12);
        assert!((rmf.binormal - Vec3::new(-1.0, 0.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn pedal_frame_at_zero() {
        let f = frenet_at(&pedal(), 0.0, &FramePolicy::Strict).unwrap();
        let r3 = 3f64.sqrt();
        assert!((f.tangent - Vec3::new(0.0, 1.0, 0.0)).norm() < 1e-13);
        assert!((f.normal - Vec3::new(-r3 / 2.0, 0.0, -0.5)).norm() < 1e-13);
        assert!((f.binormal - Vec3::new(-0.5, 0.0, r3 / 2.0)).norm() < 1e-13);
    }

    #[test]
    fn non_unit_speed_is_rejected_in_strict_mode() {
        let err = frenet_at(&asinh_curve(), 0.3, &FramePolicy::Strict).unwrap_err();
        assert!(matches!(err, CurveError::NotUnitSpeed { .. }));
        // the invariant formulas still work, and agree with the printed frame
        let f = frenet_at_raw(&asinh_curve(), 0.3, &FramePolicy::Strict).unwrap();
        let s: f64 = 0.3;
        let r = (1.0 + s * s).sqrt();
        assert!((f.normal - Vec3::new(1.0 / r, 0.0, -s / r)).norm() < 1e-13);
        assert!((f.binormal - Vec3::new(-SQRT2 * s / (2.0 * r), SQRT2 / 2.0, -SQRT2 / (2.0 * r))).norm() < 1e-13);
        assert_relative_eq!(f.curvature, 1.0 / (2.0 * r * r), epsilon = 1e-14);
        assert_relative_eq!(f.torsion, 1.0 / (2.0 * r * r), epsilon = 1e-14);
    }

    #[test]
    fn helix_detection() {
        let h = is_general_helix(&circular_helix(), 50).unwrap();
        assert!(h.is_helix && h.ratio_spread <= 1e-10);
        let circle = ParametricCurve3::from_strings("cos(s)", "sin(s)", "0", Interval::new(0.0, 6.0).unwrap()).unwrap();
        let h = is_general_helix(&circle, 20).unwrap();
        assert!(h.is_helix);
        assert_eq!(h.ratio_spread, 0.0);
        let h = is_general_helix(&pedal(), 50).unwrap();
        assert!(!h.is_helix && h.ratio_spread > 1e-3);
        assert!(is_general_helix(&z_axis(), 5).is_err());
    }
}
