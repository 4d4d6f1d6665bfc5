//! Reference values by finite differences, quadrature and root bracketing.
//!
//! Nothing here reads Frenet data: surfaces are plain maps `(s, u) -> R^3`.

use crate::curve::Vec3;
use crate::expr::{eval_scalar, ExprNode};
use crate::grid::Interval;
use thiserror::Error;

/// Result of evaluating a surface map; failures carry a message.
pub type MapResult = Result<Vec3, String>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("invalid oracle configuration: {0}")]
    InvalidConfig(String),
    #[error("singular point at (s, u) = ({s}, {u}): |F_s x F_u| = {norm}")]
    SingularPoint { s: f64, u: f64, norm: f64 },
    #[error("map evaluation failed at (s, u) = ({s}, {u}): {message}")]
    Map { s: f64, u: f64, message: String },
    #[error("integrand is not finite at {x}")]
    NonFinite { x: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub fd_step: f64,
    pub richardson_levels: usize,
    pub quad_tol: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            fd_step: 1e-5,
            richardson_levels: 2,
            quad_tol: 1e-10,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<(), OracleError> {
        if !(1e-8..=1e-2).contains(&self.fd_step) {
            return Err(OracleError::InvalidConfig(format!(
                "fd_step {} outside [1e-8, 1e-2]",
                self.fd_step
            )));
        }
        if self.richardson_levels > 6 {
            return Err(OracleError::InvalidConfig("richardson_levels above 6".into()));
        }
        if self.quad_tol.is_nan() || self.quad_tol <= 0.0 {
            return Err(OracleError::InvalidConfig("quad_tol must be positive".into()));
        }
        Ok(())
    }

    fn step(&self, s: f64, u: f64) -> f64 {
        self.fd_step * 1f64.max(s.abs()).max(u.abs())
    }

    /// Second derivatives use a larger base step: rounding error grows as `h^-2`.
    fn second_step(&self, s: f64, u: f64) -> f64 {
        self.fd_step.sqrt() * 1f64.max(s.abs()).max(u.abs())
    }
}

/// Richardson extrapolation of an `O(h^2)` difference quotient `d(h)`
/// over the step sequence `h, h/2, ..., h/2^levels`.
pub fn richardson<E>(h: f64, levels: usize, mut d: impl FnMut(f64) -> Result<Vec3, E>) -> Result<Vec3, E> {
    let mut table = Vec::with_capacity(levels + 1);
    for i in 0..=levels {
        table.push(d(h / f64::powi(2.0, i as i32))?);
    }
    for level in 1..=levels {
        let factor = f64::powi(4.0, level as i32);
        for i in (level..=levels).rev() {
            table[i] = (table[i] * factor - table[i - 1]) / (factor - 1.0);
        }
    }
    Ok(table[levels])
}

/// First and second partials of a surface map at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdPartials {
    pub position: Vec3,
    pub fs: Vec3,
    pub fu: Vec3,
    pub fss: Vec3,
    pub fsu: Vec3,
    pub fuu: Vec3,
}

pub fn fd_partials<M>(map: &M, s: f64, u: f64, cfg: &OracleConfig) -> Result<FdPartials, OracleError>
where
    M: Fn(f64, f64) -> MapResult,
{
    cfg.validate()?;
    let at = |x: f64, y: f64| map(x, y).map_err(|message| OracleError::Map { s: x, u: y, message });
    let position = at(s, u)?;
    let h1 = cfg.step(s, u);
    let h2 = cfg.second_step(s, u);
    let levels = cfg.richardson_levels;
    let fs = richardson(h1, levels, |h| Ok((at(s + h, u)? - at(s - h, u)?) / (2.0 * h)))?;
    let fu = richardson(h1, levels, |h| Ok((at(s, u + h)? - at(s, u - h)?) / (2.0 * h)))?;
    let fss = richardson(h2, levels, |h| {
        Ok((at(s + h, u)? - position * 2.0 + at(s - h, u)?) / (h * h))
    })?;
    let fuu = richardson(h2, levels, |h| {
        Ok((at(s, u + h)? - position * 2.0 + at(s, u - h)?) / (h * h))
    })?;
    let fsu = richardson(h2, levels, |h| {
        Ok((at(s + h, u + h)? - at(s + h, u - h)? - at(s - h, u + h)? + at(s - h, u - h)?) / (4.0 * h * h))
    })?;
    Ok(FdPartials {
        position,
        fs,
        fu,
        fss,
        fsu,
        fuu,
    })
}

/// Fundamental coefficients and unit normal `U = F_s x F_u / |F_s x F_u|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdForms {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
    pub normal: Vec3,
}

impl FdForms {
    pub fn gaussian_curvature(&self) -> f64 {
        (self.l * self.n - self.m * self.m) / (self.e * self.g - self.f * self.f)
    }

    pub fn mean_curvature(&self) -> f64 {
        (self.e * self.n - 2.0 * self.f * self.m + self.g * self.l) / (2.0 * (self.e * self.g - self.f * self.f))
    }
}

const ORACLE_SINGULAR_NORM: f64 = 1e-10;

pub fn forms_from_partials(p: &FdPartials, s: f64, u: f64) -> Result<FdForms, OracleError> {
    let cross = p.fs.cross(&p.fu);
    let norm = cross.norm();
    if norm <= ORACLE_SINGULAR_NORM {
        return Err(OracleError::SingularPoint { s, u, norm });
    }
    let normal = cross / norm;
    Ok(FdForms {
        e: p.fs.dot(&p.fs),
        f: p.fs.dot(&p.fu),
        g: p.fu.dot(&p.fu),
        l: p.fss.dot(&normal),
        m: p.fsu.dot(&normal),
        n: p.fuu.dot(&normal),
        normal,
    })
}

pub fn fd_fundamental_forms<M>(map: &M, s: f64, u: f64, cfg: &OracleConfig) -> Result<FdForms, OracleError>
where
    M: Fn(f64, f64) -> MapResult,
{
    forms_from_partials(&fd_partials(map, s, u, cfg)?, s, u)
}

/// `(K, H)` from finite-difference fundamental forms.
pub fn fd_curvatures<M>(map: &M, s: f64, u: f64, cfg: &OracleConfig) -> Result<(f64, f64), OracleError>
where
    M: Fn(f64, f64) -> MapResult,
{
    let forms = fd_fundamental_forms(map, s, u, cfg)?;
    Ok((forms.gaussian_curvature(), forms.mean_curvature()))
}

/// Unit normal from first differences only.
pub fn fd_normal<M>(map: &M, s: f64, u: f64, cfg: &OracleConfig) -> Result<Vec3, OracleError>
where
    M: Fn(f64, f64) -> MapResult,
{
    let at = |x: f64, y: f64| map(x, y).map_err(|message| OracleError::Map { s: x, u: y, message });
    let h = cfg.step(s, u);
    let fs = richardson(h, cfg.richardson_levels, |h| {
        Ok((at(s + h, u)? - at(s - h, u)?) / (2.0 * h))
    })?;
    let fu = richardson(h, cfg.richardson_levels, |h| {
        Ok((at(s, u + h)? - at(s, u - h)?) / (2.0 * h))
    })?;
    let cross = fs.cross(&fu);
    let norm = cross.norm();
    if norm <= ORACLE_SINGULAR_NORM {
        return Err(OracleError::SingularPoint { s, u, norm });
    }
    Ok(cross / norm)
}

/// Geodesic torsion `<dU/dt, v x U>` of the surface curve
/// `t -> map(s(t), u(t))`, with `v` the unit velocity. Both the velocity and the
/// normal along the curve are differentiated numerically in `t`.
pub fn fd_geodesic_torsion<M, C>(map: &M, curve: &C, t: f64, cfg: &OracleConfig) -> Result<f64, OracleError>
where
    M: Fn(f64, f64) -> MapResult,
    C: Fn(f64) -> (f64, f64),
{
    cfg.validate()?;
    let h = cfg.step(t, 0.0);
    let point = |x: f64| {
        let (s, u) = curve(x);
        map(s, u).map_err(|message| OracleError::Map { s, u, message })
    };
    let normal = |x: f64| {
        let (s, u) = curve(x);
        fd_normal(map, s, u, cfg)
    };
    let v = richardson(h, cfg.richardson_levels, |h| {
        Ok((point(t + h)? - point(t - h)?) / (2.0 * h))
    })?;
    let v = v / v.norm();
    // The normal is itself a difference quotient; a coarser outer step keeps
    // the nested rounding error in check.
    let outer = cfg.second_step(t, 0.0);
    let du = richardson(outer, cfg.richardson_levels, |h| {
        Ok((normal(t + h)? - normal(t - h)?) / (2.0 * h))
    })?;
    let n = normal(t)?;
    Ok(du.dot(&v.cross(&n)))
}

/// Adaptive Simpson quadrature of `f` over `interval` to `cfg.quad_tol`.
pub fn quad<F>(f: F, interval: Interval, cfg: &OracleConfig) -> Result<f64, OracleError>
where
    F: Fn(f64) -> f64,
{
    let eval = |x: f64| {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(OracleError::NonFinite { x })
        }
    };
    let (a, b) = (interval.min, interval.max);
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (eval(a)?, eval(m)?, eval(b)?);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(&eval, a, b, fa, fm, fb, whole, cfg.quad_tol, 50)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> Result<f64, OracleError>
where
    F: Fn(f64) -> Result<f64, OracleError>,
{
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm)?, f(rm)?);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    Ok(simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?)
}

/// [`quad`] of an expression in `s`; domain errors surface as non-finite samples.
pub fn quad_expr(expr: &ExprNode, interval: Interval, cfg: &OracleConfig) -> Result<f64, OracleError> {
    quad(|s| eval_scalar(expr, s).unwrap_or(f64::NAN), interval, cfg)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Root {
    Point(f64),
    /// Run of consecutive samples with `|f| < plateau`.
    Interval(Interval),
}

/// Roots of `f` over sorted `samples`: sign changes between neighbors refined
/// by bisection to `tol`, and runs where `|f| < plateau` reported as intervals
/// (a run of one sample is a point root).
pub fn find_roots<F, E>(mut f: F, samples: &[f64], tol: f64, plateau: f64) -> Result<Vec<Root>, E>
where
    F: FnMut(f64) -> Result<f64, E>,
{
    let values = samples.iter().map(|&x| f(x)).collect::<Result<Vec<f64>, E>>()?;
    let small = |y: f64| y.abs() < plateau;
    let mut roots = Vec::new();
    let mut i = 0;
    while i < samples.len() {
        if small(values[i]) {
            let start = i;
            while i + 1 < samples.len() && small(values[i + 1]) {
                i += 1;
            }
            roots.push(if i == start {
                Root::Point(samples[i])
            } else {
                Root::Interval(Interval {
                    min: samples[start],
                    max: samples[i],
                })
            });
            i += 1;
            continue;
        }
        if i + 1 < samples.len() && !small(values[i + 1]) && values[i].signum() != values[i + 1].signum() {
            roots.push(Root::Point(bisect(&mut f, samples[i], samples[i + 1], values[i], tol)?));
        }
        i += 1;
    }
    Ok(roots)
}

fn bisect<F, E>(f: &mut F, mut a: f64, mut b: f64, fa: f64, tol: f64) -> Result<f64, E>
where
    F: FnMut(f64) -> Result<f64, E>,
{
    let sign_a = fa.signum();
    while b - a > tol {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == sign_a {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::convert::Infallible;

    fn ok(v: Vec3) -> MapResult {
        Ok(v)
    }

    #[test]
    fn sphere_patch() {
        let sphere = |lon: f64, lat: f64| ok(Vec3::new(lat.cos() * lon.cos(), lat.cos() * lon.sin(), lat.sin()));
        let forms = fd_fundamental_forms(&sphere, 0.3, 0.0, &OracleConfig::default()).unwrap();
        assert!((forms.e - 1.0).abs() < 1e-9);
        assert!(forms.f.abs() < 1e-9);
        assert!((forms.g - 1.0).abs() < 1e-9);
        assert!((forms.gaussian_curvature() - 1.0).abs() < 1e-7);
    }

    #[test]
    fn plane_is_flat() {
        let plane = |s: f64, u: f64| ok(Vec3::new(s, u, 0.0));
        let forms = fd_fundamental_forms(&plane, 0.7, -2.0, &OracleConfig::default()).unwrap();
        assert_eq!((forms.l, forms.m, forms.n), (0.0, 0.0, 0.0));
        assert_eq!(
            fd_curvatures(&plane, 1.0, 1.0, &OracleConfig::default()).unwrap(),
            (0.0, 0.0)
        );
    }

    #[test]
    fn helicoid_values() {
        let helicoid = |s: f64, u: f64| ok(Vec3::new(u * s.cos(), u * s.sin(), s));
        let cfg = OracleConfig::default();
        let forms = fd_fundamental_forms(&helicoid, 0.0, 1.0, &cfg).unwrap();
        assert!((forms.e - 2.0).abs() < 1e-9);
        assert!((forms.gaussian_curvature() + 0.25).abs() < 1e-7);
        for &(s, u) in &[(1.0, 0.5), (4.0, -1.5)] {
            let (k, h) = fd_curvatures(&helicoid, s, u, &cfg).unwrap();
            assert!((k + 1.0 / (1.0 + u * u).powi(2)).abs() < 1e-6);
            assert!(h.abs() < 1e-6);
        }
    }

    #[test]
    fn singular_map_is_reported() {
        let cone = |s: f64, u: f64| ok(Vec3::new(u * s.cos(), u * s.sin(), u));
        let err = fd_fundamental_forms(&cone, 0.5, 0.0, &OracleConfig::default()).unwrap_err();
        assert!(matches!(err, OracleError::SingularPoint { .. }));
    }

    #[test]
    fn config_bounds() {
        let cfg = OracleConfig {
            fd_step: 1e-1,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn richardson_beats_single_step() {
        let cfg = OracleConfig {
            fd_step: 1e-2,
            ..Default::default()
        };
        let single = OracleConfig {
            richardson_levels: 0,
            ..cfg
        };
        let poly = |s: f64, u: f64| ok(Vec3::new(s.powi(5) + u * s.powi(3), s * s * u, 3.0 * s.powi(4) - u));
        let s: f64 = 0.8;
        let exact = Vec3::new(5.0 * s.powi(4) + 3.0 * s * s, 2.0 * s, 12.0 * s.powi(3));
        let err = |c: &OracleConfig| (fd_partials(&poly, s, 1.0, c).unwrap().fs - exact).norm();
        assert!(err(&cfg) * 10.0 <= err(&single));
    }

    #[test]
    fn quadrature() {
        let cfg = OracleConfig::default();
        let pi = std::f64::consts::PI;
        assert!((quad(f64::sin, Interval { min: 0.0, max: pi }, &cfg).unwrap() - 2.0).abs() < 1e-10);
        let arctan = crate::expr::parse("1/(1+s^2)").unwrap();
        let v = quad_expr(&arctan, Interval { min: 0.0, max: 1.0 }, &cfg).unwrap();
        assert!((v - pi / 4.0).abs() < 1e-10);
        let bad = crate::expr::parse("ln(s)").unwrap();
        assert!(quad_expr(&bad, Interval { min: 0.0, max: 1.0 }, &cfg).is_err());
    }

    #[test]
    fn roots() {
        let grid = Interval { min: 0.0, max: 2.0 }.samples(21).unwrap();
        let r = find_roots(|s| Ok::<_, Infallible>(s * s - 2.0), &grid, 1e-12, 1e-10).unwrap();
        match r.as_slice() {
            [Root::Point(x)] => assert!((x - std::f64::consts::SQRT_2).abs() < 1e-10),
            other => panic!("{other:?}"),
        }
        let none = find_roots(|_| Ok::<_, Infallible>(-1.0), &grid, 1e-12, 1e-10).unwrap();
        assert!(none.is_empty());
        let flat = find_roots(
            |s| Ok::<_, Infallible>(if s < 1.0 { 0.0 } else { s - 1.0 }),
            &grid,
            1e-12,
            1e-10,
        )
        .unwrap();
        assert!(matches!(flat.as_slice(), [Root::Interval(iv)] if iv.min == 0.0 && iv.max == 1.0));
    }

    #[test]
    fn pedal_f_roots() {
        let r3 = 3f64.sqrt();
        let grid = Interval {
            min: 0.0,
            max: std::f64::consts::TAU,
        }
        .samples(200)
        .unwrap();
        let r = find_roots(
            |s| Ok::<_, Infallible>(r3 / 2.0 * (s / 2.0).sin() - 0.5),
            &grid,
            1e-12,
            1e-10,
        )
        .unwrap();
        let s0 = 2.0 * (1.0 / r3).asin();
        assert_eq!(r.len(), 2);
        assert!(matches!(r[0], Root::Point(x) if (x - s0).abs() < 1e-8));
        assert!(matches!(r[1], Root::Point(x) if (x - (std::f64::consts::TAU - s0)).abs() < 1e-8));
    }
}
