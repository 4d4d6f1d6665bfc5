use super::{GnrSurface, LocalGeometry, SurfaceError};
use crate::curve::Vec3;
use crate::grid::{Interval, SampleGrid};
use crate::oracle::{find_roots, Root};
use crate::parallel;
use crate::tolerance;

/// Central point of the ruling through `alpha(s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrictionSample {
    pub s: f64,
    pub u_star: f64,
    pub point: Vec3,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularSample {
    pub s: f64,
    pub u: f64,
    pub point: Vec3,
}

/// Points with `f = 0` and `g = 0`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SingularLocus {
    pub samples: Vec<SingularSample>,
    /// `f` vanished on the whole grid: the samples trace a curve `u(s)`.
    pub developable: bool,
}

impl SingularLocus {
    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// A grid-wide predicate with the largest residual and where it occurred.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verdict {
    pub holds: bool,
    pub value: f64,
    pub witness_s: f64,
    pub witness_u: Option<f64>,
}

impl Verdict {
    fn max_abs(values: impl IntoIterator<Item = (f64, Option<f64>, f64)>, threshold: f64) -> Self {
        let mut best = Verdict {
            holds: true,
            value: 0.0,
            witness_s: f64::NAN,
            witness_u: None,
        };
        for (s, u, v) in values {
            if best.witness_s.is_nan() || v.abs() > best.value {
                best.value = v.abs();
                best.witness_s = s;
                best.witness_u = u;
            }
        }
        best.holds = best.value <= threshold;
        best
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassificationReport {
    /// No singular point on the sampled domain; `value` is the smallest
    /// `u^2 f^2 + g^2` seen on the grid.
    pub regular: Verdict,
    /// `max |f| <= 1e-8`.
    pub developable: Verdict,
    /// `max |q_n'| <= 1e-8`.
    pub cylindrical: Verdict,
    /// `max |H| <= 1e-7` over regular grid points.
    pub minimal_candidate: Verdict,
    /// `a1 = 0`: ruled by binormals.
    pub binormal: Verdict,
    /// `a2 = 0`: ruled by principal normals.
    pub principal_normal: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaseCurveTests {
    /// `a1 kappa = 0`.
    pub geodesic: Verdict,
    /// `a2 kappa = 0`.
    pub asymptotic: Verdict,
    /// `a1' - a2 tau = 0` and `a2' + a1 tau = 0`.
    pub line_of_curvature: Verdict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KhIdentity {
    pub max_residual: f64,
    /// Singular grid points left out.
    pub skipped: Vec<(f64, f64)>,
}

impl LocalGeometry {
    /// `u* = a1 kappa / |q_n'|^2`.
    pub fn striction(&self) -> Result<StrictionSample, SurfaceError> {
        let denom = self.ruling_prime_norm_squared();
        if denom < tolerance::STRICTION_DENOMINATOR {
            return Err(SurfaceError::CylindricalRuling {
                s: self.s,
                norm_squared: denom,
            });
        }
        let u_star = self.a1[0] * self.kappa / denom;
        Ok(StrictionSample {
            s: self.s,
            u_star,
            point: self.position + self.ruling() * u_star,
        })
    }

    fn singular_sample(&self) -> Option<SingularSample> {
        let k = self.a1[0] * self.kappa;
        if k.abs() <= tolerance::SINGULAR_PARAMETER_FLOOR {
            return None;
        }
        let u = 1.0 / k;
        Some(SingularSample {
            s: self.s,
            u,
            point: self.position + self.ruling() * u,
        })
    }
}

impl GnrSurface {
    pub fn striction_parameter(&self, s: f64) -> Result<StrictionSample, SurfaceError> {
        self.local(s)?.striction()
    }

    /// Singular points over `s_samples`, from the direct characterization
    /// `f = 0`, `g = 0`. Isolated roots of `f` are refined by bisection; when
    /// `f` vanishes on every sample the whole curve `u = 1/(a1 kappa)` is
    /// returned at the samples.
    pub fn singular_locus(&self, s_samples: &[f64]) -> Result<SingularLocus, SurfaceError> {
        let locals = self.locals(s_samples)?;
        if locals.iter().all(|l| l.f().abs() <= tolerance::CHAR_ZERO) {
            return Ok(SingularLocus {
                samples: locals.iter().filter_map(LocalGeometry::singular_sample).collect(),
                developable: true,
            });
        }
        let roots = find_roots(
            |s| self.local(s).map(|l| l.f()),
            s_samples,
            tolerance::ROOT_TOLERANCE,
            tolerance::ROOT_PLATEAU,
        )?;
        let mut samples = Vec::new();
        for root in roots {
            match root {
                Root::Point(s) => samples.extend(self.local(s)?.singular_sample()),
                Root::Interval(iv) => samples.extend(
                    locals
                        .iter()
                        .filter(|l| l.s >= iv.min && l.s <= iv.max)
                        .filter_map(LocalGeometry::singular_sample),
                ),
            }
        }
        Ok(SingularLocus {
            samples,
            developable: false,
        })
    }

    /// Grid-wide verdicts. Regularity also consults the singular locus, so
    /// singular points between grid nodes inside the `u` range are caught.
    pub fn classify(&self, grid: &SampleGrid) -> Result<ClassificationReport, SurfaceError> {
        let locals = self.locals(&grid.s)?;
        let points: Vec<_> = locals
            .iter()
            .flat_map(|l| grid.u.iter().map(move |&u| l.point(u)))
            .collect();
        let locus = self.singular_locus(&grid.s)?;
        let u_range = Interval {
            min: grid.u.iter().cloned().fold(f64::INFINITY, f64::min),
            max: grid.u.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        };

        let mut regular = Verdict {
            holds: true,
            value: f64::INFINITY,
            witness_s: f64::NAN,
            witness_u: None,
        };
        for l in &locals {
            for &u in &grid.u {
                let w2 = l.normal_norm_squared(u);
                if w2 < regular.value {
                    regular.value = w2;
                    regular.witness_s = l.s;
                    regular.witness_u = Some(u);
                }
            }
        }
        regular.holds = regular.value >= tolerance::SINGULAR_NORM_SQUARED;
        if let Some(hit) = locus.samples.iter().find(|x| u_range.contains(x.u)) {
            regular.holds = false;
            regular.value = 0.0;
            regular.witness_s = hit.s;
            regular.witness_u = Some(hit.u);
        }

        let per_s = |f: fn(&LocalGeometry) -> f64| locals.iter().map(move |l| (l.s, None, f(l)));
        Ok(ClassificationReport {
            regular,
            developable: Verdict::max_abs(per_s(LocalGeometry::f), tolerance::CHAR_ZERO),
            cylindrical: Verdict::max_abs(per_s(|l| l.ruling_prime_norm_squared().sqrt()), tolerance::CYLINDRICAL),
            minimal_candidate: Verdict::max_abs(
                points.iter().filter_map(|p| p.h.map(|h| (p.s, Some(p.u), h))),
                tolerance::MINIMAL,
            ),
            binormal: Verdict::max_abs(per_s(|l| l.a1[0]), tolerance::SPECIAL_COEFFICIENT),
            principal_normal: Verdict::max_abs(per_s(|l| l.a2[0]), tolerance::SPECIAL_COEFFICIENT),
        })
    }

    /// Geodesic, asymptotic and line-of-curvature tests for the base curve.
    pub fn base_curve_tests(&self, s_samples: &[f64]) -> Result<BaseCurveTests, SurfaceError> {
        let locals = self.locals(s_samples)?;
        let per_s = |f: fn(&LocalGeometry) -> f64| locals.iter().map(move |l| (l.s, None, f(l)));
        let tol = tolerance::BASE_CURVE_RESIDUAL;
        Ok(BaseCurveTests {
            geodesic: Verdict::max_abs(per_s(|l| l.a1[0] * l.kappa), tol),
            asymptotic: Verdict::max_abs(per_s(|l| l.a2[0] * l.kappa), tol),
            line_of_curvature: Verdict::max_abs(per_s(|l| l.p().abs().max(l.q().abs())), tol),
        })
    }

    /// Largest `|K L + 2 H M^2|` over the regular grid points.
    pub fn check_kh_identity(&self, grid: &SampleGrid) -> Result<KhIdentity, SurfaceError> {
        let points = self.evaluate_grid(grid)?;
        let residuals = parallel::map(self.execution, &points, |p| match (p.k, p.h, p.l, p.m) {
            (Some(k), Some(h), Some(l), Some(m)) => Ok((k * l + 2.0 * h * m * m).abs()),
            _ => Err((p.s, p.u)),
        });
        let mut out = KhIdentity {
            max_residual: 0.0,
            skipped: Vec::new(),
        };
        for r in residuals {
            match r {
                Ok(v) => out.max_residual = out.max_residual.max(v),
                Err(point) => out.skipped.push(point),
            }
        }
        Ok(out)
    }
}
