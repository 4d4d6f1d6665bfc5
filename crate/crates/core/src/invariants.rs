//! Invariant suite: analytic values against the oracle plus the algebraic
//! identities every GNR-surface satisfies.

use crate::curve::Vec3;
use crate::developable::weingarten;
use crate::grid::SampleGrid;
use crate::oracle::{fd_partials, forms_from_partials, richardson, OracleConfig, OracleError};
use crate::parallel;
use crate::surface::{GnrSurface, LocalGeometry, SurfaceError, SurfacePointData};

/// Points whose unnormalized normal is shorter than this are near-singular.
pub const NEAR_SINGULAR: f64 = 1e-3;
/// Required share of regular points agreeing with the oracle.
pub const ORACLE_SHARE: f64 = 0.99;

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantCheck {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl InvariantCheck {
    fn at_most(name: &'static str, residual: f64, tolerance: f64) -> Self {
        Self {
            name,
            residual,
            tolerance,
            passed: residual <= tolerance,
        }
    }
}

/// Agreement of `E, F, G, L, M, N, K, H` with the oracle within
/// `max(1e-6, 1e-4 |value|)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleAgreement {
    pub regular_points: usize,
    pub agreeing: usize,
    /// Regular points with `sqrt(u^2 f^2 + g^2) >= 1e-3`.
    pub away_from_singular: usize,
    pub agreeing_away: usize,
    /// Largest error measured in units of the tolerance, with its location.
    pub worst_ratio: f64,
    pub worst_at: Option<(f64, f64, &'static str)>,
}

impl OracleAgreement {
    pub fn share(&self) -> f64 {
        if self.regular_points == 0 {
            1.0
        } else {
            self.agreeing as f64 / self.regular_points as f64
        }
    }

    pub fn passed(&self) -> bool {
        self.share() >= ORACLE_SHARE && self.agreeing_away == self.away_from_singular
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub oracle: OracleAgreement,
    pub checks: Vec<InvariantCheck>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.oracle.passed() && self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&InvariantCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub fn oracle_tolerance(value: f64) -> f64 {
    1e-6f64.max(1e-4 * value.abs())
}

struct PointComparison {
    near_singular: bool,
    worst_ratio: f64,
    worst_name: &'static str,
}

fn compare_point(
    surface: &GnrSurface,
    local: &LocalGeometry,
    p: &SurfacePointData,
    cfg: &OracleConfig,
) -> Result<PointComparison, SurfaceError> {
    let map = |s: f64, u: f64| surface.position(s, u).map_err(|e| e.to_string());
    let near_singular = local.normal_norm_squared(p.u).sqrt() < NEAR_SINGULAR;
    let forms = fd_partials(&map, p.s, p.u, cfg).and_then(|fd| forms_from_partials(&fd, p.s, p.u));
    let forms = match forms {
        Ok(f) => f,
        Err(OracleError::SingularPoint { .. }) => {
            return Ok(PointComparison {
                near_singular,
                worst_ratio: f64::INFINITY,
                worst_name: "normal",
            })
        }
        Err(e) => return Err(e.into()),
    };
    let pairs = [
        ("E", p.e, forms.e),
        ("F", p.f_coeff, forms.f),
        ("G", p.g_coeff, forms.g),
        ("L", p.l.unwrap_or(f64::NAN), forms.l),
        ("M", p.m.unwrap_or(f64::NAN), forms.m),
        ("N", p.n_coeff, forms.n),
        ("K", p.k.unwrap_or(f64::NAN), forms.gaussian_curvature()),
        ("H", p.h.unwrap_or(f64::NAN), forms.mean_curvature()),
    ];
    let mut worst_ratio = 0.0f64;
    let mut worst_name = "E";
    for (name, analytic, oracle) in pairs {
        let ratio = (analytic - oracle).abs() / oracle_tolerance(analytic);
        let ratio = if ratio.is_nan() { f64::INFINITY } else { ratio };
        if ratio > worst_ratio {
            worst_ratio = ratio;
            worst_name = name;
        }
    }
    Ok(PointComparison {
        near_singular,
        worst_ratio,
        worst_name,
    })
}

/// Oracle comparison at every regular grid point.
pub fn oracle_agreement(
    surface: &GnrSurface,
    grid: &SampleGrid,
    cfg: &OracleConfig,
) -> Result<OracleAgreement, SurfaceError> {
    let locals = surface.locals(&grid.s)?;
    let jobs: Vec<(usize, f64)> = (0..locals.len())
        .flat_map(|i| grid.u.iter().map(move |&u| (i, u)))
        .collect();
    let results = parallel::try_map(surface.execution(), &jobs, |&(i, u)| {
        let local = &locals[i];
        let p = local.point(u);
        if p.is_singular() {
            return Ok(None);
        }
        compare_point(surface, local, &p, cfg).map(|c| Some((p.s, p.u, c)))
    })?;
    let mut out = OracleAgreement {
        regular_points: 0,
        agreeing: 0,
        away_from_singular: 0,
        agreeing_away: 0,
        worst_ratio: 0.0,
        worst_at: None,
    };
    for (s, u, c) in results.into_iter().flatten() {
        let ok = c.worst_ratio <= 1.0;
        out.regular_points += 1;
        out.agreeing += ok as usize;
        if !c.near_singular {
            out.away_from_singular += 1;
            out.agreeing_away += ok as usize;
        }
        if c.worst_ratio > out.worst_ratio || out.worst_at.is_none() {
            out.worst_ratio = c.worst_ratio;
            out.worst_at = Some((s, u, c.worst_name));
        }
    }
    Ok(out)
}

fn fd_step(x: f64) -> f64 {
    1e-4 * x.abs().max(1.0)
}

/// Arclength derivative of `q_n` by central differences on the ruling map.
fn fd_ruling_prime(surface: &GnrSurface, local: &LocalGeometry) -> Result<Vec3, SurfaceError> {
    let s = local.s;
    let dq = richardson(fd_step(s), 2, |h| {
        Ok::<_, SurfaceError>((surface.ruling_at(s + h)? - surface.ruling_at(s - h)?) / (2.0 * h))
    })?;
    Ok(dq / local.speed)
}

/// Run the full suite on `grid`.
pub fn run_suite(surface: &GnrSurface, grid: &SampleGrid, cfg: &OracleConfig) -> Result<SuiteReport, SurfaceError> {
    let oracle = oracle_agreement(surface, grid, cfg)?;
    let locals = surface.locals(&grid.s)?;
    let points: Vec<(usize, SurfacePointData)> = locals
        .iter()
        .enumerate()
        .flat_map(|(i, l)| grid.u.iter().map(move |&u| (i, l.point(u))))
        .collect();
    let regular = || points.iter().filter(|(_, p)| !p.is_singular());
    let max = |it: &mut dyn Iterator<Item = f64>| it.fold(0.0f64, |a, b| a.max(b));

    let mut checks = Vec::new();

    let frame_error = max(&mut locals.iter().map(|l| {
        let (t, n, b) = (l.tangent, l.normal, l.binormal);
        [
            (t.norm() - 1.0).abs(),
            (n.norm() - 1.0).abs(),
            (b.norm() - 1.0).abs(),
            t.dot(&n).abs(),
            t.dot(&b).abs(),
            n.dot(&b).abs(),
            (t.cross(&n) - b).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }));
    checks.push(InvariantCheck::at_most("frenet_orthonormality", frame_error, 1e-10));

    let form_identities = max(&mut points
        .iter()
        .map(|(_, p)| p.f_coeff.abs().max((p.g_coeff - 1.0).abs()).max(p.n_coeff.abs())));
    checks.push(InvariantCheck::at_most(
        "first_second_form_identities",
        form_identities,
        1e-12,
    ));

    let k_max = regular().filter_map(|(_, p)| p.k).fold(f64::NEG_INFINITY, f64::max);
    checks.push(InvariantCheck::at_most(
        "gaussian_curvature_nonpositive",
        k_max.max(0.0),
        0.0,
    ));

    let kh = max(&mut regular().map(|(_, p)| {
        let (k, h, l, m) = (p.k.unwrap(), p.h.unwrap(), p.l.unwrap(), p.m.unwrap());
        (k * l + 2.0 * h * m * m).abs()
    }));
    checks.push(InvariantCheck::at_most("kl_plus_2hm2", kh, 1e-8));

    let mismatches = regular()
        .filter(|(i, p)| (p.k.unwrap().abs() <= 1e-12) != (locals[*i].f().abs() <= 1e-8))
        .count();
    checks.push(InvariantCheck::at_most("flat_iff_f_zero", mismatches as f64, 0.0));

    let cross = max(&mut points.iter().map(|(i, p)| {
        let l = &locals[*i];
        let (f, g) = (l.f(), l.g(p.u));
        let expected = (l.tangent * (p.u * f) - l.normal * (l.a2[0] * g) + l.binormal * (l.a1[0] * g)) * l.speed;
        (p.dfds.cross(&p.dfdu) - expected).norm()
    }));
    checks.push(InvariantCheck::at_most("cross_product_identity", cross, 1e-9));

    let length = max(&mut regular().map(|(_, p)| (p.normal.unwrap().norm() - 1.0).abs()));
    checks.push(InvariantCheck::at_most("unit_normal_length", length, 1e-12));
    let orthogonality = max(&mut regular().map(|(_, p)| {
        let n = p.normal.unwrap();
        n.dot(&p.dfds).abs().max(n.dot(&p.dfdu).abs())
    }));
    checks.push(InvariantCheck::at_most(
        "normal_orthogonal_to_partials",
        orthogonality,
        1e-9,
    ));

    let mut det_residual = 0.0f64;
    let mut striction_residual = 0.0f64;
    for l in &locals {
        let dq = fd_ruling_prime(surface, l)?;
        let velocity = surface.base().derivatives(l.s)?[1];
        let det = (velocity / velocity.norm()).dot(&l.ruling().cross(&dq));
        det_residual = det_residual.max((det + l.f()).abs());
        if l.ruling_prime_norm_squared() < 1e-12 {
            continue;
        }
        let s = l.s;
        let c_prime = richardson(fd_step(s), 2, |h| {
            let c = |x: f64| surface.striction_parameter(x).map(|st| st.point);
            Ok::<_, SurfaceError>((c(s + h)? - c(s - h)?) / (2.0 * h))
        })?;
        striction_residual = striction_residual.max((c_prime / l.speed).dot(&l.ruling_prime()).abs());
    }
    checks.push(InvariantCheck::at_most("ruling_determinant", det_residual, 1e-9));
    checks.push(InvariantCheck::at_most(
        "striction_orthogonality",
        striction_residual,
        1e-7,
    ));

    let locus = surface.singular_locus(&grid.s)?;
    let mut locus_residual = 0.0f64;
    for x in &locus.samples {
        let l = surface.local(x.s)?;
        locus_residual = locus_residual.max(l.f().abs()).max(l.g(x.u).abs());
    }
    checks.push(InvariantCheck::at_most(
        "singular_locus_on_f_g_zero",
        locus_residual,
        1e-8,
    ));

    if locals.iter().all(|l| l.f().abs() <= 1e-8) {
        let mut normal_drift = 0.0f64;
        let mut weingarten_gap = 0.0f64;
        for (i, p) in regular() {
            let l = &locals[*i];
            if l.g(p.u) <= 1e-10 {
                continue;
            }
            let expected = l.binormal * l.a1[0] - l.normal * l.a2[0];
            normal_drift = normal_drift.max((p.normal.unwrap() - expected).norm());
            let w = weingarten(surface, l.s, p.u)?;
            weingarten_gap = weingarten_gap.max((w.lambda1 - 2.0 * p.h.unwrap()).abs());
        }
        checks.push(InvariantCheck::at_most(
            "developable_normal_constant_on_rulings",
            normal_drift,
            1e-9,
        ));
        checks.push(InvariantCheck::at_most(
            "weingarten_matches_mean_curvature",
            weingarten_gap,
            1e-8,
        ));
    }

    Ok(SuiteReport { oracle, checks })
}
