//! JSON analysis report and the per-parameter Frenet dump.

use crate::config::{Scene, SceneConfig};
use crate::error::CliError;
use gnr_core::curve::Vec3;
use gnr_core::ruled_frame::{detect_slant, SlantKind};
use gnr_core::surface::{SingularLocus, SurfaceError, Verdict};
use serde::Serialize;

fn arr(v: Vec3) -> [f64; 3] {
    [v.x, v.y, v.z]
}

/// Non-finite values have no JSON representation.
fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictJson {
    pub holds: bool,
    pub value: Option<f64>,
    pub witness_s: Option<f64>,
    pub witness_u: Option<f64>,
}

impl From<Verdict> for VerdictJson {
    fn from(v: Verdict) -> Self {
        Self {
            holds: v.holds,
            value: finite(v.value),
            witness_s: finite(v.witness_s),
            witness_u: v.witness_u.and_then(finite),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub regular: VerdictJson,
    pub developable: VerdictJson,
    pub cylindrical: VerdictJson,
    pub minimal: VerdictJson,
    pub binormal: VerdictJson,
    pub principal_normal: VerdictJson,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Range {
    pub min: f64,
    pub max: f64,
}

impl Range {
    fn of(values: impl IntoIterator<Item = f64>) -> Option<Self> {
        values.into_iter().fold(None, |acc, x| match acc {
            None => Some(Range { min: x, max: x }),
            Some(r) => Some(Range {
                min: r.min.min(x),
                max: r.max.max(x),
            }),
        })
    }
}

/// Extrema over the grid; `K` and `H` over regular points only.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Extrema {
    pub f: Option<Range>,
    pub g: Option<Range>,
    #[serde(rename = "K")]
    pub k: Option<Range>,
    #[serde(rename = "H")]
    pub h: Option<Range>,
    pub singular_grid_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvePoint {
    pub s: f64,
    pub u: f64,
    pub point: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingularLocusJson {
    pub developable: bool,
    pub samples: Vec<CurvePoint>,
}

impl From<&SingularLocus> for SingularLocusJson {
    fn from(locus: &SingularLocus) -> Self {
        Self {
            developable: locus.developable,
            samples: locus
                .samples
                .iter()
                .map(|x| CurvePoint {
                    s: x.s,
                    u: x.u,
                    point: arr(x.point),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Striction {
    pub samples: Vec<CurvePoint>,
    /// Parameters where the ruling is stationary and no central point exists.
    pub skipped_s: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlantJson {
    pub vector: &'static str,
    /// `None` where the central normal is undefined somewhere on the grid.
    pub holds: Option<bool>,
    pub axis: Option<[f64; 3]>,
    pub dot_spread: Option<f64>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BaseCurve {
    pub geodesic: VerdictJson,
    pub asymptotic: VerdictJson,
    pub line_of_curvature: VerdictJson,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub config: SceneConfig,
    pub classification: Classification,
    pub extrema: Extrema,
    pub singular_locus: SingularLocusJson,
    pub striction: Striction,
    pub slant: Vec<SlantJson>,
    pub base_curve: BaseCurve,
    /// Largest `|K L + 2 H M^2|` over regular points.
    pub kl_plus_2hm2: f64,
}

pub fn analyze(scene: &Scene) -> Result<AnalysisReport, CliError> {
    let (surface, grid) = (&scene.surface, &scene.grid);
    let c = surface.classify(grid)?;
    let points = surface.evaluate_grid(grid)?;
    let regular: Vec<_> = points.iter().filter(|p| !p.is_singular()).collect();
    let extrema = Extrema {
        f: Range::of(points.iter().map(|p| p.chars.f)),
        g: Range::of(points.iter().map(|p| p.chars.g)),
        k: Range::of(regular.iter().filter_map(|p| p.k)),
        h: Range::of(regular.iter().filter_map(|p| p.h)),
        singular_grid_points: points.len() - regular.len(),
    };
    let locus = surface.singular_locus(&grid.s)?;

    let mut striction = Striction {
        samples: Vec::new(),
        skipped_s: Vec::new(),
    };
    for &s in &grid.s {
        match surface.striction_parameter(s) {
            Ok(x) => striction.samples.push(CurvePoint {
                s: x.s,
                u: x.u_star,
                point: arr(x.point),
            }),
            Err(SurfaceError::CylindricalRuling { .. }) => striction.skipped_s.push(s),
            Err(e) => return Err(e.into()),
        }
    }

    let mut slant = Vec::new();
    for kind in [SlantKind::Q, SlantKind::H, SlantKind::A] {
        slant.push(match detect_slant(surface, &grid.s, kind, None) {
            Ok(r) => SlantJson {
                vector: kind.name(),
                holds: Some(r.verdict),
                axis: Some(arr(r.axis)),
                dot_spread: Some(r.dot_spread),
                note: None,
            },
            Err(e @ SurfaceError::CylindricalRuling { .. }) => SlantJson {
                vector: kind.name(),
                holds: None,
                axis: None,
                dot_spread: None,
                note: Some(e.to_string()),
            },
            Err(e) => return Err(e.into()),
        });
    }

    let b = surface.base_curve_tests(&grid.s)?;
    Ok(AnalysisReport {
        config: scene.config.clone(),
        classification: Classification {
            regular: c.regular.into(),
            developable: c.developable.into(),
            cylindrical: c.cylindrical.into(),
            minimal: c.minimal_candidate.into(),
            binormal: c.binormal.into(),
            principal_normal: c.principal_normal.into(),
        },
        extrema,
        singular_locus: (&locus).into(),
        striction,
        slant,
        base_curve: BaseCurve {
            geodesic: b.geodesic.into(),
            asymptotic: b.asymptotic.into(),
            line_of_curvature: b.line_of_curvature.into(),
        },
        kl_plus_2hm2: surface.check_kh_identity(grid)?.max_residual,
    })
}

/// Pretty JSON with a trailing newline. Floats use the shortest
/// representation that round-trips to the same `f64`.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("report types serialize");
    out.push('\n');
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RuledFrameJson {
    pub h: [f64; 3],
    pub a: [f64; 3],
    pub z: f64,
}

/// Frame, curvatures and characterization functions at one parameter value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrenetReport {
    pub s: f64,
    pub position: [f64; 3],
    pub tangent: [f64; 3],
    pub normal: [f64; 3],
    pub binormal: [f64; 3],
    pub curvature: f64,
    pub torsion: f64,
    pub speed: f64,
    pub policy_frame: bool,
    pub ruling: [f64; 3],
    pub f: f64,
    pub ruled_frame: Option<RuledFrameJson>,
}

pub fn frenet(scene: &Scene, s: f64) -> Result<FrenetReport, CliError> {
    let domain = scene.surface.domain();
    if !domain.contains(s) {
        return Err(CliError::Invalid {
            name: "frenet.at",
            detail: format!("s = {s} outside the curve domain [{}, {}]", domain.min, domain.max),
        });
    }
    let l = scene.surface.local(s)?;
    let ruled_frame = match l.ruled_frame() {
        Ok(fr) => Some(RuledFrameJson {
            h: arr(fr.h),
            a: arr(fr.a),
            z: fr.z,
        }),
        Err(SurfaceError::CylindricalRuling { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    Ok(FrenetReport {
        s,
        position: arr(l.position),
        tangent: arr(l.tangent),
        normal: arr(l.normal),
        binormal: arr(l.binormal),
        curvature: l.kappa,
        torsion: l.tau,
        speed: l.speed,
        policy_frame: l.policy_frame,
        ruling: arr(l.ruling()),
        f: l.char_functions(0.0).f,
        ruled_frame,
    })
}
