//! Wavefront OBJ output: the sampled surface and its companion polylines.

use crate::config::Scene;
use crate::error::CliError;
use gnr_core::curve::Vec3;
use gnr_core::surface::SurfaceError;
use std::fmt::Write;

/// Triangulated grid, rows in `s` and columns in `u`.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<Vec3>,
    /// Zero-based vertex indices.
    pub triangles: Vec<[usize; 3]>,
}

/// Split each grid quad into two triangles wound so that their normals point
/// along `F_s x F_u`, the surface normal wherever it exists.
pub fn surface_mesh(scene: &Scene) -> Result<Mesh, CliError> {
    let (ns, nu) = (scene.grid.s.len(), scene.grid.u.len());
    let vertices: Vec<Vec3> = scene
        .surface
        .evaluate_grid(&scene.grid)?
        .iter()
        .map(|p| p.position)
        .collect();
    let mut triangles = Vec::with_capacity(2 * (ns - 1) * (nu - 1));
    let at = |i: usize, j: usize| i * nu + j;
    for i in 0..ns - 1 {
        for j in 0..nu - 1 {
            triangles.push([at(i, j), at(i + 1, j), at(i + 1, j + 1)]);
            triangles.push([at(i, j), at(i + 1, j + 1), at(i, j + 1)]);
        }
    }
    Ok(Mesh { vertices, triangles })
}

fn vertex(out: &mut String, v: Vec3) {
    writeln!(out, "v {:?} {:?} {:?}", v.x, v.y, v.z).unwrap();
}

pub fn mesh_obj(mesh: &Mesh) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "# {} vertices, {} triangles",
        mesh.vertices.len(),
        mesh.triangles.len()
    )
    .unwrap();
    for &v in &mesh.vertices {
        vertex(&mut out, v);
    }
    for t in &mesh.triangles {
        writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1).unwrap();
    }
    out
}

/// A named set of points along increasing `s`; `None` marks a gap.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub name: &'static str,
    pub points: Vec<Option<Vec3>>,
}

/// Base curve, striction curve and singular locus sampled at the grid's `s`
/// values. Isolated singular points (roots of `f` between grid nodes) are
/// appended as single points.
pub fn companion_curves(scene: &Scene) -> Result<(Vec<Polyline>, Vec<Vec3>), CliError> {
    let surface = &scene.surface;
    let s = &scene.grid.s;
    let base = s
        .iter()
        .map(|&x| Ok(Some(surface.base().position(x)?)))
        .collect::<Result<_, CliError>>()?;
    let mut striction = Vec::with_capacity(s.len());
    for &x in s {
        striction.push(match surface.striction_parameter(x) {
            Ok(p) => Some(p.point),
            Err(SurfaceError::CylindricalRuling { .. }) => None,
            Err(e) => return Err(e.into()),
        });
    }
    let locus = surface.singular_locus(s)?;
    let (singular, isolated) = if locus.developable {
        let mut points = vec![None; s.len()];
        for x in &locus.samples {
            if let Some(i) = s.iter().position(|&y| y == x.s) {
                points[i] = Some(x.point);
            }
        }
        (points, Vec::new())
    } else {
        (vec![None; s.len()], locus.samples.iter().map(|x| x.point).collect())
    };
    Ok((
        vec![
            Polyline {
                name: "base_curve",
                points: base,
            },
            Polyline {
                name: "striction_curve",
                points: striction,
            },
            Polyline {
                name: "singular_locus",
                points: singular,
            },
        ],
        isolated,
    ))
}

/// OBJ with one `o` group per curve: `l` elements for each unbroken run,
/// `p` elements for lone points.
pub fn curves_obj(polylines: &[Polyline], isolated: &[Vec3]) -> String {
    let mut out = String::new();
    let mut next = 1usize;
    for line in polylines {
        writeln!(out, "o {}", line.name).unwrap();
        let runs: Vec<Vec<Vec3>> = line
            .points
            .split(Option::is_none)
            .filter(|r| !r.is_empty())
            .map(|r| r.iter().flatten().copied().collect())
            .collect();
        for run in runs {
            for &v in &run {
                vertex(&mut out, v);
            }
            let ids: Vec<String> = (next..next + run.len()).map(|i| i.to_string()).collect();
            let kind = if run.len() == 1 { "p" } else { "l" };
            writeln!(out, "{kind} {}", ids.join(" ")).unwrap();
            next += run.len();
        }
    }
    if !isolated.is_empty() {
        writeln!(out, "o singular_points").unwrap();
        for &v in isolated {
            vertex(&mut out, v);
        }
        let ids: Vec<String> = (next..next + isolated.len()).map(|i| i.to_string()).collect();
        writeln!(out, "p {}", ids.join(" ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::SceneConfig;

    fn scene(json: &str) -> Scene {
        SceneConfig::from_json(json).unwrap().build().unwrap()
    }

    #[test]
    fn grid_counts_and_winding() {
        let sc = scene(
            r#"{"curve": {"x": "0", "y": "0", "z": "s", "domain": [0, 6]},
                "ruling": {"a1": "cos(s)", "a2": "sin(s)"},
                "frame_policy": {"mode": "fixed", "n0": [1, 0, 0]},
                "sampling": {"ns": 9, "nu": 5, "u_range": [-2, 2]}}"#,
        );
        let mesh = surface_mesh(&sc).unwrap();
        assert_eq!(mesh.vertices.len(), 45);
        assert_eq!(mesh.triangles.len(), 2 * 8 * 4);
        let points = sc.surface.evaluate_grid(&sc.grid).unwrap();
        for t in &mesh.triangles {
            let [a, b, c] = t.map(|i| mesh.vertices[i]);
            let face = (b - a).cross(&(c - a));
            let normal = points[t[0]].normal.unwrap();
            assert!(face.dot(&normal) > 0.0);
        }
        let obj = mesh_obj(&mesh);
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 45);
        assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 64);
    }

    #[test]
    fn polylines_split_at_gaps() {
        let a = Vec3::x();
        let line = Polyline {
            name: "test",
            points: vec![Some(a), Some(a), None, Some(a), None, None],
        };
        let obj = curves_obj(&[line], &[Vec3::y()]);
        assert_eq!(
            obj.lines().filter(|l| !l.starts_with("v ")).collect::<Vec<_>>(),
            ["o test", "l 1 2", "p 3", "o singular_points", "p 4"]
        );
    }
}
