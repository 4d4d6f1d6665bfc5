use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn gnr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gnr")).args(args).output().unwrap()
}

fn golden(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("configs")
        .join(format!("{name}.json"))
        .to_string_lossy()
        .into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gnr-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_config(name: &str, json: &str) -> String {
    let path = scratch(name);
    std::fs::write(&path, json).unwrap();
    path.to_string_lossy().into_owned()
}

/// Minimal OBJ reader: vertices, faces and line/point elements.
struct Obj {
    vertices: Vec<[f64; 3]>,
    faces: Vec<Vec<usize>>,
    groups: Vec<(String, Vec<Vec<usize>>)>,
}

fn read_obj(text: &str) -> Obj {
    let mut obj = Obj {
        vertices: Vec::new(),
        faces: Vec::new(),
        groups: Vec::new(),
    };
    for line in text.lines() {
        let mut parts = line.split_whitespace();
        let indices = |p: std::str::SplitWhitespace| p.map(|x| x.parse::<usize>().unwrap()).collect::<Vec<_>>();
        match parts.next() {
            Some("v") => {
                let c: Vec<f64> = parts.map(|x| x.parse().unwrap()).collect();
                obj.vertices.push([c[0], c[1], c[2]]);
            }
            Some("f") => obj.faces.push(indices(parts)),
            Some("o") => obj.groups.push((parts.next().unwrap().to_string(), Vec::new())),
            Some("l") | Some("p") => obj.groups.last_mut().unwrap().1.push(indices(parts)),
            _ => {}
        }
    }
    obj
}

#[test]
fn report_is_deterministic_and_written_to_out() {
    let cfg = golden("pedal_curve");
    let first = gnr(&["report", &cfg]);
    let second = gnr(&["report", &cfg]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let out = scratch("pedal.json");
    assert!(gnr(&["report", &cfg, "--out", out.to_str().unwrap()]).status.success());
    assert_eq!(std::fs::read(&out).unwrap(), first.stdout);
}

#[test]
fn golden_reports() {
    let report = |name: &str| -> serde_json::Value {
        let out = gnr(&["report", &golden(name)]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        serde_json::from_slice(&out.stdout).unwrap()
    };
    let helicoid = report("helicoid");
    let f = &helicoid["extrema"]["f"];
    assert!((f["min"].as_f64().unwrap() + 1.0).abs() < 1e-12 && (f["max"].as_f64().unwrap() + 1.0).abs() < 1e-12);
    assert_eq!(helicoid["classification"]["developable"]["holds"], false);
    assert_eq!(helicoid["classification"]["minimal"]["holds"], true);

    let helix = report("cylindrical_helix");
    assert_eq!(helix["classification"]["developable"]["holds"], true);
    assert!(!helix["singular_locus"]["samples"].as_array().unwrap().is_empty());

    let asinh = report("asinh_helix");
    assert_eq!(asinh["classification"]["regular"]["holds"], true);
    assert_eq!(asinh["classification"]["developable"]["holds"], false);

    let pedal = report("pedal_curve");
    assert_eq!(pedal["classification"]["regular"]["holds"], false);
    for x in pedal["singular_locus"]["samples"].as_array().unwrap() {
        let s = x["s"].as_f64().unwrap();
        assert!((s - 2.0 * (1.0 / 3f64.sqrt()).asin()).abs() < 1e-8);
    }
}

#[test]
fn mesh_counts_winding_and_companion_curves() {
    let out = scratch("helix.obj");
    let curves = scratch("helix-curves.obj");
    let status = gnr(&[
        "mesh",
        &golden("cylindrical_helix"),
        "--out",
        out.to_str().unwrap(),
        "--curves-out",
        curves.to_str().unwrap(),
    ]);
    assert!(status.status.success());
    let mesh = read_obj(&std::fs::read_to_string(&out).unwrap());
    assert_eq!(mesh.vertices.len(), 64 * 16);
    assert_eq!(mesh.faces.len(), 2 * 63 * 15);
    assert!(mesh.faces.iter().flatten().all(|&i| i >= 1 && i <= mesh.vertices.len()));

    let curves = read_obj(&std::fs::read_to_string(&curves).unwrap());
    let names: Vec<&str> = curves.groups.iter().map(|(n, _)| n.as_str()).collect();
    assert_eq!(names, ["base_curve", "striction_curve", "singular_locus"]);
    let locus = &curves.groups[2].1;
    assert!(!locus.is_empty());
    // singular locus of the cylindrical helix surface, from its closed form
    let r2 = 2f64.sqrt();
    let gamma = |s: f64| {
        let cot = 1.0 / (s / 2.0).tan();
        [
            r2 * cot * (s / r2).sin() - (s / r2).cos(),
            -r2 * cot * (s / r2).cos() - (s / r2).sin(),
            s / r2 + r2 * cot,
        ]
    };
    let ds = 4.0 * std::f64::consts::PI / 63.0;
    let mut checked = 0;
    for run in locus {
        for &i in run {
            let v = curves.vertices[i - 1];
            // grid parameter whose closed-form locus point is this vertex
            let s = (1..63).map(|k| k as f64 * ds).find(|&s| {
                let g = gamma(s);
                (g[2] - v[2]).abs() < 1e-6 && (g[0] - v[0]).abs() < 1e-6
            });
            if let Some(s) = s {
                let g = gamma(s);
                assert!((0..3).all(|k| (g[k] - v[k]).abs() < 1e-6));
                checked += 1;
            }
        }
    }
    assert_eq!(checked, locus.iter().map(Vec::len).sum::<usize>());
}

#[test]
fn verify_passes_on_golden_configs() {
    for name in ["helicoid", "pedal_curve", "helix_h_slant"] {
        let out = gnr(&["verify", &golden(name)]);
        let text = String::from_utf8_lossy(&out.stdout);
        assert!(out.status.success(), "{name}: {text}");
        assert!(text.contains("kl_plus_2hm2") && text.ends_with("verify: PASS\n"));
    }
}

#[test]
fn exit_codes() {
    let base = |ruling: &str, ns: usize| {
        format!(
            r#"{{"curve": {{"x": "cos(s)", "y": "sin(s)", "z": "0", "domain": [0, 3]}},
                "ruling": {ruling}, "sampling": {{"ns": {ns}, "nu": 4, "u_range": [-1, 1]}}}}"#
        )
    };
    let cfg = write_config("one_row.json", &base(r#"{"theta": "s"}"#, 1));
    assert_eq!(
        gnr(&["mesh", &cfg, "--out", scratch("x.obj").to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );

    let cfg = write_config(
        "not_unit.json",
        &base(r#"{"a1": "sqrt(1.1)*cos(s)", "a2": "sqrt(1.1)*sin(s)"}"#, 8),
    );
    let out = gnr(&["verify", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ruling_unit_norm"));

    let cfg = write_config("parse.json", &base(r#"{"theta": "s +* 2"}"#, 8));
    let out = gnr(&["report", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte"));

    let line = r#"{"curve": {"x": "0", "y": "0", "z": "s", "domain": [0, 1]},
        "ruling": {"theta": "s"}, "sampling": {"ns": 4, "nu": 4, "u_range": [0, 1]}}"#;
    assert_eq!(
        gnr(&["report", &write_config("line.json", line)]).status.code(),
        Some(3)
    );

    let cfg = write_config("domain.json", &base(r#"{"a1": "sqrt(s-1)", "a2": "sqrt(2-s)"}"#, 8));
    assert_eq!(gnr(&["report", &cfg]).status.code(), Some(3));

    assert_eq!(gnr(&["report", "/nonexistent/config.json"]).status.code(), Some(2));
}

#[test]
fn frenet_at_parameter() {
    let out = gnr(&["frenet", &golden("cylindrical_helix"), "--at", "1.5"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["curvature"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!((v["torsion"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!(v["f"].as_f64().unwrap().abs() < 1e-12);
    let out = gnr(&["frenet", &golden("cylindrical_helix"), "--at", "100"]);
    assert_eq!(out.status.code(), Some(2));
}
