use gnr_core::gallery;
use gnr_core::grid::SampleGrid;
use gnr_core::invariants::run_suite;
use gnr_core::oracle::OracleConfig;
use gnr_core::surface::GnrSurface;

fn suite_passes(name: &str, surface: &GnrSurface, ns: usize, nu: usize) {
    let grid = SampleGrid::uniform(surface.domain(), ns, surface.u_range(), nu).unwrap();
    let report = run_suite(surface, &grid, &OracleConfig::default()).unwrap();
    for c in &report.checks {
        println!("{name}: {} residual {:e} (tol {:e})", c.name, c.residual, c.tolerance);
    }
    println!("{name}: oracle {:?}", report.oracle);
    assert!(report.passed(), "{name} failed: {report:#?}");
}

#[test]
fn helicoid() {
    suite_passes("helicoid", &gallery::helicoid(), 64, 16);
}

#[test]
fn cylindrical_helix() {
    suite_passes("cylindrical_helix", &gallery::cylindrical_helix(), 48, 12);
}

#[test]
fn pedal() {
    suite_passes("pedal", &gallery::pedal(), 48, 12);
}

#[test]
fn asinh_helix() {
    suite_passes("asinh_helix", &gallery::asinh_helix(), 48, 12);
}

#[test]
fn tangent_aligned() {
    suite_passes("helix_tangent_aligned", &gallery::helix_tangent_aligned(), 32, 9);
    suite_passes("pedal_tangent_aligned", &gallery::pedal_tangent_aligned(), 32, 9);
    suite_passes("cylinder", &gallery::cylinder(), 16, 5);
}
