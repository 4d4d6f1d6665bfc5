//! Full invariant suite with one line per check.

use crate::config::Scene;
use crate::error::CliError;
use gnr_core::invariants::{run_suite, InvariantCheck, SuiteReport};
use gnr_core::oracle::OracleConfig;
use std::fmt::Write;

/// Largest `|K|` a developable verdict may coexist with.
const FLAT: f64 = 1e-8;

pub struct Verification {
    pub suite: SuiteReport,
    /// Checks tying the classification to the point data.
    pub consistency: Vec<InvariantCheck>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.suite.passed() && self.consistency.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let o = &self.suite.oracle;
        let status = |ok: bool| if ok { "PASS" } else { "FAIL" };
        writeln!(
            out,
            "{:<40} {} agreeing {}/{} regular, {}/{} away from singular set, worst ratio {:.3e}",
            "oracle_agreement",
            status(o.passed()),
            o.agreeing,
            o.regular_points,
            o.agreeing_away,
            o.away_from_singular,
            o.worst_ratio
        )
        .unwrap();
        for c in self.suite.checks.iter().chain(&self.consistency) {
            writeln!(
                out,
                "{:<40} {} residual {:.3e} tolerance {:.1e}",
                c.name,
                status(c.passed),
                c.residual,
                c.tolerance
            )
            .unwrap();
        }
        writeln!(out, "{}", if self.passed() { "verify: PASS" } else { "verify: FAIL" }).unwrap();
        out
    }
}

fn check(name: &'static str, residual: f64, tolerance: f64) -> InvariantCheck {
    InvariantCheck {
        name,
        residual,
        tolerance,
        passed: residual <= tolerance,
    }
}

pub fn verify(scene: &Scene) -> Result<Verification, CliError> {
    let (surface, grid) = (&scene.surface, &scene.grid);
    let suite = run_suite(surface, grid, &OracleConfig::default())?;
    let c = surface.classify(grid)?;
    let points = surface.evaluate_grid(grid)?;
    let max_k = points.iter().filter_map(|p| p.k).fold(0.0f64, |a, k| a.max(k.abs()));
    let max_h = points.iter().filter_map(|p| p.h).fold(0.0f64, |a, h| a.max(h.abs()));
    let singular_nodes = points.iter().filter(|p| p.is_singular()).count();
    let consistency = vec![
        check(
            "developable_implies_flat",
            if c.developable.holds { max_k } else { 0.0 },
            FLAT,
        ),
        check(
            "minimal_verdict_matches_h",
            if c.minimal_candidate.holds { max_h } else { 0.0 },
            1e-7,
        ),
        check(
            "regular_verdict_matches_grid",
            if c.regular.holds { singular_nodes as f64 } else { 0.0 },
            0.0,
        ),
    ];
    Ok(Verification { suite, consistency })
}
