//! Random comparison of the analytic minimizer against the oracle.

use std::fmt::Write as _;

use finsnell::{OracleOptions, Region, Scene, Vector2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Oracle may exceed the analytic time by this much (grid resolution).
pub const ABOVE_TOL: f64 = 2e-3;
/// Oracle may undercut the analytic time by this much (rounding only).
pub const BELOW_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Case {
    pub q1: Vector2,
    pub q2: Vector2,
    pub kind: String,
    pub analytic: f64,
    pub oracle: f64,
}

impl Case {
    pub fn passed(&self) -> bool {
        self.oracle >= self.analytic - BELOW_TOL && self.oracle <= self.analytic + ABOVE_TOL
    }
}

/// Sources in `[-3, -0.1] × [-3, 3]`; targets split between the left
/// medium, the right medium and the interface.
pub fn random_cases(seed: u64, count: usize) -> Vec<(Vector2, Vector2)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let q1 = Vector2::new(-rng.gen_range(0.1..3.0), rng.gen_range(-3.0..3.0));
            let y = rng.gen_range(-3.0..3.0);
            let q2 = match rng.gen_range(0..5) {
                0 | 1 => Vector2::new(-rng.gen_range(0.1..3.0), y),
                2 | 3 => Vector2::new(rng.gen_range(0.1..3.0), y),
                _ => Vector2::new(0.0, y),
            };
            (q1, q2)
        })
        .collect()
}

pub fn run(scene: &Scene, seed: u64, count: usize, options: OracleOptions) -> finsnell::Result<Vec<Case>> {
    random_cases(seed, count)
        .into_iter()
        .map(|(q1, q2)| {
            let g = scene.global_minimizer(q1, q2)?;
            let o = scene.brute_force_min(q1, q2, options)?;
            Ok(Case {
                q1,
                q2,
                kind: g.kind().name().to_string(),
                analytic: g.time,
                oracle: o.time,
            })
        })
        .collect()
}

pub fn report(cases: &[Case], options: OracleOptions) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "oracle grid {} x {} rounds; pass if -{BELOW_TOL:e} <= oracle - analytic <= {ABOVE_TOL:e}",
        options.grid_n, options.refine_rounds
    );
    let _ = writeln!(
        out,
        "{:>4}  {:>22}  {:>22}  {:<6}  {:<13}  {:>18}  {:>18}  {:>10}  result",
        "case", "source", "target", "region", "kind", "analytic", "oracle", "diff"
    );
    for (i, c) in cases.iter().enumerate() {
        let region = Region::of(c.q2);
        let _ = writeln!(
            out,
            "{i:>4}  {:>22}  {:>22}  {:<6}  {:<13}  {:>18.12}  {:>18.12}  {:>10.2e}  {}",
            format!("({:.6}, {:.6})", c.q1.x, c.q1.y),
            format!("({:.6}, {:.6})", c.q2.x, c.q2.y),
            region.name(),
            c.kind,
            c.analytic,
            c.oracle,
            c.oracle - c.analytic,
            if c.passed() { "PASS" } else { "FAIL" }
        );
    }
    let failed = cases.iter().filter(|c| !c.passed()).count();
    let _ = writeln!(
        out,
        "{} cases, {} passed, {failed} failed",
        cases.len(),
        cases.len() - failed
    );
    out
}
