//! Brute-force traveltime minimization.
//!
//! Inside each medium time-minimizing paths are straight, so any candidate
//! path is fixed by where it touches the interface. The oracle grids those
//! touch points directly and shares no code with the analytic solvers beyond
//! the norm evaluation.
//!
//! Families searched, by target region:
//! - left medium: the straight segment, one bounce off the interface, and two
//!   break points joined by a run along the interface;
//! - interface: the straight segment, and one break point followed by a run
//!   along the interface to the target;
//! - right medium: one break point. Adding an interface run before entering
//!   the right medium never helps, by the triangle inequality of `F₂`.
//!
//! Interface runs are priced by the right-medium norm.

use std::fmt;

use crate::error::{Error, Result};
use crate::interface::Scene;
use crate::trajectory::{Region, Segment, Trajectory, TrajectoryKind};
use crate::vector::Vector2;

/// Half-width of the band around `t0` that [`Scene::reachable_check`]
/// reports as the boundary.
pub const REACHABLE_BAND: f64 = 2e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OracleFamily {
    Straight,
    OneBreak,
    TwoBreakEtaRun,
}

impl OracleFamily {
    pub fn name(self) -> &'static str {
        match self {
            OracleFamily::Straight => "straight",
            OracleFamily::OneBreak => "one-break",
            OracleFamily::TwoBreakEtaRun => "two-break-eta-run",
        }
    }
}

impl fmt::Display for OracleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    /// Grid points per break coordinate and round.
    pub grid_n: usize,
    /// Refinement rounds after the initial grid.
    pub refine_rounds: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            grid_n: 512,
            refine_rounds: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub time: f64,
    pub path: Trajectory,
    pub family: OracleFamily,
    /// Best time after the initial grid and after each refinement round.
    pub round_times: Vec<f64>,
    /// Best time found within each searched family.
    pub family_times: Vec<(OracleFamily, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reachability {
    Inside,
    Outside,
    Boundary,
}

impl Reachability {
    pub fn name(self) -> &'static str {
        match self {
            Reachability::Inside => "inside",
            Reachability::Outside => "outside",
            Reachability::Boundary => "boundary",
        }
    }
}

impl fmt::Display for Reachability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Candidate {
    Straight,
    One(f64),
    Two(f64, f64),
}

impl Candidate {
    fn family(self) -> OracleFamily {
        match self {
            Candidate::Straight => OracleFamily::Straight,
            Candidate::One(_) => OracleFamily::OneBreak,
            Candidate::Two(..) => OracleFamily::TwoBreakEtaRun,
        }
    }
}

/// Uniform grid of `n` points over `[c − h, c + h]`.
fn grid(c: f64, h: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| c - h + 2.0 * h * i as f64 / (n - 1) as f64)
}

struct Search<'a> {
    scene: &'a Scene,
    q1: Vector2,
    q2: Vector2,
    target: Region,
}

impl Search<'_> {
    fn cost(&self, c: Candidate) -> f64 {
        let f1 = self.scene.profile1();
        let on = |y: f64| Vector2::new(0.0, y);
        match c {
            Candidate::Straight => f1.finsler_cost(self.q2 - self.q1),
            Candidate::One(y) => {
                f1.finsler_cost(on(y) - self.q1) + self.scene.profile_of(self.target).finsler_cost(self.q2 - on(y))
            }
            Candidate::Two(y1, y2) => {
                f1.finsler_cost(on(y1) - self.q1)
                    + self.scene.profile2().finsler_cost(on(y2) - on(y1))
                    + f1.finsler_cost(self.q2 - on(y2))
            }
        }
    }

    /// Straight legs of a candidate with the medium that prices each.
    fn legs(&self, c: Candidate) -> Vec<(Vector2, Vector2, Region)> {
        let (q1, q2) = (self.q1, self.q2);
        let on = |y: f64| Vector2::new(0.0, y);
        match c {
            Candidate::Straight => vec![(q1, q2, Region::Q1)],
            Candidate::One(y) => vec![(q1, on(y), Region::Q1), (on(y), q2, self.target)],
            Candidate::Two(y1, y2) => {
                vec![
                    (q1, on(y1), Region::Q1),
                    (on(y1), on(y2), Region::Eta),
                    (on(y2), q2, Region::Q1),
                ]
            }
        }
    }

    fn path(&self, c: Candidate) -> Trajectory {
        let kind = match (c, self.target) {
            (Candidate::Straight, _) => TrajectoryKind::Straight,
            (Candidate::One(_), Region::Q2) => TrajectoryKind::Refracted,
            (Candidate::One(_), Region::Eta) => TrajectoryKind::CriticalRun,
            (Candidate::One(_), Region::Q1) => TrajectoryKind::Reflected,
            (Candidate::Two(..), _) => TrajectoryKind::ThreeSegment,
        };
        let mut t = 0.0;
        let segments = self
            .legs(c)
            .into_iter()
            .map(|(a, b, r)| {
                let seg = Segment::priced(self.scene, r, a, b, 0.0, t);
                t = seg.t_end;
                seg
            })
            .collect();
        Trajectory::new(segments, kind)
    }

    /// Best candidate on a grid, or the incumbent if nothing beats it.
    /// Candidates are visited in ascending coordinate order and only a
    /// strict improvement replaces the incumbent.
    fn best_of(&self, candidates: impl Iterator<Item = Candidate>, incumbent: Option<Candidate>) -> Option<Candidate> {
        let mut best = incumbent;
        let mut best_t = incumbent.map_or(f64::INFINITY, |c| self.cost(c));
        for c in candidates {
            let t = self.cost(c);
            if t < best_t {
                best = Some(c);
                best_t = t;
            }
        }
        best
    }
}

impl Scene {
    /// Minimum traveltime from `q1` (left medium) to `q2` over the straight
    /// path and all grid-refined break-point paths.
    ///
    /// Each refinement round re-grids a bracket 10× narrower around every
    /// family's incumbent and keeps the incumbent, so round times never
    /// increase. Ties go to the earliest family (straight, one break, two
    /// breaks) and then to the smallest break coordinates.
    pub fn brute_force_min(&self, q1: Vector2, q2: Vector2, options: OracleOptions) -> Result<OracleResult> {
        if options.grid_n < 64 {
            return Err(Error::InvalidArgument(format!(
                "oracle grid needs at least 64 points, got {}",
                options.grid_n
            )));
        }
        if !(q1.x < 0.0) || !q1.is_finite() || !q2.is_finite() {
            return Err(Error::RegionMismatch(format!(
                "oracle needs a finite source in Q1, got {q1} -> {q2}"
            )));
        }
        let target = Region::of(q2);
        let q2 = if target == Region::Eta {
            Vector2::new(0.0, q2.y)
        } else {
            q2
        };
        let search = Search {
            scene: self,
            q1,
            q2,
            target,
        };
        let n = options.grid_n;

        let d = 2.0 * (q1.x.abs() + q2.x.abs() + (q1.y - q2.y).abs());
        let mid = 0.5 * (q1.y + q2.y);
        let mut half = 0.5 * (q1.y - q2.y).abs() + d;

        let straight = (target != Region::Q2).then_some(Candidate::Straight);
        let mut one: Option<Candidate> = None;
        let mut two: Option<Candidate> = None;
        let mut round_times = Vec::with_capacity(options.refine_rounds + 1);
        let mut best = Candidate::Straight;
        for _ in 0..=options.refine_rounds {
            let c1 = match one {
                Some(Candidate::One(y)) => y,
                _ => mid,
            };
            one = search.best_of(grid(c1, half, n).map(Candidate::One), one);
            if target == Region::Q1 {
                let (a, b) = match two {
                    Some(Candidate::Two(a, b)) => (a, b),
                    _ => (mid, mid),
                };
                let pairs = grid(a, half, n).flat_map(|y1| grid(b, half, n).map(move |y2| Candidate::Two(y1, y2)));
                two = search.best_of(pairs, two);
            }
            best = search
                .best_of([straight, one, two].into_iter().flatten(), None)
                .expect("at least one family is searched");
            round_times.push(search.cost(best));
            half /= 10.0;
        }
        let family_times = [straight, one, two]
            .into_iter()
            .flatten()
            .map(|c| (c.family(), search.cost(c)))
            .collect();
        Ok(OracleResult {
            time: search.cost(best),
            path: search.path(best),
            family: best.family(),
            round_times,
            family_times,
        })
    }

    /// Classifies `probe` against the time-`t0` front from `q1` using the
    /// oracle time and a boundary band of ±[`REACHABLE_BAND`].
    pub fn reachable_check(
        &self,
        q1: Vector2,
        t0: f64,
        probe: Vector2,
        options: OracleOptions,
    ) -> Result<Reachability> {
        let time = self.brute_force_min(q1, probe, options)?.time;
        Ok(if time < t0 - REACHABLE_BAND {
            Reachability::Inside
        } else if time > t0 + REACHABLE_BAND {
            Reachability::Outside
        } else {
            Reachability::Boundary
        })
    }
}
