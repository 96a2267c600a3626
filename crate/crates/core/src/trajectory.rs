//! Time-parametrized trajectories and point-to-point solvers.
//!
//! Inside each medium the norms are position independent, so every
//! time-minimizing piece is a straight segment. A trajectory is therefore a
//! short list of segments, each tagged with the medium whose norm prices it.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use crate::error::{Error, Result};
use crate::interface::{RefractionOutcome, Scene, Sign};
use crate::numeric::bisect;
use crate::profiles::{wrap_angle, SpeedProfile};
use crate::vector::Vector2;

/// Points with `|x|` at most this far from zero are on the interface.
pub const INTERFACE_TOL: f64 = 1e-12;

/// Contiguity tolerance for chained segments.
pub const CONTIGUITY_TOL: f64 = 1e-9;

/// Two candidate times closer than this are a tie.
pub const TIE_TOL: f64 = 1e-9;

/// Allowed raypath-parameter mismatch at a solved break point.
pub const RAYPATH_TOL: f64 = 1e-10;

/// Uniform samples used to bracket the shooting angle of point-to-point
/// solvers.
pub const SHOOTING_SCAN: usize = 512;

/// Bisection iterations after bracketing.
pub const SHOOTING_BISECTIONS: usize = 120;

/// Medium a segment is priced in. Travel along the interface uses the right
/// medium's norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    Q1,
    Q2,
    Eta,
}

impl Region {
    pub fn of(p: Vector2) -> Region {
        if p.x.abs() <= INTERFACE_TOL {
            Region::Eta
        } else if p.x < 0.0 {
            Region::Q1
        } else {
            Region::Q2
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Region::Q1 => "Q1",
            Region::Q2 => "Q2",
            Region::Eta => "eta",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Straight piece of a trajectory, traveled at constant velocity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub start: Vector2,
    pub end: Vector2,
    pub region: Region,
    /// Direction of travel; meaningful even for zero-length segments.
    pub theta: f64,
    pub t_start: f64,
    pub t_end: f64,
}

impl Segment {
    /// Segment from `start` to `end` starting at `t_start`, timed with the
    /// region's norm. `theta_hint` is used only when `start == end`.
    pub fn priced(
        scene: &Scene,
        region: Region,
        start: Vector2,
        end: Vector2,
        theta_hint: f64,
        t_start: f64,
    ) -> Segment {
        let d = end - start;
        let theta = if d == Vector2::ZERO { theta_hint } else { d.angle() };
        Segment {
            start,
            end,
            region,
            theta,
            t_start,
            t_end: t_start + scene.profile_of(region).finsler_cost(d),
        }
    }

    pub fn duration(&self) -> f64 {
        self.t_end - self.t_start
    }

    /// Position at time `t`, clamped to the segment.
    pub fn position_at(&self, t: f64) -> Vector2 {
        let span = self.duration();
        if span <= 0.0 {
            return self.start;
        }
        let s = ((t - self.t_start) / span).clamp(0.0, 1.0);
        self.start.lerp(self.end, s)
    }
}

/// Shape of a trajectory for a source in the left medium.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TrajectoryKind {
    /// One segment.
    Straight,
    /// Left medium, then right medium.
    Refracted,
    /// Left medium at a critical angle, then along the interface.
    CriticalRun,
    /// Left medium, touching the interface once, back into the left medium.
    Reflected,
    /// Left medium at a critical angle, along the interface, then back into
    /// the left medium at the reflection angle.
    ThreeSegment,
}

impl TrajectoryKind {
    pub fn name(self) -> &'static str {
        match self {
            TrajectoryKind::Straight => "straight",
            TrajectoryKind::Refracted => "refracted",
            TrajectoryKind::CriticalRun => "critical-run",
            TrajectoryKind::Reflected => "reflected",
            TrajectoryKind::ThreeSegment => "three-segment",
        }
    }

    fn region_pattern(self) -> &'static [Region] {
        match self {
            TrajectoryKind::Straight => &[],
            TrajectoryKind::Refracted => &[Region::Q1, Region::Q2],
            TrajectoryKind::CriticalRun => &[Region::Q1, Region::Eta],
            TrajectoryKind::Reflected => &[Region::Q1, Region::Q1],
            TrajectoryKind::ThreeSegment => &[Region::Q1, Region::Eta, Region::Q1],
        }
    }
}

impl fmt::Display for TrajectoryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub segments: Vec<Segment>,
    pub kind: TrajectoryKind,
}

impl Trajectory {
    pub fn new(segments: Vec<Segment>, kind: TrajectoryKind) -> Self {
        Trajectory { segments, kind }
    }

    pub fn start(&self) -> Option<Vector2> {
        self.segments.first().map(|s| s.start)
    }

    pub fn end(&self) -> Option<Vector2> {
        self.segments.last().map(|s| s.end)
    }

    /// Elapsed time from the first segment's start to the last one's end.
    pub fn duration(&self) -> f64 {
        match (self.segments.first(), self.segments.last()) {
            (Some(a), Some(b)) => b.t_end - a.t_start,
            _ => 0.0,
        }
    }

    /// Checks space and time contiguity of consecutive segments.
    pub fn check_contiguity(&self) -> Result<()> {
        for (i, pair) in self.segments.windows(2).enumerate() {
            let (a, b) = (&pair[0], &pair[1]);
            let scale = 1.0 + a.end.norm();
            if a.end.distance(b.start) > CONTIGUITY_TOL * scale {
                return Err(Error::MalformedTrajectory(format!(
                    "segment {} ends at {} but segment {} starts at {}",
                    i,
                    a.end,
                    i + 1,
                    b.start
                )));
            }
            if (a.t_end - b.t_start).abs() > CONTIGUITY_TOL * (1.0 + a.t_end.abs()) {
                return Err(Error::MalformedTrajectory(format!(
                    "segment {} ends at t={} but segment {} starts at t={}",
                    i,
                    a.t_end,
                    i + 1,
                    b.t_start
                )));
            }
        }
        Ok(())
    }

    /// Whether the region sequence matches `kind` (a straight trajectory
    /// may lie in either medium).
    pub fn has_kind_shape(&self) -> bool {
        let regions: Vec<Region> = self.segments.iter().map(|s| s.region).collect();
        match self.kind {
            TrajectoryKind::Straight => regions.len() == 1,
            k => regions == k.region_pattern(),
        }
    }

    /// Maps a trajectory solved in the mirrored scene back to the original
    /// frame. Interface runs were priced by the mirrored right medium, which
    /// is the original left medium, so they come back tagged `Q1`.
    fn unmirror(self) -> Trajectory {
        let segments = self
            .segments
            .into_iter()
            .map(|s| Segment {
                start: s.start.mirror_x(),
                end: s.end.mirror_x(),
                region: match s.region {
                    Region::Q1 => Region::Q2,
                    Region::Q2 | Region::Eta => Region::Q1,
                },
                theta: wrap_angle(std::f64::consts::PI - s.theta),
                ..s
            })
            .collect();
        Trajectory {
            segments,
            kind: self.kind,
        }
    }
}

/// Globally time-minimizing trajectory between two points.
#[derive(Debug, Clone, PartialEq)]
pub struct GlobalMinimizer {
    pub trajectory: Trajectory,
    pub time: f64,
    /// Set when a distinct trajectory reaches the target in the same time,
    /// i.e. the target lies on the cut locus of the source.
    pub cut_locus: bool,
    pub competitor: Option<Trajectory>,
}

impl GlobalMinimizer {
    pub fn kind(&self) -> TrajectoryKind {
        self.trajectory.kind
    }
}

impl Scene {
    /// Norm that prices travel in `region`.
    pub fn profile_of(&self, region: Region) -> &SpeedProfile {
        match region {
            Region::Q1 => self.profile1(),
            Region::Q2 | Region::Eta => self.profile2(),
        }
    }

    /// Sum of the segment costs.
    pub fn traveltime(&self, traj: &Trajectory) -> Result<f64> {
        traj.check_contiguity()?;
        let mut total = 0.0;
        for (i, s) in traj.segments.iter().enumerate() {
            let cost = self.profile_of(s.region).finsler_cost(s.end - s.start);
            if (cost - s.duration()).abs() > CONTIGUITY_TOL * (1.0 + cost) {
                return Err(Error::MalformedTrajectory(format!(
                    "segment {i} lasts {} but its {} cost is {cost}",
                    s.duration(),
                    s.region
                )));
            }
            total += cost;
        }
        Ok(total)
    }

    /// Follows the ray leaving `source` in direction `theta1` for time `t`.
    ///
    /// The ray is straight in the left medium. If it reaches the interface it
    /// refracts, runs along the interface (critical incidence) or turns back
    /// (total reflection). Returns the position at `t` and the trajectory up
    /// to `t`.
    pub fn trace_ray(&self, source: Vector2, theta1: f64, t: f64) -> Result<(Vector2, Trajectory)> {
        if !(source.x < 0.0) || !source.is_finite() {
            return Err(Error::RegionMismatch(format!("ray source {source} is not in Q1")));
        }
        if !(t >= 0.0) || !theta1.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "ray time {t} or angle {theta1} invalid"
            )));
        }
        let p1 = self.profile1();
        let v1 = p1.speed(theta1);
        let dir = Vector2::from_angle(theta1);
        let hit_time = if dir.x > 0.0 {
            -source.x / (v1 * dir.x)
        } else {
            f64::INFINITY
        };
        let straight = |until: f64| {
            let end = source + dir * (v1 * until);
            Segment {
                start: source,
                end,
                region: Region::Q1,
                theta: theta1,
                t_start: 0.0,
                t_end: until,
            }
        };
        if t <= hit_time || theta1.abs() >= FRAC_PI_2 {
            let seg = straight(t);
            return Ok((seg.end, Trajectory::new(vec![seg], TrajectoryKind::Straight)));
        }
        let mut first = straight(hit_time);
        first.end.x = 0.0;
        let b = first.end;
        let dt = t - hit_time;
        let (region, theta, speed, kind) = match self.refract(theta1)? {
            RefractionOutcome::Refracted { theta2 } => (
                Region::Q2,
                theta2,
                self.profile2().speed(theta2),
                TrajectoryKind::Refracted,
            ),
            RefractionOutcome::Critical { sign } => {
                let th = sign.interface_angle();
                (Region::Eta, th, self.profile2().speed(th), TrajectoryKind::CriticalRun)
            }
            RefractionOutcome::TotalReflection { theta3 } => {
                (Region::Q1, theta3, p1.speed(theta3), TrajectoryKind::Reflected)
            }
        };
        let mut end = b + Vector2::from_angle(theta) * (speed * dt);
        if region == Region::Eta {
            end.x = 0.0;
        }
        let second = Segment {
            start: b,
            end,
            region,
            theta,
            t_start: hit_time,
            t_end: t,
        };
        Ok((end, Trajectory::new(vec![first, second], kind)))
    }

    /// The straight segment between two points of the same medium.
    pub fn straight_between(&self, q1: Vector2, q2: Vector2) -> Result<Trajectory> {
        let (r1, r2) = (Region::of(q1), Region::of(q2));
        if r1 != r2 || r1 == Region::Eta {
            return Err(Error::RegionMismatch(format!(
                "{q1} ({r1}) and {q2} ({r2}) are not inside the same medium"
            )));
        }
        let seg = Segment::priced(self, r1, q1, q2, 0.0, 0.0);
        Ok(Trajectory::new(vec![seg], TrajectoryKind::Straight))
    }

    /// Interface interval reachable by sub-critical (refracting) rays from
    /// `q1`, as `(y_low, y_high)`; infinite where no critical angle bounds it.
    pub fn refraction_window(&self, q1: Vector2) -> Result<(f64, f64)> {
        require_left(q1)?;
        let crit = self.critical_angles();
        let y = |angle: Option<f64>, unbounded: f64| match angle {
            Some(a) => q1.y + q1.x.abs() * a.tan(),
            None => unbounded,
        };
        Ok((y(crit.minus, f64::NEG_INFINITY), y(crit.plus, f64::INFINITY)))
    }

    /// The unique refracted trajectory from `q1` (left) to `q2` (right).
    pub fn refracted_between(&self, q1: Vector2, q2: Vector2) -> Result<Trajectory> {
        if !(q1.x < 0.0 && q2.x > 0.0) || !q1.is_finite() || !q2.is_finite() {
            return Err(Error::RegionMismatch(format!(
                "refraction needs {q1} in Q1 and {q2} in Q2"
            )));
        }
        let (lo, hi) = self.subcritical_range();
        let depth = -q1.x;
        let miss = |theta1: f64| -> f64 {
            if theta1 <= lo {
                return f64::INFINITY;
            }
            if theta1 >= hi {
                return f64::NEG_INFINITY;
            }
            let break_y = q1.y + depth * theta1.tan();
            match self.refract(theta1) {
                Ok(RefractionOutcome::Refracted { theta2 }) => q2.y - (break_y + q2.x * theta2.tan()),
                Ok(RefractionOutcome::Critical { sign: Sign::Minus }) => f64::INFINITY,
                Ok(_) => f64::NEG_INFINITY,
                Err(_) => f64::NAN,
            }
        };
        let theta1 = shoot(miss, lo, hi)?;
        let b = Vector2::new(0.0, q1.y + depth * theta1.tan());
        let leg1 = Segment::priced(self, Region::Q1, q1, b, theta1, 0.0);
        let leg2 = Segment::priced(self, Region::Q2, b, q2, 0.0, leg1.t_end);
        check_aim(self.profile2(), &leg2, self.profile1().raypath_parameter(theta1))?;
        Ok(Trajectory::new(vec![leg1, leg2], TrajectoryKind::Refracted))
    }

    /// The unique reflected trajectory between two left-medium points,
    /// touching the interface once.
    pub fn reflected_between(&self, q1: Vector2, q2: Vector2) -> Result<Trajectory> {
        if !(q1.x < 0.0 && q2.x < 0.0) || !q1.is_finite() || !q2.is_finite() {
            return Err(Error::RegionMismatch(format!("reflection needs {q1} and {q2} in Q1")));
        }
        if q1 == q2 {
            return Err(Error::InvalidArgument("reflection between coincident points".into()));
        }
        let depth = -q1.x;
        let miss = |theta1: f64| -> f64 {
            if theta1 <= -FRAC_PI_2 {
                return f64::INFINITY;
            }
            if theta1 >= FRAC_PI_2 {
                return f64::NEG_INFINITY;
            }
            let break_y = q1.y + depth * theta1.tan();
            match self.reflect(theta1) {
                Ok(theta3) => q2.y - (break_y + q2.x * theta3.tan()),
                Err(_) => f64::NAN,
            }
        };
        let theta1 = shoot(miss, -FRAC_PI_2, FRAC_PI_2)?;
        let b = Vector2::new(0.0, q1.y + depth * theta1.tan());
        let leg1 = Segment::priced(self, Region::Q1, q1, b, theta1, 0.0);
        let leg2 = Segment::priced(self, Region::Q1, b, q2, 0.0, leg1.t_end);
        check_aim(self.profile1(), &leg2, self.profile1().raypath_parameter(theta1))?;
        Ok(Trajectory::new(vec![leg1, leg2], TrajectoryKind::Reflected))
    }

    /// Left medium at the critical angle `θ_c^sign`, along the interface in
    /// the `sign` direction, and back to `q2` at the reflection angle.
    ///
    /// Returns `None` when the interface run would have to go against
    /// `sign`. When the run has zero length the result is the two-segment
    /// reflection at the critical angle.
    pub fn three_segment_between(&self, q1: Vector2, q2: Vector2, sign: Sign) -> Result<Option<Trajectory>> {
        if !(q1.x < 0.0 && q2.x < 0.0) || !q1.is_finite() || !q2.is_finite() {
            return Err(Error::RegionMismatch(format!(
                "three-segment path needs {q1} and {q2} in Q1"
            )));
        }
        let theta_c = self
            .critical_angles()
            .get(sign)
            .ok_or(Error::MissingCriticalAngle(sign))?;
        let theta3 = self.reflect(theta_c)?;
        let b1 = Vector2::new(0.0, q1.y - q1.x * theta_c.tan());
        let b2 = Vector2::new(0.0, q2.y - q2.x * theta3.tan());
        let run = (b2.y - b1.y) * sign.value();
        let leg1 = Segment::priced(self, Region::Q1, q1, b1, theta_c, 0.0);
        if run.abs() <= INTERFACE_TOL * (1.0 + b1.y.abs()) {
            let leg2 = Segment::priced(self, Region::Q1, b1, q2, theta3, leg1.t_end);
            return Ok(Some(Trajectory::new(vec![leg1, leg2], TrajectoryKind::Reflected)));
        }
        if run < 0.0 {
            return Ok(None);
        }
        let leg2 = Segment {
            theta: sign.interface_angle(),
            ..Segment::priced(self, Region::Eta, b1, b2, sign.interface_angle(), leg1.t_end)
        };
        let leg3 = Segment::priced(self, Region::Q1, b2, q2, theta3, leg2.t_end);
        Ok(Some(Trajectory::new(
            vec![leg1, leg2, leg3],
            TrajectoryKind::ThreeSegment,
        )))
    }

    /// Critical trajectory from `q1` to the interface point `target`: the
    /// critical ray to its break point, then along the interface. `None` if
    /// `target` lies behind the break point.
    pub fn critical_run_to(&self, q1: Vector2, target_y: f64, sign: Sign) -> Result<Option<Trajectory>> {
        require_left(q1)?;
        let theta_c = self
            .critical_angles()
            .get(sign)
            .ok_or(Error::MissingCriticalAngle(sign))?;
        let b1 = Vector2::new(0.0, q1.y - q1.x * theta_c.tan());
        if (target_y - b1.y) * sign.value() < 0.0 {
            return Ok(None);
        }
        let leg1 = Segment::priced(self, Region::Q1, q1, b1, theta_c, 0.0);
        let leg2 = Segment::priced(
            self,
            Region::Eta,
            b1,
            Vector2::new(0.0, target_y),
            sign.interface_angle(),
            leg1.t_end,
        );
        let leg2 = Segment {
            theta: sign.interface_angle(),
            ..leg2
        };
        Ok(Some(Trajectory::new(vec![leg1, leg2], TrajectoryKind::CriticalRun)))
    }

    /// Globally time-minimizing trajectory from `q1` to `q2`.
    ///
    /// Targets in the right medium are reached by the refracted trajectory.
    /// Left-medium targets compare the straight segment with the
    /// three-segment trajectories; interface targets compare the direct
    /// segment with critical runs. Sources in the right medium are solved in
    /// the mirrored scene.
    pub fn global_minimizer(&self, q1: Vector2, q2: Vector2) -> Result<GlobalMinimizer> {
        if !q1.is_finite() || !q2.is_finite() {
            return Err(Error::InvalidArgument("non-finite endpoint".into()));
        }
        match Region::of(q1) {
            Region::Eta => Err(Error::RegionMismatch(format!("source {q1} lies on the interface"))),
            Region::Q2 => {
                let m = self.mirrored().global_minimizer(q1.mirror_x(), q2.mirror_x())?;
                Ok(GlobalMinimizer {
                    trajectory: m.trajectory.unmirror(),
                    competitor: m.competitor.map(Trajectory::unmirror),
                    ..m
                })
            }
            Region::Q1 => match Region::of(q2) {
                Region::Q2 => {
                    let trajectory = self.refracted_between(q1, q2)?;
                    Ok(GlobalMinimizer {
                        time: trajectory.duration(),
                        trajectory,
                        cut_locus: false,
                        competitor: None,
                    })
                }
                Region::Eta => {
                    let target = Vector2::new(0.0, q2.y);
                    let direct = Segment::priced(self, Region::Q1, q1, target, 0.0, 0.0);
                    let mut candidates = vec![Trajectory::new(vec![direct], TrajectoryKind::Straight)];
                    for sign in Sign::BOTH {
                        if self.critical_angles().get(sign).is_some() {
                            candidates.extend(self.critical_run_to(q1, q2.y, sign)?);
                        }
                    }
                    Ok(pick_fastest(candidates))
                }
                Region::Q1 => {
                    let mut candidates = vec![self.straight_between(q1, q2)?];
                    for sign in Sign::BOTH {
                        if self.critical_angles().get(sign).is_some() {
                            candidates.extend(self.three_segment_between(q1, q2, sign)?);
                        }
                    }
                    Ok(pick_fastest(candidates))
                }
            },
        }
    }
}

fn require_left(q1: Vector2) -> Result<()> {
    if q1.x < 0.0 && q1.is_finite() {
        Ok(())
    } else {
        Err(Error::RegionMismatch(format!("source {q1} is not in Q1")))
    }
}

/// Fastest candidate; the first candidate wins ties and the runner-up is
/// kept when it ties with a genuinely different path.
fn pick_fastest(candidates: Vec<Trajectory>) -> GlobalMinimizer {
    let mut best = 0;
    for (i, c) in candidates.iter().enumerate().skip(1) {
        if c.duration() < candidates[best].duration() - TIE_TOL {
            best = i;
        }
    }
    let time = candidates[best].duration();
    let competitor = candidates
        .iter()
        .enumerate()
        .filter(|&(i, c)| i != best && (c.duration() - time).abs() <= TIE_TOL && !same_path(c, &candidates[best]))
        .map(|(_, c)| c.clone())
        .next();
    let trajectory = candidates.into_iter().nth(best).expect("non-empty candidate list");
    GlobalMinimizer {
        trajectory,
        time,
        cut_locus: competitor.is_some(),
        competitor,
    }
}

/// Whether two trajectories trace the same point set (zero-length interface
/// runs are ignored).
fn same_path(a: &Trajectory, b: &Trajectory) -> bool {
    let corners = |t: &Trajectory| {
        let mut pts: Vec<Vector2> = t.start().into_iter().collect();
        for s in &t.segments {
            if s.end.distance(*pts.last().unwrap()) > CONTIGUITY_TOL {
                pts.push(s.end);
            }
        }
        pts
    };
    let (pa, pb) = (corners(a), corners(b));
    if pa.len() == 2 && pb.len() == 2 {
        return pa[0].distance(pb[0]) <= CONTIGUITY_TOL && pa[1].distance(pb[1]) <= CONTIGUITY_TOL;
    }
    pa.len() == pb.len() && pa.iter().zip(&pb).all(|(x, y)| x.distance(*y) <= CONTIGUITY_TOL)
}

/// Scans the open interval `(lo, hi)` for a sign change of a decreasing
/// miss function and bisects it.
fn shoot<F>(mut miss: F, lo: f64, hi: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let n = SHOOTING_SCAN;
    let at = |i: usize| lo + (hi - lo) * i as f64 / n as f64;
    let mut prev_theta = lo;
    let mut prev = miss(lo);
    for i in 1..=n {
        let theta = at(i);
        let value = miss(theta);
        if value.is_nan() {
            return Err(Error::NoConvergence("shooting residual is NaN"));
        }
        if value == 0.0 {
            return Ok(theta);
        }
        if value.signum() != prev.signum() {
            return bisect(&mut miss, prev_theta, theta, SHOOTING_BISECTIONS);
        }
        prev_theta = theta;
        prev = value;
    }
    Err(Error::NoConvergence("shooting residual never changes sign"))
}

/// Snell (or reflection) residual of the final leg, which is built straight
/// from the break point to the target.
fn check_aim(profile: &SpeedProfile, leg: &Segment, raypath: f64) -> Result<()> {
    let residual = (profile.raypath_parameter(leg.theta) - raypath).abs();
    if residual > RAYPATH_TOL * (1.0 + raypath.abs()) {
        return Err(Error::NoConvergence("shooting solution misses the target"));
    }
    Ok(())
}
