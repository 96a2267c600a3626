//! Wavefronts of a point source in the left medium and its cut locus.
//!
//! Three families of time-minimizing curves leave the source: straight rays
//! in the left medium, rays refracted through the interface, and
//! three-segment rays that run along the interface at a critical angle and
//! come back. Each family sweeps its own front (standard, refracted,
//! reflected); the actual wavefront at time `t₀` is assembled from the parts
//! of each front that nothing else reaches earlier. Where the standard and a
//! reflected front cross, two distinct minimizers arrive together: those
//! crossings trace the cut locus.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;

use crate::error::{Error, Result};
use crate::interface::{Scene, Sign};
use crate::numeric::{bisect, convex_min, golden_max, BISECTION_MAX_ITER};
use crate::profiles::wrap_angle;
use crate::vector::Vector2;

/// Largest allowed gap between chained arcs of a composite wavefront.
pub const CLOSURE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArcKind {
    Standard,
    Refracted,
    Reflected,
}

impl ArcKind {
    pub fn name(self) -> &'static str {
        match self {
            ArcKind::Standard => "standard",
            ArcKind::Refracted => "refracted",
            ArcKind::Reflected => "reflected",
        }
    }
}

impl fmt::Display for ArcKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sampled piece of a wavefront.
///
/// `params` holds each sample's natural parameter: the ray angle for
/// standard arcs, the incidence angle for refracted arcs and `s ∈ [0, 1]`
/// for reflected arcs.
#[derive(Debug, Clone, PartialEq)]
pub struct WavefrontArc {
    pub kind: ArcKind,
    pub samples: Vec<Vector2>,
    pub params: Vec<f64>,
}

impl WavefrontArc {
    pub fn param_range(&self) -> (f64, f64) {
        (
            self.params.first().copied().unwrap_or(f64::NAN),
            self.params.last().copied().unwrap_or(f64::NAN),
        )
    }

    pub fn first(&self) -> Vector2 {
        self.samples[0]
    }

    pub fn last(&self) -> Vector2 {
        *self.samples.last().expect("arcs are non-empty")
    }

    fn reversed(mut self) -> Self {
        self.samples.reverse();
        self.params.reverse();
        self
    }
}

/// The wavefront at one time, arcs ordered counterclockwise.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeWavefront {
    pub time: f64,
    pub arcs: Vec<WavefrontArc>,
    pub closed: bool,
}

impl CompositeWavefront {
    /// Gaps between consecutive arcs, including last-to-first.
    pub fn gaps(&self) -> Vec<f64> {
        let n = self.arcs.len();
        (0..n)
            .map(|i| self.arcs[i].last().distance(self.arcs[(i + 1) % n].first()))
            .collect()
    }

    /// All samples in chain order.
    pub fn points(&self) -> impl Iterator<Item = Vector2> + '_ {
        self.arcs.iter().flat_map(|a| a.samples.iter().copied())
    }

    pub fn kinds(&self) -> Vec<ArcKind> {
        self.arcs.iter().map(|a| a.kind).collect()
    }
}

/// Times at which the critical trajectories reach the interface.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CriticalTimes {
    pub plus: Option<f64>,
    pub minus: Option<f64>,
}

impl CriticalTimes {
    pub fn get(&self, sign: Sign) -> Option<f64> {
        match sign {
            Sign::Plus => self.plus,
            Sign::Minus => self.minus,
        }
    }
}

/// Crossing of the standard front with a reflected front.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavefrontIntersection {
    /// Ray angle of the crossing point seen from the source.
    pub theta0: f64,
    /// Position along the reflected front, `0` at the interface end.
    pub s0: f64,
    pub point: Vector2,
}

/// One point of the cut locus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutLocusSample {
    pub branch: Sign,
    pub t: f64,
    pub point: Vector2,
}

/// Both ends of a reflected front.
#[derive(Debug, Clone, Copy)]
struct ReflectedEnds {
    /// End of the critical trajectory running along the interface.
    along: Vector2,
    /// End of the ordinary reflection of the critical ray.
    bounced: Vector2,
}

fn require_source(q1: Vector2) -> Result<()> {
    if q1.x < 0.0 && q1.is_finite() {
        Ok(())
    } else {
        Err(Error::RegionMismatch(format!("wavefront source {q1} is not in Q1")))
    }
}

impl Scene {
    /// Points reached at `t0` by straight rays: the left indicatrix scaled by
    /// `t0` and centered at `q1`, sampled at `n` uniform angles over the
    /// full circle (both `−π` and `π`, so the polyline closes).
    pub fn standard_wavefront(&self, q1: Vector2, t0: f64, n: usize) -> Result<WavefrontArc> {
        if !(t0 >= 0.0) || n < 16 {
            return Err(Error::InvalidArgument(format!(
                "standard wavefront needs t0 >= 0 and n >= 16, got {t0}, {n}"
            )));
        }
        Ok(self.standard_arc(q1, t0, -PI, PI, n))
    }

    fn standard_point(&self, q1: Vector2, t0: f64, theta: f64) -> Vector2 {
        q1 + Vector2::from_angle(theta) * (t0 * self.profile1().speed(theta))
    }

    fn standard_arc(&self, q1: Vector2, t0: f64, from: f64, to: f64, n: usize) -> WavefrontArc {
        let n = n.max(2);
        let params: Vec<f64> = (0..n).map(|i| from + (to - from) * i as f64 / (n - 1) as f64).collect();
        let samples = params.iter().map(|&th| self.standard_point(q1, t0, th)).collect();
        let params = params
            .into_iter()
            .map(|th| if th == -PI { th } else { wrap_angle(th) })
            .collect();
        WavefrontArc {
            kind: ArcKind::Standard,
            samples,
            params,
        }
    }

    /// Left-medium distance from `q1` to the interface, `min_y F₁((0, y) − q1)`.
    pub fn time_to_interface(&self, q1: Vector2) -> Result<f64> {
        require_source(q1)?;
        let p1 = self.profile1();
        let cost = |y: f64| p1.finsler_cost(Vector2::new(0.0, y) - q1);
        let depth = -q1.x;
        let y = convex_min(cost, q1.y, depth, 1e-10 * (1.0 + depth + q1.y.abs()))?;
        Ok(cost(y))
    }

    /// Arrival times `τ^± = |x| / (V₁(θ_c^±) cos θ_c^±)` of the critical rays.
    pub fn critical_times(&self, q1: Vector2) -> Result<CriticalTimes> {
        require_source(q1)?;
        let crit = self.critical_angles();
        let tau = |a: Option<f64>| a.map(|tc| -q1.x / (self.profile1().speed(tc) * tc.cos()));
        Ok(CriticalTimes {
            plus: tau(crit.plus),
            minus: tau(crit.minus),
        })
    }

    /// Angles `(θ_η⁻, θ_η⁺)` at which the standard front meets the interface,
    /// ordered by the crossing point's `y`.
    pub fn interface_crossings(&self, q1: Vector2, t0: f64) -> Result<(f64, f64)> {
        require_source(q1)?;
        let p1 = self.profile1();
        // x-reach of the front in direction θ; unimodal on the front half.
        let reach = |th: f64| q1.x + t0 * p1.speed(th) * th.cos();
        let apex = golden_max(reach, -FRAC_PI_2, FRAC_PI_2, 1e-13);
        if !(reach(apex) > 0.0) {
            return Err(Error::TooEarly {
                t: t0,
                threshold: -q1.x / (p1.speed(apex) * apex.cos()),
            });
        }
        let lower = bisect(reach, -FRAC_PI_2, apex, BISECTION_MAX_ITER)?;
        let upper = bisect(reach, apex, FRAC_PI_2, BISECTION_MAX_ITER)?;
        let y = |th: f64| self.standard_point(q1, t0, th).y;
        Ok(if y(lower) <= y(upper) {
            (lower, upper)
        } else {
            (upper, lower)
        })
    }

    fn reflected_ends(&self, q1: Vector2, t0: f64, sign: Sign) -> Result<ReflectedEnds> {
        require_source(q1)?;
        let theta_c = self
            .critical_angles()
            .get(sign)
            .ok_or(Error::MissingCriticalAngle(sign))?;
        let tau = self.critical_times(q1)?.get(sign).expect("critical angle exists");
        if !(t0 > tau) {
            return Err(Error::TooEarly { t: t0, threshold: tau });
        }
        let b1 = Vector2::new(0.0, q1.y - q1.x * theta_c.tan());
        let dt = t0 - tau;
        let along = Vector2::new(
            0.0,
            b1.y + sign.value() * dt * self.profile2().speed(sign.interface_angle()),
        );
        let theta3 = self.reflect(theta_c)?;
        let bounced = b1 + Vector2::from_angle(theta3) * (dt * self.profile1().speed(theta3));
        Ok(ReflectedEnds { along, bounced })
    }

    /// Reflected front of the `sign` critical angle: the straight segment from
    /// the end of the interface run (`s = 0`) to the end of the ordinary
    /// critical reflection (`s = 1`), sampled at `n ≥ 2` uniform `s`.
    pub fn reflected_wavefront(&self, q1: Vector2, t0: f64, sign: Sign, n: usize) -> Result<WavefrontArc> {
        let ends = self.reflected_ends(q1, t0, sign)?;
        Ok(reflected_arc(ends, 0.0, 1.0, n))
    }

    /// Unique crossing of the standard front with the `sign` reflected front.
    pub fn wavefront_intersection(&self, q1: Vector2, t0: f64, sign: Sign) -> Result<WavefrontIntersection> {
        let ends = self.reflected_ends(q1, t0, sign)?;
        let p1 = self.profile1();
        let excess = |s: f64| p1.finsler_cost(ends.along.lerp(ends.bounced, s) - q1) - t0;
        let s0 = bisect(excess, 0.0, 1.0, BISECTION_MAX_ITER)?;
        let point = ends.along.lerp(ends.bounced, s0);
        Ok(WavefrontIntersection {
            theta0: (point - q1).angle(),
            s0,
            point,
        })
    }

    /// Positions at `t0` of all rays that cross the interface by `t0` and
    /// refract (incidence strictly between the critical angles), swept by
    /// increasing incidence angle. When `t0` is past a critical time the
    /// sweep ends at that critical angle, whose ray has run along the
    /// interface.
    pub fn refracted_wavefront(&self, q1: Vector2, t0: f64, n: usize) -> Result<WavefrontArc> {
        if n < 16 {
            return Err(Error::InvalidArgument(format!(
                "refracted wavefront needs n >= 16, got {n}"
            )));
        }
        let tau_eta = self.time_to_interface(q1)?;
        if !(t0 > tau_eta) {
            return Err(Error::TooEarly {
                t: t0,
                threshold: tau_eta,
            });
        }
        let (lo, hi) = self.refracted_range(q1, t0)?;
        self.refracted_arc(q1, t0, lo, hi, n)
    }

    fn refracted_range(&self, q1: Vector2, t0: f64) -> Result<(f64, f64)> {
        let (eta_lo, eta_hi) = self.interface_crossings(q1, t0)?;
        let (crit_lo, crit_hi) = self.subcritical_range();
        Ok((eta_lo.max(crit_lo), eta_hi.min(crit_hi)))
    }

    fn refracted_arc(&self, q1: Vector2, t0: f64, lo: f64, hi: f64, n: usize) -> Result<WavefrontArc> {
        let n = n.max(2);
        let mut samples = Vec::with_capacity(n);
        let mut params = Vec::with_capacity(n);
        for i in 0..n {
            let theta = if i + 1 == n {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            };
            let (p, _) = self.trace_ray(q1, theta, t0)?;
            samples.push(p);
            params.push(theta);
        }
        Ok(WavefrontArc {
            kind: ArcKind::Refracted,
            samples,
            params,
        })
    }

    /// The wavefront at `t0`, assembled counterclockwise from the standard
    /// arc still in the left medium, any reflected arcs and the refracted
    /// arc. Roughly half of the `n` samples go to the standard arc.
    pub fn composite_wavefront(&self, q1: Vector2, t0: f64, n: usize) -> Result<CompositeWavefront> {
        if n < 64 {
            return Err(Error::InvalidArgument(format!(
                "composite wavefront needs n >= 64, got {n}"
            )));
        }
        if !(t0 >= 0.0) {
            return Err(Error::InvalidArgument(format!("negative time {t0}")));
        }
        let tau_eta = self.time_to_interface(q1)?;
        let whole = |scene: &Scene| -> Result<CompositeWavefront> {
            let arc = scene.standard_wavefront(q1, t0, n)?;
            Ok(finish(t0, vec![arc]))
        };
        if t0 <= tau_eta {
            return whole(self);
        }
        let (lo, hi) = match self.refracted_range(q1, t0) {
            Ok(range) => range,
            // Within rounding of τ_η the front only grazes the interface.
            Err(Error::TooEarly { .. }) => return whole(self),
            Err(e) => return Err(e),
        };
        let (eta_lo, eta_hi) = self.interface_crossings(q1, t0)?;
        let times = self.critical_times(q1)?;
        let n_reflected = (n / 16).max(2);
        let reflected = |sign: Sign| -> Result<Option<(WavefrontArc, f64)>> {
            match times.get(sign) {
                Some(tau) if t0 > tau => {
                    let hit = self.wavefront_intersection(q1, t0, sign)?;
                    let ends = self.reflected_ends(q1, t0, sign)?;
                    Ok(Some((reflected_arc(ends, 0.0, hit.s0, n_reflected), hit.theta0)))
                }
                _ => Ok(None),
            }
        };
        let upper = reflected(Sign::Plus)?;
        let lower = reflected(Sign::Minus)?;

        let std_from = upper.as_ref().map_or(eta_hi, |(_, th)| *th);
        let mut std_to = lower.as_ref().map_or(eta_lo, |(_, th)| *th);
        while std_to <= std_from {
            std_to += TAU;
        }
        let mut arcs = vec![self.standard_arc(q1, t0, std_from, std_to, n / 2)];
        if let Some((arc, _)) = lower {
            arcs.push(arc.reversed());
        }
        arcs.push(self.refracted_arc(q1, t0, lo, hi, n - n / 2)?);
        if let Some((arc, _)) = upper {
            arcs.push(arc);
        }
        Ok(finish(t0, arcs))
    }

    /// Cut-locus points `σ^±(t)` at `n` uniform times in `(τ^±, t_max]` for
    /// every branch whose critical time is below `t_max`.
    pub fn cut_locus(&self, q1: Vector2, t_max: f64, n: usize) -> Result<Vec<CutLocusSample>> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("cut locus needs n >= 2, got {n}")));
        }
        let times = self.critical_times(q1)?;
        if times.plus.is_none() && times.minus.is_none() {
            return Err(Error::MissingCriticalAngle(Sign::Plus));
        }
        let earliest = [times.plus, times.minus]
            .into_iter()
            .flatten()
            .fold(f64::INFINITY, f64::min);
        if !(t_max > earliest) {
            return Err(Error::TooEarly {
                t: t_max,
                threshold: earliest,
            });
        }
        let mut out = Vec::with_capacity(2 * n);
        for sign in Sign::BOTH {
            let Some(tau) = times.get(sign) else { continue };
            if t_max <= tau {
                continue;
            }
            for k in 1..=n {
                let t = tau + (t_max - tau) * k as f64 / n as f64;
                let hit = self.wavefront_intersection(q1, t, sign)?;
                out.push(CutLocusSample {
                    branch: sign,
                    t,
                    point: hit.point,
                });
            }
        }
        Ok(out)
    }
}

fn reflected_arc(ends: ReflectedEnds, s_from: f64, s_to: f64, n: usize) -> WavefrontArc {
    let n = n.max(2);
    let params: Vec<f64> = (0..n)
        .map(|i| s_from + (s_to - s_from) * i as f64 / (n - 1) as f64)
        .collect();
    let samples = params.iter().map(|&s| ends.along.lerp(ends.bounced, s)).collect();
    WavefrontArc {
        kind: ArcKind::Reflected,
        samples,
        params,
    }
}

fn finish(time: f64, arcs: Vec<WavefrontArc>) -> CompositeWavefront {
    let mut front = CompositeWavefront {
        time,
        arcs,
        closed: false,
    };
    front.closed = front.gaps().iter().all(|&g| g <= CLOSURE_TOL);
    front
}
