//! Refraction and reflection at the straight interface `x = 0`.
//!
//! Both laws are statements about the raypath parameter: refraction keeps
//! `P₁(θ₁) = P₂(θ₂)` and reflection keeps `P₁(θ₁) = P₁(θ₃)`. Since `P` is
//! strictly increasing on the front half-circle `[−π/2, π/2]` and strictly
//! decreasing on the back half-circle, both are solved by monotone
//! inversion.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;

use crate::error::{Error, Result};
use crate::numeric::{bisect, BISECTION_MAX_ITER};
use crate::profiles::{SpeedProfile, DEFAULT_CONVEXITY_SAMPLES};

/// Absolute tolerance deciding that an incidence angle is critical.
pub const CRITICAL_ANGLE_TOL: f64 = 1e-12;

/// Raypath targets this far outside a branch range are clamped instead of
/// rejected.
const RANGE_SLACK: f64 = 1e-12;

/// Which side of the interface a critical trajectory runs along: `Plus` is
/// the `+y` direction (`θ₂ = π/2`), `Minus` the `−y` direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    /// Direction of travel along the interface, `±π/2`.
    pub fn interface_angle(self) -> f64 {
        self.value() * FRAC_PI_2
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Half of the direction circle on which the raypath parameter is inverted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `θ ∈ [−π/2, π/2]`, heading towards the interface from the left.
    Front,
    /// `θ ∈ (−π, −π/2] ∪ [π/2, π]`, heading away from the interface.
    Back,
}

/// Two media separated by the interface `x = 0`: `profile1` governs
/// `x < 0`, `profile2` governs `x > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scene {
    profile1: SpeedProfile,
    profile2: SpeedProfile,
}

impl Scene {
    /// Validates parameters and strong convexity of both profiles.
    pub fn new(profile1: SpeedProfile, profile2: SpeedProfile) -> Result<Self> {
        for (region, p) in [(1u8, &profile1), (2u8, &profile2)] {
            p.validate()?;
            let margin = p.convexity_margin(DEFAULT_CONVEXITY_SAMPLES);
            if !(margin > 0.0) {
                return Err(Error::NotConvex { region, margin });
            }
        }
        Ok(Scene { profile1, profile2 })
    }

    pub fn profile1(&self) -> &SpeedProfile {
        &self.profile1
    }

    pub fn profile2(&self) -> &SpeedProfile {
        &self.profile2
    }

    /// The same configuration seen through `x ↦ −x`: media swap sides.
    pub fn mirrored(&self) -> Scene {
        Scene {
            profile1: self.profile2.mirrored(),
            profile2: self.profile1.mirrored(),
        }
    }

    /// Critical angles of incidence from the left medium.
    ///
    /// `θ_c⁺` exists iff `V₁(π/2) < V₂(π/2)` and solves `P₁(θ) = P₂(π/2)`;
    /// likewise `θ_c⁻` with `−π/2`.
    pub fn critical_angles(&self) -> CriticalAngles {
        let solve = |sign: Sign| {
            let up = sign.is_plus();
            if self.profile1.interface_speed(up) < self.profile2.interface_speed(up) {
                let target = self.profile2.raypath_parameter(sign.interface_angle());
                invert_raypath(&self.profile1, target, Branch::Front).ok()
            } else {
                None
            }
        };
        CriticalAngles {
            plus: solve(Sign::Plus),
            minus: solve(Sign::Minus),
        }
    }

    /// Open interval of incidence angles that refract into the right medium.
    pub fn subcritical_range(&self) -> (f64, f64) {
        let crit = self.critical_angles();
        (crit.minus.unwrap_or(-FRAC_PI_2), crit.plus.unwrap_or(FRAC_PI_2))
    }

    /// Generalized Snell law for a ray leaving the left medium at `theta1`.
    ///
    /// Super-critical incidence is not an error: it yields
    /// [`RefractionOutcome::TotalReflection`].
    pub fn refract(&self, theta1: f64) -> Result<RefractionOutcome> {
        check_incidence(theta1)?;
        let crit = self.critical_angles();
        for sign in Sign::BOTH {
            if let Some(tc) = crit.get(sign) {
                if (theta1 - tc).abs() <= CRITICAL_ANGLE_TOL {
                    return Ok(RefractionOutcome::Critical { sign });
                }
            }
        }
        let lo = crit.minus.unwrap_or(-FRAC_PI_2);
        let hi = crit.plus.unwrap_or(FRAC_PI_2);
        if lo < theta1 && theta1 < hi {
            let target = self.profile1.raypath_parameter(theta1);
            let theta2 = invert_raypath(&self.profile2, target, Branch::Front)?;
            Ok(RefractionOutcome::Refracted { theta2 })
        } else {
            Ok(RefractionOutcome::TotalReflection {
                theta3: self.reflect(theta1)?,
            })
        }
    }

    /// Generalized reflection law: the back-branch direction `θ₃` with
    /// `P₁(θ₃) = P₁(θ₁)`.
    pub fn reflect(&self, theta1: f64) -> Result<f64> {
        check_incidence(theta1)?;
        invert_raypath(&self.profile1, self.profile1.raypath_parameter(theta1), Branch::Back)
    }
}

fn check_incidence(theta1: f64) -> Result<()> {
    if theta1.abs() < FRAC_PI_2 {
        Ok(())
    } else {
        Err(Error::InvalidIncidence(theta1))
    }
}

/// Critical angles of a scene; either may be absent.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CriticalAngles {
    pub plus: Option<f64>,
    pub minus: Option<f64>,
}

impl CriticalAngles {
    pub fn get(&self, sign: Sign) -> Option<f64> {
        match sign {
            Sign::Plus => self.plus,
            Sign::Minus => self.minus,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.plus.is_none() && self.minus.is_none()
    }
}

/// What happens to a ray that reaches the interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RefractionOutcome {
    /// Crosses into the right medium with direction `θ₂ ∈ (−π/2, π/2)`.
    Refracted { theta2: f64 },
    /// Incidence at a critical angle: the ray continues along the interface.
    Critical { sign: Sign },
    /// No refracted direction exists; the ray turns back at `θ₃`.
    TotalReflection { theta3: f64 },
}

/// Solves `P(θ) = target` on one branch of the direction circle.
///
/// The back branch is searched on the contiguous interval `[π/2, 3π/2]`,
/// where `P` is decreasing, and mapped into `(−π, −π/2] ∪ [π/2, π]`.
pub fn invert_raypath(profile: &SpeedProfile, target: f64, branch: Branch) -> Result<f64> {
    let (lo, hi) = match branch {
        Branch::Front => (-FRAC_PI_2, FRAC_PI_2),
        Branch::Back => (FRAC_PI_2, 3.0 * FRAC_PI_2),
    };
    let (p_lo, p_hi) = (profile.raypath_parameter(lo), profile.raypath_parameter(hi));
    let (min, max) = (p_lo.min(p_hi), p_lo.max(p_hi));
    let slack = RANGE_SLACK * max.abs().max(min.abs()).max(1.0);
    if !(target >= min - slack && target <= max + slack) {
        return Err(Error::TargetOutOfRange { target, min, max });
    }
    let target = target.clamp(min, max);
    let theta = bisect(|t| profile.raypath_parameter(t) - target, lo, hi, BISECTION_MAX_ITER)?;
    Ok(match branch {
        Branch::Front => theta,
        Branch::Back if theta > PI => theta - TAU,
        Branch::Back => theta,
    })
}
