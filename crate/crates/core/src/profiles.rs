//! Speed profiles and the Minkowski norms they induce.
//!
//! Angles are absolute directions against the +x axis. A profile `V(θ)` is
//! the Euclidean speed of travel in direction `θ`; its norm is
//! `F(v) = |v| / V(θ(v))`, the time needed to cover `v`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::{Error, Result};
use crate::vector::Vector2;

/// Grid size used when a scene validates the convexity of its profiles.
pub const DEFAULT_CONVEXITY_SAMPLES: usize = 3600;

/// Direction-dependent propagation speed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpeedProfile {
    /// Constant speed in every direction.
    Isotropic { speed: f64 },
    /// Ellipse with semi-major axis `a` and eccentricity `eps`, seen from one
    /// of its foci, major axis pointing along `phi`:
    /// `V(θ) = a(1 − ε²) / (1 − ε cos(θ − φ))`.
    FocusEllipse { a: f64, eps: f64, phi: f64 },
}

/// `V`, `dV/dθ` and `d²V/dθ²` at one direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpeedDerivs {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

impl SpeedProfile {
    pub fn isotropic(speed: f64) -> Result<Self> {
        let p = SpeedProfile::Isotropic { speed };
        p.validate()?;
        Ok(p)
    }

    pub fn focus_ellipse(a: f64, eps: f64, phi: f64) -> Result<Self> {
        let p = SpeedProfile::FocusEllipse { a, eps, phi };
        p.validate()?;
        Ok(p)
    }

    /// Parameter-range check; convexity is checked separately by
    /// [`SpeedProfile::convexity_margin`].
    pub fn validate(&self) -> Result<()> {
        match *self {
            SpeedProfile::Isotropic { speed } => {
                if !(speed.is_finite() && speed > 0.0) {
                    return Err(Error::InvalidProfile(format!(
                        "isotropic speed must be finite and positive, got {speed}"
                    )));
                }
            }
            SpeedProfile::FocusEllipse { a, eps, phi } => {
                if !(a.is_finite() && a > 0.0) {
                    return Err(Error::InvalidProfile(format!(
                        "ellipse semi-major axis must be finite and positive, got {a}"
                    )));
                }
                if !(eps.is_finite() && (0.0..1.0).contains(&eps)) {
                    return Err(Error::InvalidProfile(format!(
                        "ellipse eccentricity must lie in [0, 1), got {eps}"
                    )));
                }
                if !phi.is_finite() {
                    return Err(Error::InvalidProfile(format!(
                        "ellipse orientation must be finite, got {phi}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `V(θ)`.
    pub fn speed(&self, theta: f64) -> f64 {
        match *self {
            SpeedProfile::Isotropic { speed } => speed,
            SpeedProfile::FocusEllipse { a, eps, phi } => a * (1.0 - eps * eps) / (1.0 - eps * (theta - phi).cos()),
        }
    }

    /// `V`, `V′` and `V″` in closed form.
    pub fn speed_derivs(&self, theta: f64) -> SpeedDerivs {
        match *self {
            SpeedProfile::Isotropic { speed } => SpeedDerivs {
                value: speed,
                d1: 0.0,
                d2: 0.0,
            },
            SpeedProfile::FocusEllipse { a, eps, phi } => {
                let k = a * (1.0 - eps * eps);
                let (s, c) = (theta - phi).sin_cos();
                let den = 1.0 - eps * c;
                SpeedDerivs {
                    value: k / den,
                    d1: -k * eps * s / (den * den),
                    d2: -k * eps * c / (den * den) + 2.0 * k * eps * eps * s * s / (den * den * den),
                }
            }
        }
    }

    /// Travel time along the displacement `v`; zero for the zero vector.
    pub fn finsler_cost(&self, v: Vector2) -> f64 {
        if v.x == 0.0 && v.y == 0.0 {
            return 0.0;
        }
        match *self {
            SpeedProfile::Isotropic { speed } => v.norm() / speed,
            // |v|(1 − ε cos(θ − φ)) = |v| − ε ⟨v, (cos φ, sin φ)⟩
            SpeedProfile::FocusEllipse { a, eps, phi } => {
                let k = a * (1.0 - eps * eps);
                (v.norm() - eps * v.dot(Vector2::from_angle(phi))) / k
            }
        }
    }

    /// Raypath parameter `P(θ) = ∂F/∂ẏ = sin θ / V + cos θ · d(1/V)/dθ`.
    pub fn raypath_parameter(&self, theta: f64) -> f64 {
        match *self {
            SpeedProfile::Isotropic { speed } => theta.sin() / speed,
            SpeedProfile::FocusEllipse { a, eps, phi } => (theta.sin() - eps * phi.sin()) / (a * (1.0 - eps * eps)),
        }
    }

    /// `dP/dθ = (cos θ / V³) [V² + 2V′² − V V″]`.
    pub fn raypath_derivative(&self, theta: f64) -> f64 {
        let d = self.speed_derivs(theta);
        theta.cos() * convexity_bracket(d) / (d.value * d.value * d.value)
    }

    /// Minimum of `V² + 2V′² − V V″` over `n_samples` uniform directions in
    /// `(−π, π]`. The indicatrix is strongly convex iff this is positive.
    pub fn convexity_margin(&self, n_samples: usize) -> f64 {
        let n = n_samples.max(8);
        (1..=n)
            .map(|i| -PI + TAU * i as f64 / n as f64)
            .map(|theta| convexity_bracket(self.speed_derivs(theta)))
            .fold(f64::INFINITY, f64::min)
    }

    /// The profile seen through the reflection `x ↦ −x`: `V'(θ) = V(π − θ)`.
    pub fn mirrored(&self) -> Self {
        match *self {
            p @ SpeedProfile::Isotropic { .. } => p,
            SpeedProfile::FocusEllipse { a, eps, phi } => SpeedProfile::FocusEllipse {
                a,
                eps,
                phi: wrap_angle(PI - phi),
            },
        }
    }

    /// Largest speed over all directions.
    pub fn max_speed(&self) -> f64 {
        match *self {
            SpeedProfile::Isotropic { speed } => speed,
            SpeedProfile::FocusEllipse { a, eps, .. } => a * (1.0 + eps),
        }
    }

    /// Smallest speed over all directions.
    pub fn min_speed(&self) -> f64 {
        match *self {
            SpeedProfile::Isotropic { speed } => speed,
            SpeedProfile::FocusEllipse { a, eps, .. } => a * (1.0 - eps),
        }
    }

    /// Speed along the interface in the `+y` (`up = true`) or `−y` direction.
    pub fn interface_speed(&self, up: bool) -> f64 {
        self.speed(if up { FRAC_PI_2 } else { -FRAC_PI_2 })
    }
}

fn convexity_bracket(d: SpeedDerivs) -> f64 {
    d.value * d.value + 2.0 * d.d1 * d.d1 - d.value * d.d2
}

/// Wraps an angle into `(−π, π]`.
pub fn wrap_angle(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(TAU);
    if t > PI {
        t -= TAU;
    }
    t
}
