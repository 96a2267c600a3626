//! Traveltime geometry for two planar anisotropic media.
//!
//! The plane is split by the interface `x = 0` into a left medium (`x < 0`)
//! and a right medium (`x > 0`). Each medium carries a direction-dependent
//! speed profile `V(θ)`, which induces the Minkowski norm
//! `F(v) = |v| / V(θ(v))`: the time needed to travel along `v`.
//!
//! The crate provides
//!
//! * [`profiles`]: speed profiles with their norms, plus the raypath parameter
//!   `P(θ) = ∂F/∂ẏ`, which is conserved across the interface;
//! * [`interface`]: the generalized Snell law `P₁(θ₁) = P₂(θ₂)`, the
//!   reflection law `P₁(θ₁) = P₁(θ₃)` and critical angles;
//! * [`trajectory`]: point-to-point solvers and the globally time-minimizing
//!   trajectory between two points;
//! * [`wavefront`]: standard, refracted and reflected wavefronts, their
//!   composite at a given time, and the cut locus;
//! * [`oracle`]: a brute-force traveltime minimizer used to check all of the
//!   above independently.
//!
//! ```
//! use finsnell::{Scene, SpeedProfile};
//!
//! let scene = Scene::new(
//!     SpeedProfile::Isotropic { speed: 1.0 },
//!     SpeedProfile::Isotropic { speed: 2.0 },
//! )
//! .unwrap();
//! let crit = scene.critical_angles();
//! assert!((crit.plus.unwrap() - std::f64::consts::FRAC_PI_6).abs() < 1e-12);
//! ```

// `!(x > 0.0)` is used on purpose so that NaN fails the check too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod interface;
pub mod numeric;
pub mod oracle;
pub mod profiles;
pub mod trajectory;
pub mod vector;
pub mod wavefront;

pub use error::{Error, Result};
pub use interface::{Branch, CriticalAngles, RefractionOutcome, Scene, Sign};
pub use oracle::{OracleFamily, OracleOptions, OracleResult, Reachability};
pub use profiles::SpeedProfile;
pub use trajectory::{GlobalMinimizer, Region, Segment, Trajectory, TrajectoryKind};
pub use vector::Vector2;
pub use wavefront::{ArcKind, CompositeWavefront, CriticalTimes, CutLocusSample, WavefrontArc, WavefrontIntersection};
