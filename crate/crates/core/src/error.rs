use thiserror::Error;

use crate::interface::Sign;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid speed profile: {0}")]
    InvalidProfile(String),

    /// The indicatrix of a profile is not strongly convex.
    #[error("speed profile for region {region} is not strongly convex (margin {margin:e})")]
    NotConvex { region: u8, margin: f64 },

    #[error("raypath value {target} outside the branch range [{min}, {max}]")]
    TargetOutOfRange { target: f64, min: f64, max: f64 },

    #[error("angle of incidence {0} is not in (-pi/2, pi/2)")]
    InvalidIncidence(f64),

    #[error("no convergence: {0}")]
    NoConvergence(&'static str),

    #[error("malformed trajectory: {0}")]
    MalformedTrajectory(String),

    #[error("no {0} critical angle in this scene")]
    MissingCriticalAngle(Sign),

    #[error("time {t} is not past the threshold {threshold}")]
    TooEarly { t: f64, threshold: f64 },

    #[error("points are not in the required regions: {0}")]
    RegionMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
