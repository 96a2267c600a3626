//! Fixture scenes shared by the criterion benchmarks.

use std::f64::consts::FRAC_PI_2;

use finsnell::{Scene, SpeedProfile};

/// Focus-centered ellipses, the right medium oriented along the interface.
pub fn ellipse_scene() -> Scene {
    Scene::new(
        SpeedProfile::FocusEllipse {
            a: 1.0,
            eps: 0.5,
            phi: 0.0,
        },
        SpeedProfile::FocusEllipse {
            a: 1.0,
            eps: 0.5,
            phi: FRAC_PI_2,
        },
    )
    .expect("valid fixture")
}

/// Isotropic media with refractive indices 1 and 1/2.
pub fn classic_scene() -> Scene {
    Scene::new(
        SpeedProfile::Isotropic { speed: 1.0 },
        SpeedProfile::Isotropic { speed: 2.0 },
    )
    .expect("valid fixture")
}
