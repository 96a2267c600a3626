#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, PI};

use finsnell::{Scene, SpeedProfile, Vector2};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn ellipse_fixture() -> Scene {
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
    .unwrap()
}

pub fn iso(speed: f64) -> SpeedProfile {
    SpeedProfile::Isotropic { speed }
}

pub fn profile_strategy() -> impl Strategy<Value = SpeedProfile> {
    prop_oneof![
        (0.5f64..2.0).prop_map(iso),
        (0.5f64..2.0, 0.0f64..0.8, -PI..PI).prop_map(|(a, eps, phi)| SpeedProfile::FocusEllipse { a, eps, phi }),
    ]
}

pub fn scene_strategy() -> impl Strategy<Value = Scene> {
    (profile_strategy(), profile_strategy()).prop_map(|(p1, p2)| Scene::new(p1, p2).unwrap())
}

pub fn random_profile(rng: &mut ChaCha8Rng) -> SpeedProfile {
    if rng.gen_bool(0.25) {
        iso(rng.gen_range(0.5..2.0))
    } else {
        SpeedProfile::FocusEllipse {
            a: rng.gen_range(0.5..2.0),
            eps: rng.gen_range(0.0..0.8),
            phi: rng.gen_range(-PI..PI),
        }
    }
}

pub fn random_scene(rng: &mut ChaCha8Rng) -> Scene {
    Scene::new(random_profile(rng), random_profile(rng)).unwrap()
}

/// Point with `x` in `[-3, -0.1]` (left) or `[0.1, 3]` (right).
pub fn random_point(rng: &mut ChaCha8Rng, left: bool) -> Vector2 {
    let x = rng.gen_range(0.1..3.0);
    Vector2::new(if left { -x } else { x }, rng.gen_range(-3.0..3.0))
}

/// Even-odd point-in-polygon test.
pub fn inside_polygon(p: Vector2, poly: &[Vector2]) -> bool {
    let mut inside = false;
    let n = poly.len();
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        if (a.y > p.y) != (b.y > p.y) && p.x < a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y) {
            inside = !inside;
        }
    }
    inside
}
