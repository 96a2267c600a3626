//! Line-based scene files.
//!
//! ```text
//! # left medium
//! region1.profile = ellipse
//! region1.a = 1
//! region1.eps = 0.5
//! region1.phi = 0
//! region2.profile = isotropic
//! region2.speed = 2
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use finsnell::{Scene, SpeedProfile};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SceneFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing key `{0}`")]
    Missing(String),
    #[error("invalid scene: {0}")]
    Invalid(#[from] finsnell::Error),
}

impl SceneFileError {
    /// Whether the file was readable but described an unusable scene.
    pub fn is_domain(&self) -> bool {
        matches!(self, SceneFileError::Invalid(_))
    }
}

struct Entry {
    line: usize,
    value: String,
}

pub fn parse(text: &str) -> Result<Scene, SceneFileError> {
    let mut entries: BTreeMap<String, Entry> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let syntax = |message: String| SceneFileError::Syntax { line, message };
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| syntax(format!("expected `key = value`, got `{content}`")))?;
        let (key, value) = (key.trim(), value.trim());
        let known = ["profile", "speed", "a", "eps", "phi"];
        let valid = key
            .split_once('.')
            .is_some_and(|(region, field)| matches!(region, "region1" | "region2") && known.contains(&field));
        if !valid {
            return Err(syntax(format!("unknown key `{key}`")));
        }
        if value.is_empty() {
            return Err(syntax(format!("empty value for `{key}`")));
        }
        if let Some(prev) = entries.get(key) {
            return Err(syntax(format!(
                "duplicate key `{key}` (first set on line {})",
                prev.line
            )));
        }
        entries.insert(
            key.to_string(),
            Entry {
                line,
                value: value.to_string(),
            },
        );
    }

    let profile1 = region_profile(&mut entries, "region1")?;
    let profile2 = region_profile(&mut entries, "region2")?;
    if let Some((key, entry)) = entries.iter().next() {
        return Err(SceneFileError::Syntax {
            line: entry.line,
            message: format!("key `{key}` does not apply to this profile"),
        });
    }
    Ok(Scene::new(profile1, profile2)?)
}

fn region_profile(entries: &mut BTreeMap<String, Entry>, region: &str) -> Result<SpeedProfile, SceneFileError> {
    let mut take = |field: &str| -> Result<Entry, SceneFileError> {
        let key = format!("{region}.{field}");
        entries.remove(&key).ok_or(SceneFileError::Missing(key))
    };
    let number = |entry: Entry, field: &str| -> Result<f64, SceneFileError> {
        match entry.value.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(SceneFileError::Syntax {
                line: entry.line,
                message: format!("`{region}.{field}` is not a finite number: `{}`", entry.value),
            }),
        }
    };
    let kind = take("profile")?;
    match kind.value.as_str() {
        "isotropic" => Ok(SpeedProfile::Isotropic {
            speed: number(take("speed")?, "speed")?,
        }),
        "ellipse" => Ok(SpeedProfile::FocusEllipse {
            a: number(take("a")?, "a")?,
            eps: number(take("eps")?, "eps")?,
            phi: number(take("phi")?, "phi")?,
        }),
        other => Err(SceneFileError::Syntax {
            line: kind.line,
            message: format!("unknown profile `{other}` (expected isotropic or ellipse)"),
        }),
    }
}

/// Canonical scene file. Numbers use the shortest text that parses back to
/// the same value.
pub fn dump(scene: &Scene) -> String {
    let mut out = String::new();
    for (i, profile) in [scene.profile1(), scene.profile2()].into_iter().enumerate() {
        let region = format!("region{}", i + 1);
        match *profile {
            SpeedProfile::Isotropic { speed } => {
                let _ = writeln!(out, "{region}.profile = isotropic");
                let _ = writeln!(out, "{region}.speed = {speed:?}");
            }
            SpeedProfile::FocusEllipse { a, eps, phi } => {
                let _ = writeln!(out, "{region}.profile = ellipse");
                let _ = writeln!(out, "{region}.a = {a:?}");
                let _ = writeln!(out, "{region}.eps = {eps:?}");
                let _ = writeln!(out, "{region}.phi = {phi:?}");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const ELLIPSE: &str = "\
# focus-ellipse pair
region1.profile = ellipse
region1.a = 1
region1.eps = 0.5
region1.phi = 0      # focus axis along x
region2.profile = ellipse
region2.a = 1
region2.eps = 0.5
region2.phi = 1.5707963267948966
";

    #[test]
    fn parses_ellipse_fixture() {
        let s = parse(ELLIPSE).unwrap();
        assert_eq!(
            *s.profile1(),
            SpeedProfile::FocusEllipse {
                a: 1.0,
                eps: 0.5,
                phi: 0.0
            }
        );
        assert!(s.critical_angles().plus.is_some());
    }

    #[test]
    fn dump_round_trips() {
        let s = parse(ELLIPSE).unwrap();
        assert_eq!(parse(&dump(&s)).unwrap(), s);
        let s = parse("region1.profile=isotropic\nregion1.speed=0.1\nregion2.profile=isotropic\nregion2.speed=3\n")
            .unwrap();
        assert_eq!(parse(&dump(&s)).unwrap(), s);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse("region1.profile = isotropic\nregion1.sped = 1\n").unwrap_err();
        assert_eq!(
            err,
            SceneFileError::Syntax {
                line: 2,
                message: "unknown key `region1.sped`".into()
            }
        );

        let err = parse("\n\nregion1.profile isotropic\n").unwrap_err();
        assert!(matches!(err, SceneFileError::Syntax { line: 3, .. }));

        let err = parse("region1.profile = isotropic\nregion1.speed = fast\n").unwrap_err();
        assert!(matches!(err, SceneFileError::Syntax { line: 2, .. }));

        let err = parse("region1.profile = isotropic\nregion1.profile = ellipse\n").unwrap_err();
        assert!(matches!(err, SceneFileError::Syntax { line: 2, .. }));
    }

    #[test]
    fn rejects_stray_and_missing_keys() {
        let text = "region1.profile = isotropic\nregion1.speed = 1\nregion1.eps = 0.2\n\
                    region2.profile = isotropic\nregion2.speed = 1\n";
        assert!(matches!(
            parse(text).unwrap_err(),
            SceneFileError::Syntax { line: 3, .. }
        ));
        let text = "region1.profile = isotropic\nregion1.speed = 1\nregion2.profile = ellipse\nregion2.a = 1\n";
        assert_eq!(parse(text).unwrap_err(), SceneFileError::Missing("region2.eps".into()));
    }

    #[test]
    fn invalid_profiles_are_domain_errors() {
        let text = "region1.profile = isotropic\nregion1.speed = -1\nregion2.profile = isotropic\nregion2.speed = 1\n";
        let err = parse(text).unwrap_err();
        assert!(err.is_domain(), "{err}");
    }
}
