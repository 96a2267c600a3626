//! Command-line frontend for `finsnell`.
//!
//! Exit codes: `0` on success, `1` for domain errors (bad scene, no
//! solution, failed verification), `2` for usage and parse errors.

pub mod export;
pub mod scene_file;
pub mod verify;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use finsnell::{OracleOptions, RefractionOutcome, Scene, Vector2};
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(
    name = "finsnell",
    version,
    about = "Traveltimes, wavefronts and cut loci across an anisotropic interface"
)]
pub struct Cli {
    /// Read and print angles in degrees instead of radians.
    #[arg(long, global = true)]
    pub degrees: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Critical angles of the scene.
    Critical {
        #[arg(long)]
        scene: PathBuf,
    },
    /// Refract a ray arriving from the left medium.
    Refract {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        theta1: f64,
    },
    /// Reflect a ray arriving from the left medium.
    Reflect {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        theta1: f64,
    },
    /// Globally time-minimizing trajectory between two points.
    Trace {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        from: Vector2,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        to: Vector2,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Composite wavefront of a source at a given time.
    Wavefront {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        source: Vector2,
        #[arg(long)]
        time: f64,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Cut locus of a source up to a given time.
    Cutlocus {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        source: Vector2,
        #[arg(long)]
        tmax: f64,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Compare analytic minimizers with the brute-force oracle on random cases.
    Verify {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long, default_value_t = 50)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 512)]
        grid: usize,
        #[arg(long, default_value_t = 4)]
        rounds: usize,
    },
    /// Print the scene in canonical form.
    SceneDump {
        #[arg(long)]
        scene: PathBuf,
    },
}

fn parse_point(s: &str) -> Result<Vector2, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected X,Y, got `{s}`"))?;
    let coord = |t: &str| match t.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("`{t}` is not a finite number")),
    };
    Ok(Vector2::new(coord(x)?, coord(y)?))
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

impl From<finsnell::Error> for CliError {
    fn from(e: finsnell::Error) -> Self {
        match e {
            finsnell::Error::InvalidArgument(msg) => CliError::Usage(msg),
            other => CliError::Domain(other.to_string()),
        }
    }
}

fn load_scene(path: &Path) -> Result<Scene, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    scene_file::parse(&text).map_err(|e| {
        let msg = format!("{}: {e}", path.display());
        if e.is_domain() {
            CliError::Domain(msg)
        } else {
            CliError::Usage(msg)
        }
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))
}

struct Angles {
    degrees: bool,
}

impl Angles {
    fn input(&self, v: f64) -> f64 {
        if self.degrees {
            v.to_radians()
        } else {
            v
        }
    }

    fn show(&self, v: f64) -> String {
        if self.degrees {
            format!("{}", v.to_degrees())
        } else {
            format!("{v}")
        }
    }
}

/// Runs one command, writing the summary to `out`.
pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let angles = Angles { degrees: cli.degrees };
    let mut text = String::new();
    let mut line = |s: String| {
        text.push_str(&s);
        text.push('\n');
    };
    let status = match cli.command {
        Command::Critical { scene } => {
            let crit = load_scene(&scene)?.critical_angles();
            let show = |a: Option<f64>| a.map_or("none".to_string(), |v| angles.show(v));
            line(format!("theta_c_plus = {}", show(crit.plus)));
            line(format!("theta_c_minus = {}", show(crit.minus)));
            Ok(())
        }
        Command::Refract { scene, theta1 } => {
            match load_scene(&scene)?.refract(angles.input(theta1))? {
                RefractionOutcome::Refracted { theta2 } => {
                    line("outcome = refracted".into());
                    line(format!("theta2 = {}", angles.show(theta2)));
                }
                RefractionOutcome::Critical { sign } => {
                    line("outcome = critical".into());
                    line(format!("sign = {sign}"));
                }
                RefractionOutcome::TotalReflection { theta3 } => {
                    line("outcome = total-reflection".into());
                    line(format!("theta3 = {}", angles.show(theta3)));
                }
            }
            Ok(())
        }
        Command::Reflect { scene, theta1 } => {
            let theta3 = load_scene(&scene)?.reflect(angles.input(theta1))?;
            line(format!("theta3 = {}", angles.show(theta3)));
            Ok(())
        }
        Command::Trace { scene, from, to, csv } => {
            let g = load_scene(&scene)?.global_minimizer(from, to)?;
            line(format!("kind = {}", g.kind()));
            line(format!("time = {}", g.time));
            line(format!("cut_locus = {}", g.cut_locus));
            if let Some(c) = &g.competitor {
                line(format!("competitor = {}", c.kind));
            }
            if let Some(path) = csv {
                write_file(&path, &export::trajectory_csv(&g.trajectory))?;
            }
            Ok(())
        }
        Command::Wavefront {
            scene,
            source,
            time,
            samples,
            csv,
            svg,
        } => {
            let scene = load_scene(&scene)?;
            let front = scene.composite_wavefront(source, time, samples)?;
            line(format!("time = {}", front.time));
            line(format!("closed = {}", front.closed));
            for (i, arc) in front.arcs.iter().enumerate() {
                let (a, b) = arc.param_range();
                line(format!(
                    "arc {i} = {} ({} samples, param {a} .. {b})",
                    arc.kind,
                    arc.samples.len()
                ));
            }
            if let Some(path) = csv {
                write_file(&path, &export::wavefront_csv(&front))?;
            }
            if let Some(path) = svg {
                let cut = match scene.cut_locus(source, time, 64) {
                    Ok(c) => c,
                    Err(finsnell::Error::MissingCriticalAngle(_) | finsnell::Error::TooEarly { .. }) => Vec::new(),
                    Err(e) => return Err(e.into()),
                };
                write_file(&path, &export::wavefront_svg(&front, &cut))?;
            }
            Ok(())
        }
        Command::Cutlocus {
            scene,
            source,
            tmax,
            samples,
            csv,
        } => {
            let samples = load_scene(&scene)?.cut_locus(source, tmax, samples)?;
            for sign in finsnell::Sign::BOTH {
                let branch: Vec<_> = samples.iter().filter(|s| s.branch == sign).collect();
                if let (Some(a), Some(b)) = (branch.first(), branch.last()) {
                    line(format!(
                        "branch {sign}: {} samples, t {} .. {}, from ({}, {}) to ({}, {})",
                        branch.len(),
                        a.t,
                        b.t,
                        a.point.x,
                        a.point.y,
                        b.point.x,
                        b.point.y
                    ));
                }
            }
            if let Some(path) = csv {
                write_file(&path, &export::cut_locus_csv(&samples))?;
            }
            Ok(())
        }
        Command::Verify {
            scene,
            cases,
            seed,
            grid,
            rounds,
        } => {
            let scene = load_scene(&scene)?;
            let options = OracleOptions {
                grid_n: grid,
                refine_rounds: rounds,
            };
            if grid < 64 {
                return Err(CliError::Usage(format!("--grid must be at least 64, got {grid}")));
            }
            let results = verify::run(&scene, seed, cases, options)?;
            text.push_str(&verify::report(&results, options));
            let failed = results.iter().filter(|c| !c.passed()).count();
            if failed > 0 {
                Err(CliError::Domain(format!("{failed} of {cases} cases outside tolerance")))
            } else {
                Ok(())
            }
        }
        Command::SceneDump { scene } => {
            text.push_str(&scene_file::dump(&load_scene(&scene)?));
            Ok(())
        }
    };
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::Domain(format!("writing output: {e}")))?;
    status
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let stdout = std::io::stdout();
    match execute(cli, &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
