use std::path::PathBuf;
use std::process::{Command, Output};

fn scene(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "scenes", name]
        .iter()
        .collect();
    path.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finsnell"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn value(text: &str, key: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("no `{key}` in\n{text}"))
        .to_string()
}

#[test]
fn critical_on_ellipse_scene() {
    let out = run(&["critical", "--scene", &scene("ellipse.cfg")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let plus: f64 = value(&text, "theta_c_plus").parse().unwrap();
    assert!((plus - std::f64::consts::FRAC_PI_6).abs() < 1e-12);
    assert_eq!(value(&text, "theta_c_minus"), "none");
}

#[test]
fn supercritical_refraction_reflects() {
    let out = run(&["refract", "--scene", &scene("classic.cfg"), "--theta1", "0.6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(value(&text, "outcome"), "total-reflection");
    let theta3: f64 = value(&text, "theta3").parse().unwrap();
    assert!((theta3 - (std::f64::consts::PI - 0.6)).abs() < 1e-10);
}

#[test]
fn degrees_convert_at_the_boundary() {
    let out = run(&["--degrees", "critical", "--scene", &scene("classic.cfg")]);
    let plus: f64 = value(&stdout(&out), "theta_c_plus").parse().unwrap();
    assert!((plus - 30.0).abs() < 1e-10);
    let out = run(&[
        "reflect",
        "--scene",
        &scene("classic.cfg"),
        "--theta1",
        "-30",
        "--degrees",
    ]);
    let theta3: f64 = value(&stdout(&out), "theta3").parse().unwrap();
    assert!((theta3 + 150.0).abs() < 1e-9);
}

#[test]
fn early_wavefront_is_one_closed_standard_arc() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("front.csv");
    let out = run(&[
        "wavefront",
        "--scene",
        &scene("ellipse.cfg"),
        "--source",
        "-1,0",
        "--time",
        "0.1",
        "--samples",
        "128",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(value(&stdout(&out), "closed"), "true");
    let text = std::fs::read_to_string(&csv).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "arc,kind,param,x,y");
    assert_eq!(rows.len(), 129);
    assert!(rows[1..].iter().all(|r| r.starts_with("0,standard,")));
    let point = |r: &str| -> (f64, f64) {
        let f: Vec<f64> = r.split(',').skip(3).map(|v| v.parse().unwrap()).collect();
        (f[0], f[1])
    };
    let (a, b) = (point(rows[1]), point(rows[128]));
    assert!((a.0 - b.0).hypot(a.1 - b.1) < 1e-12);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let files = |tag: &str| {
        let p = |name: &str| dir.path().join(format!("{tag}-{name}")).to_str().unwrap().to_string();
        (p("front.csv"), p("front.svg"), p("cut.csv"), p("trace.csv"))
    };
    let mut outputs = Vec::new();
    for tag in ["a", "b"] {
        let (front, svg, cut, trace) = files(tag);
        let e = scene("ellipse.cfg");
        let s = |v: &[&str]| assert_eq!(run(v).status.code(), Some(0), "{v:?}");
        s(&[
            "wavefront",
            "--scene",
            &e,
            "--source",
            "-1,0",
            "--time",
            "2.5",
            "--csv",
            &front,
            "--svg",
            &svg,
        ]);
        s(&[
            "cutlocus", "--scene", &e, "--source", "-1,0", "--tmax", "3", "--csv", &cut,
        ]);
        s(&[
            "trace", "--scene", &e, "--from", "-1,-2", "--to", "-1,2", "--csv", &trace,
        ]);
        outputs.push([front, svg, cut, trace].map(|p| std::fs::read(p).unwrap()));
    }
    assert_eq!(outputs[0], outputs[1]);
    let trace = String::from_utf8(outputs[0][3].clone()).unwrap();
    assert_eq!(trace.lines().next(), Some("segment,region,x0,y0,x1,y1,t0,t1,theta"));
    assert_eq!(trace.lines().count(), 4);
}

#[test]
fn scene_dump_round_trips() {
    let first = run(&["scene-dump", "--scene", &scene("ellipse.cfg")]);
    assert_eq!(first.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let dumped = dir.path().join("dumped.cfg");
    std::fs::write(&dumped, &first.stdout).unwrap();
    let second = run(&["scene-dump", "--scene", dumped.to_str().unwrap()]);
    assert_eq!(first.stdout, second.stdout);
    let again = run(&["critical", "--scene", dumped.to_str().unwrap()]);
    assert_eq!(
        stdout(&again),
        stdout(&run(&["critical", "--scene", &scene("ellipse.cfg")]))
    );
}

#[test]
fn verify_reports_and_fails_on_coarse_oracle() {
    let e = scene("ellipse.cfg");
    let ok = run(&["verify", "--scene", &e, "--cases", "4", "--grid", "128"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    assert!(stdout(&ok).ends_with("4 cases, 4 passed, 0 failed\n"));

    let coarse = run(&[
        "verify", "--scene", &e, "--cases", "10", "--grid", "64", "--rounds", "0",
    ]);
    assert_eq!(coarse.status.code(), Some(1));
    assert!(stdout(&coarse).contains("FAIL"));
}

#[test]
fn exit_codes() {
    let e = scene("ellipse.cfg");
    // Usage errors.
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["trace", "--scene", &e, "--from", "1", "--to", "1,1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["critical", "--scene", "/nonexistent/scene.cfg"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "wavefront",
            "--scene",
            &e,
            "--source",
            "-1,0",
            "--time",
            "1",
            "--samples",
            "8"
        ])
        .status
        .code(),
        Some(2)
    );

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cfg");
    std::fs::write(
        &bad,
        "region1.profile = isotropic\nregion1.speed = 1\nregion2.profile = square\n",
    )
    .unwrap();
    let out = run(&["critical", "--scene", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    // Domain errors.
    std::fs::write(&bad, "region1.profile = ellipse\nregion1.a = 1\nregion1.eps = 1.5\nregion1.phi = 0\nregion2.profile = isotropic\nregion2.speed = 1\n").unwrap();
    assert_eq!(
        run(&["critical", "--scene", bad.to_str().unwrap()]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["trace", "--scene", &e, "--from", "0,0", "--to", "1,1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["refract", "--scene", &e, "--theta1", "2"]).status.code(), Some(1));
    assert_eq!(
        run(&[
            "cutlocus",
            "--scene",
            &scene("classic.cfg"),
            "--source",
            "-1,0",
            "--tmax",
            "0.5"
        ])
        .status
        .code(),
        Some(1)
    );
}
