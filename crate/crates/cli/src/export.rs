//! CSV and SVG writers.

use std::fmt::Write as _;

use finsnell::{CompositeWavefront, CutLocusSample, Trajectory, Vector2};

/// Decimal text with 17 significant digits. Magnitudes outside
/// `[1e-5, 1e17)` fall back to scientific notation.
pub fn num(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{v:.16e}");
    let exp: i32 = sci[sci.find('e').expect("scientific format") + 1..]
        .parse()
        .expect("integer exponent");
    if (-5..17).contains(&exp) {
        format!("{v:.prec$}", prec = (16 - exp) as usize)
    } else {
        sci
    }
}

pub fn trajectory_csv(traj: &Trajectory) -> String {
    let mut out = String::from("segment,region,x0,y0,x1,y1,t0,t1,theta\n");
    for (i, s) in traj.segments.iter().enumerate() {
        let _ = writeln!(
            out,
            "{i},{},{},{},{},{},{},{},{}",
            s.region,
            num(s.start.x),
            num(s.start.y),
            num(s.end.x),
            num(s.end.y),
            num(s.t_start),
            num(s.t_end),
            num(s.theta)
        );
    }
    out
}

pub fn wavefront_csv(front: &CompositeWavefront) -> String {
    let mut out = String::from("arc,kind,param,x,y\n");
    for (i, arc) in front.arcs.iter().enumerate() {
        for (p, param) in arc.samples.iter().zip(&arc.params) {
            let _ = writeln!(out, "{i},{},{},{},{}", arc.kind, num(*param), num(p.x), num(p.y));
        }
    }
    out
}

pub fn cut_locus_csv(samples: &[CutLocusSample]) -> String {
    let mut out = String::from("branch,t,x,y\n");
    for s in samples {
        let _ = writeln!(out, "{},{},{},{}", s.branch, num(s.t), num(s.point.x), num(s.point.y));
    }
    out
}

/// One polyline per arc plus one per cut-locus branch. The `y` axis points
/// up and the interface is drawn as a dashed line.
pub fn wavefront_svg(front: &CompositeWavefront, cut_locus: &[CutLocusSample]) -> String {
    let mut lines: Vec<(&str, Vec<Vector2>)> = front.arcs.iter().map(|a| (a.kind.name(), a.samples.clone())).collect();
    for sign in finsnell::Sign::BOTH {
        let pts: Vec<Vector2> = cut_locus.iter().filter(|c| c.branch == sign).map(|c| c.point).collect();
        if !pts.is_empty() {
            lines.push(("cutlocus", pts));
        }
    }

    let all = lines.iter().flat_map(|(_, pts)| pts.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (0.0f64, 0.0f64, f64::INFINITY, f64::NEG_INFINITY);
    for p in all {
        x0 = x0.min(p.x);
        x1 = x1.max(p.x);
        y0 = y0.min(p.y);
        y1 = y1.max(p.y);
    }
    if !y0.is_finite() {
        (y0, y1) = (-1.0, 1.0);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let margin = 0.05 * span;
    let (vx, vy) = (x0 - margin, -y1 - margin);
    let (vw, vh) = (x1 - x0 + 2.0 * margin, y1 - y0 + 2.0 * margin);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="800" height="{}">"#,
        num(vx),
        num(vy),
        num(vw),
        num(vh),
        (800.0 * vh / vw).round().max(1.0)
    );
    out.push_str(
        "<style>\
polyline,line{fill:none;stroke-width:1.5;vector-effect:non-scaling-stroke}\
.standard{stroke:#1f77b4}.refracted{stroke:#d62728}.reflected{stroke:#2ca02c}\
.cutlocus{stroke:#000;stroke-dasharray:4 2}.interface{stroke:#999;stroke-dasharray:2 2}\
</style>\n",
    );
    let _ = writeln!(
        out,
        r#"<line class="interface" x1="0" y1="{}" x2="0" y2="{}"/>"#,
        num(vy),
        num(vy + vh)
    );
    for (class, pts) in &lines {
        let coords: Vec<String> = pts.iter().map(|p| format!("{},{}", num(p.x), num(-p.y))).collect();
        let _ = writeln!(out, r#"<polyline class="{class}" points="{}"/>"#, coords.join(" "));
    }
    out.push_str("</svg>\n");
    out
}
