//! Deterministic SVG figures: frameworks with a unit-ball inset, and the
//! `‖v4‖` trace of the configuration path.

use std::fmt::Write;

use planar_rigidity::constructions::SweepSample;
use planar_rigidity::rigidity::Framework;
use planar_rigidity::Vector2;

/// Samples of the unit sphere for smooth norms.
const OUTLINE_SAMPLES: usize = 360;

fn num(v: f64) -> String {
    // avoid "-0.0000"
    let s = format!("{v:.4}");
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        "0.0000".to_string()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

struct Bounds {
    lo: Vector2,
    hi: Vector2,
}

impl Bounds {
    fn of(points: impl IntoIterator<Item = Vector2>) -> Self {
        let mut lo = Vector2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Vector2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            lo = Vector2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Vector2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        if !lo.x.is_finite() {
            lo = Vector2::ZERO;
            hi = Vector2::ZERO;
        }
        Bounds { lo, hi }
    }

    fn size(&self) -> f64 {
        let s = (self.hi.x - self.lo.x).max(self.hi.y - self.lo.y);
        if s > 0.0 {
            s
        } else {
            1.0
        }
    }
}

/// Screen point: the y-axis points down.
fn flip(p: Vector2) -> Vector2 {
    Vector2::new(p.x, -p.y)
}

fn header(out: &mut String, b: &Bounds, caption: &str) {
    let size = b.size();
    let margin = 0.1 * size;
    // room for the caption under the figure
    let (x, y) = (b.lo.x - margin, -b.hi.y - margin);
    let (w, h) = (
        b.hi.x - b.lo.x + 2.0 * margin,
        b.hi.y - b.lo.y + 2.0 * margin + 0.12 * size,
    );
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        num(x),
        num(y),
        num(w.max(margin)),
        num(h)
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="{}" font-family="monospace">{}</text>"#,
        num(x + 0.5 * margin),
        num(y + h - 0.5 * margin),
        num(0.06 * size),
        escape(caption)
    )
    .unwrap();
}

fn polyline(points: &[Vector2], closed: bool, stroke: &str, width: f64) -> String {
    let tag = if closed { "polygon" } else { "polyline" };
    let pts: Vec<String> = points
        .iter()
        .map(|p| format!("{},{}", num(p.x), num(p.y)))
        .collect();
    format!(
        r#"<{tag} points="{}" fill="none" stroke="{stroke}" stroke-width="{}"/>"#,
        pts.join(" "),
        num(width)
    )
}

/// Vertices as dots, edges as segments, and the unit ball of the norm drawn
/// to the right of the framework at the same scale as its height.
pub fn framework_svg(fw: &Framework, unit_ball: bool) -> String {
    let pts: Vec<Vector2> = fw.placement().iter().copied().map(flip).collect();
    let frame = Bounds::of(pts.iter().copied());
    let radius = 0.5 * frame.size();
    let outline: Vec<Vector2> = if unit_ball {
        let centre = Vector2::new(
            frame.hi.x + 0.4 * frame.size() + radius,
            0.5 * (frame.lo.y + frame.hi.y),
        );
        fw.norm()
            .unit_sphere_outline(OUTLINE_SAMPLES)
            .into_iter()
            .map(|u| centre + flip(u).scale(radius))
            .collect()
    } else {
        Vec::new()
    };
    let all = Bounds::of(pts.iter().chain(&outline).copied());
    // header expects world coordinates with y up
    let world = Bounds {
        lo: Vector2::new(all.lo.x, -all.hi.y),
        hi: Vector2::new(all.hi.x, -all.lo.y),
    };
    let size = world.size();
    let mut out = String::new();
    header(&mut out, &world, &format!("norm {}", fw.norm()));
    if !outline.is_empty() {
        out.push_str(&polyline(&outline, true, "#3a6ea5", 0.006 * size));
        out.push('\n');
    }
    let g = fw.graph();
    for &(a, b) in g.edges() {
        writeln!(
            out,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#222222" stroke-width="{}"/>"##,
            num(pts[a].x),
            num(pts[a].y),
            num(pts[b].x),
            num(pts[b].y),
            num(0.008 * size)
        )
        .unwrap();
    }
    for (i, p) in pts.iter().enumerate() {
        writeln!(
            out,
            r##"<circle cx="{}" cy="{}" r="{}" fill="#c0392b"><title>{}</title></circle>"##,
            num(p.x),
            num(p.y),
            num(0.02 * size),
            escape(g.name(i))
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

/// `t ↦ ‖v4(t)‖` over a sweep, drawn in a 2π-by-1 box with the value range
/// stretched to the box height.
pub fn trace_svg(samples: &[SweepSample], caption: &str) -> String {
    let (lo, hi) = samples
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), s| {
            (a.min(s.norm_v4), b.max(s.norm_v4))
        });
    let span = hi - lo;
    let height = 2.0;
    let pts: Vec<Vector2> = samples
        .iter()
        .map(|s| {
            let y = if span > 0.0 {
                (s.norm_v4 - lo) / span
            } else {
                0.5
            };
            flip(Vector2::new(s.t, y * height))
        })
        .collect();
    let world = Bounds {
        lo: Vector2::new(0.0, 0.0),
        hi: Vector2::new(std::f64::consts::TAU, height),
    };
    let size = world.size();
    let mut out = String::new();
    header(
        &mut out,
        &world,
        &format!("{caption}; ‖v4‖ in [{}, {}]", num(lo), num(hi)),
    );
    let frame = [
        Vector2::new(0.0, 0.0),
        Vector2::new(std::f64::consts::TAU, 0.0),
        Vector2::new(std::f64::consts::TAU, -height),
        Vector2::new(0.0, -height),
    ];
    out.push_str(&polyline(&frame, true, "#999999", 0.003 * size));
    out.push('\n');
    out.push_str(&polyline(&pts, false, "#3a6ea5", 0.006 * size));
    out.push_str("\n</svg>\n");
    out
}
