//! SVG 1.1 drawings of instances and solutions.

use std::fmt::Write;

use mutvis_core::geometry::{Point, Segment};
use mutvis_core::instance::Instance;

use crate::format::SolutionFile;

pub const SIZE: f64 = 1000.0;
const MARGIN: f64 = 25.0;

/// Maps polygon coordinates into the square viewbox, y pointing up.
#[derive(Clone, Copy, Debug)]
pub struct Viewport {
    min: [f64; 2],
    scale: f64,
    pad: [f64; 2],
}

impl Viewport {
    pub fn fit(points: &[Point]) -> Self {
        let mut min = [f64::INFINITY; 2];
        let mut max = [f64::NEG_INFINITY; 2];
        for p in points {
            let a = p.approx();
            for k in 0..2 {
                min[k] = min[k].min(a[k]);
                max[k] = max[k].max(a[k]);
            }
        }
        let (w, h) = (max[0] - min[0], max[1] - min[1]);
        let span = w.max(h).max(f64::MIN_POSITIVE);
        let scale = (SIZE - 2.0 * MARGIN) / span;
        let pad = [(SIZE - w * scale) / 2.0, (SIZE - h * scale) / 2.0];
        Viewport { min, scale, pad }
    }

    pub fn map(&self, p: &Point) -> (f64, f64) {
        let [x, y] = p.approx();
        (
            self.pad[0] + (x - self.min[0]) * self.scale,
            SIZE - (self.pad[1] + (y - self.min[1]) * self.scale),
        )
    }

    fn xy(&self, p: &Point) -> String {
        let (x, y) = self.map(p);
        format!("{x:.3},{y:.3}")
    }

    fn points(&self, ps: &[Point]) -> String {
        ps.iter().map(|p| self.xy(p)).collect::<Vec<_>>().join(" ")
    }
}

fn color(i: usize, n: usize) -> String {
    let hue = (i * 360) / n.max(1);
    format!("hsl({hue},70%,42%)")
}

fn line(out: &mut String, vp: &Viewport, s: &Segment, attrs: &str) {
    let (x1, y1) = vp.map(&s.a);
    let (x2, y2) = vp.map(&s.b);
    writeln!(
        out,
        r#"  <line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" {attrs}/>"#
    )
    .unwrap();
}

pub fn render(inst: &Instance, sol: Option<&SolutionFile>) -> String {
    let vp = Viewport::fit(inst.polygon().vertices());
    let n = inst.len();
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    writeln!(
        out,
        r##"  <polygon class="polygon" points="{}" fill="#f4f1ea" stroke="#333" stroke-width="2"/>"##,
        vp.points(inst.polygon().vertices())
    )
    .unwrap();

    if let Some(sol) = sol {
        for s in &sol.schedule.sweeps {
            line(
                &mut out,
                &vp,
                s,
                r##"class="sweep" stroke="#999" stroke-width="1" stroke-dasharray="6 4""##,
            );
        }
    }
    line(
        &mut out,
        &vp,
        inst.start_segment(),
        r##"class="start-segment" stroke="#1b7f3a" stroke-width="4""##,
    );
    line(
        &mut out,
        &vp,
        inst.target_segment(),
        r##"class="target-segment" stroke="#b3261e" stroke-width="4""##,
    );

    if let Some(sol) = sol {
        for t in &sol.trajectories {
            writeln!(
                out,
                r#"  <polyline class="trajectory" data-robot="{}" points="{}" fill="none" stroke="{}" stroke-width="2"/>"#,
                t.robot_index,
                vp.points(&t.waypoints),
                color(t.robot_index, n)
            )
            .unwrap();
        }
    }
    for (i, r) in inst.robots().iter().enumerate() {
        let c = color(i, n);
        let (x, y) = vp.map(&r.start);
        writeln!(
            out,
            r#"  <circle class="start" data-robot="{i}" cx="{x:.3}" cy="{y:.3}" r="5" fill="{c}"/>"#
        )
        .unwrap();
        let (x, y) = vp.map(&r.target);
        writeln!(
            out,
            r#"  <circle class="target" data-robot="{i}" cx="{x:.3}" cy="{y:.3}" r="5" fill="none" stroke="{c}" stroke-width="2"/>"#
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}
