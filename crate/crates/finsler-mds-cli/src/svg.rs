//! Static scatter-plot rendering.
//!
//! Output is a pure function of the inputs: coordinates are formatted with
//! fixed precision, so identical data yields identical bytes.

use std::fmt::Write;

const MARGIN: f64 = 48.0;
const POINT_RADIUS: f64 = 3.5;

/// Three-stop sequential ramp (dark violet, teal, yellow) over `t` in
/// [0, 1].
pub fn ramp_color(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let stops = [(68.0, 1.0, 84.0), (33.0, 145.0, 140.0), (253.0, 231.0, 37.0)];
    let (lo, hi, f) = if t < 0.5 {
        (stops[0], stops[1], t * 2.0)
    } else {
        (stops[1], stops[2], (t - 0.5) * 2.0)
    };
    let ch = |a: f64, b: f64| (a + (b - a) * f).round() as u8;
    format!("#{:02x}{:02x}{:02x}", ch(lo.0, hi.0), ch(lo.1, hi.1), ch(lo.2, hi.2))
}

pub struct Scatter {
    pub width: f64,
    pub height: f64,
    /// Projected data-space positions, y up.
    pub points: Vec<(f64, f64)>,
    /// One fill color per point.
    pub colors: Vec<String>,
    /// Projected drift direction in data space; plotted as an annotated
    /// arrow. A near-zero projection means the view looks along the drift.
    pub drift: (f64, f64),
}

impl Scatter {
    pub fn render(&self) -> String {
        let (w, h) = (self.width, self.height);
        let (min_x, max_x) = extent(self.points.iter().map(|p| p.0));
        let (min_y, max_y) = extent(self.points.iter().map(|p| p.1));
        let span_x = (max_x - min_x).max(1e-12);
        let span_y = (max_y - min_y).max(1e-12);
        // One scale for both axes keeps the geometry's aspect ratio.
        let scale = ((w - 2.0 * MARGIN) / span_x).min((h - 2.0 * MARGIN) / span_y);
        let off_x = 0.5 * (w - scale * span_x);
        let off_y = 0.5 * (h - scale * span_y);
        let px = |x: f64| off_x + scale * (x - min_x);
        let py = |y: f64| h - off_y - scale * (y - min_y);

        let mut out = String::new();
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">"
        );
        let _ = writeln!(out, "<rect width=\"{w:.0}\" height=\"{h:.0}\" fill=\"#ffffff\"/>");
        let _ = writeln!(
            out,
            "<rect x=\"0.5\" y=\"0.5\" width=\"{:.0}\" height=\"{:.0}\" fill=\"none\" stroke=\"#cccccc\"/>",
            w - 1.0,
            h - 1.0
        );
        for (p, color) in self.points.iter().zip(&self.colors) {
            let _ = writeln!(
                out,
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"{POINT_RADIUS}\" fill=\"{color}\" fill-opacity=\"0.8\"/>",
                px(p.0),
                py(p.1)
            );
        }
        self.render_drift_arrow(&mut out);
        out.push_str("</svg>\n");
        out
    }

    fn render_drift_arrow(&self, out: &mut String) {
        let (dx, dy) = self.drift;
        let norm = (dx * dx + dy * dy).sqrt();
        let anchor = (MARGIN * 0.6, self.height - MARGIN * 0.6);
        if norm < 1e-6 {
            let _ = writeln!(
                out,
                "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" fill=\"#333333\">drift (out of plane)</text>",
                anchor.0, anchor.1
            );
            return;
        }
        let len = 54.0;
        // Screen y runs downward, data y upward.
        let (ux, uy) = (dx / norm, -dy / norm);
        let tip = (anchor.0 + len * ux, anchor.1 + len * uy);
        let _ = writeln!(
            out,
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#333333\" stroke-width=\"1.5\"/>",
            anchor.0, anchor.1, tip.0, tip.1
        );
        let head = 6.0;
        let (hx, hy) = (-uy, ux);
        let _ = writeln!(
            out,
            "<polygon points=\"{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}\" fill=\"#333333\"/>",
            tip.0,
            tip.1,
            tip.0 - head * (ux + 0.5 * hx),
            tip.1 - head * (uy + 0.5 * hy),
            tip.0 - head * (ux - 0.5 * hx),
            tip.1 - head * (uy - 0.5 * hy)
        );
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" fill=\"#333333\">drift</text>",
            tip.0 + 4.0,
            tip.1
        );
    }
}

fn extent(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if lo > hi {
        (0.0, 1.0)
    } else {
        (lo, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points_render_two_circles() {
        let plot = Scatter {
            width: 400.0,
            height: 300.0,
            points: vec![(0.0, 0.0), (1.0, 1.0)],
            colors: vec!["#123456".to_string(), "#654321".to_string()],
            drift: (0.0, 1.0),
        };
        let svg = plot.render();
        assert_eq!(svg.matches("<circle").count(), 2);
        assert!(svg.contains(">drift</text>"));
        assert_eq!(svg, plot.render());
    }

    #[test]
    fn ramp_endpoints_and_midpoint() {
        assert_eq!(ramp_color(0.0), "#440154");
        assert_eq!(ramp_color(0.5), "#21918c");
        assert_eq!(ramp_color(1.0), "#fde725");
        assert_eq!(ramp_color(-3.0), ramp_color(0.0));
    }

    #[test]
    fn zero_drift_projection_still_annotates() {
        let plot = Scatter {
            width: 200.0,
            height: 200.0,
            points: vec![(0.0, 0.0)],
            colors: vec!["#000000".to_string()],
            drift: (0.0, 0.0),
        };
        assert!(plot.render().contains("drift (out of plane)"));
    }
}
