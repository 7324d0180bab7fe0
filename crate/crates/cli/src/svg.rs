//! Static SVG rendering of trajectories in the plane chart of the sphere.

use std::fmt::Write;

use strebel_core::pillowcase::EdgeColor;
use strebel_core::strebel::Puncture;
use strebel_core::trajectory::SpherePoint;
use strebel_core::ComplexValue;

const SIZE: f64 = 800.0;
const MARGIN: f64 = 40.0;

/// One polyline layer.
pub struct Layer<'a> {
    pub class: &'static str,
    pub stroke: &'static str,
    pub width: f64,
    pub dashed: bool,
    pub points: &'a [SpherePoint],
}

/// Square window in the plane containing `0`, `1` and `mu` with margin.
struct Window {
    center: ComplexValue,
    half: f64,
}

impl Window {
    fn around(mu: ComplexValue) -> Window {
        let xs = [0.0, 1.0, mu.re];
        let ys = [0.0, 0.0, mu.im];
        let (x0, x1) = (xs.iter().cloned().fold(f64::MAX, f64::min), xs.iter().cloned().fold(f64::MIN, f64::max));
        let (y0, y1) = (ys.iter().cloned().fold(f64::MAX, f64::min), ys.iter().cloned().fold(f64::MIN, f64::max));
        Window {
            center: ComplexValue::new((x0 + x1) / 2.0, (y0 + y1) / 2.0),
            half: 0.8 * (x1 - x0).max(y1 - y0) + 0.5,
        }
    }

    fn map(&self, z: ComplexValue) -> Option<(f64, f64)> {
        let d = z - self.center;
        if d.re.abs() > 1.5 * self.half || d.im.abs() > 1.5 * self.half {
            return None;
        }
        let scale = (SIZE - 2.0 * MARGIN) / (2.0 * self.half);
        Some((SIZE / 2.0 + d.re * scale, SIZE / 2.0 - d.im * scale))
    }
}

fn polylines(window: &Window, points: &[SpherePoint]) -> Vec<Vec<(f64, f64)>> {
    let mut runs = Vec::new();
    let mut current = Vec::new();
    for p in points {
        match p.to_plane().and_then(|z| window.map(z)) {
            Some(xy) => current.push(xy),
            None => {
                if current.len() > 1 {
                    runs.push(std::mem::take(&mut current));
                }
                current.clear();
            }
        }
    }
    if current.len() > 1 {
        runs.push(current);
    }
    runs
}

pub fn edge_stroke(color: EdgeColor) -> &'static str {
    match color {
        EdgeColor::Red => "#d62728",
        EdgeColor::Yellow => "#e6b800",
        EdgeColor::Green => "#2ca02c",
        EdgeColor::Blue => "#1f77b4",
    }
}

pub fn render(mu: ComplexValue, title: &str, layers: &[Layer<'_>]) -> String {
    let window = Window::around(mu);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" width="{SIZE}" height="{SIZE}">"#
    );
    let _ = writeln!(out, "  <title>{}</title>", escape(title));
    let _ = writeln!(out, r##"  <rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="#ffffff"/>"##);
    for layer in layers {
        for run in polylines(&window, layer.points) {
            let coords: Vec<String> = run.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
            let dash = if layer.dashed { r#" stroke-dasharray="6 4""# } else { "" };
            let _ = writeln!(
                out,
                r#"  <polyline class="{}" points="{}" fill="none" stroke="{}" stroke-width="{}"{dash}/>"#,
                layer.class,
                coords.join(" "),
                layer.stroke,
                layer.width
            );
        }
    }
    for p in Puncture::ALL {
        let (x, y) = match p.position(mu).and_then(|z| window.map(z)) {
            Some(xy) => xy,
            // Infinity (or a far-away mu) is drawn in the corner.
            None => (SIZE - MARGIN / 2.0, MARGIN / 2.0),
        };
        let label = match p {
            Puncture::Infinity => "\u{221e}",
            Puncture::Mu => "\u{03bc}",
            Puncture::Zero => "0",
            Puncture::One => "1",
        };
        let _ = writeln!(
            out,
            r##"  <circle class="puncture" cx="{x:.3}" cy="{y:.3}" r="5" fill="#000000"/>"##
        );
        let _ = writeln!(
            out,
            r#"  <text x="{:.3}" y="{:.3}" font-size="16" font-family="serif">{label}</text>"#,
            x + 8.0,
            y - 8.0
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
