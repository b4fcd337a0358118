use std::fmt::Write as _;

use outer_billiard::{Point, Table};

/// Pixels per unit of circumradius.
pub const SCALE: f64 = 200.0;
const MARGIN: f64 = 0.5;

/// Polygon, cone boundary half-lines, and the orbit as a single labelled path.
pub fn orbit_svg(table: &Table, orbit: &[Point]) -> String {
    let vertices: Vec<(f64, f64)> = table.vertices().iter().map(|p| p.to_f64()).collect();
    let points: Vec<(f64, f64)> = orbit.iter().map(|p| p.to_f64()).collect();
    let all = vertices.iter().chain(&points);
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &(x, y) in all {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    let (x0, y0, x1, y1) = (x0 - MARGIN, y0 - MARGIN, x1 + MARGIN, y1 + MARGIN);
    let px = |x: f64| (x - x0) * SCALE;
    let py = |y: f64| (y1 - y) * SCALE;
    let (width, height) = ((x1 - x0) * SCALE, (y1 - y0) * SCALE);
    let reach = (x1 - x0).hypot(y1 - y0);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}">"#
    );
    let poly: Vec<String> = vertices.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
    let _ = writeln!(out, r#"  <polygon points="{}" fill="lightgray" stroke="black"/>"#, poly.join(" "));
    for (i, h) in table.halflines().iter().enumerate() {
        let (ox, oy) = h.origin.to_f64();
        let (dx, dy) = h.direction.to_f64();
        let len = dx.hypot(dy);
        let (ex, ey) = (ox + dx / len * reach, oy + dy / len * reach);
        let _ = writeln!(
            out,
            r#"  <line class="d{i}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="gray" stroke-dasharray="4 3"/>"#,
            px(ox),
            py(oy),
            px(ex),
            py(ey)
        );
    }
    if !points.is_empty() {
        let mut d = String::new();
        for (i, &(x, y)) in points.iter().enumerate() {
            let _ = write!(d, "{}{:.2},{:.2}", if i == 0 { "M" } else { " L" }, px(x), py(y));
        }
        let _ = writeln!(out, r#"  <path d="{d}" fill="none" stroke="steelblue"/>"#);
        for (i, &(x, y)) in points.iter().enumerate() {
            let _ = writeln!(out, r#"  <text x="{:.2}" y="{:.2}" font-size="10">{i}</text>"#, px(x) + 3.0, py(y) - 3.0);
        }
    }
    out.push_str("</svg>\n");
    out
}
