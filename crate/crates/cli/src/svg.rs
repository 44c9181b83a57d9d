//! Static SVG rendering of a polygon.

use std::fmt::Write;

/// Polygon as one closed path with numbered vertex markers; the view box is
/// the bounding box plus a 5% margin, with the `y` axis pointing up.
pub fn polygon_svg(points: &[(f64, f64)]) -> String {
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in points {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(0.0 - y);
        y1 = y1.max(0.0 - y);
    }
    if points.is_empty() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    let size = (x1 - x0).max(y1 - y0).max(1e-9);
    let margin = 0.05 * size;
    let (vx, vy) = (x0 - margin, y0 - margin);
    let (vw, vh) = (x1 - x0 + 2.0 * margin, y1 - y0 + 2.0 * margin);
    let r = 0.012 * size;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{vx} {vy} {vw} {vh}" width="480" height="{}">"#,
        (480.0 * vh / vw).round()
    );
    let mut d = String::new();
    for (j, &(x, y)) in points.iter().enumerate() {
        let _ = write!(d, "{}{x} {} ", if j == 0 { "M" } else { "L" }, 0.0 - y);
    }
    d.push('Z');
    let _ = writeln!(
        out,
        r##"  <path d="{d}" fill="#dbe7f3" stroke="#1f4e79" stroke-width="{}" stroke-linejoin="round"/>"##,
        0.006 * size
    );
    for (j, &(x, y)) in points.iter().enumerate() {
        let _ = writeln!(out, r##"  <circle cx="{x}" cy="{}" r="{r}" fill="#1f4e79"/>"##, 0.0 - y);
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{}" font-size="{}" font-family="sans-serif">{}</text>"#,
            x + 1.5 * r,
            0.0 - y - 1.5 * r,
            4.0 * r,
            j + 1
        );
    }
    out.push_str("</svg>\n");
    out
}
