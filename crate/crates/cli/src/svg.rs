//! Minimal SVG rendering of a traced curve.

use std::fmt::Write as _;

use loewner::TracedCurve;

const WIDTH: f64 = 800.0;
const MARGIN: f64 = 0.08;

/// Polyline of the curve over the real and imaginary axes.
pub fn render(curve: &TracedCurve) -> String {
    let (mut x0, mut x1, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
    for z in curve.zs() {
        x0 = x0.min(z.re);
        x1 = x1.max(z.re);
        y1 = y1.max(z.im);
    }
    if !x0.is_finite() {
        (x0, x1) = (-1.0, 1.0);
    }
    let span = (x1 - x0).max(y1).max(1e-12);
    let pad = MARGIN * span;
    let (left, right, bottom, top) = (x0 - pad, x1 + pad, -pad, y1 + pad);
    let scale = WIDTH / (right - left);
    let height = ((top - bottom) * scale).ceil();
    let px = |x: f64| (x - left) * scale;
    let py = |y: f64| (top - y) * scale;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}">"#
    );
    let _ = writeln!(out, "<title>{}</title>", escape(&curve.driver_id));
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    let _ = writeln!(
        out,
        r##"<line x1="0" y1="{:.3}" x2="{WIDTH}" y2="{:.3}" stroke="#888888" stroke-width="1"/>"##,
        py(0.0),
        py(0.0)
    );
    if left < 0.0 && right > 0.0 {
        let _ = writeln!(
            out,
            r##"<line x1="{:.3}" y1="0" x2="{:.3}" y2="{height}" stroke="#cccccc" stroke-width="1"/>"##,
            px(0.0),
            px(0.0)
        );
    }
    let _ = write!(out, r##"<polyline fill="none" stroke="#1f4e9c" stroke-width="1.5" points=""##);
    for (i, z) in curve.zs().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{:.3},{:.3}", px(z.re), py(z.im));
    }
    out.push_str("\"/>\n</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
