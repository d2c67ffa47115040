//! Fixed-layout SVG plot of a sampled numerical range.
//!
//! 800×800 viewport, equal axes, origin at the center. One plot unit is
//! `max(‖A‖, 1)` and maps to `PLOT_RADIUS` pixels. The plot contains, in
//! order: the axes, the circle `|z| = ‖A‖`, the closed boundary polygon and
//! a marker at the extremal point.

use std::fmt::Write;

use normaloid_core::formats::fmt_f64;
use normaloid_core::{Complex64, NumericalRangeProfile};

pub const SIZE: f64 = 800.0;
pub const PLOT_RADIUS: f64 = 360.0;

struct Frame {
    unit: f64,
}

impl Frame {
    fn x(&self, z: Complex64) -> String {
        fmt_f64(SIZE / 2.0 + z.re / self.unit * PLOT_RADIUS)
    }

    fn y(&self, z: Complex64) -> String {
        fmt_f64(SIZE / 2.0 - z.im / self.unit * PLOT_RADIUS)
    }

    fn len(&self, r: f64) -> String {
        fmt_f64(r / self.unit * PLOT_RADIUS)
    }
}

pub fn render(profile: &NumericalRangeProfile, norm: f64) -> String {
    let frame = Frame { unit: norm.max(1.0) };
    let center = Complex64::new(0.0, 0.0);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="800" viewBox="0 0 800 800">"#
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="800" height="800" fill="white"/>"#);
    let _ = writeln!(
        out,
        r##"<line x1="0" y1="400" x2="800" y2="400" stroke="#999999" stroke-width="1"/>"##
    );
    let _ = writeln!(
        out,
        r##"<line x1="400" y1="0" x2="400" y2="800" stroke="#999999" stroke-width="1"/>"##
    );
    let _ = writeln!(
        out,
        r##"<circle class="norm" cx="{}" cy="{}" r="{}" fill="none" stroke="#d62728" stroke-dasharray="6 4"/>"##,
        frame.x(center),
        frame.y(center),
        frame.len(norm)
    );
    let points: Vec<String> = profile
        .boundary_points()
        .map(|z| format!("{},{}", frame.x(z), frame.y(z)))
        .collect();
    let _ = writeln!(
        out,
        r##"<polygon class="boundary" points="{}" fill="#1f77b4" fill-opacity="0.2" stroke="#1f77b4" stroke-width="2"/>"##,
        points.join(" ")
    );
    let _ = writeln!(
        out,
        r##"<circle class="extremal" cx="{}" cy="{}" r="5" fill="#2ca02c"/>"##,
        frame.x(profile.extremal_point),
        frame.y(profile.extremal_point)
    );
    out.push_str("</svg>\n");
    out
}
