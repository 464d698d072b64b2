//! Deterministic SVG rendering of a result file.

use std::fmt::Write;

use crate::io::{parse_value, InputError, ResultFile};
use highway_hull::Scalar;

const SIZE: f64 = 800.0;
const MARGIN: f64 = 40.0;

fn num(s: &str) -> Result<f64, InputError> {
    parse_value(s).map(|v| v.to_f64_lossy())
}

pub fn render(r: &ResultFile) -> Result<String, InputError> {
    let pts: Vec<(f64, f64)> = r
        .points
        .iter()
        .map(|[x, y]| Ok((num(x)?, num(y)?)))
        .collect::<Result<_, InputError>>()?;
    let mut extent = pts.iter().fold(1.0f64, |m, &(x, y)| m.max(x).max(y));
    for l in &r.highway_links {
        extent = extent.max(num(&l.to)?);
    }
    let scale = (SIZE - 2.0 * MARGIN) / extent;
    let sx = |x: f64| MARGIN + x * scale;
    let sy = |y: f64| SIZE - MARGIN - y * scale;

    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(w, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (o, far) = (sx(0.0), SIZE - MARGIN / 2.0);
    let _ = writeln!(
        w,
        r##"<line x1="{o:.2}" y1="{:.2}" x2="{far:.2}" y2="{:.2}" stroke="#888"/>"##,
        sy(0.0),
        sy(0.0)
    );
    let _ = writeln!(
        w,
        r##"<line x1="{o:.2}" y1="{:.2}" x2="{o:.2}" y2="{:.2}" stroke="#888"/>"##,
        sy(0.0),
        MARGIN / 2.0
    );

    for (i, c) in r.clusters.iter().enumerate() {
        let hue = (i * 137) % 360;
        let mut path = String::new();
        for [x, y] in &c.hull {
            let _ = write!(path, "{:.2},{:.2} ", sx(num(x)?), sy(num(y)?));
        }
        let _ = writeln!(
            w,
            r#"<polygon points="{}" fill="hsl({hue},60%,70%)" fill-opacity="0.4" stroke="hsl({hue},60%,35%)" stroke-width="1.5"/>"#,
            path.trim_end()
        );
    }
    for l in &r.highway_links {
        let (a, b) = (num(&l.from)?, num(&l.to)?);
        let (x1, y1, x2, y2) = if l.axis == "HX" {
            (sx(a), sy(0.0), sx(b), sy(0.0))
        } else {
            (sx(0.0), sy(a), sx(0.0), sy(b))
        };
        let _ = writeln!(
            w,
            r##"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="#d33" stroke-width="4"/>"##
        );
    }
    for &(x, y) in &pts {
        let _ = writeln!(
            w,
            r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="black"/>"#,
            sx(x),
            sy(y)
        );
    }
    let _ = writeln!(w, "</svg>");
    Ok(out)
}
