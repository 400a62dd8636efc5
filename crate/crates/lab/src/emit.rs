//! CSV and SVG writers with byte-stable output.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{LabError, Result};
use crate::fit::Fit;

/// `printf("%.12g")`.
pub fn fmt_g(v: f64) -> String {
    const PREC: i32 = 12;
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    // the exponent after rounding to PREC significant digits
    let sci = format!("{:.*e}", (PREC - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if !(-4..PREC).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (PREC - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Header line plus one record per row, `%.12g` for numbers.
pub fn csv_table(header: &[&str], rows: &[Vec<String>], trailer: Option<&str>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    if let Some(t) = trailer {
        out.push_str(t);
        out.push('\n');
    }
    out
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|source| LabError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    std::fs::write(path, contents).map_err(|source| LabError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Points and optional fitted line of a log-log plot.
#[derive(Debug, Clone, PartialEq)]
pub struct LogLogPlot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    /// Already in log coordinates.
    pub points: Vec<(f64, f64)>,
    pub fit: Option<Fit>,
}

const W: f64 = 480.0;
const H: f64 = 360.0;
const MARGIN: f64 = 56.0;

/// Static SVG: one circle per point, a single `<line>` for the fit, axes as
/// a `<path>`, and the slope as text.
pub fn svg_loglog(plot: &LogLogPlot) -> String {
    let pts: Vec<(f64, f64)> = plot
        .points
        .iter()
        .copied()
        .filter(|(x, y)| x.is_finite() && y.is_finite())
        .collect();
    let (mut xlo, mut xhi, mut ylo, mut yhi) = bounds(&pts);
    if let Some(f) = plot.fit {
        for x in [xlo, xhi] {
            let y = f.slope * x + f.intercept;
            if y.is_finite() {
                ylo = ylo.min(y);
                yhi = yhi.max(y);
            }
        }
    }
    pad(&mut xlo, &mut xhi);
    pad(&mut ylo, &mut yhi);
    let px = |x: f64| MARGIN + (x - xlo) / (xhi - xlo) * (W - 2.0 * MARGIN);
    let py = |y: f64| H - MARGIN - (y - ylo) / (yhi - ylo) * (H - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<path d="M {l} {t} L {l} {b} L {r} {b}" fill="none" stroke="black"/>"#,
        l = MARGIN,
        t = MARGIN,
        b = H - MARGIN,
        r = W - MARGIN
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" font-size="14">{}</text>"#,
        MARGIN,
        escape(&plot.title)
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="12">{}</text>"#,
        W / 2.0 - 40.0,
        H - 16.0,
        escape(&plot.x_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="14" y="{}" font-size="12" transform="rotate(-90 14 {})">{}</text>"#,
        H / 2.0 + 40.0,
        H / 2.0 + 40.0,
        escape(&plot.y_label)
    );
    for (x, y) in &pts {
        let _ = writeln!(
            s,
            r#"<circle cx="{:.3}" cy="{:.3}" r="4" fill="navy"/>"#,
            px(*x),
            py(*y)
        );
    }
    if let Some(f) = plot.fit {
        let (y0, y1) = (f.slope * xlo + f.intercept, f.slope * xhi + f.intercept);
        let _ = writeln!(
            s,
            r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="firebrick"/>"#,
            px(xlo),
            py(y0),
            px(xhi),
            py(y1)
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="12">slope = {} (r2 = {})</text>"#,
            MARGIN + 8.0,
            MARGIN + 16.0,
            fmt_g_short(f.slope),
            fmt_g_short(f.r2)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn fmt_g_short(v: f64) -> String {
    format!("{v:.4}")
}

fn bounds(pts: &[(f64, f64)]) -> (f64, f64, f64, f64) {
    if pts.is_empty() {
        return (0.0, 1.0, 0.0, 1.0);
    }
    pts.iter().fold(
        (
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
        ),
        |(a, b, c, d), (x, y)| (a.min(*x), b.max(*x), c.min(*y), d.max(*y)),
    )
}

fn pad(lo: &mut f64, hi: &mut f64) {
    let span = *hi - *lo;
    let m = if span > 0.0 { 0.05 * span } else { 0.5 };
    *lo -= m;
    *hi += m;
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
