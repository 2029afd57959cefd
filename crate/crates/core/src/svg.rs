//! Static SVG renderings of barcodes and point configurations.

use std::fmt::Write;

use crate::bar::Barcode;
use crate::dictionary::Configurations;

const WIDTH: f64 = 640.0;
const MARGIN: f64 = 48.0;
const ROW: f64 = 14.0;
const END_RADIUS: f64 = 3.5;

fn header(out: &mut String, width: f64, height: f64, title: &str) {
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="sans-serif" font-size="11">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        out,
        r#"<text x="{MARGIN:.0}" y="20" font-size="13">{}</text>"#,
        escape(title)
    )
    .unwrap();
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Finite range covering every finite value, padded when degenerate.
fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|x| x.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
            (lo.min(x), hi.max(x))
        });
    if lo > hi {
        (0.0, 1.0)
    } else if lo == hi {
        (lo - 1.0, hi + 1.0)
    } else {
        let pad = (hi - lo) * 0.05;
        (lo - pad, hi + pad)
    }
}

fn end_mark(out: &mut String, x: f64, y: f64, closed: bool) {
    let fill = if closed { "black" } else { "white" };
    writeln!(
        out,
        r#"<circle cx="{x:.2}" cy="{y:.2}" r="{END_RADIUS}" fill="{fill}" stroke="black"/>"#
    )
    .unwrap();
}

/// One horizontal segment per bar copy, grouped by degree. Closed ends are
/// solid dots, open ends hollow; infinite bars run to the right edge.
pub fn barcode_svg(bars: &Barcode, title: &str) -> String {
    let (lo, hi) = range(bars.iter().flat_map(|(b, _)| [b.left, b.right]));
    let scale = |x: f64| {
        if x.is_finite() {
            MARGIN + (x - lo) / (hi - lo) * (WIDTH - 2.0 * MARGIN)
        } else {
            WIDTH - MARGIN / 2.0
        }
    };
    let rows = bars.total() + bars.max_degree().map_or(0, |d| d + 1);
    let height = 60.0 + ROW * rows as f64 + 30.0;
    let mut out = String::new();
    header(&mut out, WIDTH, height, title);

    let mut y = 44.0;
    let mut degree = None;
    for (b, m) in bars.iter() {
        if degree != Some(b.degree) {
            degree = Some(b.degree);
            y += ROW;
            writeln!(
                out,
                r#"<text x="4" y="{:.2}">H{}</text>"#,
                y + 4.0,
                b.degree
            )
            .unwrap();
        }
        for _ in 0..m {
            let (x0, x1) = (scale(b.left), scale(b.right));
            writeln!(
                out,
                r#"<line x1="{x0:.2}" y1="{y:.2}" x2="{x1:.2}" y2="{y:.2}" stroke="black" stroke-width="2"/>"#
            )
            .unwrap();
            end_mark(&mut out, x0, y, b.left_closed);
            if b.is_infinite() {
                writeln!(
                    out,
                    r#"<path d="M {:.2} {:.2} l 6 4 l -6 4 z" fill="black"/>"#,
                    x1,
                    y - 4.0
                )
                .unwrap();
            } else {
                end_mark(&mut out, x1, y, b.right_closed);
            }
            y += ROW;
        }
    }
    let axis = height - 24.0;
    writeln!(
        out,
        r#"<line x1="{MARGIN:.0}" y1="{axis:.2}" x2="{:.0}" y2="{axis:.2}" stroke="gray"/>"#,
        WIDTH - MARGIN
    )
    .unwrap();
    for x in [lo, hi] {
        writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            scale(x),
            axis + 14.0,
            format_value(x)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

fn format_value(x: f64) -> String {
    let s = format!("{x:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// One panel per `δ_r` and `γ_r` with points sized by multiplicity and the
/// diagonal drawn.
pub fn configurations_svg(c: &Configurations, title: &str) -> String {
    let panels: Vec<(String, &crate::dictionary::Configuration)> = c
        .delta
        .iter()
        .map(|(r, m)| (format!("δ{r}"), m))
        .chain(c.gamma.iter().map(|(r, m)| (format!("γ{r}"), m)))
        .collect();
    let (lo, hi) = range(
        panels
            .iter()
            .flat_map(|(_, m)| m.keys().flat_map(|p| [p.x, p.y])),
    );
    let side = 220.0;
    let cols = panels.len().clamp(1, 3);
    let rows = panels.len().div_ceil(3).max(1);
    let (width, height) = (
        cols as f64 * (side + MARGIN) + MARGIN,
        rows as f64 * (side + MARGIN) + 40.0,
    );
    let mut out = String::new();
    header(&mut out, width, height, title);
    for (k, (name, points)) in panels.iter().enumerate() {
        let ox = MARGIN + (k % 3) as f64 * (side + MARGIN);
        let oy = 40.0 + (k / 3) as f64 * (side + MARGIN);
        let px = |x: f64| ox + (x - lo) / (hi - lo) * side;
        let py = |y: f64| oy + side - (y - lo) / (hi - lo) * side;
        writeln!(
            out,
            r#"<rect x="{ox:.2}" y="{oy:.2}" width="{side:.0}" height="{side:.0}" fill="none" stroke="gray"/>"#
        )
        .unwrap();
        writeln!(
            out,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="gray" stroke-dasharray="4 3"/>"#,
            px(lo),
            py(lo),
            px(hi),
            py(hi)
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}">{name}</text>"#,
            ox + 4.0,
            oy + 14.0
        )
        .unwrap();
        for (p, &m) in points.iter() {
            let r = 3.0 + 2.0 * (m as f64).sqrt();
            writeln!(
                out,
                r#"<circle cx="{:.2}" cy="{:.2}" r="{r:.2}" fill="steelblue" fill-opacity="0.8"><title>{} + {}i ×{m}</title></circle>"#,
                px(p.x),
                py(p.y),
                format_value(p.x),
                format_value(p.y)
            )
            .unwrap();
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bar::Bar;
    use crate::dictionary::configurations;

    #[test]
    fn closed_and_open_ends() {
        let bars = Barcode::from_iter([Bar::closed(0, 0.0, 2.0), Bar::open(0, 0.0, 2.0)]);
        let svg = barcode_svg(&bars, "circ");
        assert_eq!(svg.matches("<line").count(), 3);
        assert_eq!(svg.matches(r#"fill="black" stroke"#).count(), 2);
        assert_eq!(svg.matches(r#"fill="white" stroke"#).count(), 2);
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn infinite_bar_gets_arrow() {
        let svg = barcode_svg(&Barcode::from_iter([Bar::infinite(1, 3.0)]), "x");
        assert!(svg.contains("<path"));
        assert!(svg.contains(">H1<"));
    }

    #[test]
    fn configuration_panels() {
        let bars = Barcode::from_iter([Bar::closed(0, 0.0, 1.0), Bar::open_closed(0, 0.0, 1.0)]);
        let svg = configurations_svg(&configurations(&bars), "v");
        assert!(svg.contains("δ0") && svg.contains("γ0"));
        assert_eq!(svg.matches("stroke-dasharray").count(), 2);
        assert!(configurations_svg(&Default::default(), "empty").contains("</svg>"));
    }

    #[test]
    fn values_are_trimmed() {
        assert_eq!(format_value(2.0), "2");
        assert_eq!(format_value(-0.0001), "0");
        assert_eq!(format_value(0.5), "0.5");
    }
}
