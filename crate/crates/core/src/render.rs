//! Deterministic standalone SVG output.

use std::fmt::Write;

use crate::geometry::Size;
use crate::model::{Element, LayerKind, Payload, TextAnchor};
use crate::pipeline::GeneralizedChart;

/// Drawing groups, back to front.
const GROUPS: [(&str, &[LayerKind]); 6] = [
    ("gridlines", &[LayerKind::Gridline]),
    ("axes", &[LayerKind::AxisLine, LayerKind::TickMark]),
    ("reference", &[LayerKind::ReferenceLine]),
    ("lines", &[LayerKind::DataLine]),
    ("points", &[LayerKind::DataPoint]),
    (
        "labels",
        &[
            LayerKind::TickLabel,
            LayerKind::AxisTitle,
            LayerKind::ChartTitle,
            LayerKind::PointLabel,
            LayerKind::Annotation,
        ],
    ),
];

/// Two-decimal coordinate without a negative zero.
pub fn fmt_px(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn rule_style(layer: LayerKind) -> &'static str {
    match layer {
        LayerKind::Gridline => r##"stroke="#e0e0e0" stroke-width="1""##,
        LayerKind::ReferenceLine => r##"stroke="#888888" stroke-width="1" stroke-dasharray="4 2""##,
        _ => r##"stroke="#333333" stroke-width="1""##,
    }
}

fn write_element(out: &mut String, e: &Element) {
    match &e.payload {
        Payload::Rule { from, to, .. } => {
            let _ = writeln!(
                out,
                r#"    <line x1="{}" y1="{}" x2="{}" y2="{}" {}/>"#,
                fmt_px(from.x),
                fmt_px(from.y),
                fmt_px(to.x),
                fmt_px(to.y),
                rule_style(e.layer)
            );
        }
        Payload::Polyline { vertices, .. } => {
            let mut d = String::new();
            for (k, p) in vertices.iter().enumerate() {
                if k > 0 {
                    d.push(' ');
                }
                let _ = write!(d, "{}{} {}", if k == 0 { 'M' } else { 'L' }, fmt_px(p.x), fmt_px(p.y));
            }
            let _ = writeln!(
                out,
                r##"    <path d="{d}" fill="none" stroke="#1f77b4" stroke-width="1.5"/>"##
            );
        }
        Payload::Marker { center, radius, .. } => {
            let _ = writeln!(
                out,
                r##"    <circle cx="{}" cy="{}" r="{}" fill="#1f77b4"/>"##,
                fmt_px(center.x),
                fmt_px(center.y),
                fmt_px(*radius)
            );
        }
        Payload::Text(t) => {
            let x = match t.text_anchor {
                TextAnchor::Start => e.bbox.x,
                TextAnchor::Middle => e.bbox.x + e.bbox.width / 2.0,
                TextAnchor::End => e.bbox.right(),
            };
            let _ = writeln!(
                out,
                r##"    <text x="{}" y="{}" font-size="{}" font-family="sans-serif" text-anchor="{}" fill="#222222">{}</text>"##,
                fmt_px(x),
                fmt_px(e.bbox.y + t.font_size),
                fmt_px(t.font_size),
                t.text_anchor.as_svg(),
                escape(&t.text)
            );
        }
    }
}

/// SVG for the visible elements on a `target`-sized canvas.
pub fn render_elements(elements: &[Element], target: Size) -> String {
    let (w, h) = (fmt_px(target.width), fmt_px(target.height));
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    for (name, layers) in GROUPS {
        let mut members: Vec<&Element> = elements
            .iter()
            .filter(|e| e.visible && layers.contains(&e.layer))
            .collect();
        if members.is_empty() {
            continue;
        }
        members.sort_by_key(|e| (layers.iter().position(|l| *l == e.layer), e.id));
        let _ = writeln!(out, r#"  <g id="{name}">"#);
        for e in members {
            write_element(&mut out, e);
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    out
}

pub fn render(chart: &GeneralizedChart) -> String {
    render_elements(&chart.elements, chart.target)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_chart_is_bare_root() {
        let svg = render_elements(&[], Size::new(100.0, 50.0));
        assert_eq!(
            svg,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"100.00\" height=\"50.00\" viewBox=\"0 0 100.00 50.00\">\n</svg>\n"
        );
    }

    #[test]
    fn escapes_markup() {
        assert_eq!(escape("a<b & \"c\""), "a&lt;b &amp; &quot;c&quot;");
    }

    #[test]
    fn no_negative_zero() {
        assert_eq!(fmt_px(-0.001), "0.00");
        assert_eq!(fmt_px(1.005), "1.00");
    }
}
