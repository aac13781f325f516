//! SVG drawings of cycle embeddings.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arrangement::{splitter_analysis, Classification};
use crate::embedding::CycleEmbedding;
use crate::geometry::{to_decimal, Point, Rational};

/// Fractional digits in emitted coordinates.
const COORD_DIGITS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderOptions {
    pub width: u32,
    pub height: u32,
    /// Write the cycle index next to every corner marker.
    pub label_corners: bool,
    /// Stroke splitters with `splitter_stroke` instead of `stroke`.
    pub highlight_splitters: bool,
    /// Fill the closed polyline with the even-odd rule. Illustrative only: it
    /// does not shade every bounded region of a self-crossing cycle.
    pub shade_regions: bool,
    pub stroke: String,
    pub splitter_stroke: String,
    pub fill: String,
    pub corner_fill: String,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            width: 600,
            height: 600,
            label_corners: true,
            highlight_splitters: false,
            shade_regions: false,
            stroke: "#1f2937".into(),
            splitter_stroke: "#dc2626".into(),
            fill: "#bfdbfe".into(),
            corner_fill: "#111827".into(),
        }
    }
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
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

/// Maps embedding coordinates onto the canvas: uniform scale, 5% margin on
/// the tighter axis, centred, y pointing down.
struct Viewport {
    min_x: Rational,
    min_y: Rational,
    scale: Rational,
    offset_x: Rational,
    offset_y: Rational,
    height: Rational,
}

impl Viewport {
    fn fit(points: &[Point], width: u32, height: u32) -> Self {
        let min_x = points.iter().map(|p| &p.x).min().unwrap().clone();
        let max_x = points.iter().map(|p| &p.x).max().unwrap().clone();
        let min_y = points.iter().map(|p| &p.y).min().unwrap().clone();
        let max_y = points.iter().map(|p| &p.y).max().unwrap().clone();
        let w = Rational::from_integer(BigInt::from(width));
        let h = Rational::from_integer(BigInt::from(height));
        let usable = Rational::new(9.into(), 10.into());
        let span_x = &max_x - &min_x;
        let span_y = &max_y - &min_y;
        let fit = |canvas: &Rational, span: &Rational| {
            (!span.is_zero()).then(|| canvas * &usable / span)
        };
        let scale = match (fit(&w, &span_x), fit(&h, &span_y)) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => Rational::from_integer(1.into()),
        };
        let two = Rational::from_integer(2.into());
        let offset_x = (&w - &span_x * &scale) / &two;
        let offset_y = (&h - &span_y * &scale) / &two;
        Viewport {
            min_x,
            min_y,
            scale,
            offset_x,
            offset_y,
            height: h,
        }
    }

    fn map(&self, p: &Point) -> (String, String) {
        let x = &self.offset_x + (&p.x - &self.min_x) * &self.scale;
        let y = &self.height - (&self.offset_y + (&p.y - &self.min_y) * &self.scale);
        (to_decimal(&x, COORD_DIGITS), to_decimal(&y, COORD_DIGITS))
    }
}

/// Renders `emb` as a standalone SVG 1.1 document. Output depends only on
/// the arguments.
pub fn to_svg(emb: &CycleEmbedding, opts: &RenderOptions) -> String {
    let width = opts.width.max(1);
    let height = opts.height.max(1);
    let view = Viewport::fit(emb.corners(), width, height);
    let mapped: Vec<(String, String)> = emb.corners().iter().map(|p| view.map(p)).collect();
    let n = emb.n();

    let splitters: Vec<bool> = if opts.highlight_splitters {
        match splitter_analysis(emb) {
            Ok(report) => report
                .segments
                .iter()
                .map(|e| e.classification == Classification::Splitter)
                .collect(),
            Err(_) => vec![false; n],
        }
    } else {
        vec![false; n]
    };

    let stroke_width = (width.min(height) / 300).max(1);
    let marker_radius = (width.min(height) / 120).max(2);

    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    let _ = writeln!(svg, "  <title>{n}-cycle embedding</title>");

    if opts.shade_regions {
        let points: Vec<String> = mapped.iter().map(|(x, y)| format!("{x},{y}")).collect();
        let _ = writeln!(
            svg,
            "  <polygon class=\"regions\" points=\"{}\" fill=\"{}\" fill-rule=\"evenodd\" stroke=\"none\"/>",
            points.join(" "),
            escape(&opts.fill)
        );
    }

    let _ = writeln!(
        svg,
        "  <g class=\"segments\" stroke-width=\"{stroke_width}\" stroke-linecap=\"round\">"
    );
    for i in 0..n {
        let (x1, y1) = &mapped[i];
        let (x2, y2) = &mapped[(i + 1) % n];
        let (class, stroke) = if splitters[i] {
            ("segment splitter", &opts.splitter_stroke)
        } else {
            ("segment", &opts.stroke)
        };
        let _ = writeln!(
            svg,
            "    <line class=\"{class}\" x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"{}\"/>",
            escape(stroke)
        );
    }
    svg.push_str("  </g>\n");

    let _ = writeln!(svg, "  <g class=\"corners\" fill=\"{}\">", escape(&opts.corner_fill));
    for (i, (x, y)) in mapped.iter().enumerate() {
        let _ = writeln!(
            svg,
            "    <circle class=\"corner\" cx=\"{x}\" cy=\"{y}\" r=\"{marker_radius}\"/>"
        );
        if opts.label_corners {
            let _ = writeln!(
                svg,
                "    <text x=\"{x}\" y=\"{y}\" dx=\"{}\" dy=\"-{}\" font-family=\"sans-serif\" font-size=\"{}\">{i}</text>",
                marker_radius + 2,
                marker_radius + 2,
                marker_radius * 3
            );
        }
    }
    svg.push_str("  </g>\n");
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{construct_even, construct_odd, from_int_corners};

    #[test]
    fn pentagram_elements() {
        let svg = to_svg(&construct_odd(5).unwrap(), &RenderOptions::default());
        assert_eq!(svg.matches("<line ").count(), 5);
        assert_eq!(svg.matches("<circle ").count(), 5);
        assert_eq!(svg.matches("<text ").count(), 5);
        assert!(!svg.contains("splitter\""));
    }

    #[test]
    fn hourglass_splitters_highlighted() {
        let opts = RenderOptions {
            highlight_splitters: true,
            ..Default::default()
        };
        let svg = to_svg(&construct_even(4).unwrap(), &opts);
        assert_eq!(svg.matches("class=\"segment splitter\"").count(), 2);
        assert_eq!(svg.matches("stroke=\"#dc2626\"").count(), 2);
    }

    #[test]
    fn deterministic() {
        let emb = construct_even(8).unwrap();
        let opts = RenderOptions {
            shade_regions: true,
            highlight_splitters: true,
            ..Default::default()
        };
        assert_eq!(to_svg(&emb, &opts), to_svg(&emb, &opts));
    }

    #[test]
    fn viewport_margin_and_flip() {
        let emb = from_int_corners(&[(0, 0), (10, 0), (10, 10), (0, 10)]).unwrap();
        let svg = to_svg(
            &emb,
            &RenderOptions {
                width: 200,
                height: 200,
                label_corners: false,
                ..Default::default()
            },
        );
        // 5% margin each side; y grows downwards.
        assert!(svg.contains("x1=\"10.000000\" y1=\"190.000000\" x2=\"190.000000\" y2=\"190.000000\""));
        assert!(!svg.contains("<text"));
    }

    #[test]
    fn well_formed_xml() {
        for n in 3..=12 {
            let emb = crate::embedding::construct(n, 0).unwrap();
            let opts = RenderOptions {
                highlight_splitters: true,
                shade_regions: true,
                stroke: "a&b".into(),
                ..Default::default()
            };
            let svg = to_svg(&emb, &opts);
            let doc = roxmltree::Document::parse(&svg).expect("well-formed");
            let root = doc.root_element();
            assert_eq!(root.tag_name().name(), "svg");
            assert_eq!(root.attribute("version"), Some("1.1"));
            let lines = doc.descendants().filter(|d| d.has_tag_name("line")).count();
            assert_eq!(lines, n);
        }
    }

    #[test]
    fn styles_are_escaped() {
        let emb = construct_odd(3).unwrap();
        let opts = RenderOptions {
            stroke: "a\"<b".into(),
            ..Default::default()
        };
        assert!(to_svg(&emb, &opts).contains("stroke=\"a&quot;&lt;b\""));
    }
}
