//! Minimal SVG rendering of a persistence diagram.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::PersistenceDiagram;

const SIZE: f64 = 400.0;
const MARGIN: f64 = 40.0;

/// Scatter plot of the bars with the diagonal; essential bars sit on a
/// dashed line above the finite ones. Repeated bars carry a count.
pub fn diagram_svg(diagram: &PersistenceDiagram) -> String {
    let finite: Vec<f64> = diagram.pairs().iter().flat_map(|&(b, d)| [b, d]).filter(|v| v.is_finite()).collect();
    let lo = finite.iter().copied().fold(0.0, f64::min);
    let hi = finite.iter().copied().fold(lo + 1.0, f64::max);
    let span = (hi - lo) * 1.1;
    let inner = SIZE - 2.0 * MARGIN;
    let sx = |v: f64| MARGIN + (v - lo) / span * inner;
    let sy = |v: f64| SIZE - MARGIN - (v - lo) / span * inner;
    let inf_y = MARGIN / 2.0;

    let mut counts: BTreeMap<(u64, u64), usize> = BTreeMap::new();
    for &(b, d) in diagram.pairs() {
        *counts.entry((b.to_bits(), d.to_bits())).or_default() += 1;
    }

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#);
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (x0, y0, end) = (sx(lo), sy(lo), SIZE - MARGIN);
    let _ = writeln!(svg, r#"<line x1="{x0}" y1="{y0}" x2="{end}" y2="{y0}" stroke="black"/>"#);
    let _ = writeln!(svg, r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{MARGIN}" stroke="black"/>"#);
    let _ = writeln!(svg, r#"<line x1="{x0}" y1="{y0}" x2="{end}" y2="{MARGIN}" stroke="gray"/>"#);
    let _ = writeln!(
        svg,
        r#"<line x1="{x0}" y1="{inf_y}" x2="{end}" y2="{inf_y}" stroke="gray" stroke-dasharray="4 4"/>"#
    );
    let _ = writeln!(svg, r#"<text x="{}" y="{}" font-size="12">inf</text>"#, 4.0, inf_y + 4.0);
    let _ = writeln!(svg, r#"<text x="{}" y="{}" font-size="12">H{}</text>"#, end - 20.0, SIZE - 10.0, diagram.degree);
    for (&(b, d), &count) in &counts {
        let (b, d) = (f64::from_bits(b), f64::from_bits(d));
        let (cx, cy) = (sx(b), if d.is_finite() { sy(d) } else { inf_y });
        let _ = writeln!(svg, r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="4" fill="steelblue"/>"#);
        if count > 1 {
            let _ = writeln!(svg, r#"<text x="{:.2}" y="{:.2}" font-size="10">{count}</text>"#, cx + 6.0, cy - 6.0);
        }
    }
    svg.push_str("</svg>\n");
    svg
}
