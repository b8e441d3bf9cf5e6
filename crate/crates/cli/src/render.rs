//! Two-row SVG drawings: fixed layer on top at unit spacing, free layer below
//! in the given order, straight edges.

use std::fmt::Write as _;

use oslcm_core::{CrossingProfile, TwoLayerNetwork, YOrder};

const SPACING: f64 = 40.0;
const MARGIN: f64 = 30.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 210.0;
const HEIGHT: f64 = 260.0;

/// `profile` must belong to `order`; edges carrying the maximum are drawn red.
pub fn render_svg(network: &TwoLayerNetwork, order: &YOrder, profile: &CrossingProfile) -> String {
    let x_count = network.x_count() as usize;
    let y_count = order.len();
    let widest = x_count.max(y_count).max(1);
    let width = 2.0 * MARGIN + SPACING * (widest - 1) as f64;
    let x_offset = MARGIN + SPACING * (widest - x_count.max(1)) as f64 / 2.0;
    let y_offset = MARGIN + SPACING * (widest - y_count.max(1)) as f64 / 2.0;
    let x_pos = |x: u32| x_offset + SPACING * (x - 1) as f64;
    let ranks = order.ranks();
    let y_pos = |y: u32| y_offset + SPACING * ranks[y as usize - 1] as f64;
    let lcn = profile.local_crossing_number();

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{HEIGHT}" viewBox="0 0 {width} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{MARGIN}" y="20" font-family="sans-serif" font-size="12">local crossing number {lcn}</text>"#
    );

    let _ = writeln!(svg, r#"<g stroke-linecap="round">"#);
    for (id, edge) in network.edges().iter().enumerate() {
        let count = profile.count(id);
        let (stroke, stroke_width) = if count == lcn && lcn > 0 {
            ("#c0392b", 2.0)
        } else if count > 0 {
            ("#5d6d7e", 1.2)
        } else {
            ("#222222", 1.2)
        };
        let _ = writeln!(
            svg,
            r#"<line x1="{:.1}" y1="{TOP}" x2="{:.1}" y2="{BOTTOM}" stroke="{stroke}" stroke-width="{stroke_width}"><title>{} {}: {count}</title></line>"#,
            x_pos(edge.x),
            y_pos(edge.y),
            edge.x,
            network.x_count() + edge.y,
        );
    }
    let _ = writeln!(svg, "</g>");

    let _ = writeln!(
        svg,
        r#"<g font-family="sans-serif" font-size="10" text-anchor="middle">"#
    );
    for x in 1..=network.x_count() {
        let cx = x_pos(x);
        let _ = writeln!(
            svg,
            r#"<circle cx="{cx:.1}" cy="{TOP}" r="4" fill="black"/>"#
        );
        let _ = writeln!(svg, r#"<text x="{cx:.1}" y="{}">{x}</text>"#, TOP - 9.0);
    }
    for &y in order.positions() {
        let cx = y_pos(y);
        let _ = writeln!(
            svg,
            r#"<circle cx="{cx:.1}" cy="{BOTTOM}" r="4" fill="white" stroke="black"/>"#
        );
        let _ = writeln!(
            svg,
            r#"<text x="{cx:.1}" y="{}">{}</text>"#,
            BOTTOM + 17.0,
            network.x_count() + y
        );
    }
    let _ = writeln!(svg, "</g>");
    svg.push_str("</svg>\n");
    svg
}
