//! SVG overlay of a scene with chords.

use std::fmt::Write;

use super::chords::ChordSolution;
use super::scene::ChordScene;

/// The region outline, its grid samples and the given chords.
pub fn scene_svg(scene: &ChordScene, chords: &[ChordSolution]) -> String {
    let (lo, hi) = scene.bbox();
    let size = 480.0;
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]);
    let pad = 0.05 * span;
    let scale = size / (span + 2.0 * pad);
    let px = |p: [f64; 2]| ((p[0] - lo[0] + pad) * scale, (hi[1] - p[1] + pad) * scale);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size:.0}" height="{size:.0}" viewBox="0 0 {size} {size}">"#
    );
    let mut path = String::new();
    for l in &scene.boundary.loops {
        for (i, p) in l.iter().enumerate() {
            let (x, y) = px(*p);
            let _ = write!(path, "{}{x:.2},{y:.2} ", if i == 0 { "M" } else { "L" });
        }
        path.push_str("Z ");
    }
    let _ = writeln!(
        out,
        r##"<path d="{}" fill="#eef3fb" fill-rule="evenodd" stroke="#000000" stroke-width="1.5"/>"##,
        path.trim_end()
    );
    for c in chords {
        let (x1, y1) = px(c.x1);
        let (x2, y2) = px(c.x2);
        let (wx, wy) = px(c.w);
        let _ = writeln!(
            out,
            r##"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="#d62728" stroke-width="1"/>"##
        );
        let _ = writeln!(out, r##"<circle cx="{wx:.2}" cy="{wy:.2}" r="2.5" fill="#1f77b4"/>"##);
    }
    out.push_str("</svg>\n");
    out
}
