//! SVG plot of a solution set over `W × (S^1/±)`.

use std::fmt::Write;

use super::family::SampledFamily;
use super::model::WModel;
use super::solve::SolutionSet;

/// Flagged cells drawn as a W-cell × direction-class raster. For planar `W`
/// the W-cells are laid out on the grid and shaded by fiber size.
pub fn solution_svg(fam: &SampledFamily, sol: &SolutionSet) -> String {
    let mut out = String::new();
    match &fam.w {
        WModel::Grid { nx, ny, .. } => {
            let (cw, ch) = (nx.saturating_sub(1).max(1), ny.saturating_sub(1).max(1));
            let scale = 480.0 / cw.max(ch) as f64;
            let max = sol.proj_w.iter().copied().max().unwrap_or(0).max(1);
            header(&mut out, cw as f64 * scale, ch as f64 * scale);
            for (c, corners) in fam.w.cells().iter().enumerate() {
                let (i, j) = (corners[0] % nx, corners[0] / nx);
                let shade = 255 - (200 * sol.proj_w[c] / max) as u8;
                let fill = if sol.proj_w[c] == 0 { "#d62728".to_string() } else { format!("rgb({shade},{shade},255)") };
                let y = (ch - 1 - j) as f64 * scale;
                let _ = writeln!(
                    out,
                    r#"<rect x="{:.2}" y="{y:.2}" width="{scale:.2}" height="{scale:.2}" fill="{fill}"/>"#,
                    i as f64 * scale
                );
            }
        }
        _ => {
            let nw = sol.proj_w.len().max(1);
            let ns = sol.n_s_cells.max(1);
            let (width, height) = (480.0, 480.0);
            let (dx, dy) = (width / nw as f64, height / ns as f64);
            header(&mut out, width, height);
            let _ = writeln!(out, r##"<rect width="{width}" height="{height}" fill="#ffffff" stroke="#000000"/>"##);
            for c in &sol.cells {
                let y = height - (c.s_cell + 1) as f64 * dy;
                let _ = writeln!(
                    out,
                    r##"<rect x="{:.2}" y="{y:.2}" width="{dx:.2}" height="{dy:.2}" fill="#1f77b4"/>"##,
                    c.w_cell as f64 * dx
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

fn header(out: &mut String, w: f64, h: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.2} {h:.2}">"#
    );
}
