//! Spanning certificate: is the projection of the solution set to `W`
//! H-essential for `(W, ∂W)`?

use std::collections::HashMap;

use serde::Serialize;

use super::family::{SampledFamily, Values};
use super::model::WComplex;
use super::solve::{difference, near_solution, SolutionSet};
use crate::sym_square::staircase_paths;
use crate::z2_chain::{facets, is_h_essential, EssentialVerdict, Simplex, SimplicialMap, SimplicialPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Essential,
    NotEssential,
    /// Some W-cell has an empty fiber although samples come within ε of a
    /// solution there; refine the grids.
    Inconclusive,
}

/// Whether the input has property S over `W × S`, the theorem's hypothesis.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Hypothesis {
    pub holds: bool,
    pub detail: String,
    /// Cells of `W × S` (W-cell, sphere cell) not met by `Z`.
    pub uncovered: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Resolution {
    pub w_cells: usize,
    pub sphere_res: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpanningReport {
    pub status: Status,
    pub surjective: bool,
    pub essential: bool,
    pub degree: usize,
    pub empty_fibers: Vec<usize>,
    /// Flagged cells `[w_cell, s_cell]` supporting the witness class.
    pub witness: Vec<[usize; 2]>,
    pub resolution: Resolution,
    pub epsilon: f64,
    pub hypothesis: Hypothesis,
    pub footprint_simplices: usize,
    pub warnings: Vec<String>,
}

/// The flagged part of `W × (S/±)`, triangulated up to dimension `dim W`.
pub struct Footprint {
    pub pair: SimplicialPair,
    /// Footprint vertex to `w * n_s + s`, with `s` a vertex of the `S/±` model.
    pub labels: Vec<usize>,
    pub n_s: usize,
    /// Top footprint simplex (in label space) to the flagged cell it came from.
    cell_of: HashMap<Simplex, usize>,
}

fn faces_of_dim(s: &Simplex, d: usize, out: &mut Vec<Simplex>) {
    if s.len() == d + 1 {
        out.push(s.clone());
        return;
    }
    for f in facets(s) {
        faces_of_dim(&f, d, out);
    }
}

pub fn footprint(fam: &SampledFamily, sol: &SolutionSet, wcx: &WComplex) -> Footprint {
    let model = fam.sphere_model();
    let d = fam.w.dim();
    let n_s = model.quotient.n_vertices();
    let mut w_tops: Vec<Vec<&Simplex>> = vec![Vec::new(); wcx.cells.len()];
    for (s, &c) in &wcx.cell_of {
        w_tops[c].push(s);
    }
    for t in &mut w_tops {
        t.sort();
    }
    let qtop = model.quotient.dim();
    let mut s_tops: Vec<Vec<&Simplex>> = vec![Vec::new(); model.n_cells()];
    for s in model.quotient.simplices(qtop) {
        if let Some(c) = model.cell_of_quotient_simplex(s) {
            s_tops[c].push(s);
        }
    }
    let mut gens: Vec<Simplex> = Vec::new();
    let mut cell_of = HashMap::new();
    for (i, cell) in sol.cells.iter().enumerate() {
        for ws in &w_tops[cell.w_cell] {
            for ss in &s_tops[cell.s_cell] {
                for path in staircase_paths(ws.len() - 1, ss.len() - 1) {
                    let top: Simplex = path.iter().map(|&(a, b)| ws[a] * n_s + ss[b]).collect();
                    let mut faces = Vec::new();
                    faces_of_dim(&top, d, &mut faces);
                    for mut f in faces {
                        f.sort_unstable();
                        f.dedup();
                        cell_of.entry(f.clone()).or_insert(i);
                        gens.push(f);
                    }
                }
            }
        }
    }
    let wsub = |s: &[usize]| {
        let mut img: Simplex = s.iter().map(|v| v / n_s).collect();
        img.sort_unstable();
        img.dedup();
        wcx.pair.simplex_in_sub(&img)
    };
    let (pair, labels) = SimplicialPair::from_generators_compact(gens, wsub);
    Footprint {
        pair,
        labels,
        n_s,
        cell_of,
    }
}

impl Footprint {
    pub fn projection<'a>(&'a self, wcx: &'a WComplex) -> SimplicialMap<'a> {
        let verts = self.labels.iter().map(|l| l / self.n_s).collect();
        SimplicialMap::new(&self.pair, &wcx.pair, verts).expect("projection of a product footprint")
    }

    fn label_simplex(&self, s: &[usize]) -> Simplex {
        s.iter().map(|&v| self.labels[v]).collect()
    }
}

/// Which cells of `W × S` the input meets (any corner sample carries data).
/// For a function family every cell is met.
fn coverage(fam: &SampledFamily) -> Hypothesis {
    match &fam.values {
        Values::Function(_) => Hypothesis {
            holds: true,
            detail: "graph of a sampled function".into(),
            uncovered: Vec::new(),
        },
        Values::Boxes(_) => {
            let model = fam.sphere_model();
            let mut uncovered = Vec::new();
            for (wc, corners) in fam.w.cells().iter().enumerate() {
                for c in model.sphere_top_cells() {
                    let met = corners
                        .iter()
                        .any(|&w| model.cells[c].iter().any(|&v| !fam.boxes(w, v).is_empty()));
                    if !met {
                        uncovered.push([wc, c]);
                    }
                }
            }
            let holds = uncovered.is_empty();
            let detail = if holds {
                "box cloud meets every cell of W × S".into()
            } else {
                format!(
                    "box cloud misses {} cells of W × S; Z cannot hit the fundamental class of W × S",
                    uncovered.len()
                )
            };
            Hypothesis {
                holds,
                detail,
                uncovered,
            }
        }
    }
}

pub fn spanning_check(sol: &SolutionSet, fam: &SampledFamily) -> SpanningReport {
    let wcx = fam.w.complex();
    let d = fam.w.dim();
    let hypothesis = coverage(fam);
    let fp = footprint(fam, sol, &wcx);
    let verdict: EssentialVerdict = is_h_essential(&fp.projection(&wcx), d);
    let mut witness: Vec<[usize; 2]> = verdict
        .witness
        .as_ref()
        .map(|w| {
            fp.pair
                .chain_simplices(d, &w.rep)
                .iter()
                .filter_map(|s| fp.cell_of.get(&fp.label_simplex(s)))
                .map(|&i| [sol.cells[i].w_cell, sol.cells[i].s_cell])
                .collect()
        })
        .unwrap_or_default();
    witness.sort_unstable();
    witness.dedup();

    let empty_fibers = sol.empty_fibers();
    let surjective = empty_fibers.is_empty();
    let status = if verdict.essential {
        Status::Essential
    } else if !surjective {
        let g = difference(fam);
        let cells = fam.w.cells();
        if empty_fibers.iter().any(|&c| near_solution(fam, g.as_ref(), &cells[c])) {
            Status::Inconclusive
        } else {
            Status::NotEssential
        }
    } else {
        Status::NotEssential
    };
    let mut warnings = verdict.warnings.clone();
    if !fam.is_function() {
        warnings.push("e-coordinates are collapsed; the certificate concerns the footprint in W × (S/±)".into());
    }
    SpanningReport {
        status,
        surjective,
        essential: verdict.essential,
        degree: d,
        empty_fibers,
        witness,
        resolution: Resolution {
            w_cells: sol.proj_w.len(),
            sphere_res: fam.sphere.res(),
        },
        epsilon: sol.epsilon,
        hypothesis,
        footprint_simplices: fp.pair.total_count(),
        warnings,
    }
}
