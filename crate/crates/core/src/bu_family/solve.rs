//! The Borsuk-Ulam solution set `B(Z)` on a grid of `W × (S^n/±)`.

use serde::Serialize;

use super::family::{antipodal_difference, SampledFamily, Values};
use crate::error::Result;
use crate::par::Exec;

/// A flagged cell `(W-cell, direction class)` and its e-value witness.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlaggedCell {
    pub w_cell: usize,
    pub s_cell: usize,
    pub e: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolutionSet {
    pub cells: Vec<FlaggedCell>,
    /// Connected components (cells sharing a corner), as indices into `cells`.
    pub components: Vec<Vec<usize>>,
    /// Number of flagged cells over each W-cell.
    pub proj_w: Vec<usize>,
    pub n_s_cells: usize,
    pub epsilon: f64,
}

impl SolutionSet {
    pub fn is_flagged(&self, w_cell: usize, s_cell: usize) -> bool {
        self.cells
            .binary_search_by(|c| (c.w_cell, c.s_cell).cmp(&(w_cell, s_cell)))
            .is_ok()
    }

    pub fn fiber(&self, w_cell: usize) -> impl Iterator<Item = &FlaggedCell> {
        let start = self.cells.partition_point(|c| c.w_cell < w_cell);
        self.cells[start..].iter().take_while(move |c| c.w_cell == w_cell)
    }

    pub fn surjective(&self) -> bool {
        self.proj_w.iter().all(|&n| n > 0)
    }

    pub fn empty_fibers(&self) -> Vec<usize> {
        (0..self.proj_w.len()).filter(|&c| self.proj_w[c] == 0).collect()
    }
}

/// Componentwise sign change of `g` over the given samples; zeros count.
fn sign_change(g: &SampledFamily, samples: impl Iterator<Item = (usize, usize)> + Clone) -> bool {
    (0..g.m).all(|c| {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for (w, v) in samples.clone() {
            let x = g.value(w, v)[c];
            lo = lo.min(x);
            hi = hi.max(x);
        }
        lo <= 0.0 && hi >= 0.0
    })
}

/// Whether the cell `(w_cell, lift)` satisfies the matching predicate, where
/// `lift` lists the corner directions of one lift of the direction cell.
/// For functions this is the sign-change test on `g = F − F∘(−1)`.
pub fn cell_predicate(fam: &SampledFamily, g: Option<&SampledFamily>, w_corners: &[usize], lift: &[usize]) -> bool {
    let corners = || w_corners.iter().flat_map(move |&w| lift.iter().map(move |&v| (w, v)));
    match &fam.values {
        Values::Function(_) => sign_change(g.expect("difference family"), corners()),
        Values::Boxes(_) => {
            let eps = fam.epsilon();
            let anti = &fam.sphere_model().antipode;
            corners().any(|(w, v)| {
                let b = fam.boxes(w, anti[v]);
                fam.boxes(w, v).iter().any(|x| b.iter().any(|y| x.distance(y) <= eps))
            })
        }
    }
}

fn witness_e(fam: &SampledFamily, w_corners: &[usize], lift: &[usize]) -> Vec<f64> {
    let anti = &fam.sphere_model().antipode;
    let mut sum = vec![0.0; fam.m];
    let mut count = 0usize;
    match &fam.values {
        Values::Function(_) => {
            for &w in w_corners {
                for &v in lift {
                    for (c, s) in sum.iter_mut().enumerate() {
                        *s += 0.5 * (fam.value(w, v)[c] + fam.value(w, anti[v])[c]);
                    }
                    count += 1;
                }
            }
        }
        Values::Boxes(_) => {
            let eps = fam.epsilon();
            for &w in w_corners {
                for &v in lift {
                    let b = fam.boxes(w, anti[v]);
                    let best = fam
                        .boxes(w, v)
                        .iter()
                        .flat_map(|x| b.iter().map(move |y| (x.distance(y), x, y)))
                        .filter(|t| t.0 <= eps)
                        .min_by(|a, b| a.0.total_cmp(&b.0));
                    if let Some((_, x, y)) = best {
                        for ((s, a), b) in sum.iter_mut().zip(x.center()).zip(y.center()) {
                            *s += 0.5 * (a + b);
                        }
                        count += 1;
                    }
                }
            }
        }
    }
    sum.into_iter().map(|s| s / count.max(1) as f64).collect()
}

pub fn solve_bu(fam: &SampledFamily) -> Result<SolutionSet> {
    solve_bu_with(fam, Exec::default())
}

/// [`solve_bu`] with an explicit execution mode.
pub fn solve_bu_with(fam: &SampledFamily, exec: Exec) -> Result<SolutionSet> {
    let g = if fam.is_function() { Some(antipodal_difference(fam)?) } else { None };
    let w_cells = fam.w.cells();
    let model = fam.sphere_model();
    let ns = model.n_cells();
    let per_w: Vec<Vec<FlaggedCell>> = exec.map_range(w_cells.len(), |wc| {
        (0..ns)
            .filter(|&sc| cell_predicate(fam, g.as_ref(), &w_cells[wc], model.corners(sc)))
            .map(|sc| FlaggedCell {
                w_cell: wc,
                s_cell: sc,
                e: witness_e(fam, &w_cells[wc], model.corners(sc)),
            })
            .collect()
    });
    let proj_w = per_w.iter().map(Vec::len).collect();
    let cells: Vec<FlaggedCell> = per_w.into_iter().flatten().collect();
    let components = components(fam, &w_cells, &cells);
    Ok(SolutionSet {
        cells,
        components,
        proj_w,
        n_s_cells: ns,
        epsilon: fam.epsilon(),
    })
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn components(fam: &SampledFamily, w_cells: &[Vec<usize>], cells: &[FlaggedCell]) -> Vec<Vec<usize>> {
    let model = fam.sphere_model();
    let mut parent: Vec<usize> = (0..cells.len()).collect();
    let mut owner: std::collections::HashMap<(usize, usize), usize> = std::collections::HashMap::new();
    for (i, c) in cells.iter().enumerate() {
        for &w in &w_cells[c.w_cell] {
            for &v in model.corners(c.s_cell) {
                // A corner and its antipode are the same point of S/±.
                let key = (w, v.min(model.antipode[v]));
                match owner.get(&key) {
                    Some(&j) => {
                        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                        parent[a] = b;
                    }
                    None => {
                        owner.insert(key, i);
                    }
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = std::collections::BTreeMap::new();
    for i in 0..cells.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out
}

/// Whether some sample of the W-cell comes within `eps` of a solution:
/// `|g| <= eps` for functions, an antipodal box pair within `2 eps` for
/// box clouds. Used to tell an unresolved fiber from an empty one.
pub(crate) fn near_solution(fam: &SampledFamily, g: Option<&SampledFamily>, w_corners: &[usize]) -> bool {
    let eps = fam.epsilon();
    let anti = &fam.sphere_model().antipode;
    w_corners.iter().any(|&w| {
        (0..fam.n_dirs()).any(|v| match g {
            Some(g) => g.value(w, v).iter().all(|x| x.abs() <= eps),
            None => {
                let b = fam.boxes(w, anti[v]);
                fam.boxes(w, v).iter().any(|x| b.iter().any(|y| x.distance(y) <= 2.0 * eps))
            }
        })
    })
}

pub(crate) fn difference(fam: &SampledFamily) -> Option<SampledFamily> {
    fam.is_function().then(|| antipodal_difference(fam).expect("function family"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bu_family::{SphereGrid, WModel};
    use std::f64::consts::{FRAC_PI_2, TAU};

    fn angle_of(fam: &SampledFamily, sc: usize) -> f64 {
        let c = fam.sphere_model().corners(sc);
        TAU * (c[0] as f64 + 0.5) / fam.n_dirs() as f64
    }

    #[test]
    fn cos_family_solves_at_quarter_turns() {
        let fam = SampledFamily::from_fn(WModel::Interval { res: 8 }, SphereGrid::Circle { res: 64 }, 1, |_, d| {
            vec![d[0]]
        })
        .unwrap();
        let sol = solve_bu(&fam).unwrap();
        assert!(sol.surjective());
        for c in &sol.cells {
            assert!((angle_of(&fam, c.s_cell) - FRAC_PI_2).abs() < TAU / 64.0 + 1e-12);
            assert!(c.e[0].abs() < 1e-9);
        }
        assert_eq!(sol.components.len(), 1);
    }

    #[test]
    fn sin_family_solves_at_zero() {
        let fam = SampledFamily::from_fn(WModel::Point, SphereGrid::Circle { res: 32 }, 1, |_, d| vec![d[1]]).unwrap();
        let sol = solve_bu(&fam).unwrap();
        assert!(!sol.cells.is_empty());
        for c in &sol.cells {
            let corners = fam.sphere_model().corners(c.s_cell);
            assert!(corners.contains(&0) || corners.contains(&16));
        }
    }

    #[test]
    fn both_lifts_agree() {
        let fam = SampledFamily::from_fn(WModel::Interval { res: 5 }, SphereGrid::Circle { res: 40 }, 1, |w, d| {
            vec![(d[0] * 3.0 + w[0]).sin() + d[1] * d[0]]
        })
        .unwrap();
        let g = difference(&fam);
        let model = fam.sphere_model();
        for wc in fam.w.cells() {
            for sc in 0..model.n_cells() {
                assert_eq!(
                    cell_predicate(&fam, g.as_ref(), &wc, model.corners(sc)),
                    cell_predicate(&fam, g.as_ref(), &wc, model.antipodal_corners(sc))
                );
            }
        }
    }

    #[test]
    fn modes_agree() {
        let fam = SampledFamily::from_fn(WModel::Circle { res: 16 }, SphereGrid::Circle { res: 32 }, 1, |w, d| {
            let t = TAU * w[0];
            vec![d[0] * t.cos() + d[1] * t.sin()]
        })
        .unwrap();
        let a = solve_bu_with(&fam, Exec::Parallel).unwrap();
        let b = solve_bu_with(&fam, Exec::Sequential).unwrap();
        assert_eq!(a.cells, b.cells);
    }
}
