//! Grids on the parameter space `W` and on the direction sphere.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::z2_chain::{Simplex, SimplicialPair};

/// Sampled parameter space. Samples are the vertices of the model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum WModel {
    Point,
    /// `[0, 1]` cut into `res` segments; the endpoints form `∂W`.
    Interval { res: usize },
    /// `S^1 = [0, 1]/0~1` cut into `res` segments.
    Circle { res: usize },
    /// A planar region: sample points `origin + (i*step[0], j*step[1])`,
    /// `i < nx`, `j < ny`, of which those flagged `inside` belong to `W`.
    /// Cells are the unit squares with four inside corners.
    Grid {
        nx: usize,
        ny: usize,
        origin: [f64; 2],
        step: [f64; 2],
        inside: Vec<bool>,
    },
}

/// A triangulated `W` with its cells.
#[derive(Clone, Debug)]
pub struct WComplex {
    pub pair: SimplicialPair,
    /// Corner samples of each cell.
    pub cells: Vec<Vec<usize>>,
    /// Top simplex to cell.
    pub cell_of: HashMap<Simplex, usize>,
}

impl WModel {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidFamily(msg.into()));
        match self {
            WModel::Point => Ok(()),
            WModel::Interval { res } if *res == 0 => bad("interval needs res >= 1"),
            WModel::Circle { res } if *res < 3 => bad("circle needs res >= 3"),
            WModel::Grid { nx, ny, inside, .. } if inside.len() != nx * ny => {
                bad("grid mask length differs from nx * ny")
            }
            _ => Ok(()),
        }
    }

    pub fn n_samples(&self) -> usize {
        match self {
            WModel::Point => 1,
            WModel::Interval { res } => res + 1,
            WModel::Circle { res } => *res,
            WModel::Grid { nx, ny, .. } => nx * ny,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            WModel::Point => 0,
            WModel::Interval { .. } | WModel::Circle { .. } => 1,
            WModel::Grid { .. } => 2,
        }
    }

    /// Coordinates of a sample: none for a point, the parameter in `[0, 1]`
    /// for intervals and circles, the planar position for grids.
    pub fn position(&self, w: usize) -> Vec<f64> {
        match self {
            WModel::Point => Vec::new(),
            WModel::Interval { res } | WModel::Circle { res } => vec![w as f64 / *res as f64],
            WModel::Grid { nx, origin, step, .. } => {
                let (i, j) = (w % nx, w / nx);
                vec![origin[0] + i as f64 * step[0], origin[1] + j as f64 * step[1]]
            }
        }
    }

    pub fn cells(&self) -> Vec<Vec<usize>> {
        match self {
            WModel::Point => vec![vec![0]],
            WModel::Interval { res } => (0..*res).map(|i| vec![i, i + 1]).collect(),
            WModel::Circle { res } => (0..*res).map(|i| vec![i, (i + 1) % res]).collect(),
            WModel::Grid { nx, ny, inside, .. } => {
                let mut out = Vec::new();
                for j in 0..ny.saturating_sub(1) {
                    for i in 0..nx.saturating_sub(1) {
                        let c = [j * nx + i, j * nx + i + 1, (j + 1) * nx + i, (j + 1) * nx + i + 1];
                        if c.iter().all(|&v| inside[v]) {
                            out.push(c.to_vec());
                        }
                    }
                }
                out
            }
        }
    }

    pub fn complex(&self) -> WComplex {
        let cells = self.cells();
        let mut cell_of = HashMap::new();
        let mut tops = Vec::new();
        for (c, corners) in cells.iter().enumerate() {
            let simplices: Vec<Simplex> = match self {
                WModel::Grid { .. } => {
                    let [a, b, d, e] = [corners[0], corners[1], corners[2], corners[3]];
                    vec![vec![a, b, e], vec![a, d, e]]
                }
                _ => {
                    let mut s = corners.clone();
                    s.sort_unstable();
                    vec![s]
                }
            };
            for s in simplices {
                cell_of.insert(s.clone(), c);
                tops.push(s);
            }
        }
        let sub: Vec<Simplex> = match self {
            WModel::Interval { res } => vec![vec![0], vec![*res]],
            WModel::Grid { .. } => grid_boundary(&cells),
            _ => Vec::new(),
        };
        let pair = SimplicialPair::new(self.n_samples(), &tops, &sub).expect("grid complexes are valid");
        WComplex { pair, cells, cell_of }
    }
}

/// Sides of grid squares that belong to exactly one square.
fn grid_boundary(cells: &[Vec<usize>]) -> Vec<Simplex> {
    let mut count: HashMap<Simplex, usize> = HashMap::new();
    for c in cells {
        for side in [[c[0], c[1]], [c[0], c[2]], [c[1], c[3]], [c[2], c[3]]] {
            *count.entry(side.to_vec()).or_default() += 1;
        }
    }
    let mut out: Vec<Simplex> = count.into_iter().filter(|&(_, n)| n == 1).map(|(s, _)| s).collect();
    out.sort();
    out
}

/// Sampled direction sphere `S^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SphereGrid {
    /// `res` equally spaced directions on `S^1`.
    Circle { res: usize },
    /// Lattice points of the `res`-subdivided cube surface, projected to `S^2`.
    #[cfg(feature = "n2")]
    Cube { res: usize },
}

/// A cell structure on the sphere, invariant under the antipode, and the
/// order complex of its cell poset modulo `±`.
#[derive(Clone, Debug)]
pub struct SphereModel {
    pub n: usize,
    pub dirs: Vec<Vec<f64>>,
    pub antipode: Vec<usize>,
    /// All cells as sorted corner lists, lower dimensions first.
    pub cells: Vec<Vec<usize>>,
    cell_antipode: Vec<usize>,
    /// One representative top cell per antipodal pair.
    pub top: Vec<usize>,
    /// Order complex of the cells modulo `±` (a model of `S^n/±`).
    pub quotient: SimplicialPair,
    /// Quotient vertex (cell orbit) to its index in `top`, for top orbits.
    top_index: Vec<Option<usize>>,
    /// Order complex of the cells themselves (a model of `S^n`).
    pub sphere: SimplicialPair,
}

impl SphereGrid {
    pub fn res(&self) -> usize {
        match *self {
            SphereGrid::Circle { res } => res,
            #[cfg(feature = "n2")]
            SphereGrid::Cube { res } => res,
        }
    }

    pub fn model(&self) -> Result<SphereModel> {
        match *self {
            SphereGrid::Circle { res } => {
                if res % 2 == 1 {
                    return Err(Error::InvalidFamily(format!(
                        "sphere_res {res} is odd; the antipode would not be a sample"
                    )));
                }
                if res < 4 {
                    return Err(Error::InvalidFamily("sphere_res must be at least 4".into()));
                }
                let dirs = (0..res)
                    .map(|j| {
                        let t = std::f64::consts::TAU * j as f64 / res as f64;
                        vec![t.cos(), t.sin()]
                    })
                    .collect();
                let antipode = (0..res).map(|j| (j + res / 2) % res).collect();
                let mut cells: Vec<Vec<usize>> = (0..res).map(|j| vec![j]).collect();
                let mut faces = vec![Vec::new(); res];
                for j in 0..res {
                    let mut arc = vec![j, (j + 1) % res];
                    arc.sort_unstable();
                    cells.push(arc);
                    faces.push(vec![j, (j + 1) % res]);
                }
                Ok(SphereModel::assemble(1, dirs, antipode, cells, faces))
            }
            #[cfg(feature = "n2")]
            SphereGrid::Cube { res } => {
                if res == 0 {
                    return Err(Error::InvalidFamily("cube res must be at least 1".into()));
                }
                let (dirs, antipode, cells, faces) = super::cube::cube_cells(res);
                Ok(SphereModel::assemble(2, dirs, antipode, cells, faces))
            }
        }
    }
}

fn full_flags(faces: &[Vec<usize>], c: usize) -> Vec<Vec<usize>> {
    if faces[c].is_empty() {
        return vec![vec![c]];
    }
    let mut out = Vec::new();
    for &f in &faces[c] {
        for mut flag in full_flags(faces, f) {
            flag.push(c);
            out.push(flag);
        }
    }
    out
}

impl SphereModel {
    fn assemble(
        n: usize,
        dirs: Vec<Vec<f64>>,
        antipode: Vec<usize>,
        cells: Vec<Vec<usize>>,
        faces: Vec<Vec<usize>>,
    ) -> Self {
        let id: HashMap<&Vec<usize>, usize> = cells.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let cell_antipode: Vec<usize> = cells
            .iter()
            .map(|c| {
                let mut a: Vec<usize> = c.iter().map(|&v| antipode[v]).collect();
                a.sort_unstable();
                id[&a]
            })
            .collect();
        let mut orbit = vec![usize::MAX; cells.len()];
        let mut n_orbits = 0;
        for c in 0..cells.len() {
            if orbit[c] == usize::MAX {
                orbit[c] = n_orbits;
                orbit[cell_antipode[c]] = n_orbits;
                n_orbits += 1;
            }
        }
        let top_dim = cells.iter().map(Vec::len).max().unwrap_or(1);
        let mut top = Vec::new();
        let mut top_index = vec![None; n_orbits];
        for c in 0..cells.len() {
            if cells[c].len() == top_dim && top_index[orbit[c]].is_none() {
                top_index[orbit[c]] = Some(top.len());
                top.push(c);
            }
        }
        let mut qgens = Vec::new();
        let mut sgens = Vec::new();
        for c in (0..cells.len()).filter(|&c| cells[c].len() == top_dim) {
            for flag in full_flags(&faces, c) {
                let mut q: Simplex = flag.iter().map(|&f| orbit[f]).collect();
                q.sort_unstable();
                q.dedup();
                debug_assert_eq!(q.len(), flag.len(), "quotient collapses a flag");
                qgens.push(q);
                sgens.push(flag);
            }
        }
        let quotient = SimplicialPair::from_generators(n_orbits, qgens, |_| false);
        let sphere = SimplicialPair::from_generators(cells.len(), sgens, |_| false);
        Self {
            n,
            dirs,
            antipode,
            cells,
            cell_antipode,
            top,
            quotient,
            top_index,
            sphere,
        }
    }

    pub fn n_dirs(&self) -> usize {
        self.dirs.len()
    }

    /// Number of cells of `S^n/±`.
    pub fn n_cells(&self) -> usize {
        self.top.len()
    }

    /// Corner directions of a quotient cell (for its representative lift).
    pub fn corners(&self, q: usize) -> &[usize] {
        &self.cells[self.top[q]]
    }

    /// Corners of the other lift of a quotient cell.
    pub fn antipodal_corners(&self, q: usize) -> &[usize] {
        &self.cells[self.cell_antipode[self.top[q]]]
    }

    /// The quotient cell carrying a top simplex of `quotient`.
    pub fn cell_of_quotient_simplex(&self, s: &[usize]) -> Option<usize> {
        s.iter().max().and_then(|&v| self.top_index[v])
    }

    /// Top cells of the sphere (both lifts), indexed into `cells`.
    pub fn sphere_top_cells(&self) -> impl Iterator<Item = usize> + '_ {
        let d = self.cells[self.top[0]].len();
        (0..self.cells.len()).filter(move |&c| self.cells[c].len() == d)
    }

    /// Pairs of directions that share a cell edge.
    pub fn adjacent_pairs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() == 2)
            .map(|(_, c)| (c[0], c[1]))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}
