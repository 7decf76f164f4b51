//! Chord scenes: a planar region, boundary data and sampling grids.

use serde::{Deserialize, Serialize};

use super::geometry::{Boundary, Hit};
use crate::bu_family::WModel;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub nx: usize,
    pub ny: usize,
}

/// JSON form of a scene.
///
/// `boundary_values` rows are `[s, e_1, ..., e_m]` with `s` the arc length
/// along the loops taken in order; values are interpolated linearly in `s`
/// within each loop (periodically). `missing` lists `[s0, s1]` arcs where
/// the boundary data is empty.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    pub polygons: Vec<Vec<[f64; 2]>>,
    pub boundary_values: Vec<Vec<f64>>,
    #[serde(default)]
    pub missing: Vec<[f64; 2]>,
    pub grid: GridSpec,
    pub dir_res: usize,
    pub tol: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChordScene {
    pub boundary: Boundary,
    /// Per loop, `(s, e)` samples sorted by `s`.
    values: Vec<Vec<(f64, Vec<f64>)>>,
    pub missing: Vec<[f64; 2]>,
    pub m: usize,
    pub grid: GridSpec,
    pub dir_res: usize,
    pub tol: f64,
    file: SceneFile,
}

impl ChordScene {
    pub fn from_file(file: SceneFile) -> Result<Self> {
        let boundary = Boundary::new(file.polygons.clone())?;
        if file.dir_res < 4 || file.dir_res % 2 == 1 {
            return Err(Error::InvalidScene("dir_res must be even and at least 4".into()));
        }
        if file.grid.nx < 2 || file.grid.ny < 2 {
            return Err(Error::InvalidScene("grid needs at least 2 x 2 samples".into()));
        }
        if !(file.tol > 0.0) {
            return Err(Error::InvalidScene("tol must be positive".into()));
        }
        let m = file.boundary_values.first().map_or(1, |r| r.len().saturating_sub(1));
        if m == 0 || file.boundary_values.iter().any(|r| r.len() != m + 1 || r.iter().any(|x| !x.is_finite())) {
            return Err(Error::InvalidScene("boundary_values rows must be [s, e...] of equal length".into()));
        }
        let total = boundary.total_length();
        let mut values = vec![Vec::new(); boundary.ranges.len()];
        for r in &file.boundary_values {
            let s = r[0];
            let Some(k) = boundary.ranges.iter().position(|&(a, b)| s >= a && s < b) else {
                return Err(Error::InvalidScene(format!("arc length {s} outside [0, {total})")));
            };
            values[k].push((s, r[1..].to_vec()));
        }
        for v in &mut values {
            v.sort_by(|a, b| a.0.total_cmp(&b.0));
        }
        Ok(Self {
            boundary,
            values,
            missing: file.missing.clone(),
            m,
            grid: file.grid,
            dir_res: file.dir_res,
            tol: file.tol,
            file,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(text)?)
    }

    pub fn to_file(&self) -> &SceneFile {
        &self.file
    }

    /// Boundary data at arc length `s`; `None` where `Y` is empty.
    pub fn value_at(&self, s: f64) -> Option<Vec<f64>> {
        if self.missing.iter().any(|&[a, b]| s >= a && s <= b) {
            return None;
        }
        let k = self.boundary.ranges.iter().position(|&(a, b)| s >= a && s <= b)?;
        let v = &self.values[k];
        let (start, end) = self.boundary.ranges[k];
        let len = end - start;
        match v.len() {
            0 => None,
            1 => Some(v[0].1.clone()),
            n => {
                let i = v.partition_point(|p| p.0 <= s);
                let (a, b) = if i == 0 || i == n {
                    // Wrap from the last sample around to the first.
                    let (a, b) = (&v[n - 1], &v[0]);
                    let sa = a.0;
                    let sb = b.0 + len;
                    let t = if s >= sa { s } else { s + len };
                    return Some(lerp(&a.1, &b.1, (t - sa) / (sb - sa)));
                } else {
                    (&v[i - 1], &v[i])
                };
                Some(lerp(&a.1, &b.1, (s - a.0) / (b.0 - a.0)))
            }
        }
    }

    pub fn hit_value(&self, h: &Hit) -> Option<Vec<f64>> {
        self.value_at(h.s)
    }

    pub fn bbox(&self) -> ([f64; 2], [f64; 2]) {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in self.boundary.loops.iter().flatten() {
            for c in 0..2 {
                lo[c] = lo[c].min(p[c]);
                hi[c] = hi[c].max(p[c]);
            }
        }
        (lo, hi)
    }

    /// The sampled region: grid points at cell centers of the bounding box,
    /// those inside the boundary (even-odd) belonging to `W`.
    pub fn w_model(&self) -> WModel {
        let (lo, hi) = self.bbox();
        let (nx, ny) = (self.grid.nx, self.grid.ny);
        let step = [(hi[0] - lo[0]) / nx as f64, (hi[1] - lo[1]) / ny as f64];
        let origin = [lo[0] + 0.5 * step[0], lo[1] + 0.5 * step[1]];
        let mut inside = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                let p = [origin[0] + i as f64 * step[0], origin[1] + j as f64 * step[1]];
                inside.push(self.boundary.contains(p) && self.boundary.distance(p) > 1e-9);
            }
        }
        WModel::Grid {
            nx,
            ny,
            origin,
            step,
            inside,
        }
    }

    /// Disk approximated by a regular `n`-gon of radius 1, with
    /// `f(θ) = cos θ` at the vertices.
    pub fn disk_cos(n: usize, grid: usize, dir_res: usize, tol: f64) -> Result<Self> {
        let poly: Vec<[f64; 2]> = (0..n)
            .map(|k| {
                let t = std::f64::consts::TAU * k as f64 / n as f64;
                [t.cos(), t.sin()]
            })
            .collect();
        let side = 2.0 * (std::f64::consts::PI / n as f64).sin();
        let values = (0..n)
            .map(|k| vec![k as f64 * side, (std::f64::consts::TAU * k as f64 / n as f64).cos()])
            .collect();
        Self::from_file(SceneFile {
            polygons: vec![poly],
            boundary_values: values,
            missing: Vec::new(),
            grid: GridSpec { nx: grid, ny: grid },
            dir_res,
            tol,
        })
    }

    /// `[-1, 1]^2` with `f` the first coordinate of the boundary point.
    pub fn square_first_coordinate(grid: usize, dir_res: usize, tol: f64) -> Result<Self> {
        let poly = vec![[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]];
        Self::from_file(SceneFile {
            polygons: vec![poly],
            boundary_values: vec![vec![0.0, -1.0], vec![2.0, 1.0], vec![4.0, 1.0], vec![6.0, -1.0]],
            missing: Vec::new(),
            grid: GridSpec { nx: grid, ny: grid },
            dir_res,
            tol,
        })
    }

    /// Annulus between regular `n`-gons of radii 1 and `r`, with `f` the
    /// first coordinate on both loops.
    pub fn annulus(n: usize, r: f64, grid: usize, dir_res: usize, tol: f64) -> Result<Self> {
        let ring = |radius: f64| -> Vec<[f64; 2]> {
            (0..n)
                .map(|k| {
                    let t = std::f64::consts::TAU * k as f64 / n as f64;
                    [radius * t.cos(), radius * t.sin()]
                })
                .collect()
        };
        let side = 2.0 * (std::f64::consts::PI / n as f64).sin();
        let mut values = Vec::new();
        let (outer, inner) = (ring(1.0), ring(r));
        for (k, p) in outer.iter().enumerate() {
            values.push(vec![k as f64 * side, p[0]]);
        }
        let offset = n as f64 * side;
        for (k, p) in inner.iter().enumerate() {
            values.push(vec![offset + k as f64 * side * r, p[0]]);
        }
        Self::from_file(SceneFile {
            polygons: vec![outer, inner],
            boundary_values: values,
            missing: Vec::new(),
            grid: GridSpec { nx: grid, ny: grid },
            dir_res,
            tol,
        })
    }
}

fn lerp(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolation_wraps_around_the_loop() {
        let sc = ChordScene::square_first_coordinate(4, 8, 0.1).unwrap();
        assert_eq!(sc.value_at(1.0), Some(vec![0.0]));
        assert_eq!(sc.value_at(7.0), Some(vec![-1.0]));
        assert_eq!(sc.value_at(5.0), Some(vec![0.0]));
    }

    #[test]
    fn missing_arcs_have_no_data() {
        let mut f = ChordScene::square_first_coordinate(4, 8, 0.1).unwrap().to_file().clone();
        f.missing = vec![[1.0, 2.0]];
        let sc = ChordScene::from_file(f).unwrap();
        assert_eq!(sc.value_at(1.5), None);
        assert!(sc.value_at(2.5).is_some());
    }

    #[test]
    fn grid_samples_avoid_the_boundary() {
        let sc = ChordScene::square_first_coordinate(8, 8, 0.1).unwrap();
        match sc.w_model() {
            WModel::Grid { inside, origin, .. } => {
                assert!(inside.iter().all(|&b| b));
                assert!((origin[0] + 0.875).abs() < 1e-12);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn json_rejects_unknown_keys() {
        assert!(ChordScene::from_json(r#"{"polygons": [], "extra": 1}"#).is_err());
    }
}
