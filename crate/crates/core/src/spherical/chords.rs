//! Spherical correspondences and matching-endpoint chords.

use serde::Serialize;

use super::geometry::Hit;
use super::scene::ChordScene;
use crate::bu_family::{solve_bu_with, spanning_check, EBox, SampledFamily, SolutionSet, SpanningReport, SphereGrid, Values, WModel};
use crate::error::Result;
use crate::par::Exec;
use crate::z2_chain::{is_h_essential, SimplicialMap, SimplicialPair};

/// A chord through `w` whose endpoints carry matching boundary values.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChordSolution {
    pub w: [f64; 2],
    /// Direction angle of the class `[x]`, in `[0, π)`.
    pub angle: f64,
    /// Endpoint on the ray `+x`.
    pub x1: [f64; 2],
    /// Endpoint on the ray `−x`.
    pub x2: [f64; 2],
    pub e: Vec<f64>,
    /// `|e(x1) − e(x2)|`, sup norm.
    pub residual: f64,
}

impl ChordSolution {
    /// The same chord seen from the opposite direction.
    pub fn flipped(&self) -> Self {
        Self {
            w: self.w,
            angle: self.angle + std::f64::consts::PI,
            x1: self.x2,
            x2: self.x1,
            e: self.e.clone(),
            residual: self.residual,
        }
    }
}

fn dir(angle: f64) -> [f64; 2] {
    [angle.cos(), angle.sin()]
}

/// `λ` values of all boundary hits of the ray from `w` in direction `x`.
pub fn ray_hits(scene: &ChordScene, w: [f64; 2], x: [f64; 2]) -> Result<Vec<f64>> {
    Ok(scene.boundary.ray_hits(w, x)?.into_iter().map(|h| h.lambda).collect())
}

/// Hits with data on both rays `±x`.
fn valued_hits(scene: &ChordScene, w: [f64; 2], angle: f64) -> Result<(Vec<(Hit, Vec<f64>)>, Vec<(Hit, Vec<f64>)>)> {
    let side = |a: f64| -> Result<Vec<(Hit, Vec<f64>)>> {
        Ok(scene
            .boundary
            .ray_hits(w, dir(a))?
            .into_iter()
            .filter_map(|h| scene.hit_value(&h).map(|e| (h, e)))
            .collect())
    };
    Ok((side(angle)?, side(angle + std::f64::consts::PI)?))
}

fn first_diff(a: &[f64], b: &[f64]) -> f64 {
    a[0] - b[0]
}

fn sup(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Direction classes `[x]` at `w` with a hit on `+x` and a hit on `−x`
/// carrying equal values. Each direction arc is scanned for sign changes
/// of the first value coordinate between every pair of hits, which are then
/// refined by bisection; matches are kept when all coordinates agree within
/// `tol`.
pub fn chord_solutions(scene: &ChordScene, w: [f64; 2]) -> Result<Vec<ChordSolution>> {
    if scene.boundary.distance(w) <= 1e-12 || !scene.boundary.contains(w) {
        return Err(crate::Error::NotInterior(w[0], w[1]));
    }
    let n = scene.dir_res;
    let step = std::f64::consts::TAU / n as f64;
    let mut out = Vec::new();
    for a in 0..n / 2 {
        scan(scene, w, a as f64 * step, (a + 1) as f64 * step, 0, &mut out)?;
    }
    out.sort_by(|p, q| p.angle.total_cmp(&q.angle));
    Ok(out)
}

fn scan(scene: &ChordScene, w: [f64; 2], t0: f64, t1: f64, depth: usize, out: &mut Vec<ChordSolution>) -> Result<()> {
    let (p0, m0) = valued_hits(scene, w, t0)?;
    let (p1, m1) = valued_hits(scene, w, t1)?;
    let tm = 0.5 * (t0 + t1);
    let (pm, mm) = valued_hits(scene, w, tm)?;
    let stable = p0.len() == p1.len() && m0.len() == m1.len() && pm.len() == p0.len() && mm.len() == m0.len();
    if !stable {
        if depth < 24 {
            scan(scene, w, t0, tm, depth + 1, out)?;
            scan(scene, w, tm, t1, depth + 1, out)?;
        }
        return Ok(());
    }
    for i in 0..p0.len() {
        for k in 0..m0.len() {
            let d0 = first_diff(&p0[i].1, &m0[k].1);
            let d1 = first_diff(&p1[i].1, &m1[k].1);
            let angle = if d0 == 0.0 {
                t0
            } else if d0 * d1 < 0.0 {
                bisect(scene, w, t0, t1, i, k, d0)?
            } else {
                continue;
            };
            let (p, m) = valued_hits(scene, w, angle)?;
            if let (Some(hp), Some(hm)) = (p.get(i), m.get(k)) {
                let residual = sup(&hp.1, &hm.1);
                if residual <= scene.tol {
                    out.push(ChordSolution {
                        w,
                        angle,
                        x1: hp.0.point,
                        x2: hm.0.point,
                        e: hp.1.iter().zip(&hm.1).map(|(a, b)| 0.5 * (a + b)).collect(),
                        residual,
                    });
                }
            }
        }
    }
    Ok(())
}

fn bisect(scene: &ChordScene, w: [f64; 2], mut lo: f64, mut hi: f64, i: usize, k: usize, d_lo: f64) -> Result<f64> {
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        let (p, m) = valued_hits(scene, w, mid)?;
        let (Some(a), Some(b)) = (p.get(i), m.get(k)) else {
            break;
        };
        let d = first_diff(&a.1, &b.1);
        if d == 0.0 {
            return Ok(mid);
        }
        if (d < 0.0) == (d_lo < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The spherical correspondence as a box cloud over the scene grid: for
/// each inside sample `w` and direction `x`, the boundary values at every
/// hit of the ray `w + λx`, dilated by one grid step in `W` and merged into
/// intervals where consecutive values are within `tol`.
pub fn build_spherical(scene: &ChordScene) -> Result<SampledFamily> {
    build_spherical_with(scene, Exec::default())
}

pub fn build_spherical_with(scene: &ChordScene, exec: Exec) -> Result<SampledFamily> {
    let w = scene.w_model();
    let WModel::Grid { nx, ny, inside, .. } = &w else {
        unreachable!("scenes sample on grids");
    };
    let (nx, ny) = (*nx, *ny);
    let nd = scene.dir_res;
    let raw: Vec<Result<Vec<Vec<Vec<f64>>>>> = exec.map_range(nx * ny, |wi| {
        if !inside[wi] {
            return Ok(vec![Vec::new(); nd]);
        }
        let hits = scene.boundary.sweep_hits(pos(&w, wi), nd)?;
        Ok(hits
            .iter()
            .map(|hs| hs.iter().filter_map(|h| scene.hit_value(h)).collect())
            .collect())
    });
    let raw: Vec<Vec<Vec<Vec<f64>>>> = raw.into_iter().collect::<Result<_>>()?;
    let boxes: Vec<Vec<EBox>> = exec
        .map_range(nx * ny * nd, |idx| {
            let (wi, j) = (idx / nd, idx % nd);
            if !inside[wi] {
                return Vec::new();
            }
            let (i0, j0) = ((wi % nx) as isize, (wi / nx) as isize);
            let mut vals: Vec<Vec<f64>> = Vec::new();
            for dj in -1..=1 {
                for di in -1..=1 {
                    let (i, jj) = (i0 + di, j0 + dj);
                    if i < 0 || jj < 0 || i >= nx as isize || jj >= ny as isize {
                        continue;
                    }
                    let k = jj as usize * nx + i as usize;
                    if inside[k] {
                        vals.extend(raw[k][j].iter().cloned());
                    }
                }
            }
            merge(vals, scene.tol)
        });
    SampledFamily::new(w, SphereGrid::Circle { res: nd }, scene.m, Values::Boxes(boxes), Some(scene.tol))
}

fn pos(w: &WModel, i: usize) -> [f64; 2] {
    let p = w.position(i);
    [p[0], p[1]]
}

/// Merges point values into boxes. For one coordinate, sorted values whose
/// gaps are at most `tol` become one interval; otherwise exact duplicates
/// are dropped.
fn merge(mut vals: Vec<Vec<f64>>, tol: f64) -> Vec<EBox> {
    vals.sort_by(|a, b| a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal));
    vals.dedup();
    if vals.first().is_some_and(|v| v.len() == 1) {
        let mut out: Vec<EBox> = Vec::new();
        for v in vals {
            match out.last_mut() {
                Some(b) if v[0] - b.hi[0] <= tol => b.hi[0] = v[0],
                _ => out.push(EBox::point(v)),
            }
        }
        out
    } else {
        vals.into_iter().map(EBox::point).collect()
    }
}

/// The hypothesis for one boundary loop: `Y` spans the loop in degree 1.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LoopCheck {
    pub loop_index: usize,
    pub essential: bool,
    pub uncovered_segments: usize,
}

/// Checks property S of the boundary data over each loop: the loop is cut
/// into segments of length about `ds`, the footprint of `Y` keeps segments
/// whose endpoints and midpoint carry data, and its projection must hit the
/// fundamental class of the loop.
pub fn boundary_hypothesis(scene: &ChordScene, ds: f64) -> Vec<LoopCheck> {
    scene
        .boundary
        .ranges
        .iter()
        .enumerate()
        .map(|(k, &(a, b))| {
            let n = (((b - a) / ds).ceil() as usize).max(3);
            let h = (b - a) / n as f64;
            let has = |s: f64| scene.value_at(s).is_some();
            let edges: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
            let covered: Vec<Vec<usize>> = (0..n)
                .filter(|&i| {
                    let s0 = a + i as f64 * h;
                    has(s0) && has(s0 + 0.5 * h) && has((s0 + h).min(b - 1e-12 * (b - a)))
                })
                .map(|i| edges[i].clone())
                .collect();
            let lp = SimplicialPair::new(n, &edges, &[]).expect("cycle");
            let (fp, labels) = SimplicialPair::from_generators_compact(covered.clone(), |_| false);
            let essential = if fp.is_empty() {
                false
            } else {
                let f = SimplicialMap::new(&fp, &lp, labels).expect("inclusion");
                is_h_essential(&f, 1).essential
            };
            LoopCheck {
                loop_index: k,
                essential,
                uncovered_segments: n - covered.len(),
            }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ChordReport {
    pub hypothesis_holds: bool,
    pub loops: Vec<LoopCheck>,
    /// False when the hypothesis fails: the verdict then proves nothing.
    pub probative: bool,
    pub spanning: SpanningReport,
    pub flagged_cells: usize,
    pub notes: Vec<String>,
}

/// End-to-end check: boundary hypothesis, spherical correspondence, solution
/// set and its spanning certificate.
pub fn chord_span_check(scene: &ChordScene) -> Result<(ChordReport, SampledFamily, SolutionSet)> {
    chord_span_check_with(scene, Exec::default())
}

pub fn chord_span_check_with(scene: &ChordScene, exec: Exec) -> Result<(ChordReport, SampledFamily, SolutionSet)> {
    let (lo, hi) = scene.bbox();
    let ds = ((hi[0] - lo[0]) / scene.grid.nx as f64).min((hi[1] - lo[1]) / scene.grid.ny as f64);
    let loops = boundary_hypothesis(scene, ds);
    let hypothesis_holds = loops.iter().all(|l| l.essential);
    let fam = build_spherical_with(scene, exec)?;
    let sol = solve_bu_with(&fam, exec)?;
    let spanning = spanning_check(&sol, &fam);
    let mut notes = vec!["closure of Z approximated by a one-cell dilation in W".to_string()];
    if !hypothesis_holds {
        notes.push("hypothesis violated: boundary data does not span every loop".into());
    }
    let report = ChordReport {
        hypothesis_holds,
        loops,
        probative: hypothesis_holds,
        flagged_cells: sol.cells.len(),
        spanning,
        notes,
    };
    Ok((report, fam, sol))
}
