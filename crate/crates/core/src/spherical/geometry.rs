//! Ray casting against polygon boundaries.

use crate::error::{Error, Result};

/// Angle nudge used when a ray grazes a vertex or runs along an edge.
pub const PERTURB: f64 = 1e-9;
const DEGENERATE: f64 = 1e-12;

/// A ray hit on a boundary loop.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hit {
    pub lambda: f64,
    pub point: [f64; 2],
    pub loop_index: usize,
    /// Arc-length position along all loops, loop `k` starting where loop
    /// `k - 1` ends.
    pub s: f64,
}

/// Closed polygons with arc-length bookkeeping.
#[derive(Clone, Debug, PartialEq)]
pub struct Boundary {
    pub loops: Vec<Vec<[f64; 2]>>,
    /// Start offset of each edge in arc length, per loop.
    offsets: Vec<Vec<f64>>,
    /// `[start, end)` arc-length range of each loop.
    pub ranges: Vec<(f64, f64)>,
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn cross(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

impl Boundary {
    pub fn new(loops: Vec<Vec<[f64; 2]>>) -> Result<Self> {
        if loops.is_empty() {
            return Err(Error::InvalidScene("no boundary loops".into()));
        }
        let mut offsets = Vec::new();
        let mut ranges = Vec::new();
        let mut total = 0.0;
        for l in &loops {
            if l.len() < 3 || l.iter().flatten().any(|x| !x.is_finite()) {
                return Err(Error::InvalidScene("loops need at least 3 finite vertices".into()));
            }
            let start = total;
            let mut off = Vec::with_capacity(l.len());
            for i in 0..l.len() {
                off.push(total);
                let len = dist(l[i], l[(i + 1) % l.len()]);
                if len == 0.0 {
                    return Err(Error::InvalidScene("repeated polygon vertex".into()));
                }
                total += len;
            }
            offsets.push(off);
            ranges.push((start, total));
        }
        Ok(Self { loops, offsets, ranges })
    }

    pub fn total_length(&self) -> f64 {
        self.ranges.last().map_or(0.0, |r| r.1)
    }

    fn edges(&self) -> impl Iterator<Item = (usize, usize, [f64; 2], [f64; 2])> + '_ {
        self.loops.iter().enumerate().flat_map(|(k, l)| {
            (0..l.len()).map(move |i| (k, i, l[i], l[(i + 1) % l.len()]))
        })
    }

    /// Distance from `p` to the nearest boundary point.
    pub fn distance(&self, p: [f64; 2]) -> f64 {
        self.edges()
            .map(|(_, _, a, b)| {
                let ab = [b[0] - a[0], b[1] - a[1]];
                let t = (((p[0] - a[0]) * ab[0] + (p[1] - a[1]) * ab[1]) / (ab[0] * ab[0] + ab[1] * ab[1]))
                    .clamp(0.0, 1.0);
                dist(p, [a[0] + t * ab[0], a[1] + t * ab[1]])
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Even-odd membership in the region bounded by the loops.
    pub fn contains(&self, p: [f64; 2]) -> bool {
        let mut inside = false;
        for (_, _, a, b) in self.edges() {
            if (a[1] > p[1]) != (b[1] > p[1]) {
                let x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
                if p[0] < x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// Boundary point at arc length `s`.
    pub fn point_at(&self, s: f64) -> [f64; 2] {
        for (k, l) in self.loops.iter().enumerate() {
            if s >= self.ranges[k].0 && s <= self.ranges[k].1 {
                for i in 0..l.len() {
                    let (a, b) = (l[i], l[(i + 1) % l.len()]);
                    let len = dist(a, b);
                    let t = (s - self.offsets[k][i]) / len;
                    if (0.0..=1.0).contains(&t) {
                        return [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
                    }
                }
            }
        }
        self.loops[0][0]
    }

    /// Hits for the exact direction, or `None` when the ray is degenerate.
    fn try_hits(&self, w: [f64; 2], x: [f64; 2]) -> Option<Vec<Hit>> {
        let mut hits = Vec::new();
        for (k, i, a, b) in self.edges() {
            let e = [b[0] - a[0], b[1] - a[1]];
            let den = cross(x, e);
            let aw = [a[0] - w[0], a[1] - w[1]];
            if den.abs() <= DEGENERATE * e[0].hypot(e[1]) {
                // Parallel: degenerate only if collinear and ahead.
                if cross(aw, x).abs() <= DEGENERATE * e[0].hypot(e[1]).max(1.0) {
                    let ahead = aw[0] * x[0] + aw[1] * x[1] > 0.0
                        || (b[0] - w[0]) * x[0] + (b[1] - w[1]) * x[1] > 0.0;
                    if ahead {
                        return None;
                    }
                }
                continue;
            }
            let lambda = cross(aw, e) / den;
            let mu = cross(aw, x) / den;
            if lambda <= 0.0 || !(-DEGENERATE..=1.0 + DEGENERATE).contains(&mu) {
                continue;
            }
            if mu.abs() <= DEGENERATE || (1.0 - mu).abs() <= DEGENERATE {
                return None;
            }
            let point = [w[0] + lambda * x[0], w[1] + lambda * x[1]];
            hits.push(Hit {
                lambda,
                point,
                loop_index: k,
                s: self.offsets[k][i] + mu * dist(a, b),
            });
        }
        hits.sort_by(|p, q| p.lambda.total_cmp(&q.lambda));
        Some(hits)
    }

    /// Hits for the `n` equally spaced directions `2πj/n` at once. Each edge
    /// only visits the directions it subtends; directions that come within
    /// a few ulps of an edge endpoint are recomputed by [`ray_hits`](Self::ray_hits).
    pub fn sweep_hits(&self, w: [f64; 2], n: usize) -> Result<Vec<Vec<Hit>>> {
        use std::f64::consts::TAU;
        if self.distance(w) <= DEGENERATE {
            return Err(Error::NotInterior(w[0], w[1]));
        }
        let step = TAU / n as f64;
        let mut out: Vec<Vec<Hit>> = vec![Vec::new(); n];
        let mut redo = vec![false; n];
        let guard = 1e-7;
        for (k, i, a, b) in self.edges() {
            let ta = (a[1] - w[1]).atan2(a[0] - w[0]);
            let tb = (b[1] - w[1]).atan2(b[0] - w[0]);
            let mut span = tb - ta;
            if span > std::f64::consts::PI {
                span -= TAU;
            } else if span < -std::f64::consts::PI {
                span += TAU;
            }
            let (lo, hi) = if span >= 0.0 { (ta, ta + span) } else { (ta + span, ta) };
            let first = ((lo - guard) / step).floor() as i64;
            let last = ((hi + guard) / step).ceil() as i64;
            for jj in first..=last {
                let theta = jj as f64 * step;
                let j = jj.rem_euclid(n as i64) as usize;
                if (theta - lo).abs() <= guard || (theta - hi).abs() <= guard {
                    redo[j] = true;
                    continue;
                }
                if theta < lo || theta > hi {
                    continue;
                }
                let x = [theta.cos(), theta.sin()];
                let e = [b[0] - a[0], b[1] - a[1]];
                let den = cross(x, e);
                if den.abs() <= DEGENERATE * e[0].hypot(e[1]) {
                    redo[j] = true;
                    continue;
                }
                let aw = [a[0] - w[0], a[1] - w[1]];
                let lambda = cross(aw, e) / den;
                let mu = cross(aw, x) / den;
                if lambda > 0.0 && (0.0..=1.0).contains(&mu) {
                    out[j].push(Hit {
                        lambda,
                        point: [w[0] + lambda * x[0], w[1] + lambda * x[1]],
                        loop_index: k,
                        s: self.offsets[k][i] + mu * dist(a, b),
                    });
                }
            }
        }
        for j in 0..n {
            if redo[j] {
                let t = j as f64 * step;
                out[j] = self.ray_hits(w, [t.cos(), t.sin()])?;
            } else {
                out[j].sort_by(|p, q| p.lambda.total_cmp(&q.lambda));
            }
        }
        Ok(out)
    }

    /// All boundary hits of the ray `w + λ x`, `λ > 0`, sorted by `λ`.
    /// Degenerate rays are rotated by [`PERTURB`] radians until generic.
    pub fn ray_hits(&self, w: [f64; 2], x: [f64; 2]) -> Result<Vec<Hit>> {
        if self.distance(w) <= DEGENERATE {
            return Err(Error::NotInterior(w[0], w[1]));
        }
        let mut angle = x[1].atan2(x[0]);
        for _ in 0..64 {
            if let Some(h) = self.try_hits(w, [angle.cos(), angle.sin()]) {
                return Ok(h);
            }
            angle += PERTURB;
        }
        Err(Error::InvalidScene("could not find a generic ray direction".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Boundary {
        Boundary::new(vec![vec![[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]]]).unwrap()
    }

    #[test]
    fn square_hits() {
        let b = square();
        let h = b.ray_hits([0.0, 0.0], [1.0, 0.0]).unwrap();
        assert_eq!(h.len(), 1);
        assert!((h[0].lambda - 1.0).abs() < 1e-12);
        assert!((h[0].s - 3.0).abs() < 1e-12);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let h = b.ray_hits([0.0, 0.0], [r, r]).unwrap();
        assert_eq!(h.len(), 1);
        assert!((h[0].lambda - 2f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn boundary_point_is_rejected() {
        assert!(matches!(square().ray_hits([1.0, 0.0], [1.0, 0.0]), Err(Error::NotInterior(..))));
    }

    #[test]
    fn edge_parallel_ray_is_perturbed() {
        let b = square();
        let h = b.ray_hits([-1.0 + 1e-3, -0.5], [0.0, 1.0]).unwrap();
        assert_eq!(h.len(), 1);
    }

    #[test]
    fn sweep_matches_ray_casting() {
        let star: Vec<[f64; 2]> = (0..14)
            .map(|k| {
                let t = std::f64::consts::TAU * k as f64 / 14.0;
                let r = if k % 2 == 0 { 1.0 } else { 0.45 };
                [r * t.cos(), r * t.sin()]
            })
            .collect();
        let hole = vec![[0.05, 0.05], [0.2, 0.05], [0.1, 0.2]];
        let b = Boundary::new(vec![star, hole]).unwrap();
        for w in [[0.0, 0.0], [0.3, -0.1], [-0.2, 0.25], [0.12, 0.1]] {
            if b.distance(w) < 1e-6 {
                continue;
            }
            let sweep = b.sweep_hits(w, 96).unwrap();
            for (j, hits) in sweep.iter().enumerate() {
                let t = std::f64::consts::TAU * j as f64 / 96.0;
                let direct = b.ray_hits(w, [t.cos(), t.sin()]).unwrap();
                assert_eq!(hits.len(), direct.len(), "w {w:?} dir {j}");
                for (p, q) in hits.iter().zip(&direct) {
                    assert!((p.lambda - q.lambda).abs() < 1e-6 && (p.s - q.s).abs() < 1e-6);
                }
            }
        }
    }

    #[test]
    fn containment_and_arc_length() {
        let b = square();
        assert!(b.contains([0.3, 0.9]));
        assert!(!b.contains([1.3, 0.0]));
        assert_eq!(b.total_length(), 8.0);
        assert_eq!(b.point_at(1.0), [0.0, -1.0]);
    }
}
