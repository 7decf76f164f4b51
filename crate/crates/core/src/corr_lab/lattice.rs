//! Lattice footprints over a simplex of strategies and the empirical
//! spanning test.
//!
//! `Δ(L)` at resolution `n` is written in cumulative coordinates
//! `c_i = n (p_0 + .. + p_{i-1})`, so it becomes `0 <= c_1 <= .. <= c_{l-1} <= n`.
//! That region is a union of Kuhn (Freudenthal) simplices, and Kuhn
//! simplices of a product lattice project onto Kuhn simplices of each factor,
//! which is what makes the projection simplicial.

use std::collections::HashSet;

use serde::Serialize;

use super::corr::{FiniteCorrespondence, HullCorrespondence};
use super::rational::Q;
use crate::par::Exec;
use crate::z2_chain::{is_h_essential, Simplex, SimplicialMap, SimplicialPair};

/// Default limit on generated footprint faces before giving up.
pub const FOOTPRINT_CAP: usize = 4_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EmpiricalStatus {
    Spans,
    DoesNotSpan,
    Inconclusive,
}

/// Outcome of the lattice test. Always empirical: it is a statement about a
/// sampled footprint, not about the correspondence itself.
#[derive(Clone, Debug, Serialize)]
pub struct LatticeVerdict {
    pub label: &'static str,
    pub status: EmpiricalStatus,
    pub degree: usize,
    pub lattice_res: u32,
    pub payoff_res: u32,
    pub lattice_points: usize,
    pub footprint_simplices: usize,
    pub note: String,
}

impl LatticeVerdict {
    pub fn spans(&self) -> bool {
        self.status == EmpiricalStatus::Spans
    }
}

/// `Δ(L)` lattice with `l = |L|` vertices at resolution `n`.
#[derive(Clone, Copy, Debug)]
pub struct SimplexLattice {
    pub l: usize,
    pub n: u32,
}

impl SimplexLattice {
    /// All monotone cumulative coordinate vectors.
    pub fn points(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut c = vec![0u32; self.l - 1];
        fn rec(i: usize, lo: u32, n: u32, c: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i == c.len() {
                out.push(c.clone());
                return;
            }
            for v in lo..=n {
                c[i] = v;
                rec(i + 1, v, n, c, out);
            }
        }
        rec(0, 0, self.n, &mut c, &mut out);
        out
    }

    fn cum(&self, c: &[u32], i: usize) -> u32 {
        match i {
            0 => 0,
            i if i == self.l => self.n,
            i => c[i - 1],
        }
    }

    pub fn in_region(&self, c: &[u32]) -> bool {
        (0..self.l).all(|i| self.cum(c, i) <= self.cum(c, i + 1)) && c.iter().all(|&v| v <= self.n)
    }

    /// Coordinate `i` of the strategy is zero.
    pub fn on_facet(&self, c: &[u32], i: usize) -> bool {
        self.cum(c, i) == self.cum(c, i + 1)
    }

    pub fn strategy(&self, c: &[u32]) -> Vec<Q> {
        (0..self.l)
            .map(|i| Q::new((self.cum(c, i + 1) - self.cum(c, i)).into(), self.n.into()))
            .collect()
    }

    /// Cumulative coordinates of `p` when it lies on the lattice.
    pub fn coords(&self, p: &[Q]) -> Option<Vec<u32>> {
        let mut acc = Q::from_integer(0.into());
        let mut c = Vec::with_capacity(self.l - 1);
        for x in &p[..self.l - 1] {
            acc += x;
            let v = &acc * Q::from_integer(self.n.into());
            if !v.is_integer() {
                return None;
            }
            c.push(v.to_integer().try_into().ok()?);
        }
        Some(c)
    }
}

/// Nested chains `A_1 ⊊ .. ⊊ A_j` of nonempty subsets of `0..dims`, as
/// bitmasks, for `j <= d`. Each gives the Kuhn face
/// `{v, v + 1_{A_1}, .., v + 1_{A_j}}`.
fn kuhn_chains(dims: usize, d: usize) -> Vec<Vec<u32>> {
    let full = (1u32 << dims) - 1;
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::<u32>::new()];
    for _ in 0..d {
        let mut next = Vec::new();
        for ch in &frontier {
            let last = ch.last().copied().unwrap_or(0);
            // Strict supersets of `last` within `full`.
            let free = full & !last;
            let mut sub = free;
            while sub != 0 {
                let mut c = ch.clone();
                c.push(last | sub);
                next.push(c);
                sub = (sub - 1) & free;
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

struct Encoder {
    radices: Vec<u32>,
}

impl Encoder {
    fn encode(&self, z: &[u32]) -> usize {
        z.iter().zip(&self.radices).fold(0usize, |acc, (&v, &r)| acc * (r as usize + 1) + v as usize)
    }

    fn decode(&self, mut i: usize) -> Vec<u32> {
        let mut z = vec![0; self.radices.len()];
        for (slot, &r) in z.iter_mut().zip(&self.radices).rev() {
            *slot = (i % (r as usize + 1)) as u32;
            i /= r as usize + 1;
        }
        z
    }
}

/// Decides whether the Kuhn footprint of `points` (lattice points
/// `(c, y)` with `y` in `{0..r}^m`) carries a relative class onto the
/// fundamental class of `(Δ(L), ∂Δ(L))`. Only the `(l-1)`-skeleton is built.
pub fn lattice_spanning(lat: SimplexLattice, m: usize, r: u32, points: &HashSet<Vec<u32>>, cap: usize) -> LatticeVerdict {
    let d = lat.l - 1;
    let dims = d + m;
    let enc = Encoder {
        radices: std::iter::repeat(lat.n).take(d).chain(std::iter::repeat(r).take(m)).collect(),
    };
    let base_enc = Encoder { radices: vec![lat.n; d] };
    let mut verdict = LatticeVerdict {
        label: "EMPIRICAL",
        status: EmpiricalStatus::DoesNotSpan,
        degree: d,
        lattice_res: lat.n,
        payoff_res: r,
        lattice_points: points.len(),
        footprint_simplices: 0,
        note: String::new(),
    };
    if points.is_empty() {
        verdict.note = "empty footprint".into();
        return verdict;
    }
    let chains = kuhn_chains(dims, d);
    let mut gens: Vec<Simplex> = Vec::new();
    let mut sorted: Vec<&Vec<u32>> = points.iter().collect();
    sorted.sort();
    'outer: for v in sorted {
        for ch in &chains {
            let mut face = vec![enc.encode(v)];
            let mut ok = true;
            for &mask in ch {
                let z: Vec<u32> = v.iter().enumerate().map(|(i, &x)| x + (mask >> i & 1)).collect();
                if !points.contains(&z) {
                    ok = false;
                    break;
                }
                face.push(enc.encode(&z));
            }
            if ok {
                gens.push(face);
                if gens.len() > cap {
                    verdict.status = EmpiricalStatus::Inconclusive;
                    verdict.note = format!("footprint exceeds {cap} faces; lower the resolution");
                    break 'outer;
                }
            }
        }
    }
    if verdict.status == EmpiricalStatus::Inconclusive {
        return verdict;
    }
    let on_common_facet = |verts: &[Vec<u32>]| (0..lat.l).any(|i| verts.iter().all(|c| lat.on_facet(c, i)));
    let (fp, labels) = SimplicialPair::from_generators_compact(gens, |s| {
        let cs: Vec<Vec<u32>> = s.iter().map(|&i| enc.decode(i)[..d].to_vec()).collect();
        on_common_facet(&cs)
    });
    verdict.footprint_simplices = fp.total_count();

    let lp = lat;
    let base_gens = lp.points().into_iter().flat_map(|c| {
        let cs = &c;
        kuhn_chains(d, d)
            .into_iter()
            .filter(|ch| ch.len() == d)
            .filter_map(|ch| {
                let mut face = vec![cs.clone()];
                for mask in ch {
                    let z: Vec<u32> = cs.iter().enumerate().map(|(i, &x)| x + (mask >> i & 1)).collect();
                    if !lp.in_region(&z) {
                        return None;
                    }
                    face.push(z);
                }
                Some(face.iter().map(|z| base_enc.encode(z)).collect::<Simplex>())
            })
            .collect::<Vec<_>>()
    });
    let base_gens: Vec<Simplex> = if d == 0 { vec![vec![0]] } else { base_gens.collect() };
    let (base, base_labels) = SimplicialPair::from_generators_compact(base_gens, |s| {
        let cs: Vec<Vec<u32>> = s.iter().map(|&i| base_enc.decode(i)).collect();
        on_common_facet(&cs)
    });
    let base_of: std::collections::HashMap<usize, usize> =
        base_labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let verts: Vec<usize> = labels.iter().map(|&i| base_of[&base_enc.encode(&enc.decode(i)[..d])]).collect();
    let f = SimplicialMap::new(&fp, &base, verts).expect("coordinate projection of Kuhn faces");
    let v = is_h_essential(&f, d);
    verdict.status = if v.essential { EmpiricalStatus::Spans } else { EmpiricalStatus::DoesNotSpan };
    verdict.note = format!("image rank {} of {}", v.image_rank, v.target_rank);
    verdict
}

/// Lattice points `(c, y)` of a hull correspondence, over `Δ(label)`.
pub fn hull_lattice_points(h: &HullCorrespondence, n: u32, exec: Exec) -> HashSet<Vec<u32>> {
    let lat = SimplexLattice { l: h.label.len(), n };
    let cs = lat.points();
    let strategies: Vec<Vec<Q>> = cs
        .iter()
        .map(|c| {
            let local = lat.strategy(c);
            let mut p = vec![Q::from_integer(0.into()); h.k];
            for (j, &l) in h.label.iter().enumerate() {
                p[l] = local[j].clone();
            }
            p
        })
        .collect();
    let fibers: Vec<(&Vec<u32>, &Vec<super::corr::Hull>)> = h.fibers.iter().collect();
    exec.map(&fibers, |(y, hulls)| {
        let mut hit = Vec::new();
        for (c, p) in cs.iter().zip(&strategies) {
            if hulls.iter().any(|hl| hl.contains(p)) {
                let mut z = c.clone();
                z.extend(y.iter());
                hit.push(z);
            }
        }
        hit
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Empirical spanning test of a hull correspondence over `Δ(label)`, with
/// the strategy lattice at resolution `n`.
pub fn spanning_empirical(h: &HullCorrespondence, n: u32) -> LatticeVerdict {
    spanning_empirical_with(h, n, FOOTPRINT_CAP, Exec::default())
}

pub fn spanning_empirical_with(h: &HullCorrespondence, n: u32, cap: usize, exec: Exec) -> LatticeVerdict {
    let pts = hull_lattice_points(h, n, exec);
    lattice_spanning(SimplexLattice { l: h.label.len(), n }, h.label.len(), h.res, &pts, cap)
}

/// Empirical spanning test of a finite correspondence over `Δ(label)`. Only
/// points on the lattice of resolution `n` take part.
pub fn property_s(f: &FiniteCorrespondence, n: u32) -> LatticeVerdict {
    let lat = SimplexLattice { l: f.label.len(), n };
    let mut off = 0;
    let pts: HashSet<Vec<u32>> = f
        .points
        .iter()
        .filter_map(|(p, y)| {
            let local: Vec<Q> = f.label.iter().map(|&l| p[l].clone()).collect();
            let c = lat.coords(&local);
            if c.is_none() {
                off += 1;
            }
            c.map(|mut c| {
                c.extend(y);
                c
            })
        })
        .collect();
    let mut v = lattice_spanning(lat, f.label.len(), f.res, &pts, FOOTPRINT_CAP);
    if off > 0 {
        v.note.push_str(&format!("; {off} points off the lattice ignored"));
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corr_lab::corr::convexify;
    use crate::corr_lab::rational::q;

    #[test]
    fn chains_count() {
        // Faces with a fixed minimal vertex in the Kuhn triangulation of a cube.
        assert_eq!(kuhn_chains(2, 1).len(), 1 + 3);
        assert_eq!(kuhn_chains(2, 2).len(), 1 + 3 + 2);
        assert_eq!(kuhn_chains(3, 3).iter().filter(|c| c.len() == 3).count(), 6);
    }

    #[test]
    fn lattice_points_and_coords() {
        let lat = SimplexLattice { l: 3, n: 4 };
        assert_eq!(lat.points().len(), 15);
        let c = vec![1, 3];
        assert_eq!(lat.strategy(&c), vec![q(1, 4), q(1, 2), q(1, 4)]);
        assert_eq!(lat.coords(&lat.strategy(&c)), Some(c));
        assert_eq!(lat.coords(&[q(1, 3), q(1, 3), q(1, 3)]), None);
    }

    fn full(l: usize, n: u32, y: Vec<u32>) -> HashSet<Vec<u32>> {
        SimplexLattice { l, n }
            .points()
            .into_iter()
            .map(|mut c| {
                c.extend(y.iter());
                c
            })
            .collect()
    }

    #[test]
    fn constant_graph_spans() {
        for l in 1..=3 {
            let pts = full(l, 4, vec![2; l]);
            let v = lattice_spanning(SimplexLattice { l, n: 4 }, l, 4, &pts, FOOTPRINT_CAP);
            assert!(v.spans(), "l = {l}: {v:?}");
        }
    }

    #[test]
    fn missing_middle_does_not_span() {
        let mut pts = full(2, 6, vec![1, 1]);
        pts.retain(|z| z[0] != 3);
        let v = lattice_spanning(SimplexLattice { l: 2, n: 6 }, 2, 4, &pts, FOOTPRINT_CAP);
        assert_eq!(v.status, EmpiricalStatus::DoesNotSpan);
    }

    #[test]
    fn jump_in_payoff_breaks_the_path() {
        // The graph jumps from payoff 0 to payoff 3 half way along.
        let pts: HashSet<Vec<u32>> = (0..=4u32).map(|c| vec![c, if c < 2 { 0 } else { 3 }, 0]).collect();
        let v = lattice_spanning(SimplexLattice { l: 2, n: 4 }, 2, 4, &pts, FOOTPRINT_CAP);
        assert_eq!(v.status, EmpiricalStatus::DoesNotSpan);
        // A diagonal step of one unit in every coordinate is a Kuhn edge.
        let pts: HashSet<Vec<u32>> = (0..=4u32).map(|c| vec![c, c.min(3), 0]).collect();
        let v = lattice_spanning(SimplexLattice { l: 2, n: 4 }, 2, 4, &pts, FOOTPRINT_CAP);
        assert!(v.spans());
    }

    #[test]
    fn cap_gives_inconclusive() {
        let pts = full(3, 4, vec![0, 0, 0]);
        let v = lattice_spanning(SimplexLattice { l: 3, n: 4 }, 3, 2, &pts, 3);
        assert_eq!(v.status, EmpiricalStatus::Inconclusive);
    }

    #[test]
    fn hull_of_vertices_spans() {
        let f = FiniteCorrespondence::new(
            3,
            vec![0, 1, 2],
            2,
            [
                (vec![q(1, 1), q(0, 1), q(0, 1)], vec![1, 1, 1]),
                (vec![q(0, 1), q(1, 1), q(0, 1)], vec![1, 1, 1]),
                (vec![q(0, 1), q(0, 1), q(1, 1)], vec![1, 1, 1]),
            ],
        )
        .unwrap();
        assert!(!property_s(&f, 4).spans());
        assert!(spanning_empirical(&convexify(&f), 4).spans());
    }
}
