//! Barycentric subdivision of pairs, chains and maps.

use std::collections::HashMap;

use super::map::SimplicialMap;
use super::pair::{facets, Simplex, SimplicialPair};
use crate::gf2::BitVec;

/// `sd(X, A)`: vertices are the simplices of `X`, numbered by dimension and
/// then lexicographically, so inclusion chains are increasing sequences.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub pair: SimplicialPair,
    barycenters: Vec<Simplex>,
    vertex_of: HashMap<Simplex, usize>,
}

/// All full flags `v ⊂ ... ⊂ s` ending at `s`, as lists of faces from the
/// bottom up.
fn full_flags(s: &Simplex) -> Vec<Vec<Simplex>> {
    if s.len() == 1 {
        return vec![vec![s.clone()]];
    }
    let mut out = Vec::new();
    for f in facets(s) {
        for mut flag in full_flags(&f) {
            flag.push(s.clone());
            out.push(flag);
        }
    }
    out
}

impl Subdivision {
    pub fn new(p: &SimplicialPair) -> Self {
        let mut barycenters = Vec::new();
        let mut vertex_of = HashMap::new();
        for k in 0..p.count_dims() {
            for s in p.simplices(k) {
                vertex_of.insert(s.clone(), barycenters.len());
                barycenters.push(s.clone());
            }
        }
        let mut gens = Vec::new();
        for k in 0..p.count_dims() {
            for s in p.simplices(k) {
                for flag in full_flags(s) {
                    gens.push(flag.iter().map(|f| vertex_of[f]).collect::<Simplex>());
                }
            }
        }
        let pair = SimplicialPair::from_generators(barycenters.len(), gens, |chain| {
            let top = &barycenters[*chain.iter().max().expect("nonempty")];
            p.simplex_in_sub(top)
        });
        Self {
            pair,
            barycenters,
            vertex_of,
        }
    }

    /// The simplex of the original complex whose barycenter is vertex `v`.
    pub fn barycenter(&self, v: usize) -> &Simplex {
        &self.barycenters[v]
    }

    pub fn vertex_of(&self, s: &[usize]) -> Option<usize> {
        self.vertex_of.get(s).copied()
    }

    /// Subdivision chain map on relative `k`-chains.
    pub fn subdivide_chain(&self, p: &SimplicialPair, k: usize, chain: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.pair.rel_count(k));
        for r in chain.ones() {
            for flag in full_flags(p.rel_simplex_verts(k, r)) {
                let mut t: Simplex = flag.iter().map(|f| self.vertex_of[f]).collect();
                t.sort_unstable();
                out.flip(self.pair.rel_index_of(&t).expect("flag of a relative simplex"));
            }
        }
        out
    }

    /// Vertex assignment of `sd(f): sd(source) -> sd(target)`.
    pub fn map_vertices(&self, f: &SimplicialMap<'_>, target: &Subdivision) -> Vec<usize> {
        self.barycenters
            .iter()
            .map(|s| target.vertex_of[&f.image(s)])
            .collect()
    }
}

/// `n`-fold barycentric subdivision of a pair together with the subdivided chain.
pub fn subdivide_times(p: &SimplicialPair, k: usize, chain: &BitVec, n: usize) -> (SimplicialPair, BitVec) {
    let mut pair = p.clone();
    let mut c = chain.clone();
    for _ in 0..n {
        let sd = Subdivision::new(&pair);
        c = sd.subdivide_chain(&pair, k, &c);
        pair = sd.pair;
    }
    (pair, c)
}
