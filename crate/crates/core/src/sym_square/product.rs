//! Staircase triangulations of products of simplicial complexes.

use std::collections::HashSet;

use crate::z2_chain::{Simplex, SimplicialPair};

/// Maximal monotone lattice paths from `(0, 0)` to `(a, b)` with unit steps.
/// There are `binomial(a + b, a)` of them.
pub fn staircase_paths(a: usize, b: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut path = vec![(0, 0)];
    fn walk(a: usize, b: usize, path: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let (i, j) = *path.last().expect("path starts at origin");
        if (i, j) == (a, b) {
            out.push(path.clone());
            return;
        }
        if i < a {
            path.push((i + 1, j));
            walk(a, b, path, out);
            path.pop();
        }
        if j < b {
            path.push((i, j + 1));
            walk(a, b, path, out);
            path.pop();
        }
    }
    walk(a, b, &mut path, &mut out);
    out
}

/// Triangulation of `|P| × |Q|` whose vertices are pairs `(u, v)`, numbered
/// `u * |V(Q)| + v`, and whose simplices are chains that increase weakly in
/// both coordinates. Each simplex lies in the product of its two coordinate
/// projections, its carrier.
#[derive(Clone, Debug)]
pub struct ProductComplex {
    pub pair: SimplicialPair,
    left_vertices: usize,
    right_vertices: usize,
}

impl ProductComplex {
    pub fn vertex(&self, u: usize, v: usize) -> usize {
        u * self.right_vertices + v
    }

    pub fn coords(&self, w: usize) -> (usize, usize) {
        (w / self.right_vertices, w % self.right_vertices)
    }

    pub fn left_vertices(&self) -> usize {
        self.left_vertices
    }

    pub fn right_vertices(&self) -> usize {
        self.right_vertices
    }

    /// The pair of factor simplices whose product carries `s`.
    pub fn carrier(&self, s: &[usize]) -> (Simplex, Simplex) {
        carrier_of(s, self.right_vertices)
    }
}

pub(crate) fn carrier_of(s: &[usize], right_vertices: usize) -> (Simplex, Simplex) {
    let mut l: Simplex = s.iter().map(|w| w / right_vertices).collect();
    let mut r: Simplex = s.iter().map(|w| w % right_vertices).collect();
    l.sort_unstable();
    l.dedup();
    r.sort_unstable();
    r.dedup();
    (l, r)
}

fn maximal_simplices(p: &SimplicialPair) -> Vec<Simplex> {
    let mut out = Vec::new();
    let mut covered: HashSet<Simplex> = HashSet::new();
    for k in (0..p.count_dims()).rev() {
        for s in p.simplices(k) {
            if !covered.contains(s) {
                out.push(s.clone());
            }
        }
        for s in p.simplices(k) {
            for f in crate::z2_chain::facets(s) {
                covered.insert(f);
            }
        }
    }
    out
}

/// Staircase triangulation of `P × Q`; the subcomplex is `A × Q ∪ P × B`.
pub fn product_triangulation(p: &SimplicialPair, q: &SimplicialPair) -> ProductComplex {
    let nq = q.n_vertices();
    let mut gens = Vec::new();
    let (mp, mq) = (maximal_simplices(p), maximal_simplices(q));
    for s in &mp {
        for t in &mq {
            for path in staircase_paths(s.len() - 1, t.len() - 1) {
                gens.push(path.iter().map(|&(i, j)| s[i] * nq + t[j]).collect::<Simplex>());
            }
        }
    }
    let pair = SimplicialPair::from_generators(p.n_vertices() * nq, gens, |w| {
        let (l, r) = carrier_of(w, nq);
        p.simplex_in_sub(&l) || q.simplex_in_sub(&r)
    });
    ProductComplex {
        pair,
        left_vertices: p.n_vertices(),
        right_vertices: nq,
    }
}
