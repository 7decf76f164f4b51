//! Rank bookkeeping for the long exact sequence of a pair.

use serde::Serialize;

use super::homology::{homology, Homology};
use super::map::{induced_map_with, SimplicialMap};
use super::pair::SimplicialPair;
use crate::gf2::{BitVec, Z2Matrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LesDegree {
    pub degree: usize,
    pub h_sub: usize,
    pub h_total: usize,
    pub h_relative: usize,
    /// Rank of `H_k(A) -> H_k(X)`.
    pub rank_inclusion: usize,
    /// Rank of `H_k(X) -> H_k(X, A)`.
    pub rank_quotient: usize,
    /// Rank of the connecting map `H_k(X, A) -> H_{k-1}(A)`.
    pub rank_connecting: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct LesReport {
    pub degrees: Vec<LesDegree>,
    pub exact: bool,
}

/// Matrix of the connecting homomorphism in the given bases.
fn connecting_map(
    p: &SimplicialPair,
    sub: &SimplicialPair,
    sub_vertices: &[usize],
    rel: &Homology,
    sub_prev: &Homology,
) -> Z2Matrix {
    let k = rel.degree();
    let mut new_of = vec![usize::MAX; p.n_vertices()];
    for (j, &v) in sub_vertices.iter().enumerate() {
        new_of[v] = j;
    }
    let cols: Vec<BitVec> = rel
        .representatives()
        .iter()
        .map(|z| {
            let mut b = BitVec::zeros(sub.rel_count(k - 1));
            for r in z.ones() {
                let s = p.rel_simplex_verts(k, r);
                for f in super::pair::facets(s) {
                    // boundary of a relative cycle lies in the subcomplex
                    if p.simplex_in_sub(&f) {
                        let t: Vec<usize> = f.iter().map(|&v| new_of[v]).collect();
                        b.flip(sub.rel_index_of(&t).expect("face of A lies in A"));
                    }
                }
            }
            sub_prev
                .coordinates(&b)
                .expect("connecting image is a cycle of A")
        })
        .collect();
    Z2Matrix::from_columns(sub_prev.rank(), &cols)
}

pub fn long_exact_sequence(p: &SimplicialPair) -> LesReport {
    let (sub, incl) = p.sub_complex();
    let total = p.absolute();
    let i = SimplicialMap::new(&sub, &total, incl.clone()).expect("inclusion is simplicial");
    let j = SimplicialMap::new(&total, p, (0..p.n_vertices()).collect())
        .expect("identity is a map of pairs");
    let top = p.count_dims();
    let hs: Vec<Homology> = (0..top).map(|k| homology(&sub, k)).collect();
    let hx: Vec<Homology> = (0..top).map(|k| homology(&total, k)).collect();
    let hr: Vec<Homology> = (0..top).map(|k| homology(p, k)).collect();
    let mut degrees = Vec::new();
    for k in 0..top {
        let rank_inclusion = induced_map_with(&i, &hs[k], &hx[k]).rank();
        let rank_quotient = induced_map_with(&j, &hx[k], &hr[k]).rank();
        let rank_connecting = if k == 0 {
            0
        } else {
            connecting_map(p, &sub, &incl, &hr[k], &hs[k - 1]).rank()
        };
        degrees.push(LesDegree {
            degree: k,
            h_sub: hs[k].rank(),
            h_total: hx[k].rank(),
            h_relative: hr[k].rank(),
            rank_inclusion,
            rank_quotient,
            rank_connecting,
        });
    }
    let exact = degrees.iter().enumerate().all(|(k, d)| {
        let at_total = d.h_total - d.rank_quotient == d.rank_inclusion;
        let next_connecting = degrees.get(k + 1).map_or(0, |n| n.rank_connecting);
        let at_relative = d.h_relative - d.rank_connecting == d.rank_quotient;
        let at_sub = d.h_sub - d.rank_inclusion == next_connecting;
        at_total && at_relative && at_sub
    });
    LesReport { degrees, exact }
}
