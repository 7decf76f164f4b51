//! Finite simplicial pairs `(X, A)` with `A` a subcomplex.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::sparse::SparseVec;
use crate::gf2::{BitVec, Z2Matrix};

/// A simplex as its strictly increasing vertex list.
pub type Simplex = Vec<usize>;

const NOT_RELATIVE: u32 = u32::MAX;

/// JSON interchange form: `{"vertices": N, "simplices": [[v...]...], "sub": [i...]}`.
///
/// `sub` lists indices into `simplices`; the subcomplex is their face closure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawComplex {
    pub vertices: usize,
    pub simplices: Vec<Vec<usize>>,
    #[serde(default)]
    pub sub: Vec<usize>,
}

/// A finite simplicial complex with a distinguished subcomplex.
///
/// Every vertex `0..n` is a 0-simplex. Within each dimension simplices are
/// sorted lexicographically, and that order fixes all chain indexing.
#[derive(Clone, Debug)]
pub struct SimplicialPair {
    n_vertices: usize,
    simplices: Vec<Vec<Simplex>>,
    lookup: HashMap<Simplex, usize>,
    in_sub: Vec<Vec<bool>>,
    rel_of: Vec<Vec<u32>>,
    rel_list: Vec<Vec<usize>>,
}

impl PartialEq for SimplicialPair {
    fn eq(&self, other: &Self) -> bool {
        self.n_vertices == other.n_vertices
            && self.simplices == other.simplices
            && self.in_sub == other.in_sub
    }
}

impl Eq for SimplicialPair {}

fn canonical(n: usize, s: &[usize]) -> Result<Simplex> {
    if s.is_empty() {
        return Err(Error::EmptySimplex);
    }
    let mut v = s.to_vec();
    v.sort_unstable();
    if v.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::RepeatedVertex(s.to_vec()));
    }
    if let Some(&bad) = v.iter().find(|&&x| x >= n) {
        return Err(Error::VertexOutOfRange { vertex: bad, count: n });
    }
    Ok(v)
}

fn add_closure(set: &mut HashSet<Simplex>, s: &Simplex) {
    if !set.insert(s.clone()) || s.len() == 1 {
        return;
    }
    for skip in 0..s.len() {
        let face: Simplex = s
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &v)| v)
            .collect();
        if !set.contains(&face) {
            add_closure(set, &face);
        }
    }
}

/// The codimension-one faces of a simplex, in the order obtained by
/// deleting vertex 0, 1, ... .
pub fn facets(s: &[usize]) -> impl Iterator<Item = Simplex> + '_ {
    (0..s.len()).filter(move |_| s.len() > 1).map(move |skip| {
        s.iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &v)| v)
            .collect()
    })
}

impl SimplicialPair {
    /// Builds a pair from simplex lists; both lists are closed under faces here.
    ///
    /// Duplicate input simplices are rejected, and every sub simplex must be
    /// a face of some listed simplex.
    pub fn new(n_vertices: usize, simplices: &[Vec<usize>], sub: &[Vec<usize>]) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut all = HashSet::new();
        for s in simplices {
            let c = canonical(n_vertices, s)?;
            if !seen.insert(c.clone()) {
                return Err(Error::DuplicateSimplex(c));
            }
            add_closure(&mut all, &c);
        }
        for v in 0..n_vertices {
            all.insert(vec![v]);
        }
        let mut sub_set = HashSet::new();
        for s in sub {
            let c = canonical(n_vertices, s)?;
            if !all.contains(&c) {
                return Err(Error::SubNotContained(format!("{c:?}")));
            }
            add_closure(&mut sub_set, &c);
        }
        Ok(Self::assemble(n_vertices, all, &sub_set))
    }

    /// Parses the JSON interchange form.
    pub fn from_raw(raw: &RawComplex) -> Result<Self> {
        let sub = raw
            .sub
            .iter()
            .map(|&i| {
                raw.simplices
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::SubNotContained(format!("index {i}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(raw.vertices, &raw.simplices, &sub)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_raw(&serde_json::from_str(text)?)
    }

    /// Builds from an already face-closed simplex set and a face-closed
    /// sub predicate. Used by generators that produce closed complexes.
    pub(crate) fn from_closed_sets(
        n_vertices: usize,
        all: HashSet<Simplex>,
        sub: &HashSet<Simplex>,
    ) -> Self {
        debug_assert!(sub.iter().all(|s| all.contains(s)));
        Self::assemble(n_vertices, all, sub)
    }

    /// Builds a pair from top-level simplices, closing under faces, with a
    /// predicate selecting the subcomplex. The predicate must be face-closed.
    pub fn from_generators(
        n_vertices: usize,
        generators: impl IntoIterator<Item = Simplex>,
        in_sub: impl Fn(&[usize]) -> bool,
    ) -> Self {
        let mut all = HashSet::new();
        for mut g in generators {
            g.sort_unstable();
            g.dedup();
            add_closure(&mut all, &g);
        }
        for v in 0..n_vertices {
            all.insert(vec![v]);
        }
        let sub: HashSet<Simplex> = all.iter().filter(|s| in_sub(s)).cloned().collect();
        Self::assemble(n_vertices, all, &sub)
    }

    /// Like [`from_generators`](Self::from_generators), but only the vertices
    /// that occur are kept, relabelled onto `0..m` in increasing order. The
    /// predicate sees original labels. Returns the pair and the labels.
    pub fn from_generators_compact(
        generators: impl IntoIterator<Item = Simplex>,
        in_sub: impl Fn(&[usize]) -> bool,
    ) -> (Self, Vec<usize>) {
        let mut all = HashSet::new();
        for mut g in generators {
            g.sort_unstable();
            g.dedup();
            add_closure(&mut all, &g);
        }
        let mut labels: Vec<usize> = all.iter().filter(|s| s.len() == 1).map(|s| s[0]).collect();
        labels.sort_unstable();
        let new_of: HashMap<usize, usize> = labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut relabelled = HashSet::with_capacity(all.len());
        let mut sub = HashSet::new();
        for s in all {
            let t: Simplex = s.iter().map(|v| new_of[v]).collect();
            if in_sub(&s) {
                sub.insert(t.clone());
            }
            relabelled.insert(t);
        }
        (Self::assemble(labels.len(), relabelled, &sub), labels)
    }

    fn assemble(n_vertices: usize, all: HashSet<Simplex>, sub: &HashSet<Simplex>) -> Self {
        let top = all.iter().map(Vec::len).max().unwrap_or(0);
        let mut simplices: Vec<Vec<Simplex>> = vec![Vec::new(); top];
        for s in all {
            simplices[s.len() - 1].push(s);
        }
        for layer in &mut simplices {
            layer.sort_unstable();
        }
        let mut lookup = HashMap::new();
        let mut in_sub = Vec::with_capacity(top);
        let mut rel_of = Vec::with_capacity(top);
        let mut rel_list = Vec::with_capacity(top);
        for layer in &simplices {
            let mut flags = Vec::with_capacity(layer.len());
            let mut rel = Vec::with_capacity(layer.len());
            let mut list = Vec::new();
            for (i, s) in layer.iter().enumerate() {
                lookup.insert(s.clone(), i);
                let b = sub.contains(s);
                flags.push(b);
                if b {
                    rel.push(NOT_RELATIVE);
                } else {
                    rel.push(list.len() as u32);
                    list.push(i);
                }
            }
            in_sub.push(flags);
            rel_of.push(rel);
            rel_list.push(list);
        }
        Self {
            n_vertices,
            simplices,
            lookup,
            in_sub,
            rel_of,
            rel_list,
        }
    }

    pub fn to_raw(&self) -> RawComplex {
        let mut simplices = Vec::new();
        let mut sub = Vec::new();
        for (k, layer) in self.simplices.iter().enumerate() {
            for (i, s) in layer.iter().enumerate() {
                if self.in_sub[k][i] {
                    sub.push(simplices.len());
                }
                simplices.push(s.clone());
            }
        }
        RawComplex {
            vertices: self.n_vertices,
            simplices,
            sub,
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Top dimension; an empty complex reports 0.
    pub fn dim(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    pub fn total_count(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        self.lookup.get(s).copied()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.lookup.contains_key(s)
    }

    pub fn in_sub(&self, k: usize, i: usize) -> bool {
        self.in_sub[k][i]
    }

    pub fn simplex_in_sub(&self, s: &[usize]) -> bool {
        self.index_of(s).is_some_and(|i| self.in_sub[s.len() - 1][i])
    }

    pub fn sub_count(&self, k: usize) -> usize {
        self.count(k) - self.rel_count(k)
    }

    /// Number of `k`-simplices outside the subcomplex.
    pub fn rel_count(&self, k: usize) -> usize {
        self.rel_list.get(k).map_or(0, Vec::len)
    }

    pub fn rel_index(&self, k: usize, i: usize) -> Option<usize> {
        let r = self.rel_of[k][i];
        (r != NOT_RELATIVE).then_some(r as usize)
    }

    pub fn rel_index_of(&self, s: &[usize]) -> Option<usize> {
        self.index_of(s).and_then(|i| self.rel_index(s.len() - 1, i))
    }

    /// Simplex index of the `r`-th relative `k`-simplex.
    pub fn rel_simplex(&self, k: usize, r: usize) -> usize {
        self.rel_list[k][r]
    }

    pub fn rel_simplex_verts(&self, k: usize, r: usize) -> &Simplex {
        &self.simplices[k][self.rel_list[k][r]]
    }

    /// Relative boundary of a relative `k`-simplex, as sorted relative indices.
    pub fn rel_boundary_of(&self, k: usize, r: usize) -> SparseVec {
        if k == 0 {
            return Vec::new();
        }
        let s = self.rel_simplex_verts(k, r);
        let mut out: Vec<u32> = facets(s)
            .filter_map(|f| self.rel_index_of(&f))
            .map(|x| x as u32)
            .collect();
        out.sort_unstable();
        out
    }

    /// Columns of the relative boundary operator in degree `k`.
    pub fn boundary_columns(&self, k: usize) -> Vec<SparseVec> {
        (0..self.rel_count(k)).map(|r| self.rel_boundary_of(k, r)).collect()
    }

    /// Dense matrix of the relative boundary `C_k(X, A) -> C_{k-1}(X, A)`.
    ///
    /// Out-of-range degrees give an empty matrix with the matching shape.
    pub fn boundary_matrix(&self, k: usize) -> Z2Matrix {
        let rows = if k == 0 { 0 } else { self.rel_count(k - 1) };
        let cols: Vec<BitVec> = self
            .boundary_columns(k)
            .into_iter()
            .map(|c| BitVec::from_indices(rows, c.into_iter().map(|x| x as usize)))
            .collect();
        Z2Matrix::from_columns(rows, &cols)
    }

    /// Relative chain given by simplex vertex lists; simplices in the
    /// subcomplex are dropped and repeated ones cancel.
    pub fn chain_from_simplices(&self, k: usize, simplices: &[Simplex]) -> Result<BitVec> {
        let mut c = BitVec::zeros(self.rel_count(k));
        for s in simplices {
            let mut s = s.clone();
            s.sort_unstable();
            if s.len() != k + 1 {
                return Err(Error::SubNotContained(format!("{s:?} has wrong degree")));
            }
            let i = self
                .index_of(&s)
                .ok_or_else(|| Error::SubNotContained(format!("{s:?}")))?;
            if let Some(r) = self.rel_index(k, i) {
                c.flip(r);
            }
        }
        Ok(c)
    }

    /// Vertex lists of the simplices in a relative chain.
    pub fn chain_simplices(&self, k: usize, chain: &BitVec) -> Vec<Simplex> {
        chain
            .ones()
            .map(|r| self.rel_simplex_verts(k, r).clone())
            .collect()
    }

    /// Relative boundary of a relative chain.
    pub fn boundary_of_chain(&self, k: usize, chain: &BitVec) -> BitVec {
        let rows = if k == 0 { 0 } else { self.rel_count(k - 1) };
        let mut out = BitVec::zeros(rows);
        for r in chain.ones() {
            for f in self.rel_boundary_of(k, r) {
                out.flip(f as usize);
            }
        }
        out
    }

    pub fn is_relative_cycle(&self, k: usize, chain: &BitVec) -> bool {
        self.boundary_of_chain(k, chain).is_zero()
    }

    /// `(X, ∅)`.
    pub fn absolute(&self) -> SimplicialPair {
        self.with_sub(|_| false)
    }

    /// Same complex with a different (face-closed) subcomplex.
    pub fn with_sub(&self, in_sub: impl Fn(&[usize]) -> bool) -> SimplicialPair {
        let all: HashSet<Simplex> = self.simplices.iter().flatten().cloned().collect();
        let sub: HashSet<Simplex> = all.iter().filter(|s| in_sub(s)).cloned().collect();
        Self::assemble(self.n_vertices, all, &sub)
    }

    /// The subcomplex `A` as a pair `(A, ∅)` on compacted vertex labels,
    /// together with the vertex inclusion into `X`.
    pub fn sub_complex(&self) -> (SimplicialPair, Vec<usize>) {
        self.induced_subcomplex(|k, i| self.in_sub[k][i], |_| false)
    }

    /// A subcomplex selected by `keep(dim, index)` (must be face-closed),
    /// relabelled onto `0..m`, with its own sub selected by `sub` on original
    /// vertex lists. Returns the pair and the vertex inclusion.
    pub fn induced_subcomplex(
        &self,
        keep: impl Fn(usize, usize) -> bool,
        sub: impl Fn(&[usize]) -> bool,
    ) -> (SimplicialPair, Vec<usize>) {
        let mut verts: Vec<usize> = (0..self.count(0))
            .filter(|&i| keep(0, i))
            .map(|i| self.simplices[0][i][0])
            .collect();
        verts.sort_unstable();
        let mut new_of = vec![usize::MAX; self.n_vertices];
        for (j, &v) in verts.iter().enumerate() {
            new_of[v] = j;
        }
        let mut all = HashSet::new();
        let mut sub_set = HashSet::new();
        for (k, layer) in self.simplices.iter().enumerate() {
            for (i, s) in layer.iter().enumerate() {
                if keep(k, i) {
                    let t: Simplex = s.iter().map(|&v| new_of[v]).collect();
                    debug_assert!(t.iter().all(|&v| v != usize::MAX), "keep not face-closed");
                    if sub(s) {
                        sub_set.insert(t.clone());
                    }
                    all.insert(t);
                }
            }
        }
        (Self::assemble(verts.len(), all, &sub_set), verts)
    }

    /// Euler characteristic of `C(X, A)`.
    pub fn relative_euler_characteristic(&self) -> i64 {
        (0..self.simplices.len())
            .map(|k| {
                let c = self.rel_count(k) as i64;
                if k % 2 == 0 { c } else { -c }
            })
            .sum()
    }

    /// Top-dimensional simplices containing the given simplex.
    pub fn cofaces(&self, s: &[usize], dim: usize) -> Vec<usize> {
        self.simplices(dim)
            .iter()
            .enumerate()
            .filter(|(_, t)| s.iter().all(|v| t.binary_search(v).is_ok()))
            .map(|(i, _)| i)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn circle3() -> SimplicialPair {
        SimplicialPair::new(3, &[vec![0, 1], vec![1, 2], vec![0, 2]], &[]).unwrap()
    }

    #[test]
    fn canonicalizes_and_closes() {
        let p = SimplicialPair::new(3, &[vec![2, 1]], &[]).unwrap();
        assert_eq!(p.simplices(1), &[vec![1, 2]]);
        assert_eq!(p.count(0), 3);
    }

    #[test]
    fn rejects_duplicates_and_foreign_sub() {
        assert!(matches!(
            SimplicialPair::new(3, &[vec![0, 1], vec![1, 0]], &[]),
            Err(Error::DuplicateSimplex(_))
        ));
        assert!(matches!(
            SimplicialPair::new(3, &[vec![0, 1]], &[vec![1, 2]]),
            Err(Error::SubNotContained(_))
        ));
        let raw = RawComplex {
            vertices: 2,
            simplices: vec![vec![0, 1]],
            sub: vec![4],
        };
        assert!(SimplicialPair::from_raw(&raw).is_err());
    }

    #[test]
    fn circle_boundary_matrix_shape() {
        let d = circle3().boundary_matrix(1);
        assert_eq!((d.rows(), d.cols()), (3, 3));
        for c in 0..3 {
            assert_eq!(d.column_weight(c), 2);
        }
    }

    #[test]
    fn interval_pair_relative_boundary() {
        let p = SimplicialPair::new(3, &[vec![0, 1], vec![1, 2]], &[vec![0], vec![2]]).unwrap();
        let d = p.boundary_matrix(1);
        assert_eq!((d.rows(), d.cols()), (1, 2));
        let out_of_range = p.boundary_matrix(3);
        assert_eq!((out_of_range.rows(), out_of_range.cols()), (0, 0));
    }

    #[test]
    fn json_roundtrip() {
        let p = circle3().with_sub(|s| s == [0]);
        let q = SimplicialPair::from_raw(&p.to_raw()).unwrap();
        assert_eq!(p, q);
    }
}
