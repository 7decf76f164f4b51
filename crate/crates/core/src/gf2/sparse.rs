//! Sparse column elimination over GF(2).
//!
//! Columns are sorted index lists. An [`Echelon`] keeps reduced columns keyed
//! by their highest index, each carrying a tag that records which original
//! generators it is a combination of. Boundary matrices of geometric complexes
//! stay sparse under this reduction, which is what makes the large
//! footprint checks tractable.

use std::collections::HashMap;

/// Sorted, duplicate-free list of row indices with a one.
pub type SparseVec = Vec<u32>;

/// Symmetric difference of two sorted lists.
pub fn xor_sorted(a: &[u32], b: &[u32]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Normalizes an arbitrary index list into a GF(2) sparse vector
/// (sorted, with pairs of repeated indices cancelled).
pub fn normalize(mut v: Vec<u32>) -> SparseVec {
    v.sort_unstable();
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for x in v {
        if out.last() == Some(&x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

#[derive(Clone, Debug)]
struct Entry {
    vec: SparseVec,
    tag: SparseVec,
}

/// Incrementally built echelon basis with provenance tags.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    by_pivot: HashMap<u32, usize>,
    entries: Vec<Entry>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// Reduces `vec` as far as possible; returns the residual and the
    /// accumulated tag of the entries that were added to it.
    pub fn reduce(&self, vec: &[u32], tag: &[u32]) -> (SparseVec, SparseVec) {
        let mut v = vec.to_vec();
        let mut t = tag.to_vec();
        while let Some(&p) = v.last() {
            let Some(&k) = self.by_pivot.get(&p) else { break };
            let e = &self.entries[k];
            v = xor_sorted(&v, &e.vec);
            if !e.tag.is_empty() {
                t = xor_sorted(&t, &e.tag);
            }
        }
        (v, t)
    }

    /// Reduces and inserts. Returns `Err(tag)` when the vector reduced to zero,
    /// in which case `tag` is a relation among the tagged generators.
    pub fn insert(&mut self, vec: &[u32], tag: &[u32]) -> Result<(), SparseVec> {
        let (v, t) = self.reduce(vec, tag);
        match v.last() {
            None => Err(t),
            Some(&p) => {
                self.by_pivot.insert(p, self.entries.len());
                self.entries.push(Entry { vec: v, tag: t });
                Ok(())
            }
        }
    }

    pub fn contains(&self, vec: &[u32]) -> bool {
        self.reduce(vec, &[]).0.is_empty()
    }
}

/// Kernel of the linear map whose columns are given, as combinations of
/// column indices. Columns are processed left to right, so the result is
/// deterministic.
pub fn kernel(columns: &[SparseVec]) -> Vec<SparseVec> {
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for (j, c) in columns.iter().enumerate() {
        if let Err(rel) = ech.insert(c, &[j as u32]) {
            out.push(rel);
        }
    }
    out
}

pub fn rank(columns: &[SparseVec]) -> usize {
    let mut ech = Echelon::new();
    for c in columns {
        let _ = ech.insert(c, &[]);
    }
    ech.rank()
}

/// Solves `A x = b` for `A` given by columns. Returns the support of some
/// solution, or `None` when `b` is outside the column space.
pub fn solve(columns: &[SparseVec], b: &[u32]) -> Option<SparseVec> {
    let mut ech = Echelon::new();
    for (j, c) in columns.iter().enumerate() {
        let _ = ech.insert(c, &[j as u32]);
    }
    let (res, tag) = ech.reduce(b, &[]);
    res.is_empty().then_some(tag)
}
