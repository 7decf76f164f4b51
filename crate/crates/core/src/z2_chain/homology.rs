//! Relative mod-2 homology with deterministic representatives.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::pair::SimplicialPair;
use crate::error::{Error, Result};
use crate::gf2::sparse::{self, Echelon, SparseVec};
use crate::gf2::BitVec;

/// A degree together with a relative cycle representing the class.
///
/// The chain is indexed by the relative simplices of the pair it was built on;
/// that pair is not stored, so callers keep the two together.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyClass {
    pub degree: usize,
    pub rep: BitVec,
}

impl HomologyClass {
    pub fn new(degree: usize, rep: BitVec) -> Self {
        Self { degree, rep }
    }

    pub fn zero(p: &SimplicialPair, degree: usize) -> Self {
        Self::new(degree, BitVec::zeros(p.rel_count(degree)))
    }
}

pub(crate) fn to_sparse(v: &BitVec) -> SparseVec {
    v.ones().map(|i| i as u32).collect()
}

pub(crate) fn to_dense(len: usize, v: &[u32]) -> BitVec {
    BitVec::from_indices(len, v.iter().map(|&i| i as usize))
}

/// `H_k(X, A)` with a chosen basis.
///
/// Kernel vectors of `∂_k` are generated by left-to-right column reduction in
/// lexicographic simplex order; the first ones independent modulo boundaries
/// become the representatives.
#[derive(Clone, Debug)]
pub struct Homology {
    degree: usize,
    chain_len: usize,
    reps: Vec<BitVec>,
    echelon: Echelon,
}

impl Homology {
    pub fn compute(p: &SimplicialPair, k: usize) -> Self {
        let chain_len = p.rel_count(k);
        let mut echelon = Echelon::new();
        for b in p.boundary_columns(k + 1) {
            let _ = echelon.insert(&b, &[]);
        }
        let cycles: Vec<SparseVec> = if k == 0 {
            (0..chain_len as u32).map(|i| vec![i]).collect()
        } else {
            sparse::kernel(&p.boundary_columns(k))
        };
        let mut reps = Vec::new();
        for z in cycles {
            let tag = [reps.len() as u32];
            if echelon.insert(&z, &tag).is_ok() {
                reps.push(to_dense(chain_len, &z));
            }
        }
        Self {
            degree: k,
            chain_len,
            reps,
            echelon,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.reps.len()
    }

    pub fn representatives(&self) -> &[BitVec] {
        &self.reps
    }

    pub fn chain_len(&self) -> usize {
        self.chain_len
    }

    /// Coordinates of the class of `cycle` in the representative basis.
    pub fn coordinates(&self, cycle: &BitVec) -> Result<BitVec> {
        assert_eq!(cycle.len(), self.chain_len, "chain has wrong length");
        let (res, tag) = self.echelon.reduce(&to_sparse(cycle), &[]);
        if !res.is_empty() {
            return Err(Error::NotACycle(self.degree));
        }
        Ok(to_dense(self.rank(), &tag))
    }

    /// True when the relative cycle is zero in homology.
    pub fn is_zero_class(&self, cycle: &BitVec) -> Result<bool> {
        Ok(self.coordinates(cycle)?.is_zero())
    }

    pub fn class(&self, coords: &BitVec) -> HomologyClass {
        let mut rep = BitVec::zeros(self.chain_len);
        for i in coords.ones() {
            rep.xor_assign(&self.reps[i]);
        }
        HomologyClass::new(self.degree, rep)
    }
}

pub fn homology(p: &SimplicialPair, k: usize) -> Homology {
    Homology::compute(p, k)
}

/// Whether a relative chain is a relative boundary. Only builds the image of
/// `∂_{k+1}`, so it is cheaper than a full homology computation.
pub fn is_boundary(p: &SimplicialPair, k: usize, chain: &BitVec) -> bool {
    let mut echelon = Echelon::new();
    for b in p.boundary_columns(k + 1) {
        let _ = echelon.insert(&b, &[]);
    }
    echelon.contains(&to_sparse(chain))
}

/// Whether two relative cycles are homologous.
pub fn homologous(p: &SimplicialPair, k: usize, a: &BitVec, b: &BitVec) -> bool {
    let mut d = a.clone();
    d.xor_assign(b);
    is_boundary(p, k, &d)
}

pub fn betti_numbers(p: &SimplicialPair) -> Vec<usize> {
    if p.is_empty() {
        return Vec::new();
    }
    (0..=p.dim()).map(|k| homology(p, k).rank()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub rank: usize,
    /// Each representative as indices into the pair's list of `k`-simplices.
    pub representatives: Vec<Vec<usize>>,
}

/// `degree -> {rank, representatives}` for every degree of the pair.
pub fn homology_report(p: &SimplicialPair) -> BTreeMap<usize, DegreeReport> {
    let mut out = BTreeMap::new();
    if p.is_empty() {
        return out;
    }
    for k in 0..=p.dim() {
        let h = homology(p, k);
        let representatives = h
            .representatives()
            .iter()
            .map(|r| r.ones().map(|i| p.rel_simplex(k, i)).collect())
            .collect();
        out.insert(
            k,
            DegreeReport {
                rank: h.rank(),
                representatives,
            },
        );
    }
    out
}
