//! Fundamental classes and H-essentiality of maps onto manifold pairs.

use std::collections::HashMap;

use serde::Serialize;

use super::homology::{homology, to_dense, HomologyClass};
use super::map::SimplicialMap;
use super::pair::{facets, SimplicialPair};
use crate::error::{Error, Result};
use crate::gf2::sparse::{self, Echelon, SparseVec};
use crate::gf2::BitVec;

/// Sum of all top simplices outside the subcomplex, after checking that every
/// relative codimension-one simplex has exactly two top cofaces.
pub fn fundamental_class(p: &SimplicialPair) -> Result<HomologyClass> {
    let m = p.dim();
    if m > 0 {
        let mut cofaces: HashMap<usize, usize> = HashMap::new();
        for s in p.simplices(m) {
            for f in facets(s) {
                if let Some(r) = p.rel_index_of(&f) {
                    *cofaces.entry(r).or_default() += 1;
                }
            }
        }
        for r in 0..p.rel_count(m - 1) {
            let n = cofaces.get(&r).copied().unwrap_or(0);
            if n != 2 {
                return Err(Error::NotManifold {
                    simplex: p.rel_simplex_verts(m - 1, r).clone(),
                    cofaces: n,
                });
            }
        }
    }
    let n = p.rel_count(m);
    let rep = BitVec::from_indices(n, 0..n);
    debug_assert!(p.is_relative_cycle(m, &rep));
    Ok(HomologyClass::new(m, rep))
}

/// Outcome of an H-essentiality test.
#[derive(Clone, Debug, Serialize)]
pub struct EssentialVerdict {
    pub essential: bool,
    pub degree: usize,
    pub target_rank: usize,
    pub image_rank: usize,
    /// A source class mapping onto the target's fundamental class, when the
    /// target has one and it is hit.
    #[serde(skip)]
    pub witness: Option<HomologyClass>,
    /// A target basis class outside the image, when the map is not essential.
    #[serde(skip)]
    pub missed: Option<HomologyClass>,
    pub warnings: Vec<String>,
}

/// Linear system for "find a relative `d`-cycle of the source whose image is
/// homologous to a given target cycle".
struct LiftSystem {
    echelon: Echelon,
    rank_all: usize,
    x_rows: usize,
}

impl LiftSystem {
    fn new(f: &SimplicialMap<'_>, d: usize) -> Self {
        let (x, w) = (f.source(), f.target());
        let x_rows = if d == 0 { 0 } else { x.rel_count(d - 1) };
        let mut echelon = Echelon::new();
        for r in 0..x.rel_count(d) {
            let mut col: SparseVec = x.rel_boundary_of(d, r);
            let img = f.image(x.rel_simplex_verts(d, r));
            if img.len() == d + 1 {
                if let Some(j) = w.rel_index_of(&img) {
                    col.push((x_rows + j) as u32);
                }
            }
            let _ = echelon.insert(&col, &[r as u32]);
        }
        for r in 0..w.rel_count(d + 1) {
            let col: SparseVec = w
                .rel_boundary_of(d + 1, r)
                .into_iter()
                .map(|j| j + x_rows as u32)
                .collect();
            let _ = echelon.insert(&col, &[]);
        }
        let rank_all = echelon.rank();
        Self {
            echelon,
            rank_all,
            x_rows,
        }
    }

    fn lift(&self, target_cycle: &BitVec) -> Option<SparseVec> {
        let rhs: SparseVec = target_cycle
            .ones()
            .map(|j| (self.x_rows + j) as u32)
            .collect();
        let (res, tag) = self.echelon.reduce(&rhs, &[]);
        res.is_empty().then_some(tag)
    }
}

/// Decides whether `f_*: H_d(X, X_0) -> H_d(W, W_0)` is onto.
///
/// The source subcomplex should be the preimage of the target one, and `d`
/// should be the dimension of the target; deviations are reported as warnings.
pub fn is_h_essential(f: &SimplicialMap<'_>, d: usize) -> EssentialVerdict {
    let (x, w) = (f.source(), f.target());
    let mut warnings = Vec::new();
    if d != w.dim() {
        warnings.push(format!(
            "degree {d} differs from the target dimension {}",
            w.dim()
        ));
    }
    if !f.sub_is_preimage() {
        warnings.push("source subcomplex is not the preimage of the target subcomplex".into());
    }
    let target = homology(w, d);
    let system = LiftSystem::new(f, d);
    let rank_dx = sparse::rank(&x.boundary_columns(d));
    let rank_dw = sparse::rank(&w.boundary_columns(d + 1));
    let image_rank = system.rank_all - rank_dx - rank_dw;
    let essential = image_rank == target.rank();

    let to_class = |tag: SparseVec| HomologyClass::new(d, to_dense(x.rel_count(d), &tag));
    let missed = (!essential).then(|| {
        target
            .representatives()
            .iter()
            .find(|r| system.lift(r).is_none())
            .map(|r| HomologyClass::new(d, r.clone()))
    });
    let witness = if essential {
        fundamental_class(w)
            .ok()
            .filter(|c| !c.rep.is_zero())
            .and_then(|c| system.lift(&c.rep))
            .map(to_class)
    } else {
        None
    };
    EssentialVerdict {
        essential,
        degree: d,
        target_rank: target.rank(),
        image_rank,
        witness,
        missed: missed.flatten(),
        warnings,
    }
}
