//! Restriction of relative classes to admissible subpairs.
//!
//! For `(Y, B)` inside the complex of `(X, A)`, the open part `Y \ B` must be
//! a union of open simplices whose open stars in `X` stay inside `Y \ B` and
//! avoid `A`. Then `X \ (Y \ B)` is a subcomplex containing `A`, and the
//! composite `H(X, A) -> H(X, X \ (Y \ B)) <- H(Y, B)` is computed on chains by
//! keeping only the simplices of `Y \ B`.

use std::collections::HashSet;

use super::homology::HomologyClass;
use super::pair::{facets, Simplex, SimplicialPair};
use crate::error::{Error, Result};
use crate::gf2::BitVec;

/// Face-closed subcomplexes `B ⊆ Y` of an ambient pair's complex.
#[derive(Clone, Debug)]
pub struct Subpair {
    y: HashSet<Simplex>,
    b: HashSet<Simplex>,
}

fn close(p: &SimplicialPair, gens: &[Simplex], into: &mut HashSet<Simplex>) -> Result<()> {
    for g in gens {
        let mut g = g.clone();
        g.sort_unstable();
        if !p.contains(&g) {
            return Err(Error::SubNotContained(format!("{g:?}")));
        }
        let mut stack = vec![g];
        while let Some(s) = stack.pop() {
            if into.insert(s.clone()) {
                stack.extend(facets(&s));
            }
        }
    }
    Ok(())
}

impl Subpair {
    /// Closes both generator lists under faces; `B` is added to `Y`.
    pub fn new(p: &SimplicialPair, y: &[Simplex], b: &[Simplex]) -> Result<Self> {
        let mut ys = HashSet::new();
        let mut bs = HashSet::new();
        close(p, y, &mut ys)?;
        close(p, b, &mut bs)?;
        ys.extend(bs.iter().cloned());
        Ok(Self { y: ys, b: bs })
    }

    /// Selects `Y` and `B` with face-closed predicates on the ambient complex.
    pub fn from_predicates(
        p: &SimplicialPair,
        y: impl Fn(&[usize]) -> bool,
        b: impl Fn(&[usize]) -> bool,
    ) -> Self {
        let mut ys = HashSet::new();
        let mut bs = HashSet::new();
        for k in 0..p.count_dims() {
            for s in p.simplices(k) {
                if b(s) {
                    bs.insert(s.clone());
                    ys.insert(s.clone());
                } else if y(s) {
                    ys.insert(s.clone());
                }
            }
        }
        Self { y: ys, b: bs }
    }

    /// The whole pair `(X, A)` viewed as a subpair of itself.
    pub fn whole(p: &SimplicialPair) -> Self {
        Self::from_predicates(p, |_| true, |s| p.simplex_in_sub(s))
    }

    pub fn in_y(&self, s: &[usize]) -> bool {
        self.y.contains(s)
    }

    pub fn in_b(&self, s: &[usize]) -> bool {
        self.b.contains(s)
    }

    /// Open part `Y \ B`.
    pub fn in_open(&self, s: &[usize]) -> bool {
        self.y.contains(s) && !self.b.contains(s)
    }
}

/// Combinatorial admissibility certificate; returns the first violating
/// simplex in lexicographic order.
pub fn check_admissible(p: &SimplicialPair, target: &Subpair) -> Result<()> {
    let mut bad: Option<Simplex> = None;
    let mut note = |s: &Simplex| {
        if bad.as_ref().is_none_or(|b| (s.len(), s) < (b.len(), b)) {
            bad = Some(s.clone());
        }
    };
    for k in 0..p.count_dims() {
        for (i, s) in p.simplices(k).iter().enumerate() {
            let open = target.in_open(s);
            if open && p.in_sub(k, i) {
                note(s);
            }
            if !open {
                for f in facets(s) {
                    if target.in_open(&f) {
                        note(&f);
                    }
                }
            }
        }
    }
    match bad {
        Some(s) => Err(Error::NotAdmissible(s)),
        None => Ok(()),
    }
}

/// Result of restricting a class: the pair `(X ∩ Y, X ∩ B)` on compacted
/// vertex labels, the vertex inclusion back into `X`, and the class.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub pair: SimplicialPair,
    pub vertices: Vec<usize>,
    pub class: HomologyClass,
}

/// `α ↦ α|(Y, B)`.
pub fn restrict(p: &SimplicialPair, alpha: &HomologyClass, target: &Subpair) -> Result<Restriction> {
    check_admissible(p, target)?;
    let k = alpha.degree;
    let (pair, vertices) = p.induced_subcomplex(
        |d, i| target.in_y(&p.simplices(d)[i]),
        |s| target.in_b(s),
    );
    let mut new_of = vec![usize::MAX; p.n_vertices()];
    for (j, &v) in vertices.iter().enumerate() {
        new_of[v] = j;
    }
    let mut rep = BitVec::zeros(pair.rel_count(k));
    for r in alpha.rep.ones() {
        let s = p.rel_simplex_verts(k, r);
        if target.in_open(s) {
            let t: Simplex = s.iter().map(|&v| new_of[v]).collect();
            let j = pair
                .rel_index_of(&t)
                .expect("open simplices of Y are relative simplices of (Y, B)");
            rep.flip(j);
        }
    }
    Ok(Restriction {
        pair,
        vertices,
        class: HomologyClass::new(k, rep),
    })
}
