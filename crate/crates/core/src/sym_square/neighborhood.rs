//! Neighborhoods of the diagonal inside the quotient.

use std::collections::HashSet;

use super::space::SymSquarePair;
use crate::error::{Error, Result};
use crate::z2_chain::{facets, Simplex, SimplicialPair};

/// How to choose `U` at each subdivision level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NeighborhoodRule {
    /// Images of `σ×ρ` with `σ` and `ρ` in the closed star of a common vertex.
    #[default]
    CellularStar,
    /// `r` iterated closed stars of the diagonal.
    Rings(usize),
    /// The diagonal alone.
    DiagOnly,
    /// The whole quotient.
    Whole,
}

/// A face-closed set of quotient simplices containing the diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalNeighborhood {
    members: HashSet<Simplex>,
}

fn close(set: &mut HashSet<Simplex>) {
    let mut stack: Vec<Simplex> = set.iter().cloned().collect();
    while let Some(s) = stack.pop() {
        if s.len() > 1 {
            for f in facets(&s) {
                if set.insert(f.clone()) {
                    stack.push(f);
                }
            }
        }
    }
}

fn all_simplices(q: &SimplicialPair) -> impl Iterator<Item = &Simplex> {
    (0..q.count_dims()).flat_map(move |k| q.simplices(k).iter())
}

impl DiagonalNeighborhood {
    pub fn build(sq: &SymSquarePair, rule: NeighborhoodRule) -> Self {
        match rule {
            NeighborhoodRule::CellularStar => Self::cellular_star(sq),
            NeighborhoodRule::Rings(r) => Self::rings(sq, r),
            NeighborhoodRule::DiagOnly => Self::diag_only(sq),
            NeighborhoodRule::Whole => Self::whole(sq),
        }
    }

    pub fn diag_only(sq: &SymSquarePair) -> Self {
        Self { members: sq.diag() }
    }

    pub fn whole(sq: &SymSquarePair) -> Self {
        Self {
            members: all_simplices(&sq.quotient).cloned().collect(),
        }
    }

    pub fn cellular_star(sq: &SymSquarePair) -> Self {
        let base = sq.base();
        let near = |a: &Simplex, b: &Simplex| {
            a.iter().chain(b).any(|&w| {
                let mut x = a.clone();
                let mut y = b.clone();
                x.push(w);
                y.push(w);
                x.sort_unstable();
                x.dedup();
                y.sort_unstable();
                y.dedup();
                base.contains(&x) && base.contains(&y)
            })
        };
        let members = all_simplices(&sq.quotient)
            .filter(|t| {
                let (a, b) = sq.carrier(t);
                near(&a, &b)
            })
            .cloned()
            .collect();
        Self { members }
    }

    pub fn rings(sq: &SymSquarePair, r: usize) -> Self {
        let mut members = sq.diag();
        for _ in 0..r {
            let verts: HashSet<usize> = members.iter().filter(|s| s.len() == 1).map(|s| s[0]).collect();
            let mut next: HashSet<Simplex> = all_simplices(&sq.quotient)
                .filter(|t| t.iter().any(|v| verts.contains(v)))
                .cloned()
                .collect();
            close(&mut next);
            members = next;
        }
        Self { members }
    }

    /// Face closure of the given quotient simplices together with the diagonal.
    pub fn from_simplices(sq: &SymSquarePair, simplices: &[Simplex]) -> Result<Self> {
        let mut members = sq.diag();
        for s in simplices {
            let mut s = s.clone();
            s.sort_unstable();
            if !sq.quotient.contains(&s) {
                return Err(Error::InvalidMap(format!("{s:?} is not a quotient simplex")));
            }
            members.insert(s);
        }
        close(&mut members);
        Ok(Self { members })
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.members.contains(s)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.members.is_subset(&other.members)
    }

    /// `(X, A)^s_U`: the quotient relative to `sub ∪ U`.
    pub fn relative_pair(&self, sq: &SymSquarePair) -> SimplicialPair {
        let q = &sq.quotient;
        q.with_sub(|s| q.simplex_in_sub(s) || self.members.contains(s))
    }
}
