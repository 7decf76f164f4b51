//! Chain-level squaring `α ↦ α^s`.
//!
//! For a relative cycle `Σ σ_i` the square is `Σ_{i<j} p_*(σ_i × σ_j)` in
//! `(X, A)^s_U`. It is a relative cycle once every product `σ_i × σ_j` that
//! meets the diagonal lands in `U`.

use super::neighborhood::{DiagonalNeighborhood, NeighborhoodRule};
use super::space::SymSquarePair;
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::par::Exec;
use crate::z2_chain::{is_boundary, HomologyClass, Simplex, SimplicialPair, Subdivision};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SquareOptions {
    pub rule: NeighborhoodRule,
    /// Subdivisions applied before the first smallness check.
    pub refine: usize,
    /// Maximum number of subdivisions.
    pub cap: usize,
}

impl Default for SquareOptions {
    fn default() -> Self {
        Self {
            rule: NeighborhoodRule::CellularStar,
            refine: 1,
            cap: 5,
        }
    }
}

/// A squared class together with the model it lives on.
#[derive(Clone, Debug)]
pub struct SquaredClass {
    /// Number of barycentric subdivisions applied to the base.
    pub level: usize,
    pub space: SymSquarePair,
    pub neighborhood: DiagonalNeighborhood,
    /// The quotient relative to `sub ∪ U`.
    pub pair: SimplicialPair,
    pub class: HomologyClass,
    /// The (subdivided) representative of `α` that was squared.
    pub factors: Vec<Simplex>,
}

impl SquaredClass {
    pub fn is_zero(&self) -> bool {
        is_boundary(&self.pair, self.class.degree, &self.class.rep)
    }

    /// Quotient simplices of the squared cycle.
    pub fn simplices(&self) -> Vec<Simplex> {
        self.pair.chain_simplices(self.class.degree, &self.class.rep)
    }
}

fn meet(a: &[usize], b: &[usize]) -> bool {
    a.iter().any(|v| b.binary_search(v).is_ok())
}

/// Whether each product `σ_i × σ_j` (including `i = j`) that meets the
/// diagonal maps into `U`.
pub fn check_smallness(sq: &SymSquarePair, chain: &[Simplex], u: &DiagonalNeighborhood) -> bool {
    let Some(k) = chain.first().map(|s| s.len() - 1) else {
        return true;
    };
    let top = sq.quotient.simplices(2 * k);
    Exec::default()
        .map_range(chain.len(), |i| {
            chain[i..].iter().all(|t| {
                !meet(&chain[i], t)
                    || sq.cell(&chain[i], t).iter().all(|&c| u.contains(&top[c]))
            })
        })
        .into_iter()
        .all(|ok| ok)
}

/// `Σ_{i<j} p_*(σ_i × σ_j)` as a relative chain of `pair`, which must be the
/// quotient with some enlarged subcomplex.
pub fn square_chain(sq: &SymSquarePair, pair: &SimplicialPair, k: usize, chain: &[Simplex]) -> BitVec {
    let mut out = BitVec::zeros(pair.rel_count(2 * k));
    for (i, s) in chain.iter().enumerate() {
        for t in &chain[i + 1..] {
            for &c in sq.cell(s, t) {
                if let Some(r) = pair.rel_index(2 * k, c) {
                    out.flip(r);
                }
            }
        }
    }
    out
}

fn canonical(chain: &[Simplex]) -> Vec<Simplex> {
    let mut v: Vec<Simplex> = chain
        .iter()
        .map(|s| {
            let mut s = s.clone();
            s.sort_unstable();
            s
        })
        .collect();
    v.sort();
    // Repeated simplices cancel mod 2.
    let mut out: Vec<Simplex> = Vec::with_capacity(v.len());
    for s in v {
        if out.last() == Some(&s) {
            out.pop();
        } else {
            out.push(s);
        }
    }
    out
}

/// Squares a `k`-chain of the base of `sq` into `(X, A)^s_U`. The chain must
/// be small and a relative cycle of the base.
pub fn square_on(
    sq: &SymSquarePair,
    u: &DiagonalNeighborhood,
    k: usize,
    chain: &[Simplex],
) -> Result<(SimplicialPair, HomologyClass)> {
    let chain = canonical(chain);
    if chain.iter().any(|s| s.len() != k + 1 || !sq.base().contains(s)) {
        return Err(Error::InvalidMap(format!("chain is not a list of {k}-simplices of the base")));
    }
    if !check_smallness(sq, &chain, u) {
        return Err(Error::NotSmall);
    }
    let pair = u.relative_pair(sq);
    let c = square_chain(sq, &pair, k, &chain);
    if !pair.is_relative_cycle(2 * k, &c) {
        return Err(Error::NotACycle(2 * k));
    }
    Ok((pair, HomologyClass::new(2 * k, c)))
}

/// `α^s`, subdividing the representative until it is small.
pub fn sym_square_class(p: &SimplicialPair, alpha: &HomologyClass, opts: SquareOptions) -> Result<SquaredClass> {
    let k = alpha.degree;
    if !p.is_relative_cycle(k, &alpha.rep) {
        return Err(Error::NotACycle(k));
    }
    let mut base = p.clone();
    let mut chain = alpha.rep.clone();
    let mut level = 0;
    loop {
        if level >= opts.refine {
            let sq = SymSquarePair::new(&base);
            let u = DiagonalNeighborhood::build(&sq, opts.rule);
            let factors = base.chain_simplices(k, &chain);
            if check_smallness(&sq, &factors, &u) {
                let (pair, class) = square_on(&sq, &u, k, &factors)?;
                return Ok(SquaredClass {
                    level,
                    space: sq,
                    neighborhood: u,
                    pair,
                    class,
                    factors,
                });
            }
            if level >= opts.cap {
                return Err(Error::SubdivisionCap(opts.cap));
            }
        }
        let sd = Subdivision::new(&base);
        chain = sd.subdivide_chain(&base, k, &chain);
        base = sd.pair;
        level += 1;
    }
}
