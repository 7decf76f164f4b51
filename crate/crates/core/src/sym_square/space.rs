//! The symmetric square `(X, A)^s = (X×X/τ, (Δ ∪ A×X ∪ X×A)/τ)` as a
//! simplicial pair.
//!
//! The staircase triangulation `T` of `X×X` (with the global vertex order of
//! `X`) is already invariant under the swap `τ`, and `τ` fixes exactly the
//! diagonal simplices. After one barycentric subdivision `T'` the action
//! fixes setwise-invariant simplices pointwise and no simplex of `T` holds
//! both `v` and `τv` for `v ≠ τv`, so `T'/τ` is a simplicial complex whose
//! vertices are the `τ`-orbits of simplices of `T`.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::product::{carrier_of, product_triangulation, ProductComplex};
use crate::z2_chain::{Simplex, SimplicialPair, Subdivision};

/// An unordered pair of simplices of `X`, stored with `.0 <= .1`.
pub type CarrierPair = (Simplex, Simplex);

fn unordered(a: Simplex, b: Simplex) -> CarrierPair {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Clone, Debug)]
pub struct SymSquarePair {
    base: SimplicialPair,
    product: ProductComplex,
    sd: Subdivision,
    /// The quotient, with sub the image of `Δ ∪ A×X ∪ X×A`.
    pub quotient: SimplicialPair,
    /// sd vertex (simplex of `T`) to quotient vertex.
    orbit_of: Vec<usize>,
    /// Quotient vertex to the first sd vertex of its orbit.
    orbit_rep: Vec<usize>,
    /// Top cells of each product cell, keyed by carrier pair.
    cells: HashMap<CarrierPair, Vec<usize>>,
}

/// JSON form: the complex schema plus, for every listed simplex, the pair
/// of base simplices carrying it.
#[derive(Serialize)]
pub struct SymSquareJson {
    pub vertices: usize,
    pub simplices: Vec<Vec<usize>>,
    pub sub: Vec<usize>,
    pub diag: Vec<usize>,
    pub proj: Vec<[Simplex; 2]>,
}

impl SymSquarePair {
    pub fn new(base: &SimplicialPair) -> Self {
        let product = product_triangulation(base, base);
        let sd = Subdivision::new(&product.pair);
        let n = base.n_vertices();
        let swap = |s: &Simplex| -> Simplex {
            let mut t: Simplex = s.iter().map(|&w| (w % n) * n + w / n).collect();
            t.sort_unstable();
            t
        };

        let nsd = sd.pair.n_vertices();
        let mut orbit_of = vec![usize::MAX; nsd];
        let mut orbit_rep = Vec::new();
        for v in 0..nsd {
            if orbit_of[v] != usize::MAX {
                continue;
            }
            let q = orbit_rep.len();
            orbit_rep.push(v);
            orbit_of[v] = q;
            let partner = sd.vertex_of(&swap(sd.barycenter(v))).expect("T is swap-invariant");
            orbit_of[partner] = q;
        }

        let mut all: HashSet<Simplex> = HashSet::new();
        for k in 0..sd.pair.count_dims() {
            for s in sd.pair.simplices(k) {
                let mut t: Simplex = s.iter().map(|&v| orbit_of[v]).collect();
                t.sort_unstable();
                t.dedup();
                debug_assert_eq!(t.len(), s.len(), "quotient collapses a simplex");
                all.insert(t);
            }
        }
        let top_of = |t: &Simplex| -> &Simplex {
            sd.barycenter(orbit_rep[*t.last().expect("nonempty")])
        };
        let sub: HashSet<Simplex> = all
            .iter()
            .filter(|t| {
                let (l, r) = carrier_of(top_of(t), n);
                is_diagonal(top_of(t), n) || base.simplex_in_sub(&l) || base.simplex_in_sub(&r)
            })
            .cloned()
            .collect();
        let quotient = SimplicialPair::from_closed_sets(orbit_rep.len(), all, &sub);

        let mut cells: HashMap<CarrierPair, Vec<usize>> = HashMap::new();
        for k in 0..quotient.count_dims() {
            for (i, t) in quotient.simplices(k).iter().enumerate() {
                let (l, r) = carrier_of(top_of(t), n);
                if l.len() + r.len() == k + 2 {
                    cells.entry(unordered(l, r)).or_default().push(i);
                }
            }
        }
        Self {
            base: base.clone(),
            product,
            sd,
            quotient,
            orbit_of,
            orbit_rep,
            cells,
        }
    }

    pub fn base(&self) -> &SimplicialPair {
        &self.base
    }

    pub fn product(&self) -> &ProductComplex {
        &self.product
    }

    pub fn subdivision(&self) -> &Subdivision {
        &self.sd
    }

    /// Quotient vertex of a simplex of `T`.
    pub fn orbit_of(&self, t_simplex: &[usize]) -> Option<usize> {
        self.sd.vertex_of(t_simplex).map(|v| self.orbit_of[v])
    }

    /// A representative simplex of `T` for a quotient vertex.
    pub fn orbit_rep(&self, q: usize) -> &Simplex {
        self.sd.barycenter(self.orbit_rep[q])
    }

    /// The largest simplex of `T` in the flag behind a quotient simplex.
    pub fn top_simplex(&self, q_simplex: &[usize]) -> &Simplex {
        self.orbit_rep(*q_simplex.iter().max().expect("nonempty simplex"))
    }

    /// The unordered pair of base simplices whose product carries the
    /// quotient simplex.
    pub fn carrier(&self, q_simplex: &[usize]) -> CarrierPair {
        let (l, r) = carrier_of(self.top_simplex(q_simplex), self.base.n_vertices());
        unordered(l, r)
    }

    /// Whether the quotient simplex lies in the image of the diagonal.
    pub fn in_diag(&self, q_simplex: &[usize]) -> bool {
        is_diagonal(self.top_simplex(q_simplex), self.base.n_vertices())
    }

    /// Indices (in dimension `dim σ + dim ρ`) of the quotient simplices
    /// filling the image of `σ×ρ`.
    pub fn cell(&self, sigma: &[usize], rho: &[usize]) -> &[usize] {
        self.cells
            .get(&unordered(sigma.to_vec(), rho.to_vec()))
            .map_or(&[], Vec::as_slice)
    }

    /// The diagonal image as a face-closed set of quotient simplices.
    pub fn diag(&self) -> HashSet<Simplex> {
        (0..self.quotient.count_dims())
            .flat_map(|k| self.quotient.simplices(k).iter())
            .filter(|t| self.in_diag(t))
            .cloned()
            .collect()
    }

    pub fn to_json(&self) -> SymSquareJson {
        let raw = self.quotient.to_raw();
        let diag = raw
            .simplices
            .iter()
            .enumerate()
            .filter(|(_, t)| self.in_diag(t))
            .map(|(i, _)| i)
            .collect();
        let proj = raw
            .simplices
            .iter()
            .map(|t| {
                let (l, r) = self.carrier(t);
                [l, r]
            })
            .collect();
        SymSquareJson {
            vertices: raw.vertices,
            simplices: raw.simplices,
            sub: raw.sub,
            diag,
            proj,
        }
    }
}

fn is_diagonal(t_simplex: &[usize], n: usize) -> bool {
    t_simplex.iter().all(|&w| w / n == w % n)
}

/// Builds the symmetric-square model of a pair.
pub fn sym_square_space(p: &SimplicialPair) -> SymSquarePair {
    SymSquarePair::new(p)
}
