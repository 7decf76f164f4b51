//! Simplicial maps of pairs and the maps they induce on chains and homology.

use super::homology::{homology, Homology};
use super::pair::{Simplex, SimplicialPair};
use crate::error::{Error, Result};
use crate::gf2::{BitVec, Z2Matrix};

/// A vertex assignment that carries simplices to simplices and the source
/// subcomplex into the target subcomplex.
#[derive(Clone, Debug)]
pub struct SimplicialMap<'a> {
    source: &'a SimplicialPair,
    target: &'a SimplicialPair,
    vertices: Vec<usize>,
}

impl<'a> SimplicialMap<'a> {
    pub fn new(
        source: &'a SimplicialPair,
        target: &'a SimplicialPair,
        vertices: Vec<usize>,
    ) -> Result<Self> {
        let f = Self::new_unchecked(source, target, vertices)?;
        for k in 0..source.count_dims() {
            for (i, s) in source.simplices(k).iter().enumerate() {
                let t = f.image(s);
                let Some(j) = target.index_of(&t) else {
                    return Err(Error::InvalidMap(format!("{s:?} maps to non-simplex {t:?}")));
                };
                if source.in_sub(k, i) && !target.in_sub(t.len() - 1, j) {
                    return Err(Error::InvalidMap(format!(
                        "sub simplex {s:?} maps outside the target sub"
                    )));
                }
            }
        }
        Ok(f)
    }

    fn new_unchecked(
        source: &'a SimplicialPair,
        target: &'a SimplicialPair,
        vertices: Vec<usize>,
    ) -> Result<Self> {
        if vertices.len() != source.n_vertices() {
            return Err(Error::InvalidMap(format!(
                "vertex assignment has {} entries, source has {} vertices",
                vertices.len(),
                source.n_vertices()
            )));
        }
        if let Some(&v) = vertices.iter().find(|&&v| v >= target.n_vertices()) {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                count: target.n_vertices(),
            });
        }
        Ok(Self {
            source,
            target,
            vertices,
        })
    }

    pub fn identity(p: &'a SimplicialPair) -> Self {
        Self {
            source: p,
            target: p,
            vertices: (0..p.n_vertices()).collect(),
        }
    }

    pub fn source(&self) -> &'a SimplicialPair {
        self.source
    }

    pub fn target(&self) -> &'a SimplicialPair {
        self.target
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertices
    }

    /// Image vertex set of a simplex, sorted and deduplicated.
    pub fn image(&self, s: &[usize]) -> Simplex {
        let mut t: Simplex = s.iter().map(|&v| self.vertices[v]).collect();
        t.sort_unstable();
        t.dedup();
        t
    }

    /// Pushforward of a relative `k`-chain. Degenerate images and images
    /// inside the target subcomplex vanish.
    pub fn push_chain(&self, k: usize, chain: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.target.rel_count(k));
        for r in chain.ones() {
            let t = self.image(self.source.rel_simplex_verts(k, r));
            if t.len() == k + 1 {
                if let Some(j) = self.target.rel_index_of(&t) {
                    out.flip(j);
                }
            }
        }
        out
    }

    /// `g ∘ self`.
    pub fn then<'b>(&self, g: &SimplicialMap<'b>) -> Result<SimplicialMap<'b>>
    where
        'a: 'b,
    {
        if !std::ptr::eq(self.target, g.source) && self.target != g.source {
            return Err(Error::InvalidMap("maps are not composable".into()));
        }
        Ok(SimplicialMap {
            source: self.source,
            target: g.target,
            vertices: self.vertices.iter().map(|&v| g.vertices[v]).collect(),
        })
    }

    /// Checks that the vertex assignment is weakly increasing on every
    /// simplex of the source.
    pub fn check_monotone(&self) -> Result<()> {
        for k in 1..self.source.count_dims() {
            for s in self.source.simplices(k) {
                if s.windows(2).any(|w| self.vertices[w[0]] > self.vertices[w[1]]) {
                    return Err(Error::NonMonotoneMap(s.clone()));
                }
            }
        }
        Ok(())
    }

    /// Whether the source subcomplex is exactly the preimage of the target one.
    pub fn sub_is_preimage(&self) -> bool {
        (0..self.source.count_dims()).all(|k| {
            self.source.simplices(k).iter().enumerate().all(|(i, s)| {
                self.source.in_sub(k, i) == self.target.simplex_in_sub(&self.image(s))
            })
        })
    }
}

impl SimplicialPair {
    /// Number of populated dimensions (`dim + 1`, or 0 when empty).
    pub fn count_dims(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            self.dim() + 1
        }
    }
}

/// Matrix of `f_*` in the given bases: column `j` holds the target
/// coordinates of the image of source representative `j`.
pub fn induced_map_with(f: &SimplicialMap<'_>, src: &Homology, tgt: &Homology) -> Z2Matrix {
    let k = src.degree();
    if tgt.degree() != k {
        return Z2Matrix::zeros(0, 0);
    }
    let cols: Vec<BitVec> = src
        .representatives()
        .iter()
        .map(|r| {
            tgt.coordinates(&f.push_chain(k, r))
                .expect("chain maps send relative cycles to relative cycles")
        })
        .collect();
    Z2Matrix::from_columns(tgt.rank(), &cols)
}

/// `f_*: H_k(source) -> H_k(target)` in the deterministic homology bases.
pub fn induced_map(f: &SimplicialMap<'_>, k: usize) -> Z2Matrix {
    let src = homology(f.source(), k);
    let tgt = homology(f.target(), k);
    induced_map_with(f, &src, &tgt)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> SimplicialPair {
        let edges: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
        SimplicialPair::new(n, &edges, &[]).unwrap()
    }

    #[test]
    fn identity_is_identity_on_circle() {
        let c = cycle(3);
        assert_eq!(induced_map(&SimplicialMap::identity(&c), 1), Z2Matrix::identity(1));
    }

    #[test]
    fn wrapping_twice_is_zero() {
        let c6 = cycle(6);
        let c3 = cycle(3);
        let f = SimplicialMap::new(&c6, &c3, (0..6).map(|i| i % 3).collect()).unwrap();
        let m = induced_map(&f, 1);
        assert_eq!((m.rows(), m.cols()), (1, 1));
        assert!(m.is_zero());
    }

    #[test]
    fn edge_collapse_is_iso() {
        let c4 = cycle(4);
        let c3 = cycle(3);
        let f = SimplicialMap::new(&c4, &c3, vec![0, 1, 2, 2]).unwrap();
        assert!(induced_map(&f, 1).is_invertible());
        assert!(induced_map(&f, 0).is_invertible());
    }

    #[test]
    fn rejects_non_simplicial_assignment() {
        let p = SimplicialPair::new(3, &[vec![0, 1]], &[]).unwrap();
        let q = SimplicialPair::new(3, &[vec![0, 1]], &[]).unwrap();
        assert!(SimplicialMap::new(&p, &q, vec![0, 2, 1]).is_err());
        assert!(SimplicialMap::new(&p, &q, vec![0, 1]).is_err());
    }

    #[test]
    fn rejects_sub_escaping() {
        let p = SimplicialPair::new(2, &[vec![0, 1]], &[vec![0]]).unwrap();
        let q = SimplicialPair::new(2, &[vec![0, 1]], &[vec![0]]).unwrap();
        assert!(SimplicialMap::new(&p, &q, vec![1, 0]).is_err());
        assert!(SimplicialMap::new(&p, &q, vec![0, 1]).is_ok());
    }
}
