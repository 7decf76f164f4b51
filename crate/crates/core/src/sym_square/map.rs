//! `f^s`: the map of symmetric squares induced by a simplicial map.

use super::space::SymSquarePair;
use crate::error::{Error, Result};
use crate::z2_chain::{Simplex, SimplicialMap, SimplicialPair};

/// Vertex assignment between the quotients of two symmetric-square models.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMap {
    vertices: Vec<usize>,
}

impl SymMap {
    pub fn vertex_map(&self) -> &[usize] {
        &self.vertices
    }

    /// The map between two pairs built on the source and target quotients,
    /// for example the quotients relative to `sub ∪ U`.
    pub fn on<'a>(&self, source: &'a SimplicialPair, target: &'a SimplicialPair) -> Result<SimplicialMap<'a>> {
        SimplicialMap::new(source, target, self.vertices.clone())
    }
}

/// Quotient of `f × f`. The product triangulations use the vertex orders of
/// the bases, so `f` has to be weakly monotone on simplices; after one
/// barycentric subdivision every map is.
pub fn induced_sym_map(f: &SimplicialMap<'_>, src: &SymSquarePair, tgt: &SymSquarePair) -> Result<SymMap> {
    if !same_complex(f.source(), src.base()) || !same_complex(f.target(), tgt.base()) {
        return Err(Error::InvalidMap("models are not built on the map's source and target".into()));
    }
    f.check_monotone()?;
    let (n, m) = (src.base().n_vertices(), tgt.base().n_vertices());
    let fv = f.vertex_map();
    let vertices = (0..src.quotient.n_vertices())
        .map(|q| {
            let mut img: Simplex = src
                .orbit_rep(q)
                .iter()
                .map(|&w| fv[w / n] * m + fv[w % n])
                .collect();
            img.sort_unstable();
            img.dedup();
            tgt.orbit_of(&img)
                .ok_or_else(|| Error::InvalidMap(format!("product simplex {img:?} missing from target")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SymMap { vertices })
}

fn same_complex(a: &SimplicialPair, b: &SimplicialPair) -> bool {
    a == b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sym_square::sym_square_space;

    #[test]
    fn identity_and_swap() {
        let x = SimplicialPair::new(2, &[], &[]).unwrap();
        let sq = sym_square_space(&x);
        let id = induced_sym_map(&SimplicialMap::identity(&x), &sq, &sq).unwrap();
        assert_eq!(id.vertex_map(), &[0, 1, 2]);
        let swap = SimplicialMap::new(&x, &x, vec![1, 0]).unwrap();
        let s = induced_sym_map(&swap, &sq, &sq).unwrap();
        let ab = sq.orbit_of(&[1]).unwrap();
        assert_eq!(s.vertex_map()[ab], ab);
        // aa and bb trade places, so the quotient map is a permutation.
        let mut v = s.vertex_map().to_vec();
        v.sort_unstable();
        assert_eq!(v, vec![0, 1, 2]);
    }

    #[test]
    fn collapse_sends_ab_to_the_diagonal() {
        let x = SimplicialPair::new(2, &[], &[]).unwrap();
        let pt = SimplicialPair::new(1, &[], &[]).unwrap();
        let (sx, sp) = (sym_square_space(&x), sym_square_space(&pt));
        let f = SimplicialMap::new(&x, &pt, vec![0, 0]).unwrap();
        let fs = induced_sym_map(&f, &sx, &sp).unwrap();
        let ab = sx.orbit_of(&[1]).unwrap();
        assert!(sp.in_diag(&[fs.vertex_map()[ab]]));
    }

    #[test]
    fn maps_of_quotients_are_simplicial() {
        let c = SimplicialPair::new(4, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]], &[]).unwrap();
        let t = SimplicialPair::new(3, &[vec![0, 1], vec![1, 2], vec![0, 2]], &[]).unwrap();
        let f = SimplicialMap::new(&c, &t, vec![0, 1, 2, 2]).unwrap();
        let (sc, st) = (sym_square_space(&c), sym_square_space(&t));
        let fs = induced_sym_map(&f, &sc, &st).unwrap();
        assert!(fs.on(&sc.quotient, &st.quotient).is_ok());
    }

    #[test]
    fn non_monotone_maps_are_rejected() {
        let e = SimplicialPair::new(2, &[vec![0, 1]], &[]).unwrap();
        let flip = SimplicialMap::new(&e, &e, vec![1, 0]).unwrap();
        let s = sym_square_space(&e);
        assert!(matches!(induced_sym_map(&flip, &s, &s), Err(Error::NonMonotoneMap(_))));
    }
}
