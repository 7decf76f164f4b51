//! Finite simplicial pairs and their mod-2 chain complexes: relative homology,
//! induced maps, fundamental classes, H-essentiality and restriction.

mod essential;
mod homology;
mod les;
mod map;
mod pair;
mod restrict;
mod subdivide;

pub use essential::{fundamental_class, is_h_essential, EssentialVerdict};
pub use homology::{
    betti_numbers, homologous, homology, homology_report, is_boundary, DegreeReport, Homology,
    HomologyClass,
};
pub use les::{long_exact_sequence, LesDegree, LesReport};
pub use map::{induced_map, induced_map_with, SimplicialMap};
pub use pair::{facets, RawComplex, Simplex, SimplicialPair};
pub use restrict::{check_admissible, restrict, Restriction, Subpair};
pub use subdivide::{subdivide_times, Subdivision};

/// Builds a canonical pair from the JSON interchange form.
pub fn build_pair(raw: &RawComplex) -> crate::Result<SimplicialPair> {
    SimplicialPair::from_raw(raw)
}

/// Matrix of the relative boundary operator in degree `k`.
pub fn boundary_matrix(p: &SimplicialPair, k: usize) -> crate::gf2::Z2Matrix {
    p.boundary_matrix(k)
}
