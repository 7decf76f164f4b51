//! Mod-2 computational topology on finite simplicial models.
//!
//! * [`z2_chain`]: simplicial pairs, relative homology, induced maps,
//!   fundamental classes, H-essentiality and restriction.
//! * [`sym_square`]: simplicial models of the symmetric square `(X, A)^s`
//!   and the chain-level squaring `α ↦ α^s`.
//! * [`bu_family`]: Borsuk-Ulam solution sets of sampled families and the
//!   spanning certificate.
//! * [`spherical`]: ray-cast spherical correspondences for planar regions
//!   and matching-endpoint chords.
//! * [`corr_lab`]: finite correspondences over probability simplices,
//!   convexification, saturation and the two Γ constructions.

pub mod bu_family;
pub mod corr_lab;
pub mod error;
pub mod gf2;
pub mod par;
pub mod spherical;
pub mod sym_square;
pub mod z2_chain;

pub use error::{Error, Result};
