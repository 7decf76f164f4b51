//! Spherical correspondences of planar regions and chords with matching
//! endpoint values.

mod chords;
mod geometry;
mod scene;
mod svg;

pub use chords::{
    boundary_hypothesis, build_spherical, build_spherical_with, chord_solutions, chord_span_check,
    chord_span_check_with, ray_hits, ChordReport, ChordSolution, LoopCheck,
};
pub use geometry::{Boundary, Hit, PERTURB};
pub use scene::{ChordScene, GridSpec, SceneFile};
pub use svg::scene_svg;
