//! Finite-sample correspondence operators on a payoff grid: preimages,
//! convexification, saturation, the two Γ constructions over `Δ(K)`, and an
//! empirical spanning test. Verdicts concern sampled footprints only.

mod corr;
mod gamma;
mod lattice;
mod rational;

pub use corr::{convexify, FiniteCorrespondence, Hull, HullCorrespondence, Label, PayoffGrid};
pub use gamma::{
    gamma_close, gamma_close_with, gamma_far, gamma_far_with, induced, payoff_grid_points, Construction,
    Hypotheses, Instance, InstanceFile, LabelCheck, MAX_HULLS_PER_FIBER,
};
pub use lattice::{
    hull_lattice_points, lattice_spanning, property_s, spanning_empirical, spanning_empirical_with,
    EmpiricalStatus, LatticeVerdict, SimplexLattice, FOOTPRINT_CAP,
};
pub use rational::{in_hull, parse_q, q, QValue, Q};
