//! Borsuk-Ulam solution sets of sampled families and their spanning
//! certificate.

#[cfg(feature = "n2")]
mod cube;
mod family;
mod model;
mod solve;
mod span;
mod svg;

pub use family::{antipodal_difference, BoxEntry, EBox, FamilyFile, SampledFamily, Values};
pub use model::{SphereGrid, SphereModel, WComplex, WModel};
pub use solve::{cell_predicate, solve_bu, solve_bu_with, FlaggedCell, SolutionSet};
pub use span::{footprint, spanning_check, Footprint, Hypothesis, Resolution, SpanningReport, Status};
pub use svg::solution_svg;
