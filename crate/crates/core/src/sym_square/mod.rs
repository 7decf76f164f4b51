//! Simplicial models of the symmetric square and the squaring of classes.

mod map;
mod neighborhood;
mod product;
mod space;
mod square;

pub use map::{induced_sym_map, SymMap};
pub use neighborhood::{DiagonalNeighborhood, NeighborhoodRule};
pub use product::{product_triangulation, staircase_paths, ProductComplex};
pub use space::{sym_square_space, CarrierPair, SymSquareJson, SymSquarePair};
pub use square::{check_smallness, square_chain, square_on, sym_square_class, SquareOptions, SquaredClass};
