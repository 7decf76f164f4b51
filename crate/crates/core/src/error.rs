use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate simplex {0:?}")]
    DuplicateSimplex(Vec<usize>),
    #[error("vertex {vertex} out of range (complex has {count} vertices)")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("simplex {0:?} repeats a vertex")]
    RepeatedVertex(Vec<usize>),
    #[error("empty simplex in input")]
    EmptySimplex,
    #[error("subcomplex entry {0} is not a simplex of the complex")]
    SubNotContained(String),
    #[error("invalid simplicial map: {0}")]
    InvalidMap(String),
    #[error("manifold condition fails at {simplex:?}: {cofaces} top-dimensional cofaces")]
    NotManifold { simplex: Vec<usize>, cofaces: usize },
    #[error("target pair is not admissible: simplex {0:?} violates openness")]
    NotAdmissible(Vec<usize>),
    #[error("chain is not a relative cycle in degree {0}")]
    NotACycle(usize),
    #[error("representative not small after {0} barycentric subdivisions")]
    SubdivisionCap(usize),
    #[error("representative is not small for the chosen neighborhood of the diagonal")]
    NotSmall,
    #[error("map is not weakly monotone on simplex {0:?}")]
    NonMonotoneMap(Vec<usize>),
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("invalid scene: {0}")]
    InvalidScene(String),
    #[error("point ({0}, {1}) is not an interior point of the region")]
    NotInterior(f64, f64),
    #[error("invalid correspondence: {0}")]
    InvalidCorrespondence(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
