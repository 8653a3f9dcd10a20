use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("generator columns are linearly dependent")]
    DependentColumns,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polytope has no vertices or dimension 0")]
    Empty,
    #[error("vertex {0} appears more than once")]
    DuplicateVertex(usize),
    #[error("vertex index {index} out of range in facet {facet}")]
    VertexOutOfRange { facet: usize, index: usize },
    #[error("facet {0} is not simplicial")]
    NonSimplicialFacet(usize),
    #[error("facet {0} has affinely dependent vertices")]
    DegenerateFacet(usize),
    #[error("origin is not an interior point (facet {0})")]
    OriginNotInterior(usize),
    #[error("vertices are not in convex position with respect to facet {0}")]
    NotConvexPosition(usize),
    #[error("facets do not close up: ridge {0:?} lies on {1} facet(s)")]
    FacetsNotClosed(Vec<usize>, usize),
    #[error("polytope is not a simplex")]
    NotASimplex,
    #[error("weights must be positive integers")]
    NonPositiveWeight,
    #[error("weights {0:?} are not reduced (common factor {1})")]
    NotReduced(Vec<u64>, u64),
    #[error("label {0} is not a sector label")]
    LabelNotFound(String),
    #[error("no inverse sector for box element {0:?}")]
    InverseNotFound(Vec<i64>),
    #[error("Jordan block ({value}, {size}) has no dual block")]
    UnpairedBlock { value: String, size: usize },
    #[error("integer overflow")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
