use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cells {0} and {1} have no unique maximal common face")]
    IntersectionPropertyViolation(String, String),
    #[error("cell {cell}: facet {facet} has the wrong dimension")]
    NonGraded { cell: String, facet: String },
    #[error("poset is not graded")]
    NonGradedPoset,
    #[error("boundary of cell {0} does not have the homology of a sphere")]
    BoundaryNotSphere(String),
    #[error("malformed complex description: {0}")]
    MalformedSpec(String),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("at most {max} vertices are supported, got {got}")]
    TooManyVertices { got: usize, max: usize },
    #[error("skeleton dimension {0} is below -1")]
    InvalidSkeleton(i32),
    #[error("codimension {r} is out of range for a complex of dimension {dim}")]
    CodimensionOutOfRange { r: i32, dim: i32 },
    #[error("element {0} is not in the poset")]
    UnknownElement(usize),
    #[error("elements {0} and {1} do not satisfy x < y")]
    NotStrictlyBelow(usize, usize),
    #[error("morphism does not commute with multiplication at degree {0:b}")]
    NonCommutingMorphism(u32),
    #[error("differential does not square to zero at level {0}")]
    NotAComplex(i32),
    #[error("complex is not Gorenstein*")]
    NotGorensteinStar,
    #[error("complex is not Cohen-Macaulay")]
    NotCohenMacaulay,
    #[error("complex is not simplicial")]
    NonSimplicial,
    #[error("corners {0} and {1} are not opposite in the hexagon")]
    NotOpposite(String, String),
    #[error("unknown builtin complex {0:?}")]
    UnknownBuiltin(String),
}
