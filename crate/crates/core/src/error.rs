use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // groups
    #[error("group closure exceeded the order bound {bound}")]
    OrderBoundExceeded { bound: usize },
    #[error("permutation of degree {found} where degree {expected} was expected")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("the supplied map is not a group action: {0}")]
    NotAnAction(String),
    #[error("map is not surjective: {0}")]
    NotSurjective(String),
    #[error("generator images do not define a homomorphism: {0}")]
    NotAHomomorphism(String),

    // lattice
    #[error("degree {degree} outside the supported range {min}..={max}")]
    DegreeOutOfRange { degree: i64, min: i64, max: i64 },
    #[error("permutation of exceptional classes does not preserve intersections: {0}")]
    NotIntersectionPreserving(String),
    #[error("line permutation does not extend to a lattice isometry: {0}")]
    NotExtendable(String),
    #[error("blowing up {length} points drops the degree {degree} below 1")]
    DegreeUnderflow { degree: i64, length: usize },
    #[error("invalid lattice automorphism: {0}")]
    InvalidIsometry(String),

    // obstruction
    #[error("tag {0} is not a finite subgroup of the projective linear group of the line")]
    NotAProjectiveSubgroupTag(String),
    #[error("invalid central extension: {0}")]
    InvalidExtension(String),

    // geometry
    #[error("conductor {0} is not supported (supported: 1..=60)")]
    UnsupportedConductor(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("a fixed locus meets the surface in a curve: {0}")]
    PositiveDimensionalComponent(String),
    #[error("line enumeration produced {0} lines instead of 16")]
    LineEnumerationFailure(usize),
    #[error("group meets the torus nontrivially")]
    NotTorusFree,
    #[error("unsupported computation: {0}")]
    Unsupported(String),

    // links
    #[error("orbit oracle has no entry for node {0}")]
    MissingOracleEntry(String),

    // classifier / io
    #[error("malformed descriptor at `{field}`: {message}")]
    MalformedDescriptor { field: String, message: String },
}

impl Error {
    pub fn malformed(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::MalformedDescriptor {
            field: field.into(),
            message: message.into(),
        }
    }
}
