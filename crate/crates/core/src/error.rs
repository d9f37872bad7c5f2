use thiserror::Error;

/// Errors raised by the combinatorial side of the crate: spaces, lattices,
/// classification, morphisms and measures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("element `{0}` cannot be orthogonal to itself")]
    SelfLoop(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("an orthogonality space needs at least one element")]
    EmptySpace,
    #[error("element index {index} out of range for a space of {len} elements")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("subset is not an orthogonal set")]
    NotOrthogonalSet,
    #[error("subset is not orthoclosed")]
    NotOrthoclosed,
    #[error("subset is empty")]
    EmptySubset,
    #[error("subset belongs to a different space")]
    ForeignSubset,
    #[error("lattice has more than {cap} elements")]
    SizeLimit { cap: usize },
    #[error("element set is not closed under meet, join and orthocomplement")]
    NotSubalgebra,
    #[error("source space is not normal")]
    SourceNotNormal,
    #[error("target space is not normal")]
    TargetNotNormal,
    #[error("map does not preserve orthogonality")]
    NotHomomorphism,
    #[error("maps do not compose: target of the first is not the source of the second")]
    Mismatch,
    #[error("map table has {got} entries, expected {expected}")]
    BadTable { got: usize, expected: usize },
    #[error("space is not a Dacey space")]
    NotDacey,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("no space satisfying `{0}` found within the search bound")]
    NotFoundWithinBound(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
