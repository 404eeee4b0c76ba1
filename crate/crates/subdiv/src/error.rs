use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank must be at least {min}, got {e}")]
    InvalidRank { e: usize, min: usize },
    #[error("vertex {vertex} is out of range for rank {e}")]
    InvalidVertex { vertex: usize, e: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("root does not lie in the image of subdivision: coefficients at {k} and {k1} differ")]
    NotInImage { k: usize, k1: usize },
    #[error("parts must be positive and weakly decreasing: {0:?}")]
    InvalidPartition(Vec<usize>),
    #[error("{beads} beads cannot hold a partition of length {length}")]
    InsufficientBeads { beads: usize, length: usize },
    #[error("invalid beta set: {0}")]
    InvalidBetaSet(String),
    #[error("charge has {charge} entries but the multipartition has {components} components")]
    ChargeLength { charge: usize, components: usize },
    #[error("node {0:?} is outside the diagram")]
    NodeOutOfRange((usize, usize, usize)),
    #[error("abacus datum violates {0}")]
    DatumViolation(String),
    #[error("runner data violates {0}")]
    InvalidRunnerData(String),
    #[error("shape is not k-horizontal for k={k}")]
    NotKHorizontal { k: usize },
    #[error("node {0:?} is not a Garnir node")]
    NotGarnir((usize, usize, usize)),
    #[error("tableau is not {0}")]
    NotStandard(&'static str),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("Fock convention error: {0}")]
    Convention(String),
    #[error("unsupported block: {0}")]
    UnsupportedBlock(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_rank(e: usize, min: usize) -> Result<()> {
    if e < min {
        return Err(Error::InvalidRank { e, min });
    }
    Ok(())
}

pub(crate) fn check_vertex(vertex: usize, e: usize) -> Result<()> {
    if vertex >= e {
        return Err(Error::InvalidVertex { vertex, e });
    }
    Ok(())
}
