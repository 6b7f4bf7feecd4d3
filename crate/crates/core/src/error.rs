use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} size {size} exceeds the exhaustive-search limit {limit}")]
    SizeLimitExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("operation requires a G(n) or H(n) family graph")]
    WrongFamily,
    #[error("graph has no perfect matching")]
    NoPerfectMatching,
    #[error("cell set is empty")]
    EmptyCells,
    #[error("cell set is not edge-connected")]
    DisconnectedCells,
    #[error("cell set encloses a hole of {cells} cells; interior faces must be unit squares")]
    NonSquareHole { cells: usize },
    #[error("edge set is not a perfect matching of the graph")]
    NotPerfectMatching,
    #[error("edge {0:?} is not an edge of the graph")]
    UnknownEdge((usize, usize)),
}
