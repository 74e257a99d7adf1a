use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors reported by the topology layer, colorings, solvers and
/// constructions.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {0} outside supported range 1..={1}")]
    DimensionOutOfRange(u32, u32),
    #[error("dimension index {index} out of range for Q_{d}")]
    BadDimensionIndex { index: u32, d: u32 },
    #[error("edge (base {base}, dim {dim}) is not an edge of the host")]
    EdgeNotInHost { base: u64, dim: u32 },
    #[error("vertex {0} out of range")]
    BadVertex(u64),
    #[error("palette size {0} unsupported (need 1..=63)")]
    BadPalette(u32),
    #[error("color {color} outside palette 1..={palette}")]
    ColorOutOfPalette { color: u32, palette: u32 },
    #[error("colorings refer to hosts of different sizes: {0} vs {1} edges")]
    HostMismatch(usize, usize),
    #[error("coloring is not proper")]
    NotProper,
    #[error("interchange colors must be distinct")]
    EqualInterchangeColors,
    #[error("edge set is not a maximal bicolored component")]
    NotABicoloredComponent,
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("unsupported request: {0}")]
    Unsupported(String),
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
