use thiserror::Error;

/// Structural problems found while validating or parsing a trivalent graph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("genus {0} is below the minimum of 2")]
    GenusTooSmall(u32),
    #[error("edge {edge} has endpoint {endpoint} outside 0..{vertex_count}")]
    EndpointOutOfRange {
        edge: usize,
        endpoint: usize,
        vertex_count: usize,
    },
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    Degree { vertex: usize, degree: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex count {found} does not match 2g-2 = {expected}")]
    VertexCount { expected: usize, found: usize },
    #[error("edge count {found} does not match 3g-3 = {expected}")]
    EdgeCount { expected: usize, found: usize },
    #[error("genus {genus} outside the supported range 2..={max}")]
    GenusOutOfRange { genus: u32, max: u32 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Everything else the engine can refuse to do.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("level must be at least 1")]
    LevelZero,
    #[error("label {label} on edge {edge} outside 0..={level}")]
    LabelOutOfRange { edge: usize, label: u32, level: u32 },
    #[error("weight has {found} labels but the graph has {expected} edges")]
    LabelCount { expected: usize, found: usize },
    #[error("enumeration would exceed the cap of {cap} items")]
    Budget { cap: u128 },
    #[error("contraction intermediate of {entries} entries exceeds the bound of {bound}")]
    ContractionWidth { entries: u128, bound: u128 },
    #[error("trigonometric sum not resolved to an integer (radius {radius})")]
    Precision { radius: f64 },
    #[error("graph does not carry the named edges of the chain graph")]
    MissingGamma0Names,
    #[error("point has {found} coordinates, polytope has dimension {expected}")]
    Dimension { expected: usize, found: usize },
    #[error("{samples} samples requested, at least {min} required")]
    TooFewSamples { samples: u64, min: u64 },
    #[error("unsupported output format {0:?}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
