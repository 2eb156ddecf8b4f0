use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("need at least 3 vertices, got {0}")]
    TooFewVertices(u32),
    #[error("pair ({a},{b}) out of range for n = {n}")]
    OutOfRange { a: u32, b: u32, n: u32 },
    #[error("pair ({a},{b}) is a hull edge or a loop, not a diagonal")]
    HullDiagonal { a: u32, b: u32 },
    #[error("expected {expected} diagonals, found {found}")]
    DiagonalCount { expected: u32, found: usize },
    #[error("duplicate diagonal ({a},{b})")]
    Duplicate { a: u32, b: u32 },
    #[error("crossing pair ({},{}) and ({},{})", first.0, first.1, second.0, second.1)]
    Crossing { first: (u32, u32), second: (u32, u32) },
    #[error("diagonal set does not triangulate the polygon")]
    NotTriangulated,
    #[error("({a},{b}) is not an edge of the graph")]
    NotAnEdge { a: u32, b: u32 },
    #[error("({a},{b}) is a hull edge and has no cut-components")]
    HullEdgeCut { a: u32, b: u32 },
    #[error("anchor ({a},{b}) equals the root edge")]
    AnchorIsRoot { a: u32, b: u32 },
    #[error("n = {n} outside the enumeration guard [3, {max}]")]
    Guard { n: u32, max: u32 },
    #[error("graph file is not canonical: {0}")]
    NonCanonical(String),
    #[error("malformed graph JSON: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DepthError {
    #[error("root edge ({a},{b}) must be a hull edge")]
    RootNotHull { a: u32, b: u32 },
    #[error("({a},{b}) is not an edge of the graph")]
    NotAnEdge { a: u32, b: u32 },
    #[error("{what}: size {size} exceeds guard {guard}")]
    Guard { what: &'static str, size: usize, guard: usize },
    #[error("node {0} is not in the tree")]
    NoSuchNode(u32),
    #[error("tree is empty")]
    EmptyTree,
    #[error("malformed system JSON: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DrawingError {
    #[error("drawing has no vertical edges")]
    NoVerticalEdge,
    #[error("vertex {0} is not in the drawing")]
    NoSuchVertex(u32),
    #[error("malformed drawing JSON: {0}")]
    Parse(String),
    #[error("invalid drawing: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LayoutError {
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error(transparent)]
    Depth(#[from] DepthError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("invalid drawing: {0}")]
    InvalidDrawing(String),
    #[error("no escape path from either endpoint of ({a},{b})")]
    NoEscape { a: u32, b: u32 },
    #[error("preserve constraint not satisfiable: {0}")]
    Preserve(String),
    #[error("extraction failed on sub-drawing of {vertices:?} at vertex {vertex}: {reason}")]
    Extraction { vertices: Vec<u32>, vertex: u32, reason: String },
    #[error(transparent)]
    Drawing(#[from] DrawingError),
}
