//! Layered drawings of maximal outerplanar graphs with vertex boxes.

pub mod certify;
pub mod depth;
pub mod error;
pub mod fvr;
pub mod graph;
pub mod layout;
pub mod oracle;
pub mod pathwidth;
pub mod system;

pub use depth::{depth_table, free_depth, rooted_depth, DepthTable, EdgeDepths};
pub use error::{CertifyError, DepthError, DrawingError, GraphError, LayoutError};
pub use graph::{Edge, FaceId, OuterplanarGraph, SubPolygon, Vertex};
pub use system::{validate_system, ChildSystem, DepthSystem, Flavor, Violation};
