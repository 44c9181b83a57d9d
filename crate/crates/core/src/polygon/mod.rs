//! Vertex configurations and the integration oracle for polygonal measures.

pub mod config;
pub mod oracle;
pub mod triangulation;
pub mod winding;

pub use config::{Mode, VertexConfig};
pub use oracle::{polygon_moment_oracle, signed_area, triangle_area, triangle_moment_oracle};
pub use triangulation::{all_triangulations, Triangulation};
pub use winding::winding_number;
