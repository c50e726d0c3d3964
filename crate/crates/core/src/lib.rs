//! Pathwidth-preserving triangulation of planar graphs.
//!
//! The pipeline adds edges (and temporarily vertices) to an embedded planar
//! graph until it is triangulated, or maximal outer-planar, while carrying
//! a path decomposition whose width stays within a fixed multiple of the
//! input width.

pub mod augmenter;
pub mod embed;
pub mod error;
pub mod multi_triangulator;
pub mod simplifier;
pub mod fixtures;
pub mod generate;
pub mod io;
pub mod oracle;
pub mod path_decomp;
pub mod pipeline;
pub mod planar;

pub use error::{Error, Result};
pub use path_decomp::{BagInterval, PathDecomposition};
pub use planar::{DartId, EmbeddedMultigraph, FacialCircuit, VertexId};
