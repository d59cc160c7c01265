//! Infinitesimal rigidity of bar-joint frameworks in normed planes.

pub mod catalogue;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod norms;
pub mod rigidity;
pub mod sparsity;
pub mod vector;

pub use error::{Error, Result};
pub use graph::Graph;
pub use norms::{Norm, NormKind, SupportSet};
pub use vector::{Covector2, Vector2};
