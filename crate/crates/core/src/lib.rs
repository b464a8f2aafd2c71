//! Exact classification of quasismooth weighted projective hypersurfaces.

pub mod bounds;
pub mod checkpoint;
pub mod error;
pub mod export;
pub mod jk;
pub mod linalg;
pub mod pipeline;
pub mod search;
pub mod series;
pub mod singularity;
pub mod stats;
pub mod verify;
pub mod weights;

pub use error::Error;
pub use weights::{Invariants, WeightSystem};
