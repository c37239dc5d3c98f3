pub mod analyzer;
pub mod closure;
pub mod error;
pub mod intset;
pub mod ops;
pub mod partition;
pub mod qspace;
pub mod verify;

pub use error::{Error, Result};
pub use intset::IntSet;
pub use partition::{Color, IntervalKind, Partition, PointRef, Row};
