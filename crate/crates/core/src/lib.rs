//! Free-group word calculus and matched-pair cover measurements.

pub mod families;
pub mod negligibility;
pub mod pseudoplane;
pub mod word;

pub use word::{Generator, Letter, RawSequence, Word, WordError};
