//! Words over `{x, y}`, parameter polynomials, sparse noncommutative
//! polynomials and MZV indices.

pub mod index;
pub mod param;
pub mod poly;
pub mod word;

pub use index::Index;
pub use param::CPoly;
pub use poly::NcPoly;
pub use word::{Letter, Word, MAX_DEGREE};
