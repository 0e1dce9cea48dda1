//! Rich words: words with the maximal number of distinct palindromic
//! factors, their defects, extensions, enumeration and 2D analogues.

pub mod closure;
pub mod defect;
pub mod eertree;
pub mod enumeration;
pub mod error;
pub mod experiments;
pub mod extension;
pub mod grid2d;
pub mod richness;
pub mod stream;
pub mod sturmian;
pub mod word;

pub use error::{Error, Result};
pub use word::{Alphabet, Letter, LetterSet, Word};
