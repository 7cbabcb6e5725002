//! Finite relations, classical structures and checkers for effect-algebra
//! laws stated in the category of finite sets and relations.

pub mod classical;
pub mod convolution;
pub mod effectlaw;
pub mod error;
pub mod frobmod;
pub mod laws;
pub mod monoid;
pub mod ortho;
pub mod relcore;
pub mod report;
pub mod search;

pub use error::{Error, Result};
pub use relcore::{FinObj, FinRel};
pub use report::{LawRow, Report};
