//! Closed 3-braids in band generators: shortest conjugacy representatives,
//! fibredness certificates and Alexander polynomials.

pub mod alexander;
pub mod classify;
pub mod cli;
pub mod error;
pub mod oracle;
pub mod perm;
pub mod word;
pub mod xu;

pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use word::{BraidWord, Letter, Notation, Sign};
pub use xu::{to_xu_form, untwist, xu_form, xu_length, XuForm};
