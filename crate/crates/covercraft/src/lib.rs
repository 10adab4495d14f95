//! Linear covering codes over finite fields and their geometric
//! counterparts: saturating sets and multifold strong blocking sets in
//! PG(v,q), concatenating constructions, and closed-form length families.

pub mod blocking;
pub mod codes;
pub mod concat;
pub mod error;
pub mod families;
pub mod gf;
pub mod io;
pub mod pg;
pub mod search;
pub mod syndrome;
pub mod tables;
pub(crate) mod util;

pub use error::{Error, Result};
