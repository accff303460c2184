//! Exact computations for (2+1)-dimensional TQFTs restricted to the
//! categories generated by thickened and solid tori.
//!
//! * [`scalars`] — exact arithmetic in Q and quadratic fields.
//! * [`sl2z`] — SL(2,Z) words, continued fractions, conjugacy, lens spaces.
//! * [`cobcat`] — arrow expressions, normal forms and equality.
//! * [`tqft`] — TQFT data, validation and invariants.
//! * [`parse`] / [`reproduce`] — text front-end and the published tables.

pub mod cobcat;
pub mod error;
pub mod parse;
pub mod reproduce;
pub mod scalars;
pub mod sl2z;
pub mod tqft;

pub use error::{Error, Result};
