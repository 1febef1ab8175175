//! Exact symbolic q-series engine.
//!
//! This crate builds Ramanujan theta functions, q-Pochhammer products and the
//! continued fractions of order fourteen and twenty-eight as truncated
//! Laurent series over exact integers, and mechanically verifies the
//! theta-function identities, colour-partition theorems and
//! vanishing-coefficient claims attached to them.
//!
//! Module map:
//! - [`series`]: the truncated Laurent-series ring in q^{1/D} over `BigInt`
//! - [`theta`]: q-Pochhammer products and theta functions f(a,b), φ, ψ, χ
//! - [`cfrac`]: continued fractions as products and as finite convergents
//! - [`identities`]: executable theorem suites with first-mismatch reports
//! - [`partitions`]: colour-partition counting by series and by enumeration
//! - [`dissection`]: p-dissection and vanishing-coefficient scans
//! - [`dsl`]: a small text language for q-series identity files

pub mod error;
pub mod series;

pub mod theta;

pub mod cfrac;

pub mod identities;

pub mod partitions;

pub mod dissection;

pub mod dsl;

pub use error::{Result, SeriesError};
pub use series::{rat, rint, LaurentSeries, Rational};
pub use theta::SignedMonomial;
