//! Error types shared by the series ring and everything built on top of it.

use crate::series::Rational;
use thiserror::Error;

/// Errors from series construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    /// A monomial was requested with its exponent at or above the truncation
    /// order, leaving no representable window.
    #[error("empty window: order {order} <= exponent {exp}")]
    EmptyWindow { exp: Rational, order: Rational },

    /// Division or inversion of a series whose lowest nonzero coefficient is
    /// not a unit (or of the zero series).
    #[error("non-invertible leading term")]
    NonInvertible,

    /// q -> -q applied to a series with support off the integer grid.
    #[error("negation undefined on fractional grid (term at q^{exp})")]
    FractionalGrid { exp: Rational },

    /// Coefficient requested at or beyond the truncation order.
    #[error("beyond truncation: exponent {exp} >= order {order}")]
    BeyondTruncation { exp: Rational, order: Rational },

    /// Arithmetic-progression extraction needs an integer exponent grid.
    #[error("progression extraction undefined on fractional grid (term at q^{exp})")]
    ProgressionOffGrid { exp: Rational },

    /// q-Pochhammer factor with non-positive first exponent.
    #[error("divergent product: first exponent {exp} <= 0")]
    DivergentProduct { exp: Rational },

    /// Theta sum f(a, b) with a.exp + b.exp <= 0.
    #[error("|ab| >= 1 formally: exponent sum {sum} <= 0")]
    ThetaDivergent { sum: Rational },

    /// Continued-fraction evaluation hit a non-invertible partial denominator.
    #[error("continued fraction division failed at level {level}")]
    CfLevel { level: usize },

    /// Dissection parameters with gcd(r, p) != 1.
    #[error("gcd(r, p) != 1 (r = {r}, p = {p})")]
    DissectionGcd { r: u32, p: u32 },

    /// Dissection side condition violated: a product exponent is not a
    /// multiple of p.
    #[error("dissection side condition violated: exponent {exp} not a multiple of {p}")]
    DissectionSideCondition { exp: i64, p: u32 },
}

pub type Result<T> = std::result::Result<T, SeriesError>;
