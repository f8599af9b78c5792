//! Exact computer algebra for truncated q-series.
//!
//! The engine works with [`QSeries`], exact Laurent series in `q^{1/D}` with
//! big-integer coefficients and an explicit window of validity. On top of it
//! sit q-Pochhammer symbols and theta functions ([`qfunctions`]), Hecke-type
//! double series ([`hecke`]), Appell–Lerch sums ([`appell`]), Bailey pairs
//! and Lovejoy's two-pair transform ([`bailey`]), partial Nahm sums
//! ([`nahm`]), a small expression language ([`expr`]) and a catalogue of
//! identity checks ([`registry`]).

pub mod appell;
pub mod bailey;
mod error;
pub mod expr;
pub mod hecke;
mod monomial;
pub mod nahm;
pub mod qfunctions;
pub mod registry;
pub mod report;
pub mod series;

pub use error::{Error, Result};
pub use monomial::Monomial;
pub use report::{CheckReport, Mismatch, Status};
pub use series::{CheckOutcome, QSeries};

/// Exponents, orders and theta bases are exact rationals.
pub type Rational = num_rational::Ratio<i64>;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n)
}
