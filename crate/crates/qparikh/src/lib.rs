//! Exact arithmetic for q-deformed binomial coefficients of words and
//! q-Parikh matrices.
//!
//! The q-binomial coefficient of two words `u`, `v` is a polynomial in `q`
//! with natural coefficients whose value at `q = 1` is the number of
//! occurrences of `v` as a (scattered) subword of `u`. Around this kernel the
//! crate builds:
//!
//! - [`parikh`]: q-Parikh matrices induced by a word `z`, their closed-form
//!   entries, exact inverses, antitranspose duality, minors and Cauchy-type
//!   polynomials;
//! - [`series`]: the limit power series of prefix q-binomials of an infinite
//!   word, closed-form rational decompositions and linear recurrences for
//!   periodic words, vanishing residue classes and growth diagnostics;
//! - [`morphism`]: the position morphism reducing an arbitrary q-Parikh
//!   matrix to the canonical one over `12..k`.
//!
//! Everything is computed exactly: coefficients are arbitrary-precision
//! integers and all identities are checked coefficient-for-coefficient.

pub mod json;
pub mod morphism;
pub mod parikh;
pub mod poly;
pub mod qbinom;
pub mod series;
pub mod words;

pub use poly::{FactoredRational, IntPoly, PolyMatrix, Recurrence, TruncatedSeries};
pub use words::{Letter, LeftInfiniteWord, Morphism, Word};
