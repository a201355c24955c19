//! Deciding almost-freeness of torus actions built from graphs.
//!
//! The pipeline: a simple graph is encoded as a Sullivan algebra whose
//! differential carries one relation per edge; the action it models is
//! almost free exactly when that algebra has finite-dimensional cohomology,
//! which for this family reduces to a Groebner zero-dimensionality test and
//! is equivalent to the graph not being (k+1)-colorable. A proposed
//! coloring transcribes to an algebra morphism into a polynomial algebra
//! over a cyclotomic extension and is checked in polynomial time, and the
//! torus-action geometry behind the encoding is constructed and verified
//! symbolically.
//!
//! Modules follow the pipeline: [`graph`] (input + brute-force oracle),
//! [`algebra`] (exact graded-commutative algebra), [`reduction`] (encoders
//! and the decision), [`certificate`] (morphism verifier), [`oracle`]
//! (Groebner, Hilbert and Betti machinery), [`borel`] (torus actions and
//! the geometric checks).

use std::fmt;

pub mod algebra;
pub mod borel;
pub mod certificate;
pub mod graph;
pub mod linalg;
pub mod oracle;
pub mod reduction;
pub mod scalar;

/// Line-anchored parse failure for any of the textual formats.
#[derive(Debug, Clone)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}
