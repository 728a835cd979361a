//! Binary cyclic codes defined by trace sequences of monomials and
//! trinomials over GF(2^m).
//!
//! The pipeline: a polynomial `f` over GF(2^m) gives the binary sequence
//! `s_i = Tr(f(alpha^i + 1))`; the minimal polynomial of that sequence is the
//! generator of a cyclic code of length `2^m - 1`. The [`families`] module
//! predicts that generator in closed form for several exponent families and
//! checks the prediction against the computed one; [`codes`] bounds and
//! computes minimum distances.

pub mod algebra;
pub mod codes;
pub mod cosets;
pub mod families;
pub mod golden;
pub mod oracle;
pub mod seqgen;

pub use algebra::{AlgebraError, BinPoly, FieldContext, FieldElement};
