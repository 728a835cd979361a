//! Arithmetic in GF(2^m) and in GF(2)[x].

mod field;
mod poly;

pub use field::{FieldContext, FieldElement, DEFAULT_MODULI};
pub use poly::BinPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("extension degree {0} outside 2..=32")]
    DegreeOutOfRange(u32),
    #[error("modulus {modulus} does not have degree {expected}")]
    ModulusDegree { expected: u32, modulus: BinPoly },
    #[error("modulus {modulus} is reducible: factor {factor} found")]
    Reducible { modulus: BinPoly, factor: BinPoly },
    #[error("modulus {modulus} is not primitive: order of x divides {divisor}")]
    NotPrimitive { modulus: BinPoly, divisor: u64 },
    #[error("element bits {bits:#x} do not fit GF(2^{m})")]
    ElementOutOfRange { bits: u32, m: u32 },
    #[error("gcd of two zero polynomials")]
    GcdOfZeros,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("inexact division, remainder {remainder}")]
    NonzeroRemainder { remainder: BinPoly },
    #[error("parse error: {0}")]
    Parse(String),
}
