//! Binary cyclic codes `<g(x)>` in `GF(2)[x]/(x^n - 1)`.

mod bits;
mod bounds;
mod distance;

pub use bounds::{bch_bound, bch_bound_from_zeros, hartmann_tzeng_bound, sphere_packing_check, SpherePacking};
pub use distance::{min_distance, Budget, DistanceMethod, DistanceResult};

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, BinPoly, FieldContext, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("generator does not divide x^{n} - 1 (remainder {remainder})")]
    NotADivisor { n: usize, remainder: BinPoly },
    #[error("length must be positive")]
    ZeroLength,
    #[error("message has length {got}, expected {expected}")]
    MessageLength { expected: usize, got: usize },
    #[error("field has n = {field}, code has n = {code}")]
    LengthMismatch { code: usize, field: u32 },
    #[error("the zero code has no minimum distance")]
    ZeroCode,
}

/// Outcome of comparing a closed-form prediction with the computed generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub family: String,
    pub params: String,
    pub predicted_span: Option<usize>,
    pub computed_span: usize,
    /// `None` when no prediction was supplied.
    pub matched: Option<bool>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicCode {
    n: usize,
    generator: BinPoly,
    k: usize,
    parity_poly: BinPoly,
    zero_exponents: Option<Vec<u32>>,
    provenance: Option<Provenance>,
}

impl CyclicCode {
    pub fn from_generator(n: usize, generator: BinPoly) -> Result<Self, CodeError> {
        if n == 0 {
            return Err(CodeError::ZeroLength);
        }
        let xn = BinPoly::x_pow_n_minus_one(n);
        let parity_poly = match xn.div_exact(&generator) {
            Ok(h) => h,
            Err(AlgebraError::NonzeroRemainder { remainder }) => return Err(CodeError::NotADivisor { n, remainder }),
            Err(_) => return Err(CodeError::NotADivisor { n, remainder: xn }),
        };
        let k = n - generator.degree().expect("divisor is nonzero");
        Ok(CyclicCode {
            n,
            generator,
            k,
            parity_poly,
            zero_exponents: None,
            provenance: None,
        })
    }

    /// Attaches the zeros `{i : g(alpha^i) = 0}` computed in `ctx`.
    pub fn with_field(mut self, ctx: &FieldContext) -> Result<Self, CodeError> {
        self.zero_exponents = Some(zero_exponents(&self.generator, self.n, ctx)?);
        Ok(self)
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = Some(provenance);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn redundancy(&self) -> usize {
        self.n - self.k
    }

    pub fn generator(&self) -> &BinPoly {
        &self.generator
    }

    pub fn parity_poly(&self) -> &BinPoly {
        &self.parity_poly
    }

    /// Sorted; `None` until a field is attached.
    pub fn zero_exponents(&self) -> Option<&[u32]> {
        self.zero_exponents.as_deref()
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn is_zero_code(&self) -> bool {
        self.k == 0
    }

    /// `(x + 1) | g`, i.e. every codeword has even weight.
    pub fn is_even_weight(&self) -> bool {
        !self.generator.eval_one()
    }

    /// Coefficients of `message(x) g(x)`; no reduction is needed since the
    /// product has degree below `n`.
    pub fn encode(&self, message: &[bool]) -> Result<Vec<bool>, CodeError> {
        if message.len() != self.k {
            return Err(CodeError::MessageLength {
                expected: self.k,
                got: message.len(),
            });
        }
        Ok((&BinPoly::from_bits(message) * &self.generator).to_bits(self.n))
    }

    /// True iff `word(x)` is a multiple of `g(x)`.
    pub fn contains(&self, word: &[bool]) -> bool {
        word.len() == self.n
            && BinPoly::from_bits(word)
                .rem(&self.generator)
                .map(|r| r.is_zero())
                .unwrap_or(false)
    }

    /// Dual code, generated by the reciprocal of `h(x)`.
    pub fn dual(&self) -> CyclicCode {
        let generator = self.parity_poly.reciprocal();
        let parity_poly = self.generator.reciprocal();
        let zero_exponents = self.zero_exponents.as_ref().map(|zeros| {
            // zeros of h* are the negatives of the non-zeros of g
            let n = self.n as u32;
            let mut is_zero = vec![false; self.n];
            for &z in zeros {
                is_zero[z as usize] = true;
            }
            let mut out: Vec<u32> = (0..n).filter(|&i| !is_zero[i as usize]).map(|i| (n - i) % n).collect();
            out.sort_unstable();
            out
        });
        CyclicCode {
            n: self.n,
            k: self.n - self.k,
            generator,
            parity_poly,
            zero_exponents,
            provenance: None,
        }
    }
}

/// `{i in [0, n) : g(alpha^i) = 0}`, evaluating once per cyclotomic coset.
pub fn zero_exponents(g: &BinPoly, n: usize, ctx: &FieldContext) -> Result<Vec<u32>, CodeError> {
    if ctx.n() as usize != n {
        return Err(CodeError::LengthMismatch {
            code: n,
            field: ctx.n(),
        });
    }
    let mut seen = vec![false; n];
    let mut zeros = Vec::new();
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let is_root = ctx.eval(g, ctx.alpha_pow(i as i64)) == FieldElement::ZERO;
        let mut j = i;
        loop {
            seen[j] = true;
            if is_root {
                zeros.push(j as u32);
            }
            j = 2 * j % n;
            if j == i {
                break;
            }
        }
    }
    zeros.sort_unstable();
    Ok(zeros)
}
