//! Defining sequences `s_i = Tr(f(alpha^i + 1))` and their minimal
//! polynomials.
//!
//! The minimal polynomial is always reported in the constant-term-one
//! convention: `c(x) = 1 + c_1 x + ... + c_L x^L` with
//! `s_i = c_1 s_{i-1} + ... + c_L s_{i-L}`. All three methods here
//! (gcd, expansion, Berlekamp-Massey) return that same polynomial.

mod bm;

pub use bm::berlekamp_massey;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{BinPoly, FieldContext, FieldElement};
use crate::cosets::{CosetError, CosetTable};

/// Sequences at least this long are generated in parallel.
const PAR_THRESHOLD: usize = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("coefficient {bits:#x} does not fit GF(2^{m})")]
    CoefficientOutOfRange { bits: u32, m: u32 },
    #[error("trinomial exponent 2^{h}-1 is too large")]
    HOutOfRange { h: u32 },
    #[error("sequence of length {len} does not match n = {n}")]
    LengthMismatch { len: usize, n: u32 },
    #[error(transparent)]
    Coset(#[from] CosetError),
}

/// One term `coeff * x^exponent` of a polynomial over GF(2^m).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Term {
    pub coeff: u32,
    pub exponent: u64,
}

/// Structured description of the polynomial `f` feeding the sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PolyDesc {
    /// `x^e`
    Monomial { e: u64 },
    /// `x + x^r + x^(2^h - 1)`
    Trinomial { r: u64, h: u32 },
    /// `sum coeff_i x^(e_i)`
    Terms { terms: Vec<Term> },
}

impl PolyDesc {
    /// `x^e1 + x^e2 + ...` with unit coefficients.
    pub fn exponents(exps: &[u64]) -> Self {
        PolyDesc::Terms {
            terms: exps.iter().map(|&exponent| Term { coeff: 1, exponent }).collect(),
        }
    }

    pub fn zero() -> Self {
        PolyDesc::Terms { terms: Vec::new() }
    }

    /// Expands to an explicit term list.
    pub fn terms(&self) -> Result<Vec<Term>, SeqError> {
        let unit = |exponent| Term { coeff: 1, exponent };
        Ok(match self {
            PolyDesc::Monomial { e } => vec![unit(*e)],
            PolyDesc::Trinomial { r, h } => {
                if *h >= 63 {
                    return Err(SeqError::HOutOfRange { h: *h });
                }
                vec![unit(1), unit(*r), unit((1u64 << h) - 1)]
            }
            PolyDesc::Terms { terms } => terms.clone(),
        })
    }
}

impl std::fmt::Display for PolyDesc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PolyDesc::Monomial { e } => write!(f, "x^{e}"),
            PolyDesc::Trinomial { r, h } => write!(f, "x+x^{r}+x^(2^{h}-1)"),
            PolyDesc::Terms { terms } if terms.is_empty() => f.write_str("0"),
            PolyDesc::Terms { terms } => {
                for (i, t) in terms.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    if t.coeff != 1 {
                        write!(f, "{:#x}*", t.coeff)?;
                    }
                    write!(f, "x^{}", t.exponent)?;
                }
                Ok(())
            }
        }
    }
}

/// The period-n binary sequence defined by `f`.
#[derive(Debug, Clone)]
pub struct DefiningSequence {
    pub m: u32,
    pub desc: PolyDesc,
    pub bits: Vec<bool>,
    /// Exponent reductions applied while evaluating `f`.
    pub notes: Vec<String>,
}

impl DefiningSequence {
    /// Wraps raw bits (e.g. for tests); `n` is taken from the length.
    pub fn from_bits(m: u32, bits: Vec<bool>) -> Self {
        DefiningSequence {
            m,
            desc: PolyDesc::zero(),
            bits,
            notes: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&b| !b)
    }

    /// `S^n(x) = sum s_i x^i`.
    pub fn generating_poly(&self) -> BinPoly {
        BinPoly::from_bits(&self.bits)
    }

    /// Smallest period; always divides the length.
    pub fn period(&self) -> usize {
        let n = self.bits.len();
        (1..=n)
            .filter(|p| n.is_multiple_of(*p))
            .find(|&p| (p..n).all(|i| self.bits[i] == self.bits[i - p]))
            .unwrap_or(n)
    }

    /// `count` consecutive periods.
    pub fn repeated(&self, count: usize) -> Vec<bool> {
        self.bits.repeat(count)
    }

    /// Bit-packed hex, LSB first: byte `k` holds `s_{8k}` in its lowest bit.
    pub fn to_hex(&self) -> String {
        hex::encode(pack_lsb_first(&self.bits))
    }

    /// Inverse of [`DefiningSequence::to_hex`] for a known length.
    pub fn bits_from_hex(s: &str, len: usize) -> Result<Vec<bool>, hex::FromHexError> {
        let bytes = hex::decode(s.trim())?;
        if bytes.len() * 8 < len {
            return Err(hex::FromHexError::InvalidStringLength);
        }
        Ok((0..len).map(|i| (bytes[i / 8] >> (i % 8)) & 1 == 1).collect())
    }
}

fn pack_lsb_first(bits: &[bool]) -> Vec<u8> {
    bits.chunks(8)
        .map(|chunk| {
            chunk
                .iter()
                .enumerate()
                .fold(0u8, |acc, (i, &b)| acc | (u8::from(b) << i))
        })
        .collect()
}

/// Validated terms with nonzero exponents reduced into `[1, n]`, which
/// leaves `f` unchanged as a function on GF(2^m) (including its value at
/// zero); `x^0` is the constant 1.
/// Nonzero `(coefficient, reduced exponent)` terms plus reduction notes.
type Normalized = (Vec<(FieldElement, u64)>, Vec<String>);

fn normalize(ctx: &FieldContext, desc: &PolyDesc) -> Result<Normalized, SeqError> {
    let n = u64::from(ctx.n());
    let mut notes = Vec::new();
    let mut terms = Vec::new();
    for t in desc.terms()? {
        let coeff = ctx.element(t.coeff).map_err(|_| SeqError::CoefficientOutOfRange {
            bits: t.coeff,
            m: ctx.m(),
        })?;
        let e = if t.exponent == 0 { 0 } else { (t.exponent - 1) % n + 1 };
        if e != t.exponent {
            notes.push(format!("exponent {} reduced to {}", t.exponent, e));
        }
        terms.push((coeff, e));
    }
    Ok((terms, notes))
}

fn eval_terms(ctx: &FieldContext, terms: &[(FieldElement, u64)], x: FieldElement) -> FieldElement {
    terms.iter().fold(FieldElement::ZERO, |acc, &(c, e)| {
        ctx.add(acc, ctx.mul(c, ctx.pow(x, e)))
    })
}

/// `f(x)` for every `x` in GF(2^m), indexed by the bits of `x`.
pub fn function_table(ctx: &FieldContext, desc: &PolyDesc) -> Result<Vec<FieldElement>, SeqError> {
    let (terms, _) = normalize(ctx, desc)?;
    let size = 1usize << ctx.m();
    let eval = |x: usize| eval_terms(ctx, &terms, FieldElement(x as u32));
    Ok(if size >= PAR_THRESHOLD {
        (0..size).into_par_iter().map(eval).collect()
    } else {
        (0..size).map(eval).collect()
    })
}

/// Builds `s_i = Tr(f(alpha^i + 1))` for `0 <= i < n`.
pub fn defining_sequence(ctx: &FieldContext, desc: &PolyDesc) -> Result<DefiningSequence, SeqError> {
    let (terms, notes) = normalize(ctx, desc)?;
    let eval = |i: usize| -> bool {
        let x = ctx.add(ctx.alpha_pow(i as i64), FieldElement::ONE);
        ctx.trace(eval_terms(ctx, &terms, x))
    };
    let len = ctx.n() as usize;
    let bits = if len >= PAR_THRESHOLD {
        (0..len).into_par_iter().map(eval).collect()
    } else {
        (0..len).map(eval).collect()
    };
    Ok(DefiningSequence {
        m: ctx.m(),
        desc: desc.clone(),
        bits,
        notes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpanMethod {
    Gcd,
    Expansion,
    #[serde(rename = "bm")]
    BerlekampMassey,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpanResult {
    pub minimal_poly: BinPoly,
    pub linear_span: usize,
    pub method: SpanMethod,
}

/// `M_s = (x^n - 1) / gcd(x^n - 1, S^n(x))`.
///
/// The all-zero sequence gives `M_s = 1`, span 0.
pub fn minimal_poly_gcd(seq: &DefiningSequence) -> SpanResult {
    let n = seq.len();
    let xn = BinPoly::x_pow_n_minus_one(n);
    let g = xn.gcd(&seq.generating_poly()).expect("x^n - 1 is nonzero");
    let minimal_poly = xn.div_exact(&g).expect("gcd divides x^n - 1");
    SpanResult {
        linear_span: minimal_poly.degree().unwrap_or(0),
        minimal_poly,
        method: SpanMethod::Gcd,
    }
}

/// Coefficients `c_k = sum_t s_t alpha^(-kt)` of the expansion
/// `s_t = sum_k c_k alpha^(kt)`, one per coset leader.
///
/// For a binary sequence `c_{2k} = c_k^2`, so the leaders determine which
/// coefficients vanish.
pub fn expansion_coefficients(
    ctx: &FieldContext,
    table: &CosetTable,
    seq: &DefiningSequence,
) -> Result<Vec<(u32, FieldElement)>, SeqError> {
    if seq.len() != ctx.n() as usize || table.n() != ctx.n() {
        return Err(SeqError::LengthMismatch {
            len: seq.len(),
            n: ctx.n(),
        });
    }
    let support: Vec<u64> = seq
        .bits
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(t, _)| t as u64)
        .collect();
    let n = u64::from(ctx.n());
    let coeff = |k: u32| -> FieldElement {
        let k = u64::from(k);
        support.iter().fold(FieldElement::ZERO, |acc, &t| {
            let e = (n - (k * t) % n) % n;
            ctx.add(acc, ctx.alpha_pow(e as i64))
        })
    };
    let leaders: Vec<u32> = table.leaders().collect();
    Ok(leaders.par_iter().map(|&k| (k, coeff(k))).collect())
}

/// Minimal polynomial from the expansion: `prod_{c_i != 0} (1 - alpha^i x)`,
/// assembled coset by coset from minimal polynomials of `alpha^(-i)`.
pub fn minimal_poly_expansion(
    ctx: &FieldContext,
    table: &CosetTable,
    seq: &DefiningSequence,
) -> Result<SpanResult, SeqError> {
    let coeffs = expansion_coefficients(ctx, table, seq)?;
    let mut minimal_poly = BinPoly::one();
    let mut linear_span = 0;
    for (k, c) in coeffs {
        if c.is_zero() {
            continue;
        }
        linear_span += table.size_of(i64::from(k));
        minimal_poly = &minimal_poly * &ctx.minimal_polynomial_of_power(-i64::from(k));
    }
    Ok(SpanResult {
        minimal_poly,
        linear_span,
        method: SpanMethod::Expansion,
    })
}

/// Periodic autocorrelation `sum_t (-1)^(s_t + s_{t+shift})` over one period.
pub fn autocorrelation(seq: &DefiningSequence, shift: usize) -> i64 {
    let n = seq.len();
    (0..n)
        .map(|t| {
            if seq.bits[t] == seq.bits[(t + shift) % n] {
                1
            } else {
                -1
            }
        })
        .sum()
}

/// Largest `|autocorrelation|` over the nonzero shifts.
pub fn max_off_peak_autocorrelation(seq: &DefiningSequence) -> i64 {
    (1..seq.len()).map(|s| autocorrelation(seq, s).abs()).max().unwrap_or(0)
}
