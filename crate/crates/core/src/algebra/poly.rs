//! Polynomials over GF(2), bit-packed into 64-bit words.
//!
//! Bit `i` of the packed representation is the coefficient of `x^i`. The
//! word vector is kept trimmed: the last word is never zero, and the zero
//! polynomial is the empty vector.
//!
//! Two textual forms are supported and both round-trip:
//!
//! ```text
//! 1+x^3+x^4      ascending exponent list
//! 19             hexadecimal of the coefficient bits, LSB = constant term
//! ```

use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::AlgebraError;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BinPoly {
    words: Vec<u64>,
}

impl BinPoly {
    pub fn zero() -> Self {
        BinPoly { words: Vec::new() }
    }

    pub fn one() -> Self {
        BinPoly { words: vec![1] }
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        BinPoly { words: vec![2] }
    }

    pub fn monomial(degree: usize) -> Self {
        let mut p = BinPoly::zero();
        p.flip(degree);
        p
    }

    /// `x^n + 1`, which equals `x^n - 1` in characteristic two.
    pub fn x_pow_n_minus_one(n: usize) -> Self {
        let mut p = BinPoly::monomial(n);
        p.flip(0);
        p
    }

    /// Builds a polynomial from a list of exponents. Repeated exponents cancel.
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exponents: I) -> Self {
        let mut p = BinPoly::zero();
        for e in exponents {
            p.flip(e);
        }
        p
    }

    /// Coefficient vector indexed by degree.
    pub fn from_bits(bits: &[bool]) -> Self {
        let mut words = vec![0u64; bits.len().div_ceil(64)];
        for (i, _) in bits.iter().enumerate().filter(|(_, &b)| b) {
            words[i / 64] |= 1 << (i % 64);
        }
        let mut p = BinPoly { words };
        p.trim();
        p
    }

    pub fn from_u64(bits: u64) -> Self {
        let mut p = BinPoly { words: vec![bits] };
        p.trim();
        p
    }

    pub fn from_words(words: Vec<u64>) -> Self {
        let mut p = BinPoly { words };
        p.trim();
        p
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Low 64 coefficients; `None` when the degree is 64 or more.
    pub fn to_u64(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words[0] == 1
    }

    /// Degree, or `None` for the zero polynomial (degree minus infinity).
    pub fn degree(&self) -> Option<usize> {
        let top = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    /// Toggles the coefficient of `x^i`.
    pub fn flip(&mut self, i: usize) {
        let w = i / 64;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] ^= 1 << (i % 64);
        self.trim();
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Value at `x = 1`.
    pub fn eval_one(&self) -> bool {
        self.weight() % 2 == 1
    }

    /// Exponents with a nonzero coefficient, ascending.
    pub fn exponents(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// Coefficient vector of length `len` (truncating or zero-padding).
    pub fn to_bits(&self, len: usize) -> Vec<bool> {
        (0..len).map(|i| self.coeff(i)).collect()
    }

    /// `x^deg · p(1/x)`.
    pub fn reciprocal(&self) -> BinPoly {
        let Some(d) = self.degree() else {
            return BinPoly::zero();
        };
        BinPoly::from_exponents(self.exponents().map(|e| d - e))
    }

    pub fn shl(&self, shift: usize) -> BinPoly {
        let mut out = BinPoly::zero();
        xor_shifted(&mut out.words, &self.words, shift);
        out.trim();
        out
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, den: &BinPoly) -> Result<(BinPoly, BinPoly), AlgebraError> {
        let dd = den.degree().ok_or(AlgebraError::DivisionByZero)?;
        let mut rem = self.words.clone();
        let mut quot = Vec::new();
        while let Some(rd) = degree_of(&rem) {
            if rd < dd {
                break;
            }
            let shift = rd - dd;
            xor_shifted(&mut rem, &den.words, shift);
            if shift / 64 >= quot.len() {
                quot.resize(shift / 64 + 1, 0);
            }
            quot[shift / 64] ^= 1 << (shift % 64);
            trim_words(&mut rem);
        }
        Ok((BinPoly::from_words(quot), BinPoly::from_words(rem)))
    }

    pub fn rem(&self, den: &BinPoly) -> Result<BinPoly, AlgebraError> {
        let dd = den.degree().ok_or(AlgebraError::DivisionByZero)?;
        let mut rem = self.words.clone();
        while let Some(rd) = degree_of(&rem) {
            if rd < dd {
                break;
            }
            xor_shifted(&mut rem, &den.words, rd - dd);
            trim_words(&mut rem);
        }
        Ok(BinPoly::from_words(rem))
    }

    /// Exact division; a nonzero remainder is reported as an error.
    pub fn div_exact(&self, den: &BinPoly) -> Result<BinPoly, AlgebraError> {
        let (q, r) = self.div_rem(den)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(AlgebraError::NonzeroRemainder { remainder: r })
        }
    }

    pub fn divides(&self, other: &BinPoly) -> bool {
        other.rem(self).is_ok_and(|r| r.is_zero())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &BinPoly) -> Result<BinPoly, AlgebraError> {
        if self.is_zero() && other.is_zero() {
            return Err(AlgebraError::GcdOfZeros);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a)
    }

    /// Hexadecimal of the coefficient bit string, most significant digit
    /// first, so that the least significant bit is the constant term.
    pub fn to_hex(&self) -> String {
        if self.words.is_empty() {
            return "0".to_string();
        }
        let mut s = format!("{:x}", self.words.last().unwrap());
        for w in self.words.iter().rev().skip(1) {
            s.push_str(&format!("{w:016x}"));
        }
        s
    }

    pub fn from_hex(s: &str) -> Result<BinPoly, AlgebraError> {
        let s = s.trim();
        let digits = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
        if digits.is_empty() {
            return Err(AlgebraError::Parse(format!("empty hex polynomial {s:?}")));
        }
        let mut words = Vec::with_capacity(digits.len().div_ceil(16));
        let bytes = digits.as_bytes();
        let mut end = bytes.len();
        while end > 0 {
            let start = end.saturating_sub(16);
            let chunk = &digits[start..end];
            let w = u64::from_str_radix(chunk, 16)
                .map_err(|e| AlgebraError::Parse(format!("bad hex polynomial {s:?}: {e}")))?;
            words.push(w);
            end = start;
        }
        Ok(BinPoly::from_words(words))
    }

    fn trim(&mut self) {
        trim_words(&mut self.words);
    }
}

fn trim_words(words: &mut Vec<u64>) {
    while words.last() == Some(&0) {
        words.pop();
    }
}

fn degree_of(words: &[u64]) -> Option<usize> {
    let top = *words.last()?;
    Some((words.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
}

/// `dst ^= src << shift`, growing `dst` as needed. Does not trim.
fn xor_shifted(dst: &mut Vec<u64>, src: &[u64], shift: usize) {
    if src.is_empty() {
        return;
    }
    let ws = shift / 64;
    let bs = shift % 64;
    let need = ws + src.len() + usize::from(bs != 0);
    if dst.len() < need {
        dst.resize(need, 0);
    }
    if bs == 0 {
        for (d, s) in dst[ws..].iter_mut().zip(src) {
            *d ^= s;
        }
    } else {
        for (i, &s) in src.iter().enumerate() {
            dst[ws + i] ^= s << bs;
            dst[ws + i + 1] ^= s >> (64 - bs);
        }
    }
}

impl Add for &BinPoly {
    type Output = BinPoly;

    fn add(self, rhs: &BinPoly) -> BinPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&BinPoly> for BinPoly {
    fn add_assign(&mut self, rhs: &BinPoly) {
        xor_shifted(&mut self.words, &rhs.words, 0);
        self.trim();
    }
}

impl Mul for &BinPoly {
    type Output = BinPoly;

    fn mul(self, rhs: &BinPoly) -> BinPoly {
        let (sparse, dense) = if self.weight() <= rhs.weight() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = Vec::new();
        for e in sparse.exponents() {
            xor_shifted(&mut out, &dense.words, e);
        }
        BinPoly::from_words(out)
    }
}

impl fmt::Display for BinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, e) in self.exponents().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            match e {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinPoly({self})")
    }
}

impl FromStr for BinPoly {
    type Err = AlgebraError;

    /// Parses `1+x^3+x^4` style input. Whitespace is ignored and terms may
    /// come in any order; a repeated term cancels.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(AlgebraError::Parse("empty polynomial".into()));
        }
        if compact == "0" {
            return Ok(BinPoly::zero());
        }
        let mut p = BinPoly::zero();
        for term in compact.split('+') {
            let e = match term {
                "1" => 0,
                "x" | "X" => 1,
                t => t
                    .strip_prefix("x^")
                    .or_else(|| t.strip_prefix("X^"))
                    .and_then(|d| d.parse::<usize>().ok())
                    .ok_or_else(|| AlgebraError::Parse(format!("bad term {t:?} in {s:?}")))?,
            };
            p.flip(e);
        }
        Ok(p)
    }
}

impl Serialize for BinPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BinPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> BinPoly {
        s.parse().unwrap()
    }

    #[test]
    fn zero_degree_is_minus_infinity() {
        assert_eq!(BinPoly::zero().degree(), None);
        assert_eq!(BinPoly::one().degree(), Some(0));
        assert_eq!(BinPoly::monomial(130).degree(), Some(130));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p("1+x^3").gcd(&p("1+x^2")).unwrap(), p("1+x"));
        let q = p("1+x+x^4");
        assert_eq!(q.gcd(&BinPoly::zero()).unwrap(), q);
        assert_eq!(BinPoly::zero().gcd(&q).unwrap(), q);
        assert!(q.gcd(&p("x+x^2")).unwrap().is_one());
        assert!(matches!(
            BinPoly::zero().gcd(&BinPoly::zero()),
            Err(AlgebraError::GcdOfZeros)
        ));
    }

    #[test]
    fn exact_division() {
        let x15 = BinPoly::x_pow_n_minus_one(15);
        let q = x15.div_exact(&p("1+x+x^4")).unwrap();
        assert_eq!(q.degree(), Some(11));
        assert_eq!(p("1+x^2").div_exact(&p("1+x")).unwrap(), p("1+x"));
        match p("1+x^3").div_exact(&p("1+x^2")) {
            Err(AlgebraError::NonzeroRemainder { remainder }) => {
                assert_eq!(remainder, p("1+x"));
            }
            other => panic!("expected remainder error, got {other:?}"),
        }
        assert!(matches!(
            p("x").div_exact(&BinPoly::zero()),
            Err(AlgebraError::DivisionByZero)
        ));
    }

    #[test]
    fn text_and_hex_forms() {
        let g = p("1+x^3+x^4");
        assert_eq!(g.to_string(), "1+x^3+x^4");
        assert_eq!(g.to_hex(), "19");
        assert_eq!(BinPoly::from_hex("0x19").unwrap(), g);
        assert_eq!(p("x^4 + x + 1"), p("1+x+x^4"));
        assert_eq!(p("x+x"), BinPoly::zero());
        assert_eq!(BinPoly::zero().to_string(), "0");
        assert!("x^".parse::<BinPoly>().is_err());
        assert!("y+1".parse::<BinPoly>().is_err());
        assert!(BinPoly::from_hex("zz").is_err());
        let wide = BinPoly::from_exponents([0, 64, 127, 200]);
        assert_eq!(BinPoly::from_hex(&wide.to_hex()).unwrap(), wide);
    }

    #[test]
    fn reciprocal_of_primitive() {
        assert_eq!(p("1+x+x^4").reciprocal(), p("1+x^3+x^4"));
        assert_eq!(p("x^2+x^5").reciprocal(), p("1+x^3"));
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = BinPoly> {
        proptest::collection::vec(any::<bool>(), 0..=max_deg + 1).prop_map(|b| BinPoly::from_bits(&b))
    }

    proptest! {
        #[test]
        fn text_round_trip(a in arb_poly(300)) {
            prop_assert_eq!(a.to_string().parse::<BinPoly>().unwrap(), a.clone());
            prop_assert_eq!(BinPoly::from_hex(&a.to_hex()).unwrap(), a);
        }

        #[test]
        fn product_degree_is_sum(a in arb_poly(150), b in arb_poly(150)) {
            let prod = &a * &b;
            match (a.degree(), b.degree()) {
                (Some(da), Some(db)) => prop_assert_eq!(prod.degree(), Some(da + db)),
                _ => prop_assert!(prod.is_zero()),
            }
        }

        #[test]
        fn division_identity(a in arb_poly(200), b in arb_poly(90)) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b).unwrap();
            prop_assert!(r.degree() < b.degree());
            prop_assert_eq!(&(&q * &b) + &r, a);
        }

        #[test]
        fn gcd_scales_by_common_factor(a in arb_poly(60), b in arb_poly(60), c in arb_poly(40)) {
            prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
            let lhs = (&a * &c).gcd(&(&b * &c)).unwrap();
            let rhs = &c * &a.gcd(&b).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(120), b in arb_poly(120)) {
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let g = a.gcd(&b).unwrap();
            prop_assert!(g.divides(&a));
            prop_assert!(g.divides(&b));
        }
    }
}
