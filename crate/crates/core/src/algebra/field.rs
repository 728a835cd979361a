use super::{AlgebraError, BinPoly};

/// Largest extension degree that gets exp/log tables.
const TABLE_MAX_M: u32 = 20;

/// Primitive moduli for 2 <= m <= 32, bit `i` = coefficient of `x^i`.
///
/// Entries for m = 4, 5, 6, 7, 9 are the moduli used by the published
/// worked examples; every other entry is the primitive polynomial of degree
/// m with the smallest integer encoding.
pub const DEFAULT_MODULI: [u64; 31] = [
    0x7,         // 2: x^2+x+1
    0xb,         // 3: x^3+x+1
    0x13,        // 4: x^4+x+1
    0x25,        // 5: x^5+x^2+1
    0x5b,        // 6: x^6+x^4+x^3+x+1
    0x83,        // 7: x^7+x+1
    0x11d,       // 8
    0x211,       // 9: x^9+x^4+1
    0x409,       // 10
    0x805,       // 11
    0x1053,      // 12
    0x201b,      // 13
    0x402b,      // 14
    0x8003,      // 15
    0x1002d,     // 16
    0x20009,     // 17
    0x40027,     // 18
    0x80027,     // 19
    0x100009,    // 20
    0x200005,    // 21
    0x400003,    // 22
    0x800021,    // 23
    0x100001b,   // 24
    0x2000009,   // 25
    0x4000047,   // 26
    0x8000027,   // 27
    0x10000009,  // 28
    0x20000005,  // 29
    0x40000053,  // 30
    0x80000009,  // 31
    0x1000000af, // 32
];

/// An element of GF(2^m) in the power basis of alpha.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Debug)]
struct LogTables {
    /// `exp[i] = alpha^i` for `0 <= i < 2n`.
    exp: Vec<u32>,
    /// `log[alpha^i] = i`; `log[0]` is unused.
    log: Vec<u32>,
}

/// GF(2^m) with a fixed primitive modulus; alpha is the class of `x`.
///
/// Immutable after construction and shareable across threads.
#[derive(Clone, Debug)]
pub struct FieldContext {
    m: u32,
    modulus: u64,
    n: u32,
    trace_mask: u32,
    tables: Option<LogTables>,
}

impl FieldContext {
    /// Field with the built-in modulus for `m`.
    pub fn new(m: u32) -> Result<Self, AlgebraError> {
        if !(2..=32).contains(&m) {
            return Err(AlgebraError::DegreeOutOfRange(m));
        }
        Self::with_modulus(m, &BinPoly::from_u64(DEFAULT_MODULI[m as usize - 2]))
    }

    /// Field with a caller-chosen modulus, which must be primitive of degree `m`.
    pub fn with_modulus(m: u32, modulus: &BinPoly) -> Result<Self, AlgebraError> {
        if !(2..=32).contains(&m) {
            return Err(AlgebraError::DegreeOutOfRange(m));
        }
        if modulus.degree() != Some(m as usize) {
            return Err(AlgebraError::ModulusDegree {
                expected: m,
                modulus: modulus.clone(),
            });
        }
        check_primitive(m, modulus)?;
        let bits = modulus.to_u64().expect("degree <= 32");
        let n = ((1u64 << m) - 1) as u32;
        let mut ctx = FieldContext {
            m,
            modulus: bits,
            n,
            trace_mask: 0,
            tables: None,
        };
        if m <= TABLE_MAX_M {
            ctx.tables = Some(ctx.build_tables());
        }
        ctx.trace_mask = (0..m)
            .filter(|&b| ctx.trace_slow(FieldElement(1 << b)))
            .fold(0, |acc, b| acc | (1 << b));
        Ok(ctx)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Multiplicative order of alpha, `2^m - 1`.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u64 {
        1u64 << self.m
    }

    pub fn modulus(&self) -> BinPoly {
        BinPoly::from_u64(self.modulus)
    }

    pub fn has_log_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub fn alpha(&self) -> FieldElement {
        FieldElement(2)
    }

    /// Checked constructor from the raw power-basis bits.
    pub fn element(&self, bits: u32) -> Result<FieldElement, AlgebraError> {
        if u64::from(bits) >= self.order() {
            return Err(AlgebraError::ElementOutOfRange { bits, m: self.m });
        }
        Ok(FieldElement(bits))
    }

    /// All field elements, zero first.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order()).map(|b| FieldElement(b as u32))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 ^ b.0)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        match &self.tables {
            Some(t) => FieldElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => FieldElement(mulmod(a.0 as u64, b.0 as u64, self.modulus, self.m) as u32),
        }
    }

    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    /// `x^e`, with `0^0 = 1`.
    pub fn pow(&self, x: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if x.0 == 0 {
            return FieldElement::ZERO;
        }
        if let Some(t) = &self.tables {
            let n = u64::from(self.n);
            let k = (u64::from(t.log[x.0 as usize]) * (e % n)) % n;
            return FieldElement(t.exp[k as usize]);
        }
        let mut acc = FieldElement::ONE;
        let mut base = x;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// `alpha^e` for any integer exponent (reduced mod n).
    pub fn alpha_pow(&self, e: i64) -> FieldElement {
        let n = i64::from(self.n);
        let k = e.rem_euclid(n) as u64;
        match &self.tables {
            Some(t) => FieldElement(t.exp[k as usize]),
            None => self.pow(self.alpha(), k),
        }
    }

    /// Discrete log base alpha; `None` for zero.
    pub fn log(&self, x: FieldElement) -> Option<u32> {
        if x.0 == 0 {
            return None;
        }
        match &self.tables {
            Some(t) => Some(t.log[x.0 as usize]),
            None => {
                let mut acc = FieldElement::ONE;
                for i in 0..self.n {
                    if acc == x {
                        return Some(i);
                    }
                    acc = self.mul(acc, self.alpha());
                }
                None
            }
        }
    }

    pub fn inv(&self, x: FieldElement) -> Option<FieldElement> {
        if x.0 == 0 {
            return None;
        }
        Some(self.pow(x, u64::from(self.n) - 1))
    }

    /// Absolute trace to GF(2).
    pub fn trace(&self, x: FieldElement) -> bool {
        (x.0 & self.trace_mask).count_ones() & 1 == 1
    }

    fn trace_slow(&self, x: FieldElement) -> bool {
        let mut acc = 0u32;
        let mut y = x;
        for _ in 0..self.m {
            acc ^= y.0;
            y = FieldElement(mulmod(y.0 as u64, y.0 as u64, self.modulus, self.m) as u32);
        }
        debug_assert!(acc <= 1, "trace left the prime field");
        acc == 1
    }

    /// The Frobenius orbit `x, x^2, x^4, ...` up to the first repeat.
    pub fn conjugates(&self, x: FieldElement) -> Vec<FieldElement> {
        let mut out = vec![x];
        let mut c = self.square(x);
        while c != x {
            out.push(c);
            c = self.square(c);
        }
        out
    }

    /// Minimal polynomial over GF(2): the product of `(X - c)` over the
    /// conjugates of `x`. Zero maps to `X`.
    pub fn minimal_polynomial(&self, x: FieldElement) -> BinPoly {
        if x.is_zero() {
            return BinPoly::x();
        }
        let mut coeffs = vec![FieldElement::ONE];
        for c in self.conjugates(x) {
            let mut next = vec![FieldElement::ZERO; coeffs.len() + 1];
            for (i, &a) in coeffs.iter().enumerate() {
                next[i + 1] = self.add(next[i + 1], a);
                next[i] = self.add(next[i], self.mul(a, c));
            }
            coeffs = next;
        }
        let bits: Vec<bool> = coeffs
            .iter()
            .map(|c| {
                assert!(c.0 <= 1, "conjugate product left GF(2)");
                c.0 == 1
            })
            .collect();
        BinPoly::from_bits(&bits)
    }

    /// Minimal polynomial of `alpha^e`.
    pub fn minimal_polynomial_of_power(&self, e: i64) -> BinPoly {
        self.minimal_polynomial(self.alpha_pow(e))
    }

    /// Evaluates a binary polynomial at a field element (Horner).
    pub fn eval(&self, p: &BinPoly, x: FieldElement) -> FieldElement {
        let Some(d) = p.degree() else {
            return FieldElement::ZERO;
        };
        let mut acc = FieldElement::ZERO;
        for i in (0..=d).rev() {
            acc = self.mul(acc, x);
            if p.coeff(i) {
                acc = self.add(acc, FieldElement::ONE);
            }
        }
        acc
    }

    fn build_tables(&self) -> LogTables {
        let n = self.n as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; n + 1];
        let top = 1u64 << self.m;
        let mut x = 1u64;
        for i in 0..n {
            exp[i] = x as u32;
            exp[i + n] = x as u32;
            log[x as usize] = i as u32;
            x <<= 1;
            if x & top != 0 {
                x ^= self.modulus;
            }
        }
        LogTables { exp, log }
    }
}

/// Carry-less product of two residues reduced modulo a degree-`m` modulus.
fn mulmod(a: u64, b: u64, modulus: u64, m: u32) -> u64 {
    let top = 1u64 << m;
    let mut acc = 0u64;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & top != 0 {
            a ^= modulus;
        }
    }
    acc
}

fn powmod(base: u64, mut e: u64, modulus: u64, m: u32) -> u64 {
    let mut acc = 1u64;
    let mut b = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, modulus, m);
        }
        b = mulmod(b, b, modulus, m);
        e >>= 1;
    }
    acc
}

/// Distinct prime factors by trial division (n < 2^32 here).
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Ben-Or irreducibility test followed by an order test on `x`.
fn check_primitive(m: u32, modulus: &BinPoly) -> Result<(), AlgebraError> {
    let bits = modulus.to_u64().expect("degree <= 32");
    // x^(2^i) mod p, kept as a residue of degree < m
    let mut frob = 2u64;
    for _ in 1..=m / 2 {
        frob = mulmod(frob, frob, bits, m);
        let diff = BinPoly::from_u64(frob ^ 2);
        let g = modulus.gcd(&diff)?;
        if !g.is_one() {
            return Err(AlgebraError::Reducible {
                modulus: modulus.clone(),
                factor: g,
            });
        }
    }
    let n = (1u64 << m) - 1;
    for q in prime_factors(n) {
        if powmod(2, n / q, bits, m) == 1 {
            return Err(AlgebraError::NotPrimitive {
                modulus: modulus.clone(),
                divisor: n / q,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> BinPoly {
        s.parse().unwrap()
    }

    #[test]
    fn default_moduli_match_published_choices() {
        assert_eq!(FieldContext::new(4).unwrap().modulus(), p("1+x+x^4"));
        assert_eq!(FieldContext::new(5).unwrap().modulus(), p("1+x^2+x^5"));
        assert_eq!(FieldContext::new(6).unwrap().modulus(), p("1+x+x^3+x^4+x^6"));
        assert_eq!(FieldContext::new(7).unwrap().modulus(), p("1+x+x^7"));
        assert_eq!(FieldContext::new(9).unwrap().modulus(), p("1+x^4+x^9"));
    }

    #[test]
    fn default_table_is_primitive_and_minimal_elsewhere() {
        for m in 2..=32u32 {
            let ctx = FieldContext::new(m).unwrap();
            if [4, 5, 6, 7, 9].contains(&m) {
                continue;
            }
            // no smaller candidate of the same degree is primitive
            let chosen = DEFAULT_MODULI[m as usize - 2];
            if m <= 16 {
                for c in ((1u64 << m) + 1..chosen).step_by(2) {
                    assert!(FieldContext::with_modulus(m, &BinPoly::from_u64(c)).is_err());
                }
            }
            assert_eq!(ctx.modulus().to_u64(), Some(chosen));
        }
    }

    #[test]
    fn reducible_modulus_is_rejected() {
        let err = FieldContext::with_modulus(4, &p("1+x^2+x^4")).unwrap_err();
        match err {
            AlgebraError::Reducible { factor, .. } => assert_eq!(factor, p("1+x+x^2")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn irreducible_but_not_primitive_is_rejected() {
        // x^4+x^3+x^2+x+1 divides x^5-1, so x has order 5
        let err = FieldContext::with_modulus(4, &p("1+x+x^2+x^3+x^4")).unwrap_err();
        assert!(matches!(err, AlgebraError::NotPrimitive { divisor: 5, .. }));
    }

    #[test]
    fn bad_degrees_are_rejected() {
        assert!(FieldContext::new(1).is_err());
        assert!(FieldContext::new(33).is_err());
        assert!(FieldContext::with_modulus(5, &p("1+x+x^4")).is_err());
    }

    #[test]
    fn alpha_has_full_order() {
        let ctx = FieldContext::new(4).unwrap();
        let a = ctx.alpha();
        assert_eq!(ctx.pow(a, 15), FieldElement::ONE);
        assert_ne!(ctx.pow(a, 3), FieldElement::ONE);
        assert_ne!(ctx.pow(a, 5), FieldElement::ONE);
        assert_eq!(ctx.mul(ctx.pow(a, 7), ctx.pow(a, 8)), FieldElement::ONE);
        for x in ctx.elements() {
            assert_eq!(ctx.pow(x, 0), FieldElement::ONE);
        }
    }

    #[test]
    fn trace_examples() {
        let c5 = FieldContext::new(5).unwrap();
        assert!(c5.trace(FieldElement::ONE));
        let c4 = FieldContext::new(4).unwrap();
        assert!(!c4.trace(FieldElement::ZERO));
        assert!(!c4.trace(c4.alpha()));
    }

    #[test]
    fn trace_is_balanced() {
        for m in 2..=16 {
            let ctx = FieldContext::new(m).unwrap();
            let ones = ctx.elements().filter(|&x| ctx.trace(x)).count();
            assert_eq!(ones, 1 << (m - 1), "m = {m}");
        }
    }

    #[test]
    fn minimal_polynomial_examples() {
        let ctx = FieldContext::new(4).unwrap();
        assert_eq!(ctx.minimal_polynomial(ctx.alpha()), p("1+x+x^4"));
        assert_eq!(ctx.minimal_polynomial_of_power(-1), p("1+x^3+x^4"));
        assert_eq!(ctx.minimal_polynomial(FieldElement::ONE), p("1+x"));
        assert_eq!(ctx.minimal_polynomial(FieldElement::ZERO), p("x"));
        // C_5 = {5, 10} has size 2
        assert_eq!(ctx.minimal_polynomial_of_power(5), p("1+x+x^2"));
    }

    #[test]
    fn table_free_path_agrees_with_tables() {
        // m = 21 has no log tables; spot-check against the generic path
        let ctx = FieldContext::new(21).unwrap();
        assert!(!ctx.has_log_tables());
        let a = ctx.alpha();
        assert_eq!(ctx.pow(a, u64::from(ctx.n())), FieldElement::ONE);
        let x = ctx.alpha_pow(12345);
        assert_eq!(ctx.mul(x, ctx.inv(x).unwrap()), FieldElement::ONE);
        assert_eq!(ctx.minimal_polynomial(a), ctx.modulus());
        assert_eq!(ctx.log(ctx.alpha_pow(77)), Some(77));
    }

    proptest! {
        #[test]
        fn trace_is_linear_and_frobenius_invariant(m in 2u32..=12, a in any::<u32>(), b in any::<u32>()) {
            let ctx = FieldContext::new(m).unwrap();
            let mask = (1u32 << m) - 1;
            let (x, y) = (FieldElement(a & mask), FieldElement(b & mask));
            prop_assert_eq!(ctx.trace(ctx.add(x, y)), ctx.trace(x) ^ ctx.trace(y));
            prop_assert_eq!(ctx.trace(ctx.square(x)), ctx.trace(x));
        }

        #[test]
        fn minimal_polynomial_properties(m in 2u32..=10, a in 1u32..1024) {
            let ctx = FieldContext::new(m).unwrap();
            let x = FieldElement(a % (1 << m));
            prop_assume!(!x.is_zero());
            let mp = ctx.minimal_polynomial(x);
            let xn = BinPoly::x_pow_n_minus_one(ctx.n() as usize);
            prop_assert!(xn.div_exact(&mp).is_ok());
            prop_assert_eq!(&mp, &ctx.minimal_polynomial(ctx.square(x)));
            prop_assert_eq!(mp.degree(), Some(ctx.conjugates(x).len()));
            prop_assert_eq!(ctx.eval(&mp, x), FieldElement::ZERO);
        }

        #[test]
        fn inverse_round_trip(m in 2u32..=16, a in 1u32..u32::MAX) {
            let ctx = FieldContext::new(m).unwrap();
            let x = FieldElement(a % (1 << m));
            prop_assume!(!x.is_zero());
            prop_assert_eq!(ctx.mul(x, ctx.inv(x).unwrap()), FieldElement::ONE);
        }
    }
}
