use num_bigint::BigUint;
use serde::Serialize;

use super::{CodeError, CyclicCode};
use crate::algebra::FieldContext;

/// Largest step tried by the Hartmann-Tzeng sweep.
const HT_MAX_STEP: usize = 8;

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `run[b]` = number of consecutive zeros `b, b+1, ...` (cyclic, capped at n).
fn runs(is_zero: &[bool]) -> Vec<usize> {
    let n = is_zero.len();
    let mut run = vec![0usize; n];
    if is_zero.iter().all(|&z| z) {
        return vec![n; n];
    }
    // start right after a non-zero so each run is seen whole
    let start = (0..n).find(|&i| !is_zero[i]).expect("some non-zero");
    let mut len = 0;
    for step in 0..n {
        let i = (start + n - step) % n;
        len = if is_zero[i] { len + 1 } else { 0 };
        run[i] = len;
    }
    run
}

fn zero_mask(n: usize, zeros: &[u32]) -> Vec<bool> {
    let mut is_zero = vec![false; n];
    for &z in zeros {
        is_zero[z as usize % n] = true;
    }
    is_zero
}

fn even_lift(bound: usize, even: bool) -> usize {
    if even && bound % 2 == 1 {
        bound + 1
    } else {
        bound
    }
}

/// BCH bound from an explicit zero set: one plus the longest cyclic run of
/// consecutive zeros of `g` or of its reciprocal, raised to even when
/// `even_weight` holds.
pub fn bch_bound_from_zeros(n: usize, zeros: &[u32], even_weight: bool) -> usize {
    let is_zero = zero_mask(n, zeros);
    let reciprocal: Vec<bool> = (0..n).map(|i| is_zero[(n - i) % n]).collect();
    let best = [is_zero, reciprocal]
        .iter()
        .map(|z| runs(z).into_iter().max().unwrap_or(0))
        .max()
        .unwrap_or(0);
    even_lift(best + 1, even_weight)
}

pub fn bch_bound(code: &CyclicCode, ctx: &FieldContext) -> Result<usize, CodeError> {
    let zeros = match code.zero_exponents() {
        Some(z) => z.to_vec(),
        None => super::zero_exponents(code.generator(), code.n(), ctx)?,
    };
    Ok(bch_bound_from_zeros(code.n(), &zeros, code.is_even_weight()))
}

/// Hartmann-Tzeng bound over zero patterns `{b + i + j c}`, `0 <= i <= delta-2`,
/// `0 <= j <= s`, with `gcd(n, c) < delta` and `c <= 8`; never below the
/// plain BCH bound.
pub fn hartmann_tzeng_bound(code: &CyclicCode, ctx: &FieldContext) -> Result<usize, CodeError> {
    let n = code.n();
    let zeros = match code.zero_exponents() {
        Some(z) => z.to_vec(),
        None => super::zero_exponents(code.generator(), n, ctx)?,
    };
    let even = code.is_even_weight();
    let mut best = bch_bound_from_zeros(n, &zeros, even);
    let is_zero = zero_mask(n, &zeros);
    let reciprocal: Vec<bool> = (0..n).map(|i| is_zero[(n - i) % n]).collect();
    for mask in [is_zero, reciprocal] {
        let run = runs(&mask);
        for c in 1..=HT_MAX_STEP.min(n.saturating_sub(1)) {
            let g = gcd(n, c);
            for b in 0..n {
                let mut width = run[b];
                for s in 0..n {
                    width = width.min(run[(b + s * c) % n]);
                    let delta = width + 1;
                    if width == 0 || g >= delta {
                        break;
                    }
                    best = best.max(even_lift(delta + s, even).min(n));
                }
            }
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpherePacking {
    /// `sum_{i <= (d-1)/2} C(n, i) <= 2^(n-k)`
    pub satisfied: bool,
    /// Equality holds (a perfect code).
    pub tight: bool,
}

pub fn sphere_packing_check(n: usize, k: usize, d: usize) -> SpherePacking {
    assert!(d >= 1, "distance must be positive");
    assert!(k <= n, "dimension exceeds length");
    let radius = (d - 1) / 2;
    let mut term = BigUint::from(1u32);
    let mut volume = BigUint::from(1u32);
    for i in 1..=radius.min(n) {
        term = term * (n - i + 1) / i;
        volume += &term;
    }
    let space = BigUint::from(1u32) << (n - k);
    SpherePacking {
        satisfied: volume <= space,
        tight: volume == space,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BinPoly;

    #[test]
    fn hamming_bch_is_three() {
        let ctx = FieldContext::new(4).unwrap();
        let c = CyclicCode::from_generator(15, "1+x+x^4".parse().unwrap()).unwrap();
        assert_eq!(bch_bound(&c, &ctx).unwrap(), 3);
    }

    #[test]
    fn runs_wrap_around() {
        // zeros {13, 14, 0, 1} form one cyclic run of four
        assert_eq!(bch_bound_from_zeros(15, &[13, 14, 0, 1], false), 5);
        assert_eq!(bch_bound_from_zeros(15, &[13, 14, 0, 1], true), 6);
        assert_eq!(bch_bound_from_zeros(15, &[], false), 1);
        assert_eq!(bch_bound_from_zeros(7, &[0, 1, 2, 3, 4, 5, 6], false), 8);
    }

    #[test]
    fn bch_codes_meet_design_distance() {
        // narrow-sense BCH with zeros C_1, C_3 at n = 15 has designed distance 5
        let ctx = FieldContext::new(4).unwrap();
        let g = &ctx.minimal_polynomial_of_power(1) * &ctx.minimal_polynomial_of_power(3);
        let c = CyclicCode::from_generator(15, g).unwrap().with_field(&ctx).unwrap();
        assert_eq!(bch_bound(&c, &ctx).unwrap(), 5);
        assert!(hartmann_tzeng_bound(&c, &ctx).unwrap() >= 5);
    }

    #[test]
    fn hartmann_tzeng_beats_bch() {
        // zeros C_1 and C_11 at n = 31: no run beyond {1, 2}, HT reaches 5
        let ctx = FieldContext::new(5).unwrap();
        let g = &ctx.minimal_polynomial_of_power(1) * &ctx.minimal_polynomial_of_power(11);
        let c = CyclicCode::from_generator(31, g).unwrap();
        assert_eq!(bch_bound(&c, &ctx).unwrap(), 3);
        assert_eq!(hartmann_tzeng_bound(&c, &ctx).unwrap(), 5);
    }

    #[test]
    fn sphere_packing_examples() {
        assert_eq!(
            sphere_packing_check(63, 57, 3),
            SpherePacking {
                satisfied: true,
                tight: true
            }
        );
        assert_eq!(
            sphere_packing_check(63, 45, 3),
            SpherePacking {
                satisfied: true,
                tight: false
            }
        );
        assert!(sphere_packing_check(15, 11, 3).tight);
        assert!(sphere_packing_check(23, 12, 7).tight);
        assert!(!sphere_packing_check(15, 11, 5).satisfied);
        assert!(sphere_packing_check(7, 7, 1).tight);
    }

    #[test]
    fn field_mismatch_is_an_error() {
        let ctx = FieldContext::new(5).unwrap();
        let c = CyclicCode::from_generator(15, BinPoly::from_exponents([0, 1, 4])).unwrap();
        assert!(bch_bound(&c, &ctx).is_err());
    }
}
