//! Slow, independent reference implementations.
//!
//! Nothing here calls into the fast paths it is used to check: cosets come
//! from a doubling loop, spans from solving the recurrence system directly,
//! distances from enumerating every message.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::codes::CyclicCode;

pub const NAIVE_COSET_MAX_M: u32 = 16;
pub const NAIVE_SPAN_MAX_LEN: usize = 1 << 14;
pub const NAIVE_DISTANCE_MAX_K: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub subject: String,
    pub instance: String,
    pub agree: bool,
    pub detail: String,
}

impl OracleReport {
    pub fn compare<T: PartialEq + std::fmt::Debug>(subject: &str, instance: String, oracle: T, fast: T) -> Self {
        let agree = oracle == fast;
        let detail = if agree {
            String::new()
        } else {
            format!("oracle {oracle:?} vs fast {fast:?}")
        };
        OracleReport {
            subject: subject.to_string(),
            instance,
            agree,
            detail,
        }
    }
}

/// The doubling orbit of `j` modulo `2^m - 1`.
pub fn naive_coset(m: u32, j: u64) -> BTreeSet<u64> {
    assert!((1..=NAIVE_COSET_MAX_M).contains(&m), "m out of oracle range");
    let n = (1u64 << m) - 1;
    let mut out = BTreeSet::new();
    let mut x = j % n;
    while out.insert(x) {
        x = x * 2 % n;
    }
    out
}

/// True iff some recurrence `s_i = sum_{j=1..l} c_j s_{i-j}` holds for the
/// periodic stream at every `i` (checked over one full period).
fn has_recurrence(bits: &[bool], l: usize) -> bool {
    let n = bits.len();
    if l == 0 {
        return bits.iter().all(|&b| !b);
    }
    let s = |i: usize| bits[i % n];
    // rows [c_1 .. c_l | rhs], one per i in [l, l + n)
    let mut rows: Vec<Vec<bool>> = (l..l + n)
        .map(|i| {
            let mut row: Vec<bool> = (1..=l).map(|j| s(i - j)).collect();
            row.push(s(i));
            row
        })
        .collect();
    let mut rank = 0;
    for col in 0..l {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col]) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    // inconsistent iff a zero row has rhs 1
    rows[rank..].iter().all(|row| !row[l])
}

/// Linear complexity of the periodic stream with period `bits`.
///
/// Recurrence existence is monotone in the length, so the smallest length
/// is found by bisection over `[0, n]`.
pub fn naive_span(bits: &[bool]) -> usize {
    assert!(bits.len() <= NAIVE_SPAN_MAX_LEN, "sequence too long for the oracle");
    let (mut lo, mut hi) = (0, bits.len());
    while lo < hi {
        let mid = (lo + hi) / 2;
        if has_recurrence(bits, mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Minimum weight over all nonzero codewords `u(x) g(x)`, `deg u < k`.
pub fn naive_min_distance(code: &CyclicCode) -> Option<usize> {
    let (n, k) = (code.n(), code.k());
    if k == 0 || k > NAIVE_DISTANCE_MAX_K {
        return None;
    }
    let g: Vec<bool> = (0..n).map(|i| code.generator().coeff(i)).collect();
    let mut best = n;
    for msg in 1u64..1 << k {
        let mut word = vec![false; n];
        for i in (0..k).filter(|i| msg >> i & 1 == 1) {
            for (j, &gj) in g.iter().enumerate() {
                if gj {
                    word[(i + j) % n] ^= true;
                }
            }
        }
        best = best.min(word.iter().filter(|&&b| b).count());
    }
    Some(best)
}
