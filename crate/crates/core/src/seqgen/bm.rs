use super::{SpanMethod, SpanResult};
use crate::algebra::BinPoly;

/// Sequence reversed and bit-packed so that `s_i, s_{i-1}, ..., s_{i-L}` is a
/// contiguous bit run starting at `len - 1 - i`.
struct Reversed {
    words: Vec<u64>,
}

impl Reversed {
    fn new(bits: &[bool]) -> Self {
        let len = bits.len();
        let mut words = vec![0u64; len / 64 + 2];
        for (i, &b) in bits.iter().enumerate() {
            if b {
                let j = len - 1 - i;
                words[j / 64] |= 1 << (j % 64);
            }
        }
        Reversed { words }
    }

    /// 64 bits starting at bit `off`; bits past the end read as zero.
    fn window(&self, off: usize) -> u64 {
        let (w, b) = (off / 64, off % 64);
        let lo = self.words.get(w).copied().unwrap_or(0) >> b;
        if b == 0 {
            lo
        } else {
            lo | self.words.get(w + 1).copied().unwrap_or(0) << (64 - b)
        }
    }
}

/// Shortest LFSR generating `bits`, as a connection polynomial with `c_0 = 1`.
///
/// For a periodic sequence, feeding two periods yields the minimal polynomial.
pub fn berlekamp_massey(bits: &[bool]) -> SpanResult {
    let len = bits.len();
    let rev = Reversed::new(bits);
    let mut c = BinPoly::one();
    let mut b = BinPoly::one();
    let mut l = 0usize;
    let mut last = 0usize;

    for i in 0..len {
        // d = sum_{j <= L} c_j s_{i-j}
        let off = len - 1 - i;
        let d = c
            .words()
            .iter()
            .enumerate()
            .fold(0u32, |acc, (k, &cw)| acc ^ (cw & rev.window(off + 64 * k)).count_ones())
            & 1;
        if d == 0 {
            continue;
        }
        let shifted = b.shl(i + 1 - last);
        if 2 * l <= i {
            let prev = c.clone();
            c = &c + &shifted;
            l = i + 1 - l;
            b = prev;
            last = i + 1;
        } else {
            c = &c + &shifted;
        }
    }
    SpanResult {
        minimal_poly: c,
        linear_span: l,
        method: SpanMethod::BerlekampMassey,
    }
}
