//! Packed word helpers for codeword arithmetic.

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

pub(crate) fn weight(w: &[u64]) -> u32 {
    w.iter().map(|x| x.count_ones()).sum()
}

pub(crate) fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

pub(crate) fn get(w: &[u64], i: usize) -> bool {
    w[i / 64] >> (i % 64) & 1 == 1
}

pub(crate) fn flip(w: &mut [u64], i: usize) {
    w[i / 64] ^= 1 << (i % 64);
}

pub(crate) fn to_bools(w: &[u64], n: usize) -> Vec<bool> {
    (0..n).map(|i| get(w, i)).collect()
}

/// `x^shift * p` as an `n`-bit word, assuming it does not wrap.
pub(crate) fn shifted_poly(p: &crate::algebra::BinPoly, shift: usize, n: usize) -> Vec<u64> {
    let mut out = vec![0u64; words_for(n)];
    for e in p.exponents() {
        flip(&mut out, e + shift);
    }
    out
}

/// Hex of the bit vector, byte `k` holding bits `8k..8k+8` LSB first.
pub(crate) fn to_hex(bits: &[bool]) -> String {
    let bytes: Vec<u8> = bits
        .chunks(8)
        .map(|c| c.iter().enumerate().fold(0u8, |a, (i, &b)| a | (u8::from(b) << i)))
        .collect();
    hex::encode(bytes)
}
