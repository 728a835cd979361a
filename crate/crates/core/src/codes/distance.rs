//! Tiered minimum-distance search.
//!
//! 1. `exhaustive`: Gray-code walk over all messages (k <= 28).
//! 2. `column_search`: meet-in-the-middle over parity-check columns for
//!    codewords through position 0 (redundancy <= 64).
//! 3. `bz_partial`: Brouwer-Zimmermann enumeration over information sets.
//!
//! Every tier is deterministic: parallel pieces are combined by a fixed
//! total order, never by arrival time.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::bits;
use super::bounds::bch_bound_from_zeros;
use super::{CodeError, CyclicCode};

const EXHAUSTIVE_MAX_K: usize = 28;
/// Below this dimension enumeration beats the column tier outright.
const EXHAUSTIVE_PREFERRED_K: usize = 20;
const COLUMN_MAX_REDUNDANCY: usize = 64;
/// Deadline is polled once per this many inner iterations.
const POLL: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMethod {
    Exhaustive,
    ColumnSearch,
    BzPartial,
    BoundOnly,
}

#[derive(Debug, Clone)]
pub struct Budget {
    pub time_limit: Duration,
    /// Largest weight tried by the column search.
    pub w_max: usize,
    pub info_sets: usize,
    pub seed: u64,
    /// Forces a tier instead of picking the first applicable one.
    pub method: Option<DistanceMethod>,
    /// Most half-subsets the column search may tabulate.
    pub table_cap: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            time_limit: Duration::from_secs(10),
            w_max: 8,
            info_sets: 8,
            seed: 0,
            method: None,
            table_cap: 1 << 23,
        }
    }
}

impl Budget {
    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = limit;
        self
    }

    pub fn with_method(mut self, method: DistanceMethod) -> Self {
        self.method = Some(method);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceResult {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    pub method: DistanceMethod,
    #[serde(serialize_with = "witness_hex")]
    pub witness: Option<Vec<bool>>,
    /// Codewords or column subsets examined.
    pub enumerated: u64,
}

fn witness_hex<S: Serializer>(w: &Option<Vec<bool>>, s: S) -> Result<S::Ok, S::Error> {
    match w {
        Some(bits) => s.serialize_some(&bits::to_hex(bits)),
        None => s.serialize_none(),
    }
}

impl DistanceResult {
    pub fn exact_distance(&self) -> Option<usize> {
        self.exact.then_some(self.upper)
    }
}

struct Deadline {
    end: Instant,
    expired: AtomicBool,
}

impl Deadline {
    fn new(limit: Duration) -> Self {
        Deadline {
            end: Instant::now() + limit,
            expired: AtomicBool::new(false),
        }
    }

    fn poll(&self) -> bool {
        if self.expired.load(Ordering::Relaxed) {
            return true;
        }
        if Instant::now() >= self.end {
            self.expired.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }

    fn hit(&self) -> bool {
        self.expired.load(Ordering::Relaxed)
    }
}

/// Best codeword so far, ordered by weight then by a tier-specific key.
#[derive(Clone)]
struct Best {
    weight: usize,
    key: u64,
    word: Vec<u64>,
}

fn better(a: Option<Best>, b: Option<Best>) -> Option<Best> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if (y.weight, y.key) < (x.weight, x.key) { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

fn lift(bound: usize, even: bool) -> usize {
    if even && bound % 2 == 1 {
        bound + 1
    } else {
        bound
    }
}

/// Computes the minimum distance within `budget`; non-exact results carry
/// certified `[lower, upper]` brackets.
pub fn min_distance(code: &CyclicCode, budget: &Budget) -> Result<DistanceResult, CodeError> {
    if code.is_zero_code() {
        return Err(CodeError::ZeroCode);
    }
    let n = code.n();
    let k = code.k();
    let even = code.is_even_weight();
    let deadline = Deadline::new(budget.time_limit);

    let bch = code
        .zero_exponents()
        .map(|z| bch_bound_from_zeros(n, z, even))
        .unwrap_or(1);
    let mut lower = lift(bch.max(1), even);
    // g itself is a codeword
    let mut best = Best {
        weight: code.generator().weight(),
        key: u64::MAX,
        word: bits::shifted_poly(code.generator(), 0, n),
    };
    let mut enumerated = 0u64;

    let column_ok = n - k <= COLUMN_MAX_REDUNDANCY;
    let method = budget.method.unwrap_or(
        if k <= EXHAUSTIVE_PREFERRED_K || (k <= EXHAUSTIVE_MAX_K && !column_ok) {
            DistanceMethod::Exhaustive
        } else if column_ok {
            DistanceMethod::ColumnSearch
        } else {
            DistanceMethod::BzPartial
        },
    );
    let mut used = DistanceMethod::BoundOnly;

    match method {
        DistanceMethod::Exhaustive => {
            let (found, count, complete) = exhaustive(code, &deadline);
            enumerated += count;
            if let Some(b) = found {
                best = b;
            }
            if complete {
                lower = best.weight;
            }
            used = DistanceMethod::Exhaustive;
        }
        DistanceMethod::ColumnSearch | DistanceMethod::BzPartial => {
            if method == DistanceMethod::ColumnSearch && n - k <= COLUMN_MAX_REDUNDANCY {
                let out = column_search(code, lower, budget, &deadline);
                enumerated += out.enumerated;
                lower = lower.max(out.excluded_below);
                used = DistanceMethod::ColumnSearch;
                if let Some(b) = out.found {
                    best = better(Some(best), Some(b)).expect("nonempty");
                }
            }
            if lower < best.weight && !deadline.poll() {
                let out = bz_partial(code, lower, best.clone(), budget, &deadline);
                enumerated += out.enumerated;
                lower = lower.max(out.lower);
                best = out.best;
                used = DistanceMethod::BzPartial;
            }
        }
        DistanceMethod::BoundOnly => {}
    }

    let lower = lift(lower, even).min(best.weight);
    Ok(DistanceResult {
        lower,
        upper: best.weight,
        exact: lower == best.weight,
        method: used,
        witness: Some(bits::to_bools(&best.word, n)),
        enumerated,
    })
}

fn generator_rows(code: &CyclicCode) -> Vec<Vec<u64>> {
    (0..code.k())
        .map(|i| bits::shifted_poly(code.generator(), i, code.n()))
        .collect()
}

/// Returns the lightest nonzero codeword, the count, and whether the walk
/// finished before the deadline.
fn exhaustive(code: &CyclicCode, deadline: &Deadline) -> (Option<Best>, u64, bool) {
    let k = code.k();
    let rows = generator_rows(code);
    let high = k.min(10);
    let low = k - high;
    let count = AtomicU64::new(0);

    let chunk = |c: u64| -> Option<Best> {
        let start = c << low;
        let gray = |i: u64| i ^ (i >> 1);
        let mut word = vec![0u64; rows[0].len()];
        let g0 = gray(start);
        for (r, row) in rows.iter().enumerate() {
            if g0 >> r & 1 == 1 {
                bits::xor_into(&mut word, row);
            }
        }
        let mut best: Option<Best> = None;
        let end = start + (1u64 << low);
        for i in start..end {
            if i != 0 {
                let w = bits::weight(&word) as usize;
                if best.as_ref().is_none_or(|b| w < b.weight) {
                    best = Some(Best {
                        weight: w,
                        key: gray(i),
                        word: word.clone(),
                    });
                }
            }
            if (i - start) % POLL == POLL - 1 && deadline.poll() {
                count.fetch_add(i - start + 1, Ordering::Relaxed);
                return best;
            }
            if i + 1 < end {
                bits::xor_into(&mut word, &rows[(i + 1).trailing_zeros() as usize]);
            }
        }
        count.fetch_add(end - start, Ordering::Relaxed);
        best
    };

    let best = (0..1u64 << high).into_par_iter().map(chunk).reduce(|| None, better);
    let complete = !deadline.hit();
    // the zero message is not a codeword of interest
    let enumerated = count.into_inner().saturating_sub(1);
    (best, enumerated, complete)
}

struct ColumnOutcome {
    found: Option<Best>,
    /// Every nonzero codeword has weight at least this.
    excluded_below: usize,
    enumerated: u64,
}

/// Parity-check column `j` is `x^j mod g(x)`, packed into a u64.
fn syndrome_columns(code: &CyclicCode) -> Vec<u64> {
    let r = code.redundancy();
    let g_low: u128 = code
        .generator()
        .exponents()
        .filter(|&e| e < r)
        .fold(0u128, |acc, e| acc | 1 << e);
    let top: u128 = 1 << r;
    let mut cols = Vec::with_capacity(code.n());
    let mut cur: u128 = if r == 0 { 0 } else { 1 };
    for _ in 0..code.n() {
        cols.push(cur as u64);
        cur <<= 1;
        if cur & top != 0 {
            cur ^= top ^ g_low;
        }
    }
    cols
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Calls `f(subset, xor)` for every `size`-subset of `lo..n` in
/// lexicographic order; stops early when `f` returns true.
fn for_each_subset(
    cols: &[u64],
    lo: usize,
    size: usize,
    acc: u64,
    stack: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize], u64) -> bool,
) -> bool {
    if size == 0 {
        return f(stack, acc);
    }
    for j in lo..=cols.len() - size {
        stack.push(j);
        let stop = for_each_subset(cols, j + 1, size - 1, acc ^ cols[j], stack, f);
        stack.pop();
        if stop {
            return true;
        }
    }
    false
}

/// Searches weights `start..=w_max` for a codeword containing position 0;
/// by cyclicity this covers every weight class.
fn column_search(code: &CyclicCode, start: usize, budget: &Budget, deadline: &Deadline) -> ColumnOutcome {
    let n = code.n();
    let even = code.is_even_weight();
    let cols = syndrome_columns(code);
    let mut enumerated = 0u64;
    let mut w = start.max(1);
    while w <= budget.w_max.min(n) {
        if even && w % 2 == 1 {
            w += 1;
            continue;
        }
        // support = {0} + T1 + T2, |T2| = b <= |T1| = a
        let b = (w - 1) / 2;
        let a = w - 1 - b;
        if binomial(n - 1, b) > budget.table_cap as u128 || deadline.poll() {
            break;
        }
        let mut table: Vec<u64> = Vec::new();
        for_each_subset(&cols, 1, b, 0, &mut Vec::new(), &mut |_, x| {
            table.push(x);
            false
        });
        enumerated += table.len() as u64;
        table.sort_unstable();
        table.dedup();

        let count = AtomicU64::new(0);
        let hit = (1..n.saturating_sub(a.saturating_sub(1)))
            .into_par_iter()
            .filter(|_| a > 0)
            .chain(rayon::iter::once(0).filter(|_| a == 0))
            .find_map_first(|first| {
                let mut local = 0u64;
                let mut found: Option<Vec<usize>> = None;
                let mut stack = Vec::new();
                let mut check = |t1: &[usize], x: u64| -> bool {
                    local += 1;
                    if local.is_multiple_of(POLL) && deadline.poll() {
                        return true;
                    }
                    if table.binary_search(&(x ^ cols[0])).is_ok() {
                        found = Some(t1.to_vec());
                        return true;
                    }
                    false
                };
                if a == 0 {
                    check(&[], 0);
                } else {
                    stack.push(first);
                    for_each_subset(&cols, first + 1, a - 1, cols[first], &mut stack, &mut check);
                }
                count.fetch_add(local, Ordering::Relaxed);
                found
            });
        enumerated += count.into_inner();
        if deadline.hit() {
            break;
        }
        if let Some(t1) = hit {
            let target = t1.iter().fold(cols[0], |acc, &j| acc ^ cols[j]);
            let mut t2 = Vec::new();
            for_each_subset(&cols, 1, b, 0, &mut Vec::new(), &mut |s, x| {
                if x == target {
                    t2 = s.to_vec();
                    true
                } else {
                    false
                }
            });
            let mut word = vec![0u64; bits::words_for(n)];
            for j in std::iter::once(0).chain(t1).chain(t2) {
                bits::flip(&mut word, j);
            }
            let weight = bits::weight(&word) as usize;
            return ColumnOutcome {
                found: Some(Best { weight, key: 0, word }),
                excluded_below: w.min(weight),
                enumerated,
            };
        }
        w += 1;
    }
    ColumnOutcome {
        found: None,
        excluded_below: w.max(start),
        enumerated,
    }
}

struct BzOutcome {
    lower: usize,
    best: Best,
    enumerated: u64,
}

/// Systematic generator matrix on a fresh information set, preferring
/// columns not yet used by earlier sets. Returns rows and the relative rank.
fn information_set(rows: &[Vec<u64>], order: &[usize], used: &mut [bool]) -> (Vec<Vec<u64>>, usize) {
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    let k = m.len();
    let mut rank = 0;
    let mut fresh = 0;
    let candidates = order
        .iter()
        .filter(|&&c| !used[c])
        .chain(order.iter().filter(|&&c| used[c]))
        .copied()
        .collect::<Vec<_>>();
    for col in candidates {
        if rank == k {
            break;
        }
        let Some(p) = (rank..k).find(|&r| bits::get(&m[r], col)) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && bits::get(row, col) {
                bits::xor_into(row, &pivot);
            }
        }
        if !used[col] {
            used[col] = true;
            fresh += 1;
        }
        rank += 1;
    }
    (m, fresh)
}

/// Lightest combination of exactly `w` rows.
fn lightest_combination(rows: &[Vec<u64>], w: usize, deadline: &Deadline) -> (Option<Best>, u64) {
    let k = rows.len();
    if w == 0 || w > k {
        return (None, 0);
    }
    let words = rows[0].len();
    let count = AtomicU64::new(0);
    let best = (0..=k - w)
        .into_par_iter()
        .map(|first| {
            let mut best: Option<Best> = None;
            let mut local = 0u64;
            let mut acc = vec![rows[first].clone()];
            acc.extend((1..w).map(|_| vec![0u64; words]));
            // explicit odometer over the remaining w-1 indices
            let mut idx: Vec<usize> = (first + 1..first + w).collect();
            loop {
                if w > 1 && idx[w - 2] >= k {
                    break;
                }
                for d in 1..w {
                    let (prev, cur) = acc.split_at_mut(d);
                    cur[0].copy_from_slice(&prev[d - 1]);
                    bits::xor_into(&mut cur[0], &rows[idx[d - 1]]);
                }
                let word = &acc[w - 1];
                let weight = bits::weight(word) as usize;
                local += 1;
                if best.as_ref().is_none_or(|b| weight < b.weight) {
                    best = Some(Best {
                        weight,
                        key: first as u64,
                        word: word.clone(),
                    });
                }
                if local.is_multiple_of(POLL) && deadline.poll() {
                    break;
                }
                if w == 1 || !advance(&mut idx, k) {
                    break;
                }
            }
            count.fetch_add(local, Ordering::Relaxed);
            best
        })
        .reduce(|| None, better);
    (best, count.into_inner())
}

/// Next combination in lexicographic order; false when exhausted.
fn advance(idx: &mut [usize], k: usize) -> bool {
    let len = idx.len();
    for pos in (0..len).rev() {
        if idx[pos] < k - (len - pos) {
            idx[pos] += 1;
            for q in pos + 1..len {
                idx[q] = idx[q - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn bz_partial(code: &CyclicCode, start_lower: usize, start: Best, budget: &Budget, deadline: &Deadline) -> BzOutcome {
    let n = code.n();
    let k = code.k();
    let even = code.is_even_weight();
    let rows = generator_rows(code);

    let mut used = vec![false; n];
    let mut sets = Vec::new();
    for j in 0..budget.info_sets.max(1) {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(budget.seed.wrapping_add(j as u64)));
        let (m, fresh) = information_set(&rows, &order, &mut used);
        sets.push((m, fresh));
        if fresh == 0 {
            break;
        }
    }

    let mut best = start;
    let mut lower = start_lower;
    let mut enumerated = 0u64;
    for w in 1..=k {
        if lower >= best.weight || deadline.poll() {
            break;
        }
        let mut complete = true;
        for (m, _) in &sets {
            let (found, count) = lightest_combination(m, w, deadline);
            enumerated += count;
            if deadline.hit() {
                complete = false;
                break;
            }
            best = better(Some(best), found).expect("nonempty");
        }
        if !complete {
            break;
        }
        let bound: usize = sets.iter().map(|(_, r)| (w + 1).saturating_sub(k - r)).sum();
        lower = lower.max(lift(bound, even));
    }
    BzOutcome {
        lower,
        best,
        enumerated,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{BinPoly, FieldContext};

    fn p(s: &str) -> BinPoly {
        s.parse().unwrap()
    }

    fn code(n: usize, g: &str) -> CyclicCode {
        CyclicCode::from_generator(n, p(g)).unwrap()
    }

    fn check(r: &DistanceResult, code: &CyclicCode) {
        assert!(1 <= r.lower && r.lower <= r.upper && r.upper <= code.n());
        let w = r.witness.as_ref().unwrap();
        assert_eq!(w.iter().filter(|&&b| b).count(), r.upper);
        assert!(code.contains(w));
    }

    fn all_methods(c: &CyclicCode) -> Vec<DistanceResult> {
        [
            DistanceMethod::Exhaustive,
            DistanceMethod::ColumnSearch,
            DistanceMethod::BzPartial,
        ]
        .into_iter()
        .map(|m| {
            let r = min_distance(c, &Budget::default().with_method(m)).unwrap();
            check(&r, c);
            r
        })
        .collect()
    }

    #[test]
    fn hamming_and_bch_15() {
        for (g, d) in [("1+x+x^4", 3), ("1+x^4+x^6+x^7+x^8", 5), ("1+x", 2)] {
            let c = code(15, g);
            for r in all_methods(&c) {
                assert_eq!(r.exact_distance(), Some(d), "{g} via {:?}", r.method);
            }
        }
    }

    #[test]
    fn welch_m5_is_8_and_dual_is_7() {
        let c = code(31, "1+x^3+x^6+x^8+x^12+x^13+x^15+x^16");
        for r in all_methods(&c) {
            assert_eq!(r.exact_distance(), Some(8), "{:?}", r.method);
        }
        let r = min_distance(&c.dual(), &Budget::default()).unwrap();
        assert_eq!((r.exact_distance(), r.method), (Some(7), DistanceMethod::Exhaustive));
    }

    #[test]
    fn full_space_and_repetition() {
        let full = CyclicCode::from_generator(7, BinPoly::one()).unwrap();
        for r in all_methods(&full) {
            assert_eq!(r.exact_distance(), Some(1));
        }
        let rep = CyclicCode::from_generator(7, BinPoly::x_pow_n_minus_one(7).div_exact(&p("1+x")).unwrap()).unwrap();
        for r in all_methods(&rep) {
            assert_eq!(r.exact_distance(), Some(7));
        }
    }

    #[test]
    fn zero_code_is_rejected() {
        let zero = CyclicCode::from_generator(7, BinPoly::x_pow_n_minus_one(7)).unwrap();
        assert_eq!(min_distance(&zero, &Budget::default()), Err(CodeError::ZeroCode));
    }

    #[test]
    fn power2h_7_2_uses_column_search() {
        let ctx = FieldContext::new(7).unwrap();
        let c = code(127, "1+x+x^2+x^3+x^4+x^5+x^6+x^8").with_field(&ctx).unwrap();
        let r = min_distance(&c, &Budget::default()).unwrap();
        check(&r, &c);
        assert_eq!(r.method, DistanceMethod::ColumnSearch);
        assert_eq!(r.exact_distance(), Some(4));
    }

    #[test]
    fn deterministic_witness() {
        let c = code(31, "1+x^3+x^6+x^8+x^12+x^13+x^15+x^16");
        for m in [
            DistanceMethod::Exhaustive,
            DistanceMethod::ColumnSearch,
            DistanceMethod::BzPartial,
        ] {
            let budget = Budget::default().with_method(m);
            let a = min_distance(&c, &budget).unwrap();
            let b = min_distance(&c, &budget).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn zero_budget_still_brackets() {
        let c = code(31, "1+x^3+x^6+x^8+x^12+x^13+x^15+x^16");
        let budget = Budget::default().with_time_limit(Duration::ZERO);
        for m in [
            DistanceMethod::Exhaustive,
            DistanceMethod::ColumnSearch,
            DistanceMethod::BzPartial,
        ] {
            let r = min_distance(&c, &budget.clone().with_method(m)).unwrap();
            check(&r, &c);
            assert!(r.lower <= 8 && r.upper >= 8);
        }
    }

    #[test]
    fn syndrome_columns_match_remainders() {
        let c = code(15, "1+x+x^4");
        let cols = syndrome_columns(&c);
        for (j, &col) in cols.iter().enumerate() {
            let r = BinPoly::monomial(j).rem(c.generator()).unwrap();
            assert_eq!(col, r.to_u64().unwrap_or(0));
        }
    }

    #[test]
    fn combination_odometer() {
        let mut idx = vec![0, 1];
        let mut seen = 1;
        while advance(&mut idx, 4) {
            seen += 1;
        }
        assert_eq!(seen, 6);
        assert_eq!(binomial(10, 3), 120);
    }

    #[test]
    fn json_shape() {
        let c = code(15, "1+x+x^4");
        let r = min_distance(&c, &Budget::default()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["method"], "exhaustive");
        assert_eq!(v["lower"], 3);
        assert!(v["witness"].is_string());
    }
}
