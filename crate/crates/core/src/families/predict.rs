//! Closed-form generators for the five exponent families.
//!
//! Each predictor lists the exponents `j` whose trace terms `Tr(x^j)` appear
//! in `Tr(f(x + 1))` after expansion, toggles their coset leaders mod 2, and
//! multiplies the surviving `m_{alpha^{-j}}`. Toggling makes coincident
//! cosets cancel, which is what happens to the sequence itself.

use std::collections::BTreeSet;

use crate::algebra::{BinPoly, FieldContext};
use crate::cosets::{weight2, CosetTable, EpsilonTable};

use super::{BoundSource, CodePrediction, Family, FamilyError, FamilySpec, Params};

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Odd `j <= 2^h - 1` with odd doubling count.
fn kappa_selected(h: u32) -> Result<Vec<u64>, FamilyError> {
    Ok(EpsilonTable::build(h)?.kappa_selected().collect())
}

struct Toggle<'a> {
    table: &'a CosetTable,
    leaders: BTreeSet<u32>,
}

impl<'a> Toggle<'a> {
    fn new(table: &'a CosetTable) -> Self {
        Toggle {
            table,
            leaders: BTreeSet::new(),
        }
    }

    fn flip(&mut self, j: u64) {
        let leader = self.table.leader_of(j as i64);
        if !self.leaders.remove(&leader) {
            self.leaders.insert(leader);
        }
    }

    /// Generator `prod m_{alpha^{-j}}` and its degree.
    fn finish(self, ctx: &FieldContext) -> (BinPoly, usize, Vec<u32>) {
        let mut g = BinPoly::one();
        let mut span = 0;
        for &leader in &self.leaders {
            g = &g * &ctx.minimal_polynomial_of_power(-i64::from(leader));
            span += self.table.size_of(i64::from(leader));
        }
        (g, span, self.leaders.into_iter().collect())
    }
}

struct Draft {
    family: Family,
    params: Params,
    closed_form_span: usize,
    distance_lower_bound: usize,
    bound_source: BoundSource,
    warnings: Vec<String>,
}

fn assemble(spec: &FamilySpec, ctx: &FieldContext, toggle: Toggle<'_>, mut draft: Draft) -> CodePrediction {
    let n = ctx.n() as usize;
    let (predicted_generator, predicted_span, zero_leaders) = toggle.finish(ctx);
    if predicted_span != draft.closed_form_span {
        draft.warnings.push(format!(
            "closed-form span {} differs from the coset count {}; coincident cosets cancel",
            draft.closed_form_span, predicted_span
        ));
    }
    CodePrediction {
        family: draft.family,
        params: draft.params,
        f: spec.poly_desc(),
        n,
        predicted_span,
        closed_form_span: draft.closed_form_span,
        predicted_dimension: n - predicted_span,
        predicted_generator,
        zero_leaders,
        distance_lower_bound: draft.distance_lower_bound,
        bound_source: draft.bound_source,
        warnings: draft.warnings,
    }
}

fn check_field(ctx: &FieldContext, m: u32) -> Result<CosetTable, FamilyError> {
    if ctx.m() != m {
        return Err(FamilyError::FieldMismatch { field: ctx.m(), m });
    }
    Ok(CosetTable::build(m)?)
}

pub(super) fn welch(spec: &FamilySpec, ctx: &FieldContext, m: u32) -> Result<CodePrediction, FamilyError> {
    if m.is_multiple_of(2) || m < 5 {
        return Err(FamilyError::InvalidParams(format!("welch needs odd m >= 5, got {m}")));
    }
    let table = check_field(ctx, m)?;
    let t = (m - 1) / 2;
    let mut toggle = Toggle::new(&table);
    for j in [0, 1, 3, (1 << t) + 1, (1 << t) + 2, (1 << t) + 3] {
        toggle.flip(j);
    }
    let mut warnings = Vec::new();
    if m < 7 {
        warnings.push(format!("m = {m} is below the lemma's range m >= 7"));
    }
    let draft = Draft {
        family: Family::Welch,
        params: Params {
            m,
            t: Some(t),
            e: Some((1 << t) + 3),
            ..Params::default()
        },
        closed_form_span: 5 * m as usize + 1,
        distance_lower_bound: 8,
        bound_source: BoundSource::Theorem,
        warnings,
    };
    Ok(assemble(spec, ctx, toggle, draft))
}

pub(super) fn power2h(spec: &FamilySpec, ctx: &FieldContext, m: u32, h: u32) -> Result<CodePrediction, FamilyError> {
    if h < 2 || h > m.div_ceil(2) {
        return Err(FamilyError::InvalidParams(format!(
            "power2h needs 2 <= h <= ceil(m/2), got (m, h) = ({m}, {h})"
        )));
    }
    let table = check_field(ctx, m)?;
    let mut toggle = Toggle::new(&table);
    if m % 2 == 1 {
        toggle.flip(0);
    }
    for j in kappa_selected(h)? {
        toggle.flip(j);
    }
    let mut warnings = Vec::new();
    if gcd(u64::from(h), u64::from(m)) != 1 {
        warnings.push(format!(
            "gcd(h, m) = {} != 1: x^(2^h-1) is not a permutation",
            gcd(u64::from(h), u64::from(m))
        ));
    }
    let sign: i64 = if h % 2 == 1 { 1 } else { -1 };
    let closed = (i64::from(m) * ((1i64 << h) + sign)) / 3 + i64::from(m % 2);
    let bound = if m % 2 == 1 && h > 2 {
        (1 << (h - 2)) + 2
    } else {
        (1 << (h - 2)) + 1
    };
    let draft = Draft {
        family: Family::Power2h,
        params: Params {
            m,
            h: Some(h),
            e: Some((1 << h) - 1),
            ..Params::default()
        },
        closed_form_span: closed as usize,
        distance_lower_bound: bound,
        bound_source: BoundSource::Theorem,
        warnings,
    };
    Ok(assemble(spec, ctx, toggle, draft))
}

pub(super) fn niho(spec: &FamilySpec, ctx: &FieldContext, m: u32) -> Result<CodePrediction, FamilyError> {
    if m % 4 != 1 || m < 5 {
        return Err(FamilyError::InvalidParams(format!(
            "niho needs m = 1 mod 4, m >= 5, got {m}"
        )));
    }
    let table = check_field(ctx, m)?;
    let h = (m - 1) / 4;
    let mut toggle = Toggle::new(&table);
    toggle.flip(0);
    for i in 0..1u64 << h {
        toggle.flip(i + (1 << (2 * h)));
    }
    for j in kappa_selected(h)? {
        toggle.flip(j);
    }
    let mut warnings = Vec::new();
    if m < 9 {
        warnings.push(format!("m = {m} is below the lemma's range m >= 9"));
    }
    let m_i = i64::from(m);
    let sign: i64 = if ((m - 5) / 4).is_multiple_of(2) { 1 } else { -1 };
    let base = (1i64 << ((m + 7) / 4)) + sign;
    let (closed, bound) = if m % 8 == 1 {
        ((m_i * base + 3) / 3, (1 << h) + 2)
    } else {
        ((m_i * (base - 6) + 3) / 3, 1 << h)
    };
    let draft = Draft {
        family: Family::Niho,
        params: Params {
            m,
            h: Some(h),
            e: Some((1 << (2 * h)) + (1 << h) - 1),
            ..Params::default()
        },
        closed_form_span: closed as usize,
        distance_lower_bound: bound,
        bound_source: BoundSource::Theorem,
        warnings,
    };
    Ok(assemble(spec, ctx, toggle, draft))
}

/// Largest `h` allowed by the Kasami range condition: `floor((m - 1) / 4)`
/// in all four residue classes of `m mod 4`.
pub fn kasami_h_max(m: u32) -> u32 {
    (m.saturating_sub(1)) / 4
}

/// Checks the coset facts the span lemma rests on, for `B = base + {0..2^h-1}`:
/// every member of `B` has a full-size coset, members are pairwise in
/// distinct cosets, and `B` meets the odd `j < 2^h` only at `(i, j) = (0, 1)`.
pub fn block_coset_hypotheses(table: &CosetTable, base: u64, h: u32) -> Result<(), String> {
    let m = table.m() as usize;
    let block: Vec<u64> = (0..1u64 << h).map(|i| i + base).collect();
    let mut seen = std::collections::BTreeMap::new();
    for (i, &b) in block.iter().enumerate() {
        let size = table.size_of(b as i64);
        if size != m {
            return Err(format!("coset of {b} has size {size}, not {m}"));
        }
        if let Some(prev) = seen.insert(table.leader_of(b as i64), b) {
            return Err(format!("{prev} and {b} share a coset"));
        }
        for j in (1..1u64 << h).step_by(2) {
            if table.same_coset(b as i64, j as i64) && (i, j) != (0, 1) {
                return Err(format!("{b} shares a coset with odd {j}"));
            }
        }
    }
    Ok(())
}

pub(super) fn kasami(spec: &FamilySpec, ctx: &FieldContext, m: u32, h: u32) -> Result<CodePrediction, FamilyError> {
    if h == 0 || h >= m {
        return Err(FamilyError::InvalidParams(format!(
            "kasami needs 1 <= h < m, got (m, h) = ({m}, {h})"
        )));
    }
    if gcd(u64::from(m), u64::from(h)) != 1 {
        return Err(FamilyError::InvalidParams(format!(
            "kasami needs gcd(m, h) = 1, got (m, h) = ({m}, {h})"
        )));
    }
    let table = check_field(ctx, m)?;
    let base = 1u64 << (m - h);
    let mut warnings = Vec::new();
    if h > kasami_h_max(m) {
        let reason = format!("h = {h} exceeds the range condition h <= {}", kasami_h_max(m));
        match block_coset_hypotheses(&table, base, h) {
            Ok(()) => warnings.push(format!("{reason}; coset hypotheses verified directly")),
            Err(why) => {
                return Err(FamilyError::OutsideHypotheses {
                    family: Family::Kasami,
                    reason: format!("{reason}; {why}"),
                })
            }
        }
    }
    let mut toggle = Toggle::new(&table);
    if m % 2 == 1 {
        toggle.flip(0);
    }
    for i in 0..1u64 << h {
        toggle.flip(i + base);
    }
    for j in kappa_selected(h)? {
        toggle.flip(j);
    }
    let m_i = i64::from(m);
    let (closed, bound) = if h.is_multiple_of(2) {
        ((m_i * ((1i64 << (h + 2)) - 1) + 3) / 3, (1 << h) + 2)
    } else {
        ((m_i * ((1i64 << (h + 2)) + 1 - 6) + 3) / 3, 1 << h)
    };
    let draft = Draft {
        family: Family::Kasami,
        params: Params {
            m,
            h: Some(h),
            e: Some((1 << (2 * h)) - (1 << h) + 1),
            ..Params::default()
        },
        closed_form_span: closed as usize,
        distance_lower_bound: bound,
        bound_source: BoundSource::Theorem,
        warnings,
    };
    Ok(assemble(spec, ctx, toggle, draft))
}

pub(super) fn trinomial(
    spec: &FamilySpec,
    ctx: &FieldContext,
    m: u32,
    r: u64,
    h: u32,
) -> Result<CodePrediction, FamilyError> {
    if m < 4 {
        return Err(FamilyError::InvalidParams(format!("trinomial needs m >= 4, got {m}")));
    }
    let n = (1u64 << m) - 1;
    if r == 0 || r >= n || weight2(r) != m - 1 {
        return Err(FamilyError::InvalidParams(format!(
            "trinomial needs 1 <= r <= 2^m-2 with wt(r) = m-1, got r = {r}"
        )));
    }
    if h > m.div_ceil(2) {
        return Err(FamilyError::InvalidParams(format!(
            "trinomial needs h <= ceil(m/2), got {h}"
        )));
    }
    let table = check_field(ctx, m)?;
    let mut toggle = Toggle::new(&table);
    // Tr(x^r) = Tr(x^(2^m-2)) expands with coefficient v_j on every coset
    for c in table.cosets().iter().filter(|c| c.v) {
        toggle.flip(u64::from(c.leader));
    }
    toggle.flip(1);
    if h > 0 {
        for j in kappa_selected(h)? {
            toggle.flip(j);
        }
    }
    let half = 1usize << (m - 1);
    let (closed, bound, source) = match (h, m % 2) {
        (0, 1) => (half + m as usize, 8, BoundSource::Theorem),
        (0, _) => (half - m as usize, 3, BoundSource::Theorem),
        _ => (half, 0, BoundSource::None),
    };
    let draft = Draft {
        family: Family::Trinomial,
        params: Params {
            m,
            h: Some(h),
            r: Some(r),
            ..Params::default()
        },
        closed_form_span: closed,
        distance_lower_bound: bound,
        bound_source: source,
        warnings: Vec::new(),
    };
    Ok(assemble(spec, ctx, toggle, draft))
}
