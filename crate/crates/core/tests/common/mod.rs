#![allow(dead_code)]

use cyclo::cosets::{weight2, CosetTable};
use cyclo::families::{kasami_h_max, FamilySpec};
use cyclo::seqgen::{berlekamp_massey, defining_sequence, minimal_poly_expansion, minimal_poly_gcd};
use cyclo::FieldContext;

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Every family instance of the cross-method sweep.
pub fn sweep_specs() -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for m in [5, 7, 9, 11] {
        out.push(FamilySpec::Welch { m });
    }
    for m in 3..=11u32 {
        for h in 2..=m.div_ceil(2) {
            out.push(FamilySpec::Power2h { m, h });
        }
    }
    for m in [5, 9] {
        out.push(FamilySpec::Niho { m });
    }
    for m in 3..=11u32 {
        for h in 1..=kasami_h_max(m) {
            if gcd(m, h) == 1 {
                out.push(FamilySpec::Kasami { m, h });
            }
        }
    }
    for m in 4..=9u32 {
        let n = (1u64 << m) - 1;
        for r in (0..n).filter(|&r| weight2(r) == m - 1) {
            for h in 0..=m.div_ceil(2) {
                out.push(FamilySpec::Trinomial { m, r, h });
            }
        }
    }
    out
}

/// Prediction against the gcd, expansion and Berlekamp-Massey results:
/// identical span and identical polynomial.
pub fn check_instance(spec: &FamilySpec) -> Result<usize, String> {
    let m = spec.m();
    let ctx = FieldContext::new(m).map_err(|e| e.to_string())?;
    let table = CosetTable::build(m).map_err(|e| e.to_string())?;
    let pred = spec.predict(&ctx).map_err(|e| format!("{spec:?}: {e}"))?;
    let seq = defining_sequence(&ctx, &spec.poly_desc()).map_err(|e| e.to_string())?;
    let results = [
        minimal_poly_gcd(&seq),
        minimal_poly_expansion(&ctx, &table, &seq).map_err(|e| e.to_string())?,
        berlekamp_massey(&seq.repeated(2)),
    ];
    for r in &results {
        if r.linear_span != pred.predicted_span || r.minimal_poly != pred.predicted_generator {
            return Err(format!(
                "{spec:?}: {:?} span {} vs predicted {}",
                r.method, r.linear_span, pred.predicted_span
            ));
        }
    }
    Ok(pred.predicted_span)
}

/// Span shared by the three methods; `Err` when they disagree.
pub fn spans_agree(ctx: &FieldContext, seq: &cyclo::seqgen::DefiningSequence) -> Result<usize, String> {
    let table = CosetTable::build(ctx.m()).map_err(|e| e.to_string())?;
    let a = minimal_poly_gcd(seq);
    let b = minimal_poly_expansion(ctx, &table, seq).map_err(|e| e.to_string())?;
    let c = berlekamp_massey(&seq.repeated(2));
    if a.minimal_poly != b.minimal_poly || a.minimal_poly != c.minimal_poly || a.linear_span != c.linear_span {
        return Err(format!("spans {} {} {}", a.linear_span, b.linear_span, c.linear_span));
    }
    Ok(a.linear_span)
}
