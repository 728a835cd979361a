//! Closed-form predictions for the exponent families, and the realization
//! path that builds each code from its actual sequence and compares.

mod predict;

pub use predict::{block_coset_hypotheses, kasami_h_max};

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, BinPoly, FieldContext};
use crate::codes::{CodeError, CyclicCode, Provenance};
use crate::cosets::{CosetError, CosetTable};
use crate::seqgen::{defining_sequence, function_table, minimal_poly_gcd, PolyDesc, SeqError};

/// Largest `m` for the exhaustive differential profile.
pub const APN_MAX_M: u32 = 13;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("{family} parameters outside the lemma's hypotheses: {reason}")]
    OutsideHypotheses { family: Family, reason: String },
    #[error("field has m = {field}, parameters have m = {m}")]
    FieldMismatch { field: u32, m: u32 },
    #[error("prediction does not match the computed generator")]
    Mismatch(Box<Discrepancy>),
    #[error("differential profile needs m <= {APN_MAX_M}, got {0}")]
    ProfileTooLarge(u32),
    #[error("differential uniformity 1 is impossible in characteristic 2")]
    Planar,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Coset(#[from] CosetError),
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Welch,
    Power2h,
    Niho,
    Kasami,
    Trinomial,
    Generic,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::Welch => "welch",
            Family::Power2h => "power2h",
            Family::Niho => "niho",
            Family::Kasami => "kasami",
            Family::Trinomial => "trinomial",
            Family::Generic => "generic",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    Theorem,
    Bch,
    None,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Params {
    pub m: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u64>,
}

impl std::fmt::Display for Params {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "m={}", self.m)?;
        for (name, v) in [
            ("t", self.t.map(u64::from)),
            ("h", self.h.map(u64::from)),
            ("r", self.r),
            ("e", self.e),
        ] {
            if let Some(v) = v {
                write!(f, " {name}={v}")?;
            }
        }
        Ok(())
    }
}

/// A family member, identified by its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    /// `x^(2^t + 3)`, `m = 2t + 1`
    Welch { m: u32 },
    /// `x^(2^h - 1)`
    Power2h { m: u32, h: u32 },
    /// `x^(2^(2h) + 2^h - 1)`, `m = 4h + 1`
    Niho { m: u32 },
    /// `x^(2^(2h) - 2^h + 1)`
    Kasami { m: u32, h: u32 },
    /// `x + x^r + x^(2^h - 1)`
    Trinomial { m: u32, r: u64, h: u32 },
}

impl FamilySpec {
    pub fn m(&self) -> u32 {
        match *self {
            FamilySpec::Welch { m }
            | FamilySpec::Power2h { m, .. }
            | FamilySpec::Niho { m }
            | FamilySpec::Kasami { m, .. }
            | FamilySpec::Trinomial { m, .. } => m,
        }
    }

    pub fn family(&self) -> Family {
        match self {
            FamilySpec::Welch { .. } => Family::Welch,
            FamilySpec::Power2h { .. } => Family::Power2h,
            FamilySpec::Niho { .. } => Family::Niho,
            FamilySpec::Kasami { .. } => Family::Kasami,
            FamilySpec::Trinomial { .. } => Family::Trinomial,
        }
    }

    /// The polynomial `f` defining the sequence.
    pub fn poly_desc(&self) -> PolyDesc {
        match *self {
            FamilySpec::Welch { m } => PolyDesc::Monomial {
                e: (1 << ((m.max(1) - 1) / 2)) + 3,
            },
            FamilySpec::Power2h { h, .. } => PolyDesc::Monomial { e: (1 << h) - 1 },
            FamilySpec::Niho { m } => {
                let h = m.saturating_sub(1) / 4;
                PolyDesc::Monomial {
                    e: (1 << (2 * h)) + (1 << h) - 1,
                }
            }
            FamilySpec::Kasami { h, .. } => PolyDesc::Monomial {
                e: (1u64 << (2 * h)) - (1 << h) + 1,
            },
            FamilySpec::Trinomial { r, h, .. } => PolyDesc::Trinomial { r, h },
        }
    }

    pub fn params(&self) -> Params {
        match *self {
            FamilySpec::Welch { m } | FamilySpec::Niho { m } => Params { m, ..Params::default() },
            FamilySpec::Power2h { m, h } | FamilySpec::Kasami { m, h } => Params {
                m,
                h: Some(h),
                ..Params::default()
            },
            FamilySpec::Trinomial { m, r, h } => Params {
                m,
                h: Some(h),
                r: Some(r),
                ..Params::default()
            },
        }
    }

    pub fn predict(&self, ctx: &FieldContext) -> Result<CodePrediction, FamilyError> {
        match *self {
            FamilySpec::Welch { m } => predict::welch(self, ctx, m),
            FamilySpec::Power2h { m, h } => predict::power2h(self, ctx, m, h),
            FamilySpec::Niho { m } => predict::niho(self, ctx, m),
            FamilySpec::Kasami { m, h } => predict::kasami(self, ctx, m, h),
            FamilySpec::Trinomial { m, r, h } => predict::trinomial(self, ctx, m, r, h),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodePrediction {
    pub family: Family,
    pub params: Params,
    pub f: PolyDesc,
    pub n: usize,
    /// Degree of the predicted generator.
    pub predicted_span: usize,
    /// The lemma's span formula evaluated as printed.
    pub closed_form_span: usize,
    pub predicted_dimension: usize,
    pub predicted_generator: BinPoly,
    /// Leaders `j` of the factors `m_{alpha^{-j}}`.
    pub zero_leaders: Vec<u32>,
    /// 0 when no bound is known.
    pub distance_lower_bound: usize,
    pub bound_source: BoundSource,
    pub warnings: Vec<String>,
}

fn default_field(m: u32) -> Result<FieldContext, FamilyError> {
    Ok(FieldContext::new(m)?)
}

pub fn predict_welch(m: u32) -> Result<CodePrediction, FamilyError> {
    FamilySpec::Welch { m }.predict(&default_field(m)?)
}

pub fn predict_power2h(m: u32, h: u32) -> Result<CodePrediction, FamilyError> {
    FamilySpec::Power2h { m, h }.predict(&default_field(m)?)
}

pub fn predict_niho(m: u32) -> Result<CodePrediction, FamilyError> {
    FamilySpec::Niho { m }.predict(&default_field(m)?)
}

pub fn predict_kasami(m: u32, h: u32) -> Result<CodePrediction, FamilyError> {
    FamilySpec::Kasami { m, h }.predict(&default_field(m)?)
}

pub fn predict_trinomial(m: u32, r: u64, h: u32) -> Result<CodePrediction, FamilyError> {
    FamilySpec::Trinomial { m, r, h }.predict(&default_field(m)?)
}

/// Why a prediction and the computed generator disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub family: Family,
    pub params: Params,
    pub expected_generator: BinPoly,
    pub computed_generator: BinPoly,
    pub expected_span: usize,
    pub computed_span: usize,
    /// Leaders `j` of factors `m_{alpha^{-j}}` predicted but absent.
    pub missing_cosets: Vec<u32>,
    /// Leaders present but not predicted.
    pub extra_cosets: Vec<u32>,
}

/// Leaders `j` such that `m_{alpha^{-j}}` divides `g`.
fn factor_leaders(g: &BinPoly, ctx: &FieldContext, table: &CosetTable) -> Result<BTreeSet<u32>, FamilyError> {
    let zeros = crate::codes::zero_exponents(g, ctx.n() as usize, ctx)?;
    Ok(zeros.into_iter().map(|z| table.leader_of(-i64::from(z))).collect())
}

/// Builds the code of `f`: generator `M_s` by the gcd method. With a
/// prediction, the generator and span must match exactly.
pub fn realize(
    ctx: &FieldContext,
    f: &PolyDesc,
    prediction: Option<&CodePrediction>,
) -> Result<CyclicCode, FamilyError> {
    if let Some(p) = prediction {
        if p.params.m != ctx.m() {
            return Err(FamilyError::FieldMismatch {
                field: ctx.m(),
                m: p.params.m,
            });
        }
    }
    let seq = defining_sequence(ctx, f)?;
    let span = minimal_poly_gcd(&seq);
    let code = CyclicCode::from_generator(ctx.n() as usize, span.minimal_poly.clone())?.with_field(ctx)?;

    let provenance = match prediction {
        None => Provenance {
            family: Family::Generic.to_string(),
            params: format!("m={} f={f}", ctx.m()),
            predicted_span: None,
            computed_span: span.linear_span,
            matched: None,
            warnings: seq.notes.clone(),
        },
        Some(p) => {
            let matched = p.predicted_generator == span.minimal_poly && p.predicted_span == span.linear_span;
            if !matched {
                let table = CosetTable::build(ctx.m())?;
                let computed = factor_leaders(&span.minimal_poly, ctx, &table)?;
                let expected: BTreeSet<u32> = p.zero_leaders.iter().copied().collect();
                return Err(FamilyError::Mismatch(Box::new(Discrepancy {
                    family: p.family,
                    params: p.params.clone(),
                    expected_generator: p.predicted_generator.clone(),
                    computed_generator: span.minimal_poly,
                    expected_span: p.predicted_span,
                    computed_span: span.linear_span,
                    missing_cosets: expected.difference(&computed).copied().collect(),
                    extra_cosets: computed.difference(&expected).copied().collect(),
                })));
            }
            Provenance {
                family: p.family.to_string(),
                params: p.params.to_string(),
                predicted_span: Some(p.predicted_span),
                computed_span: span.linear_span,
                matched: Some(true),
                warnings: p.warnings.iter().chain(&seq.notes).cloned().collect(),
            }
        }
    };
    Ok(code.with_provenance(provenance))
}

/// Outcome of running a family member end to end.
#[derive(Debug, Clone)]
pub struct FamilyRun {
    pub spec: FamilySpec,
    /// `None` when the parameters fall outside the lemma and only the
    /// generic pipeline ran.
    pub prediction: Option<CodePrediction>,
    pub code: CyclicCode,
    pub warnings: Vec<String>,
}

/// Predicts, realizes and compares. Parameters outside the lemma's
/// hypotheses fall back to the generic pipeline with a warning.
pub fn run_family(spec: &FamilySpec, ctx: &FieldContext) -> Result<FamilyRun, FamilyError> {
    match spec.predict(ctx) {
        Ok(prediction) => {
            let code = realize(ctx, &spec.poly_desc(), Some(&prediction))?;
            Ok(FamilyRun {
                spec: *spec,
                warnings: prediction.warnings.clone(),
                prediction: Some(prediction),
                code,
            })
        }
        Err(FamilyError::OutsideHypotheses { reason, .. }) => {
            let code = realize(ctx, &spec.poly_desc(), None)?;
            Ok(FamilyRun {
                spec: *spec,
                prediction: None,
                code,
                warnings: vec![format!("{reason}; no prediction, generic realization only")],
            })
        }
        Err(e) => Err(e),
    }
}

/// JSON report for a prediction and its realization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub family: Family,
    pub params: Params,
    pub n: usize,
    pub k: usize,
    pub span: usize,
    /// Ascending exponents of the generator.
    pub generator: Vec<usize>,
    pub d_lower: usize,
    pub warnings: Vec<String>,
    /// `None` when no prediction was made.
    #[serde(rename = "match")]
    pub matched: Option<bool>,
}

impl FamilyReport {
    pub fn from_run(run: &FamilyRun) -> Self {
        let code = &run.code;
        let (family, params, d_lower) = match &run.prediction {
            Some(p) => (p.family, p.params.clone(), p.distance_lower_bound),
            None => (run.spec.family(), run.spec.params(), 0),
        };
        FamilyReport {
            family,
            params,
            n: code.n(),
            k: code.k(),
            span: code.redundancy(),
            generator: code.generator().exponents().collect(),
            d_lower,
            warnings: run.warnings.clone(),
            matched: code.provenance().and_then(|p| p.matched),
        }
    }

    pub fn from_discrepancy(d: &Discrepancy, warnings: Vec<String>) -> Self {
        let len = (1usize << d.params.m) - 1;
        FamilyReport {
            family: d.family,
            params: d.params.clone(),
            n: len,
            k: len - d.computed_span,
            span: d.computed_span,
            generator: d.computed_generator.exponents().collect(),
            d_lower: 0,
            warnings,
            matched: Some(false),
        }
    }
}

/// Differential uniformity `max_{a != 0, b} |{x : f(x+a) + f(x) = b}|`.
pub fn apn_profile(ctx: &FieldContext, f: &PolyDesc) -> Result<u32, FamilyError> {
    let m = ctx.m();
    if m > APN_MAX_M {
        return Err(FamilyError::ProfileTooLarge(m));
    }
    let table = function_table(ctx, f)?;
    let size = table.len();
    let worst = (1..size)
        .into_par_iter()
        .map(|a| {
            let mut hist = vec![0u32; size];
            for x in 0..size {
                hist[(table[x ^ a].0 ^ table[x].0) as usize] += 1;
            }
            hist.into_iter().max().unwrap_or(0)
        })
        .max()
        .unwrap_or(0);
    if worst == 1 {
        return Err(FamilyError::Planar);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BinPoly {
        s.parse().unwrap()
    }

    fn run(spec: FamilySpec) -> FamilyRun {
        let ctx = FieldContext::new(spec.m()).unwrap();
        run_family(&spec, &ctx).unwrap()
    }

    #[test]
    fn welch_examples() {
        let r = run(FamilySpec::Welch { m: 5 });
        let pred = r.prediction.as_ref().unwrap();
        assert_eq!(pred.predicted_generator, p("1+x^3+x^6+x^8+x^12+x^13+x^15+x^16"));
        assert_eq!((r.code.n(), r.code.k()), (31, 15));
        assert_eq!(pred.closed_form_span, 26);
        assert_eq!(pred.warnings.len(), 2);
        assert!(r.code.is_even_weight());

        let r = run(FamilySpec::Welch { m: 7 });
        let pred = r.prediction.unwrap();
        assert_eq!((pred.predicted_span, pred.closed_form_span), (36, 36));
        assert!(pred.warnings.is_empty());
        assert_eq!(r.code.k(), 91);

        assert!(matches!(predict_welch(6), Err(FamilyError::InvalidParams(_))));
    }

    #[test]
    fn power2h_examples() {
        let r = run(FamilySpec::Power2h { m: 7, h: 2 });
        assert_eq!(r.code.generator(), &p("1+x+x^2+x^3+x^4+x^5+x^6+x^8"));
        let r = run(FamilySpec::Power2h { m: 7, h: 3 });
        assert_eq!(
            r.code.generator(),
            &p("1+x^4+x^5+x^6+x^7+x^8+x^13+x^14+x^16+x^17+x^18+x^20+x^21+x^22")
        );
        let r = run(FamilySpec::Power2h { m: 6, h: 3 });
        assert_eq!(r.code.k(), 45);
        assert_eq!(r.warnings.len(), 1);
        assert!(!r.code.is_even_weight());
        assert!(predict_power2h(7, 5).is_err());
        assert!(predict_power2h(7, 1).is_err());
    }

    #[test]
    fn niho_examples() {
        let r = run(FamilySpec::Niho { m: 5 });
        assert_eq!(r.code.generator(), &p("1+x^2+x^3+x^6"));
        let pred = predict_niho(9).unwrap();
        assert_eq!((pred.predicted_span, pred.predicted_dimension), (46, 465));
        assert_eq!(pred.distance_lower_bound, 6);
        assert!(predict_niho(7).is_err());
    }

    #[test]
    fn kasami_examples() {
        let r = run(FamilySpec::Kasami { m: 7, h: 2 });
        let pred = r.prediction.as_ref().unwrap();
        assert_eq!(pred.predicted_span, 36);
        assert_eq!(pred.distance_lower_bound, 6);
        assert_eq!(pred.warnings.len(), 1);
        assert_eq!(
            r.code.generator(),
            &p("1+x^5+x^6+x^7+x^9+x^12+x^13+x^18+x^20+x^21+x^23+x^27+x^28+x^36")
        );

        let r = run(FamilySpec::Kasami { m: 5, h: 2 });
        assert!(r.prediction.is_none());
        assert_eq!(r.warnings.len(), 1);
        assert_eq!(r.code.generator(), &p("1+x+x^2+x^3+x^4+x^5+x^7+x^8+x^9+x^10+x^14+x^16"));
        assert!(matches!(
            predict_kasami(5, 2),
            Err(FamilyError::OutsideHypotheses { .. })
        ));
        assert!(matches!(predict_kasami(4, 2), Err(FamilyError::InvalidParams(_))));
        assert_eq!(predict_kasami(11, 2).unwrap().predicted_dimension, 1991);
    }

    #[test]
    fn trinomial_examples() {
        for (m, r, h, k, g) in [
            (4, 14, 0, 11, "1+x+x^4"),
            (4, 14, 1, 7, "1+x+x^3+x^4+x^5+x^7+x^8"),
            (4, 14, 2, 7, "1+x^4+x^6+x^7+x^8"),
            (5, 30, 0, 10, "1+x+x^2+x^3+x^4+x^5+x^10+x^13+x^15+x^17+x^18+x^21"),
            (5, 30, 1, 15, "1+x+x^2+x^5+x^6+x^7+x^8+x^9+x^10+x^13+x^14+x^16"),
        ] {
            let run = run(FamilySpec::Trinomial { m, r, h });
            assert_eq!(run.code.k(), k);
            assert_eq!(run.code.generator(), &p(g));
            assert!(run.warnings.is_empty());
        }
        assert!(predict_trinomial(4, 12, 0).is_err());
        assert!(predict_trinomial(4, 14, 3).is_err());
    }

    #[test]
    fn mismatch_is_reported_structurally() {
        let ctx = FieldContext::new(5).unwrap();
        let pred = FamilySpec::Welch { m: 5 }.predict(&ctx).unwrap();
        let err = realize(&ctx, &PolyDesc::Monomial { e: 3 }, Some(&pred)).unwrap_err();
        let FamilyError::Mismatch(d) = err else {
            panic!("expected a mismatch")
        };
        assert_eq!(d.expected_span, 16);
        assert_eq!(d.computed_span, 6);
        // Tr((x+1)^3) keeps only C_0 and C_3
        assert_eq!(d.missing_cosets, vec![1, 5, 7]);
        assert_eq!(d.extra_cosets, vec![3]);
        let report = FamilyReport::from_discrepancy(&d, vec![]);
        assert_eq!(report.matched, Some(false));
    }

    #[test]
    fn realize_checks_the_field() {
        let ctx = FieldContext::new(5).unwrap();
        let pred = predict_welch(7).unwrap();
        assert!(matches!(
            realize(&ctx, &pred.f, Some(&pred)),
            Err(FamilyError::FieldMismatch { .. })
        ));
    }

    #[test]
    fn generic_realization() {
        let ctx = FieldContext::new(6).unwrap();
        let code = realize(&ctx, &PolyDesc::Monomial { e: 7 }, None).unwrap();
        assert_eq!((code.n(), code.k()), (63, 45));
        assert_eq!(code.provenance().unwrap().matched, None);
    }

    #[test]
    fn report_json_shape() {
        let r = run(FamilySpec::Niho { m: 5 });
        let v = serde_json::to_value(FamilyReport::from_run(&r)).unwrap();
        assert_eq!(v["family"], "niho");
        assert_eq!(v["n"], 31);
        assert_eq!(v["k"], 25);
        assert_eq!(v["match"], true);
        assert_eq!(v["generator"], serde_json::json!([0, 2, 3, 6]));
        assert_eq!(v["params"]["m"], 5);
    }

    #[test]
    fn apn_examples() {
        let ctx = FieldContext::new(5).unwrap();
        assert_eq!(apn_profile(&ctx, &PolyDesc::Monomial { e: 3 }).unwrap(), 2);
        assert_eq!(apn_profile(&ctx, &PolyDesc::Monomial { e: 30 }).unwrap(), 2);
        assert_eq!(apn_profile(&ctx, &PolyDesc::Monomial { e: 1 }).unwrap(), 32);
        let big = FieldContext::new(14).unwrap();
        assert!(matches!(
            apn_profile(&big, &PolyDesc::Monomial { e: 3 }),
            Err(FamilyError::ProfileTooLarge(14))
        ));
    }
}
