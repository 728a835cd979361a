//! Reference rows for the published example codes and a runner that checks
//! each one end to end: prediction, realized generator, dimension, distance.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::algebra::{BinPoly, FieldContext};
use crate::codes::{bch_bound, min_distance, sphere_packing_check, Budget, CyclicCode, DistanceResult};
use crate::families::{realize, run_family, FamilySpec};
use crate::seqgen::PolyDesc;

#[derive(Debug, Clone, Copy)]
pub enum Source {
    Family(FamilySpec),
    /// `f = sum x^e` over the listed exponents.
    Generic {
        m: u32,
        exponents: &'static [u64],
    },
    /// Dual of a family code.
    Dual(FamilySpec),
}

#[derive(Debug, Clone, Copy)]
pub enum Expect {
    Exact(usize),
    /// Exact value required, somewhere in the closed range.
    ExactIn(usize, usize),
    /// Certified lower bound (BCH and engine) at least this.
    AtLeast(usize),
}

#[derive(Debug, Clone, Copy)]
pub struct GoldenRow {
    pub id: &'static str,
    /// Filter key for `--only`.
    pub group: &'static str,
    pub source: Source,
    pub n: usize,
    pub k: usize,
    pub generator: Option<&'static str>,
    pub distance: Expect,
    pub expect_warning: bool,
    pub sphere_tight: Option<bool>,
    pub budget: Duration,
}

const SHORT: Duration = Duration::from_secs(10);
const LONG: Duration = Duration::from_secs(120);

const fn row(id: &'static str, group: &'static str, source: Source, nk: (usize, usize), distance: Expect) -> GoldenRow {
    GoldenRow {
        id,
        group,
        source,
        n: nk.0,
        k: nk.1,
        generator: None,
        distance,
        expect_warning: false,
        sphere_tight: None,
        budget: SHORT,
    }
}

impl GoldenRow {
    const fn generator(mut self, g: &'static str) -> Self {
        self.generator = Some(g);
        self
    }

    const fn warned(mut self) -> Self {
        self.expect_warning = true;
        self
    }

    const fn tight(mut self) -> Self {
        self.sphere_tight = Some(true);
        self
    }

    const fn long(mut self) -> Self {
        self.budget = LONG;
        self
    }
}

use Expect::*;
use FamilySpec::*;

pub const WELCH5_G: &str = "1+x^3+x^6+x^8+x^12+x^13+x^15+x^16";
pub const WELCH7_G: &str = "1+x+x^3+x^5+x^6+x^7+x^9+x^11+x^12+x^21+x^24+x^25+x^26+x^27+x^28+x^29+x^32+x^33+x^34+x^36";
pub const KASAMI52_G: &str = "1+x+x^2+x^3+x^4+x^5+x^7+x^8+x^9+x^10+x^14+x^16";
pub const KASAMI72_G: &str = "1+x^5+x^6+x^7+x^9+x^12+x^13+x^18+x^20+x^21+x^23+x^27+x^28+x^36";
pub const NIHO9_G: &str =
    "1+x+x^2+x^4+x^7+x^12+x^14+x^19+x^20+x^21+x^22+x^24+x^25+x^26+x^27+x^28+x^33+x^35+x^36+x^39+x^40+x^41+x^45+x^46";

pub const ROWS: [GoldenRow; 18] = [
    row("welch-m5", "welch", Source::Family(Welch { m: 5 }), (31, 15), Exact(8))
        .generator(WELCH5_G)
        .warned(),
    row("welch-m7", "welch", Source::Family(Welch { m: 7 }), (127, 91), Exact(8))
        .generator(WELCH7_G)
        .long(),
    row(
        "power2h-7-2",
        "power2h",
        Source::Family(Power2h { m: 7, h: 2 }),
        (127, 119),
        Exact(4),
    )
    .generator("1+x+x^2+x^3+x^4+x^5+x^6+x^8"),
    row(
        "power2h-7-3",
        "power2h",
        Source::Family(Power2h { m: 7, h: 3 }),
        (127, 105),
        ExactIn(4, 8),
    )
    .generator("1+x^4+x^5+x^6+x^7+x^8+x^13+x^14+x^16+x^17+x^18+x^20+x^21+x^22")
    .long(),
    row(
        "power2h-6-3",
        "power2h",
        Source::Family(Power2h { m: 6, h: 3 }),
        (63, 45),
        Exact(3),
    )
    .warned(),
    row("niho-m5", "niho", Source::Family(Niho { m: 5 }), (31, 25), Exact(4))
        .generator("1+x^2+x^3+x^6")
        .warned(),
    row("niho-m9", "niho", Source::Family(Niho { m: 9 }), (511, 465), AtLeast(6)).generator(NIHO9_G),
    row(
        "kasami-5-2",
        "kasami",
        Source::Family(Kasami { m: 5, h: 2 }),
        (31, 15),
        Exact(8),
    )
    .generator(KASAMI52_G)
    .warned(),
    row(
        "kasami-7-2",
        "kasami",
        Source::Family(Kasami { m: 7, h: 2 }),
        (127, 91),
        Exact(8),
    )
    .generator(KASAMI72_G)
    .warned()
    .long(),
    row(
        "trinomial-4-14-1",
        "trinomial",
        Source::Family(Trinomial { m: 4, r: 14, h: 1 }),
        (15, 7),
        Exact(3),
    )
    .generator("1+x+x^3+x^4+x^5+x^7+x^8"),
    row(
        "trinomial-4-14-0",
        "trinomial",
        Source::Family(Trinomial { m: 4, r: 14, h: 0 }),
        (15, 11),
        Exact(3),
    )
    .generator("1+x+x^4")
    .tight(),
    row(
        "trinomial-4-14-2",
        "trinomial",
        Source::Family(Trinomial { m: 4, r: 14, h: 2 }),
        (15, 7),
        Exact(5),
    )
    .generator("1+x^4+x^6+x^7+x^8"),
    row(
        "trinomial-5-30-0",
        "trinomial",
        Source::Family(Trinomial { m: 5, r: 30, h: 0 }),
        (31, 10),
        Exact(12),
    )
    .generator("1+x+x^2+x^3+x^4+x^5+x^10+x^13+x^15+x^17+x^18+x^21"),
    row(
        "trinomial-5-30-1",
        "trinomial",
        Source::Family(Trinomial { m: 5, r: 30, h: 1 }),
        (31, 15),
        Exact(8),
    )
    .generator("1+x+x^2+x^5+x^6+x^7+x^8+x^9+x^10+x^13+x^14+x^16"),
    row(
        "generic-m6-e7",
        "generic",
        Source::Generic { m: 6, exponents: &[7] },
        (63, 45),
        Exact(3),
    ),
    row(
        "generic-m6-e5",
        "generic",
        Source::Generic { m: 6, exponents: &[5] },
        (63, 57),
        Exact(3),
    )
    .tight(),
    row(
        "dual-welch-m5",
        "dual",
        Source::Dual(Welch { m: 5 }),
        (31, 16),
        Exact(7),
    ),
    row(
        "dual-kasami-5-2",
        "dual",
        Source::Dual(Kasami { m: 5, h: 2 }),
        (31, 16),
        Exact(7),
    ),
];

#[derive(Debug, Clone, Serialize)]
pub struct RowResult {
    pub id: String,
    pub group: String,
    pub pass: bool,
    pub n: usize,
    pub k: usize,
    /// Ascending exponents of the realized generator.
    pub generator: Vec<usize>,
    /// `None` when the row has no prediction.
    pub prediction_match: Option<bool>,
    pub bch: usize,
    pub distance: Option<DistanceResult>,
    pub warnings: Vec<String>,
    /// Failed checks; empty on pass.
    pub failures: Vec<String>,
    pub elapsed_ms: u128,
}

struct Built {
    code: CyclicCode,
    ctx: FieldContext,
    prediction_match: Option<bool>,
    warnings: Vec<String>,
}

fn build(source: &Source) -> Result<Built, String> {
    let family = |spec: &FamilySpec| -> Result<(FieldContext, crate::families::FamilyRun), String> {
        let ctx = FieldContext::new(spec.m()).map_err(|e| e.to_string())?;
        let run = run_family(spec, &ctx).map_err(|e| e.to_string())?;
        Ok((ctx, run))
    };
    match source {
        Source::Family(spec) => {
            let (ctx, run) = family(spec)?;
            Ok(Built {
                prediction_match: run.code.provenance().and_then(|p| p.matched),
                warnings: run.warnings,
                code: run.code,
                ctx,
            })
        }
        Source::Dual(spec) => {
            let (ctx, run) = family(spec)?;
            Ok(Built {
                prediction_match: None,
                warnings: Vec::new(),
                code: run.code.dual(),
                ctx,
            })
        }
        Source::Generic { m, exponents } => {
            let ctx = FieldContext::new(*m).map_err(|e| e.to_string())?;
            let code = realize(&ctx, &PolyDesc::exponents(exponents), None).map_err(|e| e.to_string())?;
            Ok(Built {
                prediction_match: None,
                warnings: Vec::new(),
                code,
                ctx,
            })
        }
    }
}

/// Runs one row; `budget` overrides the row's own time limit.
pub fn run_row(row: &GoldenRow, budget: Option<Duration>) -> RowResult {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut result = RowResult {
        id: row.id.to_string(),
        group: row.group.to_string(),
        pass: false,
        n: 0,
        k: 0,
        generator: Vec::new(),
        prediction_match: None,
        bch: 0,
        distance: None,
        warnings: Vec::new(),
        failures: Vec::new(),
        elapsed_ms: 0,
    };
    let built = match build(&row.source) {
        Ok(b) => b,
        Err(e) => {
            result.failures.push(e);
            result.elapsed_ms = start.elapsed().as_millis();
            return result;
        }
    };
    let code = &built.code;
    result.n = code.n();
    result.k = code.k();
    result.generator = code.generator().exponents().collect();
    result.prediction_match = built.prediction_match;
    result.warnings = built.warnings.clone();

    if (code.n(), code.k()) != (row.n, row.k) {
        failures.push(format!("[{}, {}] expected [{}, {}]", code.n(), code.k(), row.n, row.k));
    }
    if let Some(g) = row.generator {
        let expected: BinPoly = g.parse().expect("golden generator parses");
        if code.generator() != &expected {
            failures.push(format!("generator {} expected {expected}", code.generator()));
        }
    }
    if built.prediction_match == Some(false) {
        failures.push("prediction mismatch".into());
    }
    if row.expect_warning && built.warnings.is_empty() {
        failures.push("expected a warning".into());
    }

    let bch = bch_bound(code, &built.ctx).unwrap_or(0);
    result.bch = bch;
    let limit = budget.unwrap_or(row.budget);
    match min_distance(code, &Budget::default().with_time_limit(limit)) {
        Ok(d) => {
            if d.lower < bch {
                failures.push(format!("distance lower {} below BCH {bch}", d.lower));
            }
            match row.distance {
                Exact(want) => {
                    if d.exact_distance() != Some(want) {
                        failures.push(format!("d = [{}, {}] expected exactly {want}", d.lower, d.upper));
                    }
                }
                ExactIn(lo, hi) => match d.exact_distance() {
                    Some(v) if (lo..=hi).contains(&v) => {}
                    _ => failures.push(format!("d = [{}, {}] expected exact in [{lo}, {hi}]", d.lower, d.upper)),
                },
                AtLeast(want) => {
                    if bch < want || d.lower < want {
                        failures.push(format!("lower bound {} (BCH {bch}) expected >= {want}", d.lower));
                    }
                }
            }
            if let (Some(tight), Some(v)) = (row.sphere_tight, d.exact_distance()) {
                if sphere_packing_check(code.n(), code.k(), v).tight != tight {
                    failures.push("sphere-packing tightness differs".into());
                }
            }
            result.distance = Some(d);
        }
        Err(e) => failures.push(e.to_string()),
    }

    result.pass = failures.is_empty();
    result.failures = failures;
    result.elapsed_ms = start.elapsed().as_millis();
    result
}

/// Rows whose group matches `only` (all rows when `None`).
pub fn select(only: Option<&str>) -> Vec<&'static GoldenRow> {
    ROWS.iter().filter(|r| only.is_none_or(|g| r.group == g)).collect()
}

pub fn groups() -> Vec<&'static str> {
    let mut g: Vec<&str> = ROWS.iter().map(|r| r.group).collect();
    g.dedup();
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_shape() {
        assert_eq!(ROWS.len(), 18);
        assert_eq!(select(Some("welch")).len(), 2);
        assert_eq!(select(None).len(), 18);
        assert!(select(Some("nope")).is_empty());
        assert_eq!(
            groups(),
            ["welch", "power2h", "niho", "kasami", "trinomial", "generic", "dual"]
        );
        for r in ROWS {
            if let Some(g) = r.generator {
                let g: BinPoly = g.parse().unwrap();
                assert_eq!(g.degree(), Some(r.n - r.k), "{}", r.id);
            }
        }
    }

    #[test]
    fn small_rows_pass() {
        for r in ROWS.iter().filter(|r| r.n <= 63) {
            let res = run_row(r, None);
            assert!(res.pass, "{}: {:?}", r.id, res.failures);
        }
    }
}
