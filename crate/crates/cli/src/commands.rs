use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cyclo::codes::{bch_bound, min_distance, Budget, CyclicCode};
use cyclo::cosets::CosetTable;
use cyclo::families::{realize, run_family, FamilyError, FamilyReport, FamilySpec};
use cyclo::golden::{self, RowResult};
use cyclo::seqgen::{
    berlekamp_massey, defining_sequence, max_off_peak_autocorrelation, minimal_poly_expansion, minimal_poly_gcd,
    PolyDesc,
};
use cyclo::{BinPoly, FieldContext};
use serde::Serialize;
use serde_json::{json, Value};

use crate::FamilyName;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Partial,
}

#[derive(Serialize)]
pub struct RunReport {
    pub command: String,
    pub status: Status,
    pub payload: Value,
    pub elapsed_s: f64,
}

impl RunReport {
    pub fn new(command: &str, status: Status, payload: Value, start: Instant) -> Self {
        RunReport {
            command: command.to_string(),
            status,
            payload,
            elapsed_s: start.elapsed().as_secs_f64(),
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        match self.status {
            Status::Pass => ExitCode::SUCCESS,
            Status::Fail | Status::Partial => ExitCode::from(1),
        }
    }
}

pub struct Outcome {
    pub status: Status,
    pub payload: Value,
}

/// Usage errors; semantic failures travel inside `Outcome`.
pub type CmdResult = Result<Outcome, String>;

fn budget(secs: f64) -> Result<Budget, String> {
    if !secs.is_finite() || secs < 0.0 {
        return Err(format!("budget must be a nonnegative number of seconds, got {secs}"));
    }
    Ok(Budget::default().with_time_limit(Duration::from_secs_f64(secs)))
}

fn field(m: u32, modulus: Option<&str>) -> Result<FieldContext, String> {
    let ctx = match modulus {
        None => FieldContext::new(m),
        Some(s) => {
            let p = if s.starts_with("0x") || s.starts_with("0X") {
                BinPoly::from_hex(s)
            } else {
                s.parse()
            }
            .map_err(|e| e.to_string())?;
            FieldContext::with_modulus(m, &p)
        }
    };
    ctx.map_err(|e| e.to_string())
}

fn code_json(code: &CyclicCode, ctx: &FieldContext, budget: &Budget) -> Result<Value, String> {
    let bch = bch_bound(code, ctx).map_err(|e| e.to_string())?;
    let distance = min_distance(code, budget).map_err(|e| e.to_string())?;
    Ok(json!({
        "n": code.n(),
        "k": code.k(),
        "generator": code.generator().to_string(),
        "generator_hex": code.generator().to_hex(),
        "bch": bch,
        "distance": distance,
    }))
}

fn spec_of(name: FamilyName, m: u32, h: Option<u32>, r: Option<u64>) -> Result<FamilySpec, String> {
    let need_h = |fam: &str| h.ok_or_else(|| format!("{fam} needs --h"));
    Ok(match name {
        FamilyName::Welch => FamilySpec::Welch { m },
        FamilyName::Niho => FamilySpec::Niho { m },
        FamilyName::Power2h => FamilySpec::Power2h {
            m,
            h: need_h("power2h")?,
        },
        FamilyName::Kasami => FamilySpec::Kasami {
            m,
            h: need_h("kasami")?,
        },
        FamilyName::Trinomial => FamilySpec::Trinomial {
            m,
            r: r.ok_or("trinomial needs --r")?,
            h: need_h("trinomial")?,
        },
    })
}

pub fn family(name: FamilyName, m: u32, h: Option<u32>, r: Option<u64>, modulus: Option<&str>, secs: f64) -> CmdResult {
    let spec = spec_of(name, m, h, r)?;
    let budget = budget(secs)?;
    let ctx = field(m, modulus)?;
    let run = match run_family(&spec, &ctx) {
        Ok(run) => run,
        Err(FamilyError::Mismatch(d)) => {
            let warnings = spec.predict(&ctx).map(|p| p.warnings).unwrap_or_default();
            return Ok(Outcome {
                status: Status::Fail,
                payload: json!({
                    "report": FamilyReport::from_discrepancy(&d, warnings),
                    "discrepancy": d,
                }),
            });
        }
        Err(e @ FamilyError::Code(_)) => {
            return Ok(Outcome {
                status: Status::Fail,
                payload: json!({ "error": e.to_string() }),
            })
        }
        Err(e) => return Err(e.to_string()),
    };
    let report = FamilyReport::from_run(&run);
    let status = if report.matched == Some(false) {
        Status::Fail
    } else {
        Status::Pass
    };
    Ok(Outcome {
        status,
        payload: json!({
            "report": report,
            "prediction": run.prediction,
            "code": code_json(&run.code, &ctx, &budget)?,
        }),
    })
}

pub fn generic(m: u32, exponents: &[u64], modulus: Option<&str>, secs: f64) -> CmdResult {
    let budget = budget(secs)?;
    let ctx = field(m, modulus)?;
    let f = PolyDesc::exponents(exponents);
    let code = match realize(&ctx, &f, None) {
        Ok(code) => code,
        Err(e @ FamilyError::Code(_)) => {
            return Ok(Outcome {
                status: Status::Fail,
                payload: json!({ "error": e.to_string() }),
            })
        }
        Err(e) => return Err(e.to_string()),
    };
    Ok(Outcome {
        status: Status::Pass,
        payload: json!({
            "f": f.to_string(),
            "zero_exponents": code.zero_exponents(),
            "code": code_json(&code, &ctx, &budget)?,
        }),
    })
}

pub fn sequence(m: u32, exponents: &[u64], modulus: Option<&str>, out: Option<&Path>) -> CmdResult {
    let ctx = field(m, modulus)?;
    let table = CosetTable::build(m).map_err(|e| e.to_string())?;
    let f = PolyDesc::exponents(exponents);
    let seq = defining_sequence(&ctx, &f).map_err(|e| e.to_string())?;
    let spans = [
        minimal_poly_gcd(&seq),
        minimal_poly_expansion(&ctx, &table, &seq).map_err(|e| e.to_string())?,
        berlekamp_massey(&seq.repeated(2)),
    ];
    let agree = spans
        .iter()
        .all(|s| s.minimal_poly == spans[0].minimal_poly && s.linear_span == spans[0].linear_span);
    let hex = seq.to_hex();
    if let Some(path) = out {
        std::fs::write(path, format!("{hex}\n")).map_err(|e| format!("writing {}: {e}", path.display()))?;
    }
    Ok(Outcome {
        status: if agree { Status::Pass } else { Status::Fail },
        payload: json!({
            "m": m,
            "n": seq.len(),
            "f": f.to_string(),
            "hex": hex,
            "span": spans[0].linear_span,
            "spans": spans,
            "agree": agree,
            "max_off_peak_autocorrelation": max_off_peak_autocorrelation(&seq),
            "notes": seq.notes,
            "out": out.map(|p| p.display().to_string()),
        }),
    })
}

pub fn cosets(m: u32) -> CmdResult {
    let table = CosetTable::build(m).map_err(|e| e.to_string())?;
    Ok(Outcome {
        status: Status::Pass,
        payload: serde_json::to_value(table.cosets()).expect("cosets serialize"),
    })
}

fn row_line(r: &RowResult) -> String {
    let d = match &r.distance {
        Some(d) if d.exact => format!("d={}", d.upper),
        Some(d) => format!("d in [{}, {}]", d.lower, d.upper),
        None => "d=?".into(),
    };
    let mut line = format!(
        "{} {:<18} [{}, {}] {:<12} {:>7.2}s",
        if r.pass { "PASS" } else { "FAIL" },
        r.id,
        r.n,
        r.k,
        d,
        r.elapsed_ms as f64 / 1000.0
    );
    if !r.failures.is_empty() {
        line.push_str("  ");
        line.push_str(&r.failures.join("; "));
    }
    line
}

pub fn verify_paper(only: Option<&str>, json_out: bool, secs: Option<f64>, start: Instant) -> ExitCode {
    if let Some(g) = only {
        if !golden::groups().contains(&g) {
            eprintln!(
                "error: unknown group {g:?}; expected one of {}",
                golden::groups().join(", ")
            );
            return ExitCode::from(2);
        }
    }
    let limit = match secs.map(budget).transpose() {
        Ok(b) => b.map(|b| b.time_limit),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let rows = golden::select(only);
    let mut results = Vec::with_capacity(rows.len());
    for row in rows {
        let r = golden::run_row(row, limit);
        if !json_out {
            println!("{}", row_line(&r));
        }
        results.push(r);
    }
    let passed = results.iter().filter(|r| r.pass).count();
    let status = match passed {
        p if p == results.len() => Status::Pass,
        0 => Status::Fail,
        _ => Status::Partial,
    };
    let summary = format!("{passed}/{} pass", results.len());
    let report = RunReport::new(
        "verify-paper",
        status,
        json!({ "summary": summary, "rows": results }),
        start,
    );
    if json_out {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        println!("{summary}");
    }
    report.exit_code()
}
