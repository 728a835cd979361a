use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

use commands::{Outcome, RunReport};

#[derive(Parser)]
#[command(
    name = "cyclo",
    version,
    about = "Binary cyclic codes from trace sequences over GF(2^m)"
)]
struct Cli {
    /// Worker threads for parallel loops.
    #[arg(long, global = true, env = "CYCLO_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum FamilyName {
    Welch,
    Power2h,
    Niho,
    Kasami,
    Trinomial,
}

#[derive(Subcommand)]
enum Command {
    /// Predict, realize and compare a family member.
    Family {
        #[arg(long, value_enum)]
        name: FamilyName,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        h: Option<u32>,
        #[arg(long)]
        r: Option<u64>,
        /// Defining polynomial, `1+x+x^4` or hex `0x13`.
        #[arg(long)]
        modulus: Option<String>,
        /// Distance search time limit in seconds.
        #[arg(long, default_value_t = 10.0)]
        budget: f64,
    },
    /// Code of `f = sum x^e` for the given exponents.
    Generic {
        #[arg(long)]
        m: u32,
        #[arg(long = "exp", required = true, num_args = 1.., value_delimiter = ',')]
        exponents: Vec<u64>,
        #[arg(long)]
        modulus: Option<String>,
        #[arg(long, default_value_t = 10.0)]
        budget: f64,
    },
    /// Defining sequence of `f`, its linear span and autocorrelation.
    Sequence {
        #[arg(long)]
        m: u32,
        #[arg(long = "exp", required = true, num_args = 1.., value_delimiter = ',')]
        exponents: Vec<u64>,
        #[arg(long)]
        modulus: Option<String>,
        /// Write the period as hex (LSB first) to this file.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Cyclotomic cosets modulo `2^m - 1`.
    Cosets {
        #[arg(long)]
        m: u32,
    },
    /// Replay the reference example table.
    VerifyPaper {
        /// Only rows of this group.
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        json: bool,
        /// Override every row's distance time limit (seconds).
        #[arg(long)]
        budget: Option<f64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("global pool configured once");
    }
    let start = Instant::now();
    let (name, outcome) = match cli.command {
        Command::Family {
            name,
            m,
            h,
            r,
            modulus,
            budget,
        } => ("family", commands::family(name, m, h, r, modulus.as_deref(), budget)),
        Command::Generic {
            m,
            exponents,
            modulus,
            budget,
        } => ("generic", commands::generic(m, &exponents, modulus.as_deref(), budget)),
        Command::Sequence {
            m,
            exponents,
            modulus,
            out,
        } => (
            "sequence",
            commands::sequence(m, &exponents, modulus.as_deref(), out.as_deref()),
        ),
        Command::Cosets { m } => ("cosets", commands::cosets(m)),
        Command::VerifyPaper { only, json, budget } => {
            return commands::verify_paper(only.as_deref(), json, budget, start);
        }
    };
    match outcome {
        Ok(Outcome { status, payload }) => {
            let report = RunReport::new(name, status, payload, start);
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
