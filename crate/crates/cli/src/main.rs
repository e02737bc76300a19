use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use sbdo_core::conformal::{gn_factorize, parse_group_element};
use sbdo_core::sbdo::{build_b, build_e, operator_latex, sbdo_json, source_json};
use sbdo_core::spin::CliffordModule;
use sbdo_core::verify::{plan, CheckRecord, Ranges, Suite};
use sbdo_core::{parse_rational, Poly, Rational, Var};

const USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "sbdo")]
#[command(about = "Verify and emit conformally covariant bi-differential operators on spinors")]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Run the verification suites
    Verify {
        /// Largest dimension n (1..=4)
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=4))]
        n_max: u8,

        /// Largest order m of the operator family
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=4))]
        m_max: u8,

        /// Comma-separated suites; all when omitted
        #[arg(long, value_delimiter = ',', value_parser = parse_suite)]
        checks: Vec<Suite>,

        /// Worker threads (0 = one per core)
        #[arg(long, default_value_t = 0)]
        jobs: usize,

        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the source operator or a member of the operator family
    Emit {
        #[arg(long, value_enum)]
        what: What,

        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
        n: u8,

        /// Form degree of the target (sbdo only)
        #[arg(long, default_value_t = 0)]
        k: usize,

        /// Order (sbdo only)
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=4))]
        m: u8,

        /// A rational number or `symbolic`
        #[arg(long, default_value = "symbolic", value_parser = parse_param)]
        lambda: Param,

        #[arg(long, default_value = "symbolic", value_parser = parse_param)]
        mu: Param,

        #[arg(long, value_enum, default_value_t = EmitFormat::Json)]
        format: EmitFormat,
    },
    /// Factor a group element as nbar_v m a(r) n_u
    Factorize {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
        n: u8,

        /// Product of tokens such as `w^-1 nbar(3/5,4/5)`
        element: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitFormat {
    Json,
    Latex,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Source,
    Sbdo,
}

#[derive(Clone, Debug)]
enum Param {
    Symbolic,
    Value(Rational),
}

impl Param {
    fn poly(&self, var: Var) -> Poly {
        match self {
            Param::Symbolic => Poly::var(var),
            Param::Value(q) => Poly::from_rational(q),
        }
    }
}

fn parse_param(s: &str) -> Result<Param, String> {
    if s == "symbolic" {
        return Ok(Param::Symbolic);
    }
    parse_rational(s).map(Param::Value).map_err(|e| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: sbdo_core::Error| e.to_string())
}

/// Writes to stdout, ignoring a closed pipe.
fn out(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(USAGE)
}

fn verify(ranges: Ranges, suites: Vec<Suite>, jobs: usize, format: Format) -> ExitCode {
    let suites = if suites.is_empty() { Suite::ALL.to_vec() } else { suites };
    let checks = plan(&suites, ranges);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(p) => p,
        Err(e) => return usage(&e.to_string()),
    };
    let start = Instant::now();
    let records: Vec<CheckRecord> = pool.install(|| checks.par_iter().map(|c| c.run()).collect());
    let failed = records.iter().filter(|r| !r.passed).count();
    match format {
        Format::Text => {
            let mut text = String::new();
            for r in &records {
                let verdict = if r.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(text, "{verdict} {:<13} {:<22} {:>8} ms", r.check.name(), r.params.to_string(), r.millis);
                if !r.passed {
                    let _ = writeln!(text, "     {}", r.detail.as_deref().unwrap_or(""));
                }
            }
            let _ = write!(text, "{} checks, {failed} failed, {:.2} s", records.len(), start.elapsed().as_secs_f64());
            out(&text);
        }
        Format::Json => {
            let report = json!({
                "n_max": ranges.n_max,
                "m_max": ranges.m_max,
                "passed": failed == 0,
                "failed": failed,
                "checks": records,
            });
            out(&serde_json::to_string_pretty(&report).expect("serializable"));
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn emit(what: What, n: usize, k: usize, m: usize, lambda: &Param, mu: &Param, format: EmitFormat) -> ExitCode {
    if what == What::Sbdo && k > n {
        return usage(&format!("--k {k} exceeds --n {n}"));
    }
    let (l, u) = (lambda.poly(Var::LAMBDA), mu.poly(Var::MU));
    let module = match CliffordModule::new(n) {
        Ok(m) => m,
        Err(e) => return usage(&e.to_string()),
    };
    let built = match what {
        What::Source => build_e(&module, &l, &u),
        What::Sbdo => build_b(&module, k, &l, &u, m),
    };
    let op = match built {
        Ok(op) => op,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    let text = match (format, what) {
        (EmitFormat::Json, What::Source) => serde_json::to_string_pretty(&source_json(&op, &l, &u)).expect("serializable"),
        (EmitFormat::Json, What::Sbdo) => serde_json::to_string_pretty(&sbdo_json(&op, k, m, &l, &u)).expect("serializable"),
        (EmitFormat::Latex, _) => operator_latex(&op),
        (EmitFormat::Text, _) => op.render(),
    };
    out(&text);
    ExitCode::SUCCESS
}

fn factorize(n: usize, element: &str) -> ExitCode {
    let g = match parse_group_element(n, element) {
        Ok(g) => g,
        Err(e) => return usage(&e.to_string()),
    };
    match gn_factorize(&g) {
        Ok(f) => {
            out(&f.render());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Commands::Verify { n_max, m_max, checks, jobs, format } => {
            verify(Ranges { n_max: n_max as usize, m_max: m_max as usize }, checks, jobs, format)
        }
        Commands::Emit { what, n, k, m, lambda, mu, format } => emit(what, n as usize, k, m as usize, &lambda, &mu, format),
        Commands::Factorize { n, element } => factorize(n as usize, &element),
    }
}
