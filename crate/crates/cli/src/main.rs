//! `bifib`: generate bivariate Fibonacci/Lucas polynomials, coefficient
//! tables and decompositions, and run the verification suite.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use std::process::ExitCode;
use std::time::Instant;

use bifib_core::bases::{self, coordinate_matrix, det_exact, pairing, telescoping_det};
use bifib_core::coefficients::{self, TableFormat};
use bifib_core::specializations::{chebyshev_t, chebyshev_u};
use bifib_core::{
    operators, sequences, BasisFamily, BasisSpec, Check, CoeffFamily, CoeffTriangle, Error, Method,
    Report, SequenceKind, SequenceTerm, Sequences,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "bifib", version, about = "Bivariate Fibonacci and Lucas polynomial toolkit")]
struct Cli {
    /// Refuse indices above this bound.
    #[arg(long, global = true, default_value_t = 500)]
    max_n: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print U_n or V_n.
    Gen {
        kind: SequenceKind,
        n: usize,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// Print a coefficient triangle for rows up to n_max.
    Table {
        family: CoeffFamily,
        n_max: usize,
        /// text, csv, json or latex
        format_pos: Option<TableFormat>,
        #[arg(long = "format")]
        format: Option<TableFormat>,
        #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
        method: MethodArg,
    },
    /// Decompose U_i or V_i over a special basis.
    Decompose {
        kind: SequenceKind,
        index: usize,
        family: BasisFamily,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// Exact determinant of a basis over the canonical basis.
    Det {
        family: BasisFamily,
        n: u32,
        /// Also compute it by the column-telescoping reduction.
        #[arg(long)]
        telescoping: bool,
    },
    /// Run verification checks for all orders up to n_max.
    Verify {
        n_max: usize,
        #[arg(value_enum, default_value_t = Scope::All)]
        scope: Scope,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// Chebyshev T_n or U_n obtained by specialization.
    Chebyshev {
        #[arg(value_enum)]
        kind: ChebyshevKind,
        n: usize,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Closed,
    Recurrence,
    Oracle,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Scope {
    All,
    Lemma1,
    Lemma2,
    Relations,
    Theorems,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ChebyshevKind {
    #[value(name = "T", alias = "t")]
    T,
    #[value(name = "U", alias = "u")]
    U,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SingularMatrix | Error::IntegralityViolation(_) | Error::Internal(_) => {
                Failure::Check(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Check(msg)) => {
            eprint!("{msg}");
            if !msg.ends_with('\n') {
                eprintln!();
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn guard(n: usize, max_n: usize) -> Result<(), Failure> {
    if n > max_n {
        return Err(Failure::Usage(format!("{n} exceeds --max-n {max_n}")));
    }
    Ok(())
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Gen { kind, n, format } => {
            guard(*n, cli.max_n)?;
            let p = Sequences::new().term(*kind, *n).clone();
            Ok(match format {
                OutFormat::Text => format!("{p}\n"),
                OutFormat::Json => format!("{}\n", p.to_json()),
            })
        }
        Command::Table {
            family,
            n_max,
            format_pos,
            format,
            method,
        } => {
            guard(*n_max, cli.max_n)?;
            let format = match (format_pos, format) {
                (Some(a), Some(b)) if a != b => {
                    return Err(Failure::Usage("conflicting table formats".into()))
                }
                (Some(f), _) | (None, Some(f)) => *f,
                (None, None) => TableFormat::Text,
            };
            table(*family, *n_max, format, *method)
        }
        Command::Decompose {
            kind,
            index,
            family,
            format,
        } => {
            guard(*index, cli.max_n)?;
            let term = SequenceTerm::new(*kind, *index);
            let spec = pairing(term, *family)?;
            let mut seqs = Sequences::new();
            let target = term.eval(&mut seqs);
            let d = bases::decompose(&target, spec, &mut seqs)?;
            Ok(match format {
                OutFormat::Text => format!("{}\n", d.render_identity(term)),
                OutFormat::Json => format!("{}\n", d.to_json()),
            })
        }
        Command::Det { family, n, telescoping } => {
            guard(*n as usize, cli.max_n)?;
            let spec = BasisSpec::new(*family, *n);
            let mut seqs = Sequences::new();
            let det = det_exact(&coordinate_matrix(spec, &mut seqs)?)?;
            let mut out = format!("det({family},{n}) = {det}\n");
            if *telescoping {
                let t = telescoping_det(spec, &mut seqs)?;
                out.push_str(&format!("telescoping: {t}\n"));
                if t != det {
                    return Err(Failure::Check(format!("{out}determinants disagree\n")));
                }
            }
            Ok(out)
        }
        Command::Verify { n_max, scope, format } => {
            guard(*n_max, cli.max_n)?;
            if *n_max < 1 {
                return Err(Failure::Usage("verify needs n_max >= 1".into()));
            }
            verify(*n_max, *scope, *format)
        }
        Command::Chebyshev { kind, n, format } => {
            guard(*n, cli.max_n)?;
            let p = match kind {
                ChebyshevKind::T => chebyshev_t(*n),
                ChebyshevKind::U => chebyshev_u(*n),
            };
            Ok(match format {
                OutFormat::Text => format!("{p}\n"),
                OutFormat::Json => format!("{}\n", p.to_json()),
            })
        }
    }
}

fn table(family: CoeffFamily, n_max: usize, format: TableFormat, method: MethodArg) -> Outcome {
    let mut seqs = Sequences::new();
    let single = match method {
        MethodArg::Closed => Some(Method::Closed),
        MethodArg::Recurrence => Some(Method::Recurrence),
        MethodArg::Oracle => Some(Method::Oracle),
        MethodArg::All => None,
    };
    if let Some(m) = single {
        return Ok(coefficients::triangle(family, n_max, m, &mut seqs)?.render(format));
    }
    let all: Vec<CoeffTriangle> = Method::ALL
        .iter()
        .map(|&m| coefficients::triangle(family, n_max, m, &mut seqs))
        .collect::<Result<_, _>>()?;
    let diff = triangle_diff(&all);
    if diff.is_empty() {
        Ok(all[0].render(format))
    } else {
        Err(Failure::Check(diff))
    }
}

fn triangle_diff(all: &[CoeffTriangle]) -> String {
    let base = &all[0];
    let mut out = String::new();
    for n in base.first_n..=base.last_n().unwrap_or(0) {
        let rows: Vec<&[_]> = all.iter().map(|t| t.row(n).unwrap_or(&[])).collect();
        let width = rows.iter().map(|r| r.len()).max().unwrap_or(0);
        for k in 0..width {
            let cells: Vec<String> = rows
                .iter()
                .map(|r| r.get(k).map_or("-".to_string(), |v| v.to_string()))
                .collect();
            if cells.iter().any(|c| c != &cells[0]) {
                let named: Vec<String> = all
                    .iter()
                    .zip(&cells)
                    .map(|(t, c)| format!("{}={c}", t.method))
                    .collect();
                out.push_str(&format!("n={n} k={k}: {}\n", named.join(" ")));
            }
        }
    }
    out
}

fn verify_report(n_max: usize, scope: Scope) -> Report {
    let mut report = Report::new();
    let wants = |s: Scope| scope == Scope::All || scope == s;
    if wants(Scope::Lemma1) {
        report.extend(bases::check_lemma1(n_max as u32));
    }
    if wants(Scope::Lemma2) {
        report.extend(sequences::check_lemma2(n_max));
    }
    if wants(Scope::Relations) {
        report.extend(operators::check_relations(n_max));
        report.extend(operators::check_shift_law(n_max));
    }
    if wants(Scope::Theorems) {
        let mut seqs = Sequences::new();
        for family in CoeffFamily::ALL {
            report.extend(coefficients::cross_check(family, n_max, &mut seqs));
        }
    }
    report
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    schema: u32,
    scope: Scope,
    n_max: usize,
    passed: bool,
    total: usize,
    failed: usize,
    checks: &'a [Check],
    /// Varies between runs; excluded from golden comparisons.
    non_golden: Timing,
}

#[derive(Serialize)]
struct Timing {
    elapsed_ms: u128,
}

fn verify(n_max: usize, scope: Scope, format: OutFormat) -> Outcome {
    let start = Instant::now();
    let report = verify_report(n_max, scope);
    let failed = report.failures().count();
    let out = match format {
        OutFormat::Text => {
            let mut s = String::new();
            for c in &report.checks {
                if c.passed {
                    s.push_str(&format!("PASS {}\n", c.name));
                } else {
                    s.push_str(&format!("FAIL {}: {}\n", c.name, c.detail));
                }
            }
            s.push_str(&format!("{} checks, {failed} failed\n", report.len()));
            s
        }
        OutFormat::Json => {
            let doc = VerifyJson {
                schema: 1,
                scope,
                n_max,
                passed: failed == 0,
                total: report.len(),
                failed,
                checks: &report.checks,
                non_golden: Timing {
                    elapsed_ms: start.elapsed().as_millis(),
                },
            };
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("report serializes"))
        }
    };
    if failed == 0 {
        Ok(out)
    } else {
        Err(Failure::Check(out))
    }
}
