//! `qrsv`: run the identity catalogue, evaluate expressions and Nahm sums.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qrsv_core::expr::{eval_padded, eval_str};
use qrsv_core::nahm::{nahm_sum, NahmSpec};
use qrsv_core::registry::{get_check, list_checks, run_all, run_selected};
use qrsv_core::{CheckReport, Error, Rational, Status};

/// Order used by `eval` and `nahm` when neither flag nor environment sets one.
const DEFAULT_ORDER: i64 = 60;

#[derive(Parser)]
#[command(name = "qrsv", version, about = "Exact q-series identity checker")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the catalogue.
    List,
    /// Run one check.
    Check {
        id: String,
        /// Truncation order, an integer or `p/r`.
        #[arg(long)]
        order: Option<String>,
    },
    /// Run the whole catalogue, or the ids given with --only.
    CheckAll {
        #[arg(long)]
        order: Option<String>,
        /// Comma-separated ids.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
    /// Evaluate an expression and print its series dump.
    Eval {
        expr: String,
        #[arg(long)]
        order: Option<String>,
    },
    /// Evaluate a partial Nahm sum and print its series dump.
    Nahm {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        order: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_order(s: &str) -> Result<Rational, Error> {
    let r: Rational = s
        .trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("order `{s}` is not a rational")))?;
    if r <= Rational::from_integer(0) {
        return Err(Error::InvalidArgument(format!(
            "order {r} must be positive"
        )));
    }
    Ok(r)
}

/// `--order`, then `QRSV_ORDER`, then nothing.
fn explicit_order(flag: &Option<String>) -> Result<Option<Rational>, Error> {
    match flag {
        Some(s) => parse_order(s).map(Some),
        None => match std::env::var("QRSV_ORDER") {
            Ok(s) if !s.trim().is_empty() => parse_order(&s).map(Some),
            _ => Ok(None),
        },
    }
}

fn render_reports(reports: &[CheckReport], format: Format) -> String {
    match format {
        Format::Text => {
            let mut s: String = reports.iter().map(|r| format!("{r}\n")).collect();
            let passed = reports.iter().filter(|r| r.passed()).count();
            if reports.len() > 1 {
                s.push_str(&format!("{passed}/{} passed\n", reports.len()));
            }
            s
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

/// Exit status for a batch of reports.
fn status_of(reports: &[CheckReport]) -> u8 {
    if reports.iter().any(|r| r.status == Status::Error) {
        2
    } else if reports.iter().all(CheckReport::passed) {
        0
    } else {
        1
    }
}

fn run(cli: &Cli) -> Result<(String, u8), Error> {
    match &cli.command {
        Command::List => {
            let checks = list_checks();
            let text = match cli.format {
                Format::Text => checks
                    .iter()
                    .map(|(id, desc, anchor)| format!("{id:<12} {desc} [{anchor}]\n"))
                    .collect(),
                Format::Json => {
                    let rows: Vec<_> = checks
                        .iter()
                        .map(|(id, desc, anchor)| {
                            serde_json::json!({
                                "id": id,
                                "description": desc,
                                "anchor": anchor,
                                "default_order": get_check(id).map(|c| c.default_order.to_string()).ok(),
                            })
                        })
                        .collect();
                    serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n"
                }
            };
            Ok((text, 0))
        }
        Command::Check { id, order } => {
            let order = explicit_order(order)?;
            let reports = [get_check(id)?.run(order, None)];
            Ok((render_reports(&reports, cli.format), status_of(&reports)))
        }
        Command::CheckAll { order, only } => {
            let order = explicit_order(order)?;
            let mut overrides = BTreeMap::new();
            if let Some(o) = order {
                for (id, _, _) in list_checks() {
                    overrides.insert(id.to_string(), o);
                }
            }
            let reports = if only.is_empty() {
                run_all(&overrides)
            } else {
                let ids: Vec<&str> = only.iter().map(String::as_str).collect();
                run_selected(&ids, &overrides)?
            };
            Ok((render_reports(&reports, cli.format), status_of(&reports)))
        }
        Command::Eval { expr, order } => {
            let order = explicit_order(order)?.unwrap_or(Rational::from_integer(DEFAULT_ORDER));
            Ok((dump(eval_str(expr, order)?, cli.format), 0))
        }
        Command::Nahm { spec, order } => {
            let order = explicit_order(order)?.unwrap_or(Rational::from_integer(DEFAULT_ORDER));
            let spec: NahmSpec = spec.parse()?;
            let s = eval_padded(order, |w| nahm_sum(&spec, w))?;
            Ok((dump(s, cli.format), 0))
        }
    }
}

fn dump(s: qrsv_core::QSeries, format: Format) -> String {
    match format {
        Format::Text => s.dump(),
        Format::Json => {
            let terms: Vec<_> = s
                .terms()
                .map(|(e, c)| serde_json::json!([e.to_string(), c.to_string()]))
                .collect();
            let v = serde_json::json!({
                "valid_through": s.valid_through().to_string(),
                "terms": terms,
            });
            serde_json::to_string_pretty(&v).expect("series serializes") + "\n"
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok((text, code)) => {
            let written = match &cli.output {
                Some(path) => File::create(path).and_then(|mut f| f.write_all(text.as_bytes())),
                None => io::stdout().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
