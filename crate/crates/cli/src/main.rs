//! `compgf`: counts, series, recurrences and closed forms for compositions
//! with restricted parts.

mod render;
#[cfg(test)]
mod tests;
mod verify;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use compgf::closedform::{self, dominance_report, eval_closed, partial_fractions};
use compgf::genfun::{self, composition_gf};
use compgf::{bivariate_table, parse_setspec, LinearRecurrence, PartSet};
use num_bigint::BigInt;

#[derive(Parser)]
#[command(
    name = "compgf",
    version,
    about = "Compositions with parts in eventually periodic sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Number of compositions of N with parts in SETSPEC
    Count { setspec: String, n: usize },
    /// Coefficients c(0..=limit) of the composition generating function
    Series {
        setspec: String,
        #[arg(long, default_value_t = 20)]
        limit: usize,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Linear recurrence with initial terms, read off the reduced generating function
    Recurrence {
        setspec: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Poles, residue coefficients and dominance report of the generating function
    ClosedForm {
        setspec: String,
        #[arg(long, default_value_t = closedform::DEFAULT_DIGITS)]
        digits: u32,
        /// Significant digits shown for real values
        #[arg(long, default_value_t = 12)]
        sig: usize,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Evaluate the partial-fraction closed form at N
    EvalClosed {
        setspec: String,
        n: u64,
        #[arg(long, default_value_t = closedform::DEFAULT_DIGITS)]
        digits: u32,
        #[arg(long, default_value_t = 12)]
        sig: usize,
    },
    /// N-th term, optionally modulo P: `nth SETSPEC N` or `nth --recurrence-file F N`
    Nth {
        #[arg(num_args = 1..=2, required = true, value_name = "SETSPEC N")]
        args: Vec<String>,
        #[arg(long = "mod", value_name = "P")]
        modulus: Option<u64>,
        /// Recurrence in the JSON form printed by `recurrence`
        #[arg(long, value_name = "FILE")]
        recurrence_file: Option<String>,
    },
    /// Compositions of N split by number of parts, one `m,count` line per length
    Bylength {
        setspec: String,
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Counts avoiding each residue class mod 3, as rows `n,c31,c32,c30`
    Table {
        #[arg(long, required = true)]
        mod3: bool,
        #[arg(long, default_value_t = 20)]
        limit: usize,
        /// Emit a header line first
        #[arg(long)]
        header: bool,
    },
    /// Check stated identities against the brute-force oracle
    Verify(verify::VerifyArgs),
}

/// Why a command did not succeed, mapped onto the exit status.
enum Failure {
    Usage(String),
    Verification,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let code = run(
        std::env::args_os(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    ExitCode::from(code)
}

/// Parse `argv` and execute it, returning the exit status: 0 on success,
/// 1 when a verification fails, 2 on a usage or parse error.
fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 2;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Verification) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn set(spec: &str) -> Result<PartSet, Failure> {
    parse_setspec(spec).map_err(|e| Failure::Usage(format!("invalid setspec {spec:?}: {e}")))
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Count { setspec, n } => {
            writeln!(out, "{}", genfun::count(&set(&setspec)?, n))?;
        }
        Command::Series {
            setspec,
            limit,
            format,
        } => {
            let series = composition_gf(&set(&setspec)?).series(limit);
            write!(out, "{}", render::sequence(series.coeffs(), format))?;
        }
        Command::Recurrence { setspec, format } => {
            let rec = LinearRecurrence::from_gf(&composition_gf(&set(&setspec)?));
            match format {
                Format::Json => writeln!(out, "{}", rec.to_json())?,
                _ => write!(out, "{}", render::recurrence(&rec))?,
            }
        }
        Command::ClosedForm {
            setspec,
            digits,
            sig,
            format,
        } => {
            let pf = partial_fractions(&composition_gf(&set(&setspec)?), digits)?;
            let report = dominance_report(&pf);
            match format {
                Format::Json => writeln!(out, "{}", render::closed_form_json(&pf, &report, sig))?,
                _ => write!(out, "{}", render::closed_form(&pf, &report, sig))?,
            }
        }
        Command::EvalClosed {
            setspec,
            n,
            digits,
            sig,
        } => {
            let pf = partial_fractions(&composition_gf(&set(&setspec)?), digits)?;
            let v = eval_closed(&pf, n);
            writeln!(out, "value {}", v.value.to_sig_string(sig))?;
            writeln!(out, "rounded {}", v.value.round())?;
            writeln!(out, "imag_residual {}", v.imag_residual.to_sig_string(sig))?;
        }
        Command::Nth {
            args,
            modulus,
            recurrence_file,
        } => {
            let (rec, n) = match (&recurrence_file, args.as_slice()) {
                (Some(file), [n]) => {
                    let text = fs::read_to_string(file).map_err(|e| format!("{file}: {e}"))?;
                    let value: serde_json::Value =
                        serde_json::from_str(&text).map_err(|e| format!("{file}: {e}"))?;
                    (LinearRecurrence::from_json(&value)?, n)
                }
                (None, [spec, n]) => (LinearRecurrence::from_gf(&composition_gf(&set(spec)?)), n),
                (Some(_), _) => {
                    return Err(Failure::Usage("with --recurrence-file pass only N".into()))
                }
                (None, _) => return Err(Failure::Usage("expected SETSPEC N".into())),
            };
            let n: u64 = n.parse().map_err(|_| format!("invalid index {n:?}"))?;
            match modulus {
                Some(p) => writeln!(out, "{}", rec.nth_mod(n, p)?)?,
                None => {
                    let n = usize::try_from(n).map_err(|_| "index too large without --mod")?;
                    writeln!(out, "{}", rec.nth(n))?;
                }
            }
        }
        Command::Bylength { setspec, n, format } => {
            let table = bivariate_table(&set(&setspec)?, n);
            let row = table.row(n);
            match format {
                Format::Json => writeln!(out, "{}", render::json_ints(row))?,
                Format::Csv => writeln!(out, "{}", render::csv(row))?,
                Format::Plain => {
                    let first = usize::from(n > 0);
                    for (m, v) in row.iter().enumerate().skip(first) {
                        writeln!(out, "{m},{v}")?;
                    }
                }
            }
        }
        Command::Table {
            mod3: _,
            limit,
            header,
        } => {
            if limit == 0 {
                return Err(Failure::Usage("--limit must be at least 1".into()));
            }
            write!(out, "{}", mod3_table(limit, header))?;
        }
        Command::Verify(args) => {
            if !verify::run(&args, out)? {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

/// Rows `n, c_{3,1}(n), c_{3,2}(n), c_{3,0}(n)` for `n = 1..=limit`.
fn mod3_table(limit: usize, header: bool) -> String {
    let columns: Vec<Vec<BigInt>> = ["not:ap:1:3", "not:ap:2:3", "not:mod:3:0"]
        .iter()
        .map(|spec| genfun::counts(&parse_setspec(spec).expect("fixed spec"), limit))
        .collect();
    let mut out = String::new();
    if header {
        out.push_str("n,c31,c32,c30\n");
    }
    let rows = columns[0]
        .iter()
        .zip(&columns[1])
        .zip(&columns[2])
        .enumerate()
        .skip(1);
    for (n, ((c1, c2), c0)) in rows {
        out.push_str(&format!("{n},{c1},{c2},{c0}\n"));
    }
    out
}
