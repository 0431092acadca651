//! The `verify` subcommand.

use std::io::Write;

use clap::{Args, ValueEnum};
use compgf::oracle::{
    verify_cayley_shift, verify_oracle_triangle, verify_sills_zeilberger, verify_theorem,
};
use compgf::{parse_setspec, TheoremFamily, VerificationReport};

use crate::{Failure, Format};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Thm1,
    Thm2,
    Thm3,
    Cayley,
    Zeilberger,
    Oracle,
    All,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Largest n checked (default 40 for theorems, 25 for cayley and zeilberger, 16 for oracle)
    #[arg(long)]
    max_n: Option<u64>,
    /// Modulus k for thm2/thm3; all k in 2..=6 when omitted
    #[arg(long)]
    k: Option<usize>,
    /// Residue m for thm3; all 1 <= m < k when omitted
    #[arg(long)]
    m: Option<usize>,
    /// Part sizes for zeilberger; all a, b in 1..=4 when omitted
    #[arg(long, requires = "b")]
    a: Option<u64>,
    #[arg(long, requires = "a")]
    b: Option<u64>,
    /// Set checked by the oracle suite; a fixed sample when omitted
    #[arg(long = "set", value_name = "SETSPEC")]
    sets: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

const ORACLE_SAMPLE: [&str; 6] = [
    "all",
    "mod:2:1",
    "not:mod:3:0",
    "not:ap:2:5",
    "ge:3",
    "set:1,2",
];

fn ks(args: &VerifyArgs) -> Vec<usize> {
    args.k.map_or_else(|| (2..=6).collect(), |k| vec![k])
}

fn collect(
    args: &VerifyArgs,
    suite: Suite,
    out: &mut Vec<VerificationReport>,
) -> Result<(), Failure> {
    let theorem_n = args.max_n.unwrap_or(40);
    match suite {
        Suite::Thm1 => out.push(verify_theorem(TheoremFamily::OddParts, theorem_n)?),
        Suite::Thm2 => {
            for k in ks(args) {
                out.push(verify_theorem(
                    TheoremFamily::AvoidMultiples { k },
                    theorem_n,
                )?);
            }
        }
        Suite::Thm3 => {
            for k in ks(args) {
                let ms: Vec<usize> = args.m.map_or_else(|| (1..k).collect(), |m| vec![m]);
                for m in ms {
                    out.push(verify_theorem(
                        TheoremFamily::AvoidProgression { k, m },
                        theorem_n,
                    )?);
                }
            }
        }
        Suite::Cayley => out.push(verify_cayley_shift(args.max_n.unwrap_or(25))),
        Suite::Zeilberger => {
            let pairs: Vec<(u64, u64)> = match (args.a, args.b) {
                (Some(a), Some(b)) => vec![(a, b)],
                _ => (1..=4).flat_map(|a| (1..=4).map(move |b| (a, b))).collect(),
            };
            for (a, b) in pairs {
                if a == 0 || b == 0 {
                    return Err(Failure::Usage("part sizes must be positive".into()));
                }
                out.push(verify_sills_zeilberger(a, b, args.max_n.unwrap_or(25)));
            }
        }
        Suite::Oracle => {
            let specs: Vec<&str> = if args.sets.is_empty() {
                ORACLE_SAMPLE.to_vec()
            } else {
                args.sets.iter().map(String::as_str).collect()
            };
            for spec in specs {
                let set = parse_setspec(spec)
                    .map_err(|e| Failure::Usage(format!("invalid setspec {spec:?}: {e}")))?;
                out.push(verify_oracle_triangle(
                    &set,
                    args.max_n.unwrap_or(16).min(25),
                ));
            }
        }
        Suite::All => {
            for s in [
                Suite::Thm1,
                Suite::Thm2,
                Suite::Thm3,
                Suite::Cayley,
                Suite::Zeilberger,
                Suite::Oracle,
            ] {
                collect(args, s, out)?;
            }
            out.push(verify_theorem(
                TheoremFamily::AllParts,
                args.max_n.unwrap_or(30),
            )?);
        }
    }
    Ok(())
}

fn summary(report: &VerificationReport) -> String {
    let mut out = format!(
        "{} {}: {} = {} for n = 1..{}",
        if report.passed { "PASS" } else { "FAIL" },
        report.name,
        report.lhs_label,
        report.rhs_label,
        report.rows.len(),
    );
    if let Some(n) = report.first_failure {
        let row = report
            .rows
            .iter()
            .find(|r| r.n == n)
            .expect("failure row exists");
        out.push_str(&format!(
            "; first mismatch at n = {n} ({} vs {})",
            row.lhs, row.rhs
        ));
    }
    out.push('\n');
    for check in &report.checks {
        let status = match check.first_failure {
            None => "ok".to_string(),
            Some(n) => format!("fails at n = {n}"),
        };
        out.push_str(&format!("  check {}: {status}\n", check.name));
    }
    for f in &report.findings {
        out.push_str(&format!("  finding {}: {}\n", f.id, f.description));
    }
    out
}

/// Print the reports; `Ok(true)` when every one of them passed.
pub fn run(args: &VerifyArgs, out: &mut dyn Write) -> Result<bool, Failure> {
    let mut reports = Vec::new();
    collect(args, args.suite, &mut reports)?;
    match args.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&reports)?)?,
        _ => {
            for r in &reports {
                write!(out, "{}", summary(r))?;
            }
            let failed = reports.iter().filter(|r| !r.passed).count();
            writeln!(out, "{} reports, {failed} failed", reports.len())?;
        }
    }
    Ok(reports.iter().all(|r| r.passed))
}
