//! Text and JSON output for the subcommands.

use compgf::closedform::{Complex, DominanceReport, Fixed, PartialFraction, UnitCircle};
use compgf::{json, LinearRecurrence};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::Format;

pub fn csv(values: &[BigInt]) -> String {
    values
        .iter()
        .map(BigInt::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

pub fn json_ints(values: &[BigInt]) -> Value {
    Value::Array(values.iter().map(json::value).collect())
}

/// A coefficient sequence: `n c(n)` lines, one CSV line, or a JSON array.
pub fn sequence(values: &[BigInt], format: Format) -> String {
    match format {
        Format::Csv => format!("{}\n", csv(values)),
        Format::Json => format!("{}\n", json_ints(values)),
        Format::Plain => values
            .iter()
            .enumerate()
            .map(|(n, v)| format!("{n} {v}\n"))
            .collect(),
    }
}

pub fn recurrence(rec: &LinearRecurrence) -> String {
    let terms: Vec<String> = rec
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, d)| d.sign() != num_bigint::Sign::NoSign)
        .map(|(i, d)| match d.to_string().as_str() {
            "1" => format!("f(n-{})", i + 1),
            "-1" => format!("-f(n-{})", i + 1),
            s => format!("{s}*f(n-{})", i + 1),
        })
        .collect();
    let corrections: Vec<String> = rec
        .corrections()
        .iter()
        .map(|(i, v)| format!("{i}:{v}"))
        .collect();
    let rhs = if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    };
    format!(
        "f(n) = {rhs}\norder {}\ncoeffs {}\ncorrections {}\ninitial {}\n",
        rec.order(),
        csv(rec.coeffs()),
        corrections.join(","),
        csv(rec.initial_terms()),
    )
}

fn location(l: UnitCircle) -> &'static str {
    match l {
        UnitCircle::Inside => "inside",
        UnitCircle::On => "on",
        UnitCircle::Outside => "outside",
    }
}

/// Decimal text at `sig` digits, with values below the working tolerance
/// shown as 0 rather than as rounding noise.
fn real(x: &Fixed, pf: &PartialFraction, sig: usize) -> String {
    if x.abs() < Fixed::pow10_neg(pf.precision_digits - 15, pf.bits()) {
        "0".to_string()
    } else {
        x.to_sig_string(sig)
    }
}

pub fn closed_form(pf: &PartialFraction, report: &DominanceReport, sig: usize) -> String {
    let mut out = format!("gf {}\n", pf.gf);
    let poly: Vec<String> = pf.poly_part.iter().map(ToString::to_string).collect();
    out.push_str(&format!("poly_part [{}]\n", poly.join(", ")));
    out.push_str(&format!("precision_digits {}\n", pf.precision_digits));
    for (j, ((pole, r), summary)) in pf
        .poles
        .iter()
        .zip(&pf.residues)
        .zip(&report.poles)
        .enumerate()
    {
        out.push_str(&format!(
            "pole {j}: {} {} i  |a| = {}  {}{}\n",
            real(pole.re(), pf, sig),
            signed(&real(pole.im(), pf, sig)),
            pole.modulus().to_sig_string(sig),
            location(summary.location),
            if summary.dominant { "  dominant" } else { "" },
        ));
        out.push_str(&format!(
            "  residue {} {} i\n",
            real(&r.re, pf, sig),
            signed(&real(&r.im, pf, sig)),
        ));
    }
    // without the polynomial part the pole terms alone miss C(0)
    let sum = residue_sum(pf);
    out.push_str(&format!(
        "residue_sum {} {} i\n",
        real(&sum.re, pf, sig),
        signed(&real(&sum.im, pf, sig))
    ));
    out.push_str(&format!("unique_dominant {}\n", report.unique_dominant));
    out.push_str(&format!(
        "nearest_integer_valid {}\n",
        report.nearest_integer_valid
    ));
    if let Some(g) = report.growth_rate {
        out.push_str(&format!("growth_rate {}\n", round_sig(g, sig)));
    }
    out
}

fn residue_sum(pf: &PartialFraction) -> Complex {
    pf.residues
        .iter()
        .fold(Complex::zero(pf.bits()), |acc, r| &acc + r)
}

fn signed(s: &str) -> String {
    match s.strip_prefix('-') {
        Some(rest) => format!("- {rest}"),
        None => format!("+ {s}"),
    }
}

/// `f64` values at `sig` significant digits in positional notation.
fn round_sig(v: f64, sig: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let magnitude = v.abs().log10().floor() as i64;
    let places = (sig as i64 - 1 - magnitude).max(0) as usize;
    format!("{v:.places$}")
}

pub fn closed_form_json(pf: &PartialFraction, report: &DominanceReport, sig: usize) -> Value {
    let poles: Vec<Value> = pf
        .poles
        .iter()
        .zip(&pf.residues)
        .zip(&report.poles)
        .map(|((pole, r), summary)| {
            json!({
                "re": real(pole.re(), pf, sig),
                "im": real(pole.im(), pf, sig),
                "modulus": pole.modulus().to_sig_string(sig),
                "location": location(summary.location),
                "dominant": summary.dominant,
                "residue": {"re": real(&r.re, pf, sig), "im": real(&r.im, pf, sig)},
            })
        })
        .collect();
    json!({
        "numerator": json_ints(pf.gf.numerator().coeffs()),
        "denominator": json_ints(pf.gf.denominator().coeffs()),
        "poly_part": pf.poly_part.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "precision_digits": pf.precision_digits,
        "poles": poles,
        "residue_sum": real(&residue_sum(pf).re, pf, sig),
        "dominance": report,
    })
}
