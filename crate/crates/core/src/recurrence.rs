//! C-finite recurrences with constant coefficients.
//!
//! A [`LinearRecurrence`] generates `f_0, f_1, ...` through
//!
//! ```text
//! f_n = d_1 f_(n-1) + ... + d_k f_(n-k) + correction_n      (f_j = 0 for j < 0)
//! ```
//!
//! where only finitely many corrections are nonzero. A rational generating
//! function `N(x) / (1 - d_1 x - ... - d_k x^k)` gives exactly this shape with
//! the numerator coefficients as corrections.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::json;
use crate::poly::RationalGF;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecurrenceError {
    #[error("highest recurrence coefficient must be nonzero")]
    ZeroLeadingCoefficient,
    #[error("initial term f_{0} does not follow from the recurrence")]
    InconsistentInitial(usize),
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("malformed recurrence JSON: {0}")]
    Json(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRecurrence {
    coeffs: Vec<BigInt>,
    corrections: Vec<(usize, BigInt)>,
    initial: Vec<BigInt>,
}

impl LinearRecurrence {
    /// Build from recurrence coefficients `d_1..d_k` and corrections; the
    /// initial terms are computed. Zero corrections are dropped.
    pub fn new(
        coeffs: Vec<BigInt>,
        corrections: impl IntoIterator<Item = (usize, BigInt)>,
    ) -> Result<Self, RecurrenceError> {
        if coeffs.last().is_some_and(Zero::is_zero) {
            return Err(RecurrenceError::ZeroLeadingCoefficient);
        }
        let mut merged: std::collections::BTreeMap<usize, BigInt> = Default::default();
        for (i, v) in corrections {
            *merged.entry(i).or_default() += v;
        }
        let corrections: Vec<(usize, BigInt)> =
            merged.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        let span = corrections.last().map_or(0, |&(i, _)| i).max(coeffs.len());
        let mut rec = Self {
            coeffs,
            corrections,
            initial: Vec::new(),
        };
        rec.initial = rec.replay(span);
        Ok(rec)
    }

    /// Coefficient comparison: `den = 1 - sum d_i x^i`, corrections are the
    /// numerator coefficients.
    pub fn from_gf(gf: &RationalGF) -> Self {
        let coeffs = gf
            .denominator()
            .coeffs()
            .iter()
            .skip(1)
            .map(|c| -c)
            .collect();
        let corrections = gf.numerator().coeffs().iter().cloned().enumerate();
        Self::new(coeffs, corrections).expect("denominator is normalised")
    }

    /// A recurrence that starts with the given `f_0, f_1, ...` and continues
    /// with the coefficients. The corrections are whatever makes the given
    /// values consistent with the recurrence.
    pub fn from_initial(coeffs: Vec<BigInt>, initial: &[BigInt]) -> Result<Self, RecurrenceError> {
        let corrections: Vec<(usize, BigInt)> = (0..initial.len())
            .map(|n| {
                let predicted = coeffs
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i < n)
                    .fold(BigInt::zero(), |acc, (i, d)| acc + d * &initial[n - 1 - i]);
                (n, &initial[n] - predicted)
            })
            .collect();
        Self::new(coeffs, corrections)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn corrections(&self) -> &[(usize, BigInt)] {
        &self.corrections
    }

    /// `f_0..f_(k')` with `k' >= max(order, last correction index)`; past
    /// these the recurrence is homogeneous.
    pub fn initial_terms(&self) -> &[BigInt] {
        &self.initial
    }

    fn correction(&self, n: usize) -> Option<&BigInt> {
        self.corrections
            .binary_search_by_key(&n, |&(i, _)| i)
            .ok()
            .map(|pos| &self.corrections[pos].1)
    }

    fn replay(&self, last: usize) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = Vec::with_capacity(last + 1);
        for n in 0..=last {
            let mut f = self.correction(n).cloned().unwrap_or_default();
            for (i, d) in self.coeffs.iter().enumerate().take(n) {
                if !d.is_zero() {
                    f += d * &out[n - 1 - i];
                }
            }
            out.push(f);
        }
        out
    }

    /// `f_0..=f_last`, exactly.
    pub fn terms(&self, last: usize) -> Vec<BigInt> {
        if last < self.initial.len() {
            return self.initial[..=last].to_vec();
        }
        let mut out = self.initial.clone();
        out.reserve(last + 1 - out.len());
        for n in out.len()..=last {
            let f = self
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, d)| !d.is_zero())
                .fold(BigInt::zero(), |acc, (i, d)| acc + d * &out[n - 1 - i]);
            out.push(f);
        }
        out
    }

    /// `f_n` exactly, keeping only a window of `order` terms.
    pub fn nth(&self, n: usize) -> BigInt {
        if n < self.initial.len() {
            return self.initial[n].clone();
        }
        let k = self.order();
        if k == 0 {
            return BigInt::zero();
        }
        let mut window: std::collections::VecDeque<BigInt> = self.initial[self.initial.len() - k..]
            .iter()
            .cloned()
            .collect();
        for _ in self.initial.len()..=n {
            let next = self
                .coeffs
                .iter()
                .zip(window.iter().rev())
                .fold(BigInt::zero(), |acc, (d, f)| acc + d * f);
            window.pop_front();
            window.push_back(next);
        }
        window.pop_back().unwrap()
    }

    /// `f_n mod p` in `O(k^2 log n)` operations: reduce `x^t` modulo the
    /// characteristic polynomial and combine with a window of `k` known
    /// terms past the last correction.
    pub fn nth_mod(&self, n: u64, p: u64) -> Result<u64, RecurrenceError> {
        if p < 2 {
            return Err(RecurrenceError::ModulusTooSmall(p));
        }
        let to_mod = |v: &BigInt| v.mod_floor(&BigInt::from(p)).to_u64().unwrap();
        if let Some(v) = usize::try_from(n).ok().and_then(|i| self.initial.get(i)) {
            return Ok(to_mod(v));
        }
        let k = self.order();
        if k == 0 {
            return Ok(0);
        }
        let base = self.initial.len() - k;
        let window: Vec<u64> = self.initial[base..].iter().map(to_mod).collect();
        let d: Vec<u64> = self.coeffs.iter().map(to_mod).collect();
        let reduced = x_pow_mod(&d, n - base as u64, p);
        Ok(reduced
            .iter()
            .zip(&window)
            .fold(0, |acc, (&c, &f)| add_mod(acc, mul_mod(c, f, p), p)))
    }

    /// `{"order": k, "coeffs": [...], "corrections": [[i, v], ...], "initial": [...]}`
    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order(),
            "coeffs": self.coeffs.iter().map(json::value).collect::<Vec<_>>(),
            "corrections": self
                .corrections
                .iter()
                .map(|(i, v)| json!([i, json::value(v)]))
                .collect::<Vec<_>>(),
            "initial": self.initial.iter().map(json::value).collect::<Vec<_>>(),
        })
    }

    /// Inverse of [`to_json`](Self::to_json). The `initial` array is
    /// checked against the recurrence rather than trusted.
    pub fn from_json(value: &Value) -> Result<Self, RecurrenceError> {
        let err = |m: &str| RecurrenceError::Json(m.to_string());
        let ints = |key: &str| -> Result<Vec<BigInt>, RecurrenceError> {
            value
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| err(&format!("missing array '{key}'")))?
                .iter()
                .map(|v| json::parse(v).ok_or_else(|| err(&format!("non-integer in '{key}'"))))
                .collect()
        };
        let coeffs = ints("coeffs")?;
        let order = value
            .get("order")
            .and_then(Value::as_u64)
            .ok_or_else(|| err("missing 'order'"))?;
        if order as usize != coeffs.len() {
            return Err(err("'order' disagrees with 'coeffs'"));
        }
        let corrections = value
            .get("corrections")
            .and_then(Value::as_array)
            .ok_or_else(|| err("missing array 'corrections'"))?
            .iter()
            .map(|pair| {
                let pair = pair.as_array().filter(|p| p.len() == 2);
                let pair = pair.ok_or_else(|| err("correction must be [index, value]"))?;
                let idx = pair[0]
                    .as_u64()
                    .ok_or_else(|| err("bad correction index"))?;
                let v = json::parse(&pair[1]).ok_or_else(|| err("bad correction value"))?;
                Ok((idx as usize, v))
            })
            .collect::<Result<Vec<_>, RecurrenceError>>()?;
        let rec = Self::new(coeffs, corrections)?;
        let initial = ints("initial")?;
        let replayed = rec.terms(initial.len().saturating_sub(1));
        if let Some(i) = (0..initial.len()).find(|&i| initial[i] != replayed[i]) {
            return Err(RecurrenceError::InconsistentInitial(i));
        }
        Ok(rec)
    }
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Product of two residues modulo `x^k - d_1 x^(k-1) - ... - d_k` over `Z_p`.
fn mul_reduce(a: &[u64], b: &[u64], d: &[u64], p: u64) -> Vec<u64> {
    let k = d.len();
    let mut prod = vec![0u64; 2 * k - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = add_mod(prod[i + j], mul_mod(x, y, p), p);
        }
    }
    // x^j = x^(j-k) * x^k  ==  sum_i d_i x^(j-i)
    for j in (k..prod.len()).rev() {
        let c = prod[j];
        if c == 0 {
            continue;
        }
        for (i, &di) in d.iter().enumerate() {
            let idx = j - 1 - i;
            prod[idx] = add_mod(prod[idx], mul_mod(c, di, p), p);
        }
    }
    prod.truncate(k);
    prod
}

fn x_pow_mod(d: &[u64], mut exp: u64, p: u64) -> Vec<u64> {
    let k = d.len();
    let mut acc = vec![0u64; k];
    acc[0] = 1 % p;
    let mut base = vec![0u64; k];
    if k == 1 {
        base[0] = d[0];
    } else {
        base[1] = 1;
    }
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_reduce(&acc, &base, d, p);
        }
        exp >>= 1;
        if exp > 0 {
            base = mul_reduce(&base, &base, d, p);
        }
    }
    acc
}

fn pow2(e: usize) -> BigInt {
    BigInt::from(1) << e
}

/// The depth-`k` sequence for compositions avoiding multiples of `k`,
/// encoded from its stated initial values and recursion rather than derived
/// from a generating function:
/// `f_j = 2^(j-1)` for `j < k`, `f_k = 2^(k-1) - 1`, then the sum of the
/// previous `k` terms. `f_0 = 1` counts the empty composition.
pub fn theorem2_seq(k: usize) -> Result<LinearRecurrence, RecurrenceError> {
    if k < 2 {
        return Err(RecurrenceError::InvalidParameters(format!(
            "depth k must be at least 2, got {k}"
        )));
    }
    let mut initial = vec![BigInt::from(1)];
    initial.extend((1..k).map(|j| pow2(j - 1)));
    initial.push(pow2(k - 1) - 1);
    LinearRecurrence::from_initial(vec![BigInt::from(1); k], &initial)
}

/// The sequence for compositions avoiding `{m + jk}`, taken literally from
/// its stated form: `f_j = 2^(j-1)` for `j < m`, `f_j = 2^(j-1) - 2^(j-m)`
/// for `m <= j <= k`, and past `k` the sum of `f_(j-i)` over
/// `1 <= i < k, i != m` plus `2 f_(j-k)`. The stated initial values are kept
/// even where they disagree with the true counts.
pub fn theorem3_seq(k: usize, m: usize) -> Result<LinearRecurrence, RecurrenceError> {
    if m < 1 || m >= k {
        return Err(RecurrenceError::InvalidParameters(format!(
            "need 1 <= m < k, got k = {k}, m = {m}"
        )));
    }
    let mut initial = vec![BigInt::from(1)];
    for j in 1..=k {
        initial.push(if j < m {
            pow2(j - 1)
        } else {
            pow2(j - 1) - pow2(j - m)
        });
    }
    let mut coeffs: Vec<BigInt> = (1..k).map(|i| BigInt::from(u8::from(i != m))).collect();
    coeffs.push(BigInt::from(2));
    LinearRecurrence::from_initial(coeffs, &initial)
}

/// `f_n = 2^(n-1)` for `n >= 1`, i.e. all compositions.
pub fn all_compositions_seq() -> LinearRecurrence {
    LinearRecurrence::from_initial(vec![BigInt::from(2)], &[BigInt::from(1), BigInt::from(1)])
        .expect("valid recurrence")
}
