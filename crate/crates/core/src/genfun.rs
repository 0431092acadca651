//! Composition generating functions `C_A(x) = 1 / (1 - sum_{a in A} x^a)`.

use num_bigint::BigInt;

use crate::partset::PartSet;
use crate::poly::{IntPolynomial, RationalGF, TruncatedSeries};
use crate::recurrence::LinearRecurrence;

fn one_minus_x_pow(k: u64) -> IntPolynomial {
    &IntPolynomial::one() - &IntPolynomial::monomial(BigInt::from(1), k as usize)
}

/// `C_A(x)` as written from the part series, before cancelling common
/// factors. With `S = P + Q / (1 - x^k)` this is
/// `(1 - x^k) / ((1 - x^k)(1 - P) - Q)`.
pub fn composition_gf_unreduced(set: &PartSet) -> RationalGF {
    let form = set.series_form();
    let period = one_minus_x_pow(form.modulus);
    let den = &(&period * &(&IntPolynomial::one() - &form.exceptions)) - &form.periodic;
    RationalGF::new(period, den).expect("part series has no constant term")
}

/// The reduced generating function of compositions with parts in `set`.
pub fn composition_gf(set: &PartSet) -> RationalGF {
    composition_gf_unreduced(set).reduce()
}

/// `c_A(0..=n)`, with `c_A(0) = 1` for the empty composition.
pub fn counts(set: &PartSet, n: usize) -> Vec<BigInt> {
    LinearRecurrence::from_gf(&composition_gf(set)).terms(n)
}

/// Number of compositions of `n` with every part in `set`.
pub fn count(set: &PartSet, n: usize) -> BigInt {
    counts(set, n).swap_remove(n)
}

/// The part series `S_A(x) = sum_{a in A} x^a` truncated at `order`.
pub fn part_series(set: &PartSet, order: usize) -> TruncatedSeries {
    let mut coeffs = vec![BigInt::from(0); order + 1];
    for p in set.parts_up_to(order as u64) {
        coeffs[p as usize] = BigInt::from(1);
    }
    TruncatedSeries::from_coeffs(coeffs)
}

/// `S_A(x)^parts` truncated at `order`: coefficient `n` counts compositions
/// of `n` with exactly `parts` parts, all in `set`.
pub fn length_slice_series(set: &PartSet, parts: u64, order: usize) -> TruncatedSeries {
    part_series(set, order).pow(parts)
}
