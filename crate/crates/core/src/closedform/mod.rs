//! Numeric closed forms of rational generating functions.
//!
//! For a reduced `C(x) = N(x) / D(x)` with squarefree denominator,
//!
//! ```text
//! C(x) = poly_part(x) + sum_j r_j / (1 - x / a_j),   r_j = -N(a_j) / (a_j D'(a_j))
//! ```
//!
//! so `c(n) = poly_part_n + sum_j r_j a_j^(-n)`. The poles `a_j` come from an
//! Aberth iteration carried out in binary fixed point at the requested
//! number of decimal digits.

pub mod fixed;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::poly::{IntPolynomial, RationalGF};
pub use fixed::{bits_for_digits, Complex, Fixed};

pub const DEFAULT_DIGITS: u32 = 50;
pub const MIN_DIGITS: u32 = 16;
const MAX_ITERATIONS: usize = 500;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClosedFormError {
    #[error("polynomial must have degree at least 1")]
    DegreeTooLow,
    #[error("at least {MIN_DIGITS} digits of precision are required, got {0}")]
    PrecisionTooLow(u32),
    #[error("repeated poles unsupported")]
    RepeatedRoots,
    #[error("root iteration did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("root residual {0:e} exceeds the convergence threshold")]
    ResidualTooLarge(f64),
}

/// A simple root of an integer polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexRoot {
    pub value: Complex,
    pub multiplicity: u32,
    /// `|p(root)|` at the returned value.
    pub residual: Fixed,
}

impl ComplexRoot {
    pub fn re(&self) -> &Fixed {
        &self.value.re
    }

    pub fn im(&self) -> &Fixed {
        &self.value.im
    }

    pub fn modulus(&self) -> Fixed {
        self.value.abs()
    }
}

fn threshold(digits: u32, bits: u32) -> Fixed {
    Fixed::pow10_neg(digits - 10, bits)
}

/// All complex roots of `p` to `digits` decimal digits.
///
/// Real roots have an imaginary part of exactly zero and complex roots come
/// in exact conjugate pairs, positive imaginary part first. Roots are
/// ordered by modulus, then by absolute argument.
pub fn find_roots(p: &IntPolynomial, digits: u32) -> Result<Vec<ComplexRoot>, ClosedFormError> {
    let degree = p
        .degree()
        .filter(|&d| d >= 1)
        .ok_or(ClosedFormError::DegreeTooLow)?;
    if digits < MIN_DIGITS {
        return Err(ClosedFormError::PrecisionTooLow(digits));
    }
    if !p.is_squarefree() {
        return Err(ClosedFormError::RepeatedRoots);
    }
    let bits = bits_for_digits(digits);
    let coeffs = p.coeffs();
    let dcoeffs = p.derivative().coeffs().to_vec();

    let mut z: Vec<Complex> = aberth_f64(coeffs)
        .into_iter()
        .map(|c| Complex::from_f64(c.re, c.im, bits))
        .collect();

    let eps = threshold(digits, bits);
    let mut converged = false;
    for _ in 0..MAX_ITERATIONS {
        let mut max_step = Fixed::zero(bits);
        for j in 0..degree {
            let value = z[j].eval_poly(coeffs);
            if value.is_zero() {
                continue;
            }
            let slope = z[j].eval_poly(&dcoeffs);
            let mut repulsion = Complex::zero(bits);
            for i in 0..degree {
                if i != j {
                    let diff = &z[j] - &z[i];
                    if !diff.is_zero() {
                        repulsion = &repulsion + &diff.recip();
                    }
                }
            }
            let step = if slope.is_zero() {
                // stationary point: nudge off it
                Complex::real(Fixed::pow10_neg(digits / 2, bits))
            } else {
                let newton = &value / &slope;
                let den = &Complex::one(bits) - &(&newton * &repulsion);
                if den.is_zero() {
                    newton
                } else {
                    &newton / &den
                }
            };
            let size = step.abs();
            if size > max_step {
                max_step = size;
            }
            z[j] = &z[j] - &step;
        }
        if max_step <= eps {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(ClosedFormError::NoConvergence(MAX_ITERATIONS));
    }

    symmetrize(&mut z, &eps);

    let coeff_scale = coeffs.iter().map(|c| c.abs()).max().unwrap();
    let mut roots = Vec::with_capacity(degree);
    for value in z {
        let residual = value.eval_poly(coeffs).abs();
        let radius = value.abs().max(Fixed::from_i64(1, bits));
        let mut scale = Fixed::from_int(&coeff_scale, bits);
        for _ in 0..degree {
            scale = &scale * &radius;
        }
        if residual > &eps * &scale {
            return Err(ClosedFormError::ResidualTooLarge(residual.to_f64()));
        }
        roots.push(ComplexRoot {
            value,
            multiplicity: 1,
            residual,
        });
    }
    sort_roots(&mut roots, digits);
    Ok(roots)
}

/// Double-precision Aberth iteration from a perturbed circle, used as the
/// starting point of the multiprecision refinement.
fn aberth_f64(coeffs: &[BigInt]) -> Vec<Complex64> {
    let a: Vec<f64> = coeffs
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::MAX))
        .collect();
    let degree = a.len() - 1;
    let lead = a[degree];
    let bound = 1.0
        + a[..degree]
            .iter()
            .map(|c| (c / lead).abs())
            .fold(0.0, f64::max);
    let radius = bound.max(1.0);
    let mut z: Vec<Complex64> = (0..degree)
        .map(|j| {
            let theta = std::f64::consts::TAU * j as f64 / degree as f64 + 0.4;
            Complex64::from_polar(radius * (1.0 + 0.01 * j as f64 / degree as f64), theta)
        })
        .collect();
    let eval = |x: Complex64| {
        let mut v = Complex64::zero();
        let mut dv = Complex64::zero();
        for &c in a.iter().rev() {
            dv = dv * x + v;
            v = v * x + c;
        }
        (v, dv)
    };
    for _ in 0..MAX_ITERATIONS {
        let mut max_step: f64 = 0.0;
        for j in 0..degree {
            let (v, dv) = eval(z[j]);
            if v == Complex64::zero() || dv == Complex64::zero() {
                continue;
            }
            let newton = v / dv;
            let repulsion: Complex64 = (0..degree)
                .filter(|&i| i != j && z[i] != z[j])
                .map(|i| (z[j] - z[i]).inv())
                .sum();
            let step = newton / (Complex64::new(1.0, 0.0) - newton * repulsion);
            if !step.is_finite() {
                continue;
            }
            z[j] -= step;
            max_step = max_step.max(step.norm() / z[j].norm().max(1.0));
        }
        if max_step < 1e-14 {
            break;
        }
    }
    z
}

/// Make real roots exactly real and pair each upper-half-plane root with the
/// closest lower one, replacing both by an exact conjugate pair.
fn symmetrize(z: &mut [Complex], eps: &Fixed) {
    let bits = eps.bits();
    let one = Fixed::from_i64(1, bits);
    for v in z.iter_mut() {
        let tol = eps * &v.abs().max(one.clone());
        if v.im.abs() <= tol {
            v.im = Fixed::zero(bits);
        }
    }
    let upper: Vec<usize> = (0..z.len())
        .filter(|&i| !z[i].im.is_negative() && !z[i].im.is_zero())
        .collect();
    let mut lower: Vec<usize> = (0..z.len()).filter(|&i| z[i].im.is_negative()).collect();
    for u in upper {
        let target = z[u].conj();
        let Some((pos, _)) = lower
            .iter()
            .enumerate()
            .map(|(pos, &l)| (pos, (&z[l] - &target).abs()))
            .min_by(|a, b| a.1.cmp(&b.1))
        else {
            break;
        };
        let l = lower.swap_remove(pos);
        let two = Fixed::from_i64(2, bits);
        let re = &(&z[u].re + &z[l].re) / &two;
        let im = &(&z[u].im - &z[l].im) / &two;
        z[u] = Complex::new(re.clone(), im.clone());
        z[l] = Complex::new(re, -&im);
    }
}

fn sort_roots(roots: &mut [ComplexRoot], digits: u32) {
    let bits = bits_for_digits(digits);
    let quantum = Fixed::pow10_neg(digits.saturating_sub(20).max(8), bits);
    let key = |r: &ComplexRoot| {
        let q = (&r.modulus() / &quantum).round();
        let (re, im) = r.value.to_f64();
        (q, im.atan2(re).abs(), r.value.im.is_negative())
    };
    roots.sort_by(|a, b| {
        let (ka, kb) = (key(a), key(b));
        ka.0.cmp(&kb.0)
            .then(ka.1.total_cmp(&kb.1))
            .then(ka.2.cmp(&kb.2))
    });
}

/// `C(x) = poly_part(x) + sum_j residues[j] / (1 - x / poles[j])`.
#[derive(Clone, Debug)]
pub struct PartialFraction {
    pub gf: RationalGF,
    /// Quotient of numerator by denominator, ascending coefficients.
    pub poly_part: Vec<BigRational>,
    pub poles: Vec<ComplexRoot>,
    pub residues: Vec<Complex>,
    pub precision_digits: u32,
    inverse_poles: Vec<Complex>,
}

impl PartialFraction {
    pub fn bits(&self) -> u32 {
        bits_for_digits(self.precision_digits)
    }

    /// `poly_part(0) + sum r_j - c(0)`, which vanishes for an exact expansion.
    pub fn normalization_defect(&self) -> Complex {
        let bits = self.bits();
        let mut total = Complex::real(Fixed::from_ratio(
            &self
                .poly_part
                .first()
                .cloned()
                .unwrap_or_else(BigRational::zero),
            bits,
        ));
        for r in &self.residues {
            total = &total + r;
        }
        &total - &Complex::real(Fixed::from_int(&self.gf.numerator().constant_term(), bits))
    }

    /// `r_j a_j^(-n)` for one pole.
    pub fn pole_term(&self, j: usize, n: u64) -> Complex {
        &self.residues[j] * &self.inverse_poles[j].powu(n)
    }
}

/// Partial-fraction expansion of a reduced generating function.
pub fn partial_fractions(gf: &RationalGF, digits: u32) -> Result<PartialFraction, ClosedFormError> {
    if digits < MIN_DIGITS {
        return Err(ClosedFormError::PrecisionTooLow(digits));
    }
    let (poly_part, _) = gf.numerator().div_rem_rational(gf.denominator());
    let poles = if gf.denominator().degree() == Some(0) {
        Vec::new()
    } else {
        find_roots(gf.denominator(), digits)?
    };
    let num = gf.numerator().coeffs();
    let dden = gf.denominator().derivative();
    let residues = poles
        .iter()
        .map(|pole| {
            let a = &pole.value;
            let top = a.eval_poly(num);
            let bottom = a * &a.eval_poly(dden.coeffs());
            -&(&top / &bottom)
        })
        .collect();
    let inverse_poles = poles.iter().map(|p| p.value.recip()).collect();
    Ok(PartialFraction {
        gf: gf.clone(),
        poly_part,
        poles,
        residues,
        precision_digits: digits,
        inverse_poles,
    })
}

/// `c(n)` evaluated from the expansion.
#[derive(Clone, Debug)]
pub struct ClosedValue {
    pub value: Fixed,
    /// Imaginary part left over after summing; zero up to rounding.
    pub imag_residual: Fixed,
}

pub fn eval_closed(pf: &PartialFraction, n: u64) -> ClosedValue {
    let bits = pf.bits();
    let mut total = Complex::zero(bits);
    if let Some(c) = usize::try_from(n).ok().and_then(|i| pf.poly_part.get(i)) {
        total.re = Fixed::from_ratio(c, bits);
    }
    for j in 0..pf.poles.len() {
        total = &total + &pf.pole_term(j, n);
    }
    ClosedValue {
        value: total.re,
        imag_residual: total.im.abs(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitCircle {
    Inside,
    On,
    Outside,
}

#[derive(Clone, Debug, Serialize)]
pub struct PoleSummary {
    pub re: f64,
    pub im: f64,
    pub modulus: f64,
    pub location: UnitCircle,
    pub dominant: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DominanceReport {
    pub poles: Vec<PoleSummary>,
    pub min_modulus: Option<f64>,
    /// `1 / min |a_j|`, the exponential growth rate of `c(n)`.
    pub growth_rate: Option<f64>,
    pub unique_dominant: bool,
    /// Every non-dominant term decays, so rounding the dominant term
    /// recovers `c(n)` once the decaying terms fall below 1/2.
    pub nearest_integer_valid: bool,
}

/// Classify poles by modulus. Poles are sorted by modulus, so the dominant
/// candidate is the first one.
pub fn dominance_report(pf: &PartialFraction) -> DominanceReport {
    let bits = pf.bits();
    let tol = Fixed::pow10_neg(pf.precision_digits - 15, bits);
    let one = Fixed::from_i64(1, bits);
    let moduli: Vec<Fixed> = pf.poles.iter().map(ComplexRoot::modulus).collect();
    let unique_dominant = match moduli.as_slice() {
        [] => false,
        [_] => true,
        [first, second, ..] => second - first > tol,
    };
    let location = |m: &Fixed| {
        let gap = m - &one;
        if gap.abs() <= tol {
            UnitCircle::On
        } else if gap.is_negative() {
            UnitCircle::Inside
        } else {
            UnitCircle::Outside
        }
    };
    let poles: Vec<PoleSummary> = pf
        .poles
        .iter()
        .zip(&moduli)
        .enumerate()
        .map(|(j, (p, m))| {
            let (re, im) = p.value.to_f64();
            PoleSummary {
                re,
                im,
                modulus: m.to_f64(),
                location: location(m),
                dominant: unique_dominant && j == 0,
            }
        })
        .collect();
    let nearest_integer_valid =
        unique_dominant && poles[1..].iter().all(|p| p.location == UnitCircle::Outside);
    let min_modulus = moduli.first().map(Fixed::to_f64);
    DominanceReport {
        growth_rate: moduli.first().map(|m| (&one / m).to_f64()),
        min_modulus,
        poles,
        unique_dominant,
        nearest_integer_valid,
    }
}

/// Real part of the dominant pole's term, when a unique dominant pole exists.
pub fn dominant_term(pf: &PartialFraction, report: &DominanceReport, n: u64) -> Option<Fixed> {
    report.unique_dominant.then(|| pf.pole_term(0, n).re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn golden_ratio_roots() {
        let roots = find_roots(&poly(&[1, -1, -1]), 50).unwrap();
        assert_eq!(roots.len(), 2);
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        assert!(close(roots[0].re().to_f64(), phi, 1e-15));
        assert!(roots[0].im().is_zero());
        assert!(close(roots[1].re().to_f64(), -1.0 - phi, 1e-15));
        // the high-precision value agrees with sqrt(5) to 50 digits
        let bits = bits_for_digits(50);
        let sqrt5 = Fixed::from_i64(5, bits).sqrt();
        let expect = &(&sqrt5 - &Fixed::from_i64(1, bits)) / &Fixed::from_i64(2, bits);
        assert!((roots[0].re() - &expect).abs() <= Fixed::pow10_neg(45, bits));
    }

    #[test]
    fn conjugate_pairs_are_exact_and_ordered() {
        let roots = find_roots(&poly(&[1, 0, -1, -2]), 40).unwrap();
        assert!(roots[0].im().is_zero());
        assert_eq!(roots[1].value, roots[2].value.conj());
        assert!(!roots[1].im().is_negative());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            find_roots(&poly(&[3]), 50),
            Err(ClosedFormError::DegreeTooLow)
        );
        assert_eq!(
            find_roots(&poly(&[1, -1, -1]), 10),
            Err(ClosedFormError::PrecisionTooLow(10))
        );
        assert_eq!(
            find_roots(&poly(&[1, -2, 1]), 50),
            Err(ClosedFormError::RepeatedRoots)
        );
    }

    #[test]
    fn roots_of_higher_degree() {
        // 1 - x - x^6: six simple roots
        let p = poly(&[1, -1, 0, 0, 0, 0, -1]);
        let roots = find_roots(&p, 30).unwrap();
        assert_eq!(roots.len(), 6);
        let product: f64 = roots.iter().map(|r| r.modulus().to_f64()).product();
        assert!(close(product, 1.0, 1e-12));
    }

    #[test]
    fn polynomial_gf_has_no_poles() {
        let gf = RationalGF::new(poly(&[1, 2, 3]), poly(&[1])).unwrap();
        let pf = partial_fractions(&gf, 20).unwrap();
        assert!(pf.poles.is_empty());
        assert_eq!(eval_closed(&pf, 2).value.round(), BigInt::from(3));
        assert_eq!(eval_closed(&pf, 5).value.round(), BigInt::from(0));
        assert!(!dominance_report(&pf).nearest_integer_valid);
    }

    #[test]
    fn fibonacci_closed_form() {
        let gf = RationalGF::new(poly(&[0, 1]), poly(&[1, -1, -1])).unwrap();
        let pf = partial_fractions(&gf, 50).unwrap();
        let mut fib = (BigInt::from(0), BigInt::from(1));
        for n in 0..60u64 {
            assert_eq!(eval_closed(&pf, n).value.round(), fib.0);
            fib = (fib.1.clone(), fib.0 + fib.1);
        }
        let report = dominance_report(&pf);
        assert!(report.nearest_integer_valid);
        assert!(close(
            report.growth_rate.unwrap(),
            (1.0 + 5f64.sqrt()) / 2.0,
            1e-14
        ));
    }
}
