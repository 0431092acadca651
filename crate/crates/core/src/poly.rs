//! Exact integer polynomials, rational generating functions and truncated
//! power series.
//!
//! Everything here is arbitrary precision. Composition counts grow like
//! `2^(n-1)`, so fixed-width integers would overflow long before the
//! interesting range.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("denominator constant term must be 1, got {0}")]
    DenominatorConstantTerm(BigInt),
}

/// A polynomial with integer coefficients, stored in ascending order of
/// exponent. The highest stored coefficient is never zero; the zero
/// polynomial has no coefficients at all.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^exp`
    pub fn monomial(c: BigInt, exp: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); exp + 1];
        coeffs[exp] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// The polynomial divided by its content, with positive leading
    /// coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut content = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            content = -content;
        }
        Self::from_coeffs(self.coeffs.iter().map(|c| c / &content).collect())
    }

    /// Pseudo-remainder: `lc(d)^e * self mod d` computed without fractions.
    ///
    /// Panics if `divisor` is zero.
    pub fn pseudo_rem(&self, divisor: &Self) -> Self {
        let ddeg = divisor.degree().expect("pseudo_rem by zero polynomial");
        let lead = divisor.leading().unwrap();
        let mut rem = self.clone();
        while let Some(rdeg) = rem.degree() {
            if rdeg < ddeg {
                break;
            }
            let rlead = rem.leading().unwrap().clone();
            rem = &rem.scale(lead) - &divisor.scale(&rlead).shift(rdeg - ddeg);
        }
        rem
    }

    /// Exact quotient over the integers, or `None` when `divisor` does not
    /// divide `self` in `Z[x]`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let ddeg = divisor.degree()?;
        let lead = divisor.leading().unwrap();
        let mut rem = self.clone();
        let Some(sdeg) = rem.degree() else {
            return Some(Self::zero());
        };
        if sdeg < ddeg {
            return None;
        }
        let mut quot = vec![BigInt::zero(); sdeg - ddeg + 1];
        while let Some(rdeg) = rem.degree() {
            if rdeg < ddeg {
                return None;
            }
            let (q, r) = rem.leading().unwrap().div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            rem = &rem - &divisor.scale(&q).shift(rdeg - ddeg);
            quot[rdeg - ddeg] = q;
        }
        Some(Self::from_coeffs(quot))
    }

    /// Division with remainder over the rationals. Returns `(quotient,
    /// remainder)` as ascending coefficient vectors.
    pub fn div_rem_rational(&self, divisor: &Self) -> (Vec<BigRational>, Vec<BigRational>) {
        let ddeg = divisor.degree().expect("division by zero polynomial");
        let lead = BigRational::from_integer(divisor.leading().unwrap().clone());
        let dv: Vec<BigRational> = divisor
            .coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let mut rem: Vec<BigRational> = self
            .coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(ddeg)];
        for top in (ddeg..rem.len()).rev() {
            let q = &rem[top] / &lead;
            if q.is_zero() {
                continue;
            }
            for (i, d) in dv.iter().enumerate() {
                let idx = top - ddeg + i;
                rem[idx] = &rem[idx] - &q * d;
            }
            quot[top - ddeg] = q;
        }
        rem.truncate(ddeg);
        while rem.last().is_some_and(Zero::is_zero) {
            rem.pop();
        }
        while quot.last().is_some_and(Zero::is_zero) {
            quot.pop();
        }
        (quot, rem)
    }

    /// Greatest common divisor in `Z[x]`, computed with the primitive
    /// pseudo-remainder sequence. The result has positive leading
    /// coefficient; `gcd(0, 0)` is zero.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let content = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        if a.degree() == Some(0) {
            return Self::constant(content);
        }
        a.scale(&content)
    }

    /// True when the polynomial has no repeated complex root.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }
}

impl From<Vec<BigInt>> for IntPolynomial {
    fn from(coeffs: Vec<BigInt>) -> Self {
        Self::from_coeffs(coeffs)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: Self) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: Self) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: Self) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        -&self
    }
}

/// Ascending powers, zero terms omitted, unit coefficients implicit:
/// `1 - x^2 - 2*x^3`.
impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (exp, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match (exp, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{exp}")?,
                (_, false) => write!(f, "{mag}*x^{exp}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// A power series given as `numerator / denominator` with denominator
/// constant term 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalGF {
    numerator: IntPolynomial,
    denominator: IntPolynomial,
}

impl RationalGF {
    pub fn new(numerator: IntPolynomial, denominator: IntPolynomial) -> Result<Self, PolyError> {
        let c0 = denominator.constant_term();
        if !c0.is_one() {
            return Err(PolyError::DenominatorConstantTerm(c0));
        }
        Ok(Self {
            numerator,
            denominator,
        })
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &IntPolynomial {
        &self.denominator
    }

    /// Cancel the common factor of numerator and denominator. The series
    /// expansion is unchanged.
    pub fn reduce(&self) -> Self {
        let g = self.numerator.gcd(&self.denominator).primitive_part();
        if g.degree().unwrap_or(0) == 0 {
            if self.numerator.is_zero() {
                return Self {
                    numerator: IntPolynomial::zero(),
                    denominator: IntPolynomial::one(),
                };
            }
            return self.clone();
        }
        let mut num = self
            .numerator
            .div_exact(&g)
            .expect("gcd divides the numerator");
        let mut den = self
            .denominator
            .div_exact(&g)
            .expect("gcd divides the denominator");
        // den(0) * g(0) = 1 over the integers, so den(0) is a unit.
        if den.constant_term().is_negative() {
            num = -num;
            den = -den;
        }
        debug_assert!(den.constant_term().is_one());
        Self {
            numerator: num,
            denominator: den,
        }
    }

    /// Coefficients `c_0..=c_order` of the expansion, via
    /// `c_n = num_n + sum_i d_i c_(n-i)` where `den = 1 - sum_i d_i x^i`.
    pub fn series(&self, order: usize) -> TruncatedSeries {
        let feedback: Vec<BigInt> = self.denominator.coeffs.iter().skip(1).map(|d| -d).collect();
        let mut out: Vec<BigInt> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut c = self.numerator.coeff(n);
            for (i, d) in feedback.iter().enumerate().take(n) {
                if !d.is_zero() {
                    c += d * &out[n - 1 - i];
                }
            }
            out.push(c);
        }
        TruncatedSeries { coeffs: out }
    }
}

impl fmt::Display for RationalGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

/// The coefficients `c_0..=c_N` of a power series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// Panics on an empty vector; a truncated series has at least `c_0`.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "truncated series needs at least c_0");
        Self { coeffs }
    }

    /// The series `1 + 0x + ... + 0x^order`.
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); order + 1];
        coeffs[0] = BigInt::one();
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Product truncated to the smaller of the two orders.
    pub fn mul_truncated(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![BigInt::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_truncated(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_truncated(&base);
            }
        }
        acc
    }
}
