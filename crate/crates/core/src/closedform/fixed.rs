//! Binary fixed-point reals and complex numbers over big integers.
//!
//! A [`Fixed`] is `mantissa / 2^bits`. The precision is carried by every
//! value and both operands of an operation must agree on it. Absolute
//! precision is what the root finder and the closed-form sums need, since
//! every quantity involved is bounded away from zero and infinity.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Bits of working precision for `digits` decimal digits, plus guard bits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 64
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fixed {
    mant: BigInt,
    bits: u32,
}

impl Fixed {
    pub fn zero(bits: u32) -> Self {
        Self {
            mant: BigInt::zero(),
            bits,
        }
    }

    pub fn from_int(v: &BigInt, bits: u32) -> Self {
        Self {
            mant: v << bits,
            bits,
        }
    }

    pub fn from_i64(v: i64, bits: u32) -> Self {
        Self::from_int(&BigInt::from(v), bits)
    }

    pub fn from_ratio(v: &BigRational, bits: u32) -> Self {
        Self {
            mant: (v.numer() << bits).div_floor(v.denom()),
            bits,
        }
    }

    /// Exact conversion of the binary value of `v`.
    pub fn from_f64(v: f64, bits: u32) -> Self {
        let r = BigRational::from_float(v).expect("finite float");
        Self::from_ratio(&r, bits)
    }

    /// `10^-exp`
    pub fn pow10_neg(exp: u32, bits: u32) -> Self {
        let r = BigRational::new(BigInt::one(), BigInt::from(10).pow(exp));
        Self::from_ratio(&r, bits)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        Self {
            mant: self.mant.abs(),
            bits: self.bits,
        }
    }

    /// Square root of a nonnegative value (truncated).
    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "sqrt of negative value");
        Self {
            mant: (&self.mant << self.bits).sqrt(),
            bits: self.bits,
        }
    }

    /// Nearest integer, ties away from zero.
    pub fn round(&self) -> BigInt {
        let half = BigInt::one() << (self.bits - 1);
        let mag = (self.mant.abs() + half) >> self.bits;
        if self.is_negative() {
            -mag
        } else {
            mag
        }
    }

    pub fn to_f64(&self) -> f64 {
        let top = self.mant.bits() as i64;
        let shift = (top - 64).max(0);
        let head = (&self.mant >> shift as usize).to_f64().unwrap_or(0.0);
        let exp = shift - self.bits as i64;
        // Split the scaling so that 2^exp itself never under/overflows early.
        let half = (exp / 2) as i32;
        head * 2f64.powi(half) * 2f64.powi(exp as i32 - half)
    }

    /// Decimal rendering with `sig` significant digits, never in scientific
    /// notation.
    pub fn to_sig_string(&self, sig: usize) -> String {
        let sig = sig.max(1);
        // Enough decimal places to see `sig` digits of anything the
        // precision can resolve.
        let places = (self.bits as f64 / std::f64::consts::LOG2_10).ceil() as usize + sig;
        let scaled = (self.mant.abs() * BigInt::from(10).pow(places as u32)) >> self.bits;
        if scaled.is_zero() {
            return "0".to_string();
        }
        let digits = scaled.to_string();
        let int_digits = digits.len() as i64 - places as i64;
        let keep = sig.min(digits.len());
        let mut head: BigInt = digits[..keep].parse().unwrap();
        if digits.as_bytes().get(keep).is_some_and(|&b| b >= b'5') {
            head += 1;
        }
        let mut head = head.to_string();
        let mut int_digits = int_digits;
        if head.len() > keep {
            // carry rippled into a new leading digit
            head.pop();
            int_digits += 1;
        }
        let mut out = String::new();
        if self.is_negative() {
            out.push('-');
        }
        if int_digits <= 0 {
            out.push_str("0.");
            out.extend(std::iter::repeat_n('0', (-int_digits) as usize));
            out.push_str(&head);
        } else if int_digits as usize >= head.len() {
            out.push_str(&head);
            out.extend(std::iter::repeat_n('0', int_digits as usize - head.len()));
        } else {
            out.push_str(&head[..int_digits as usize]);
            out.push('.');
            out.push_str(&head[int_digits as usize..]);
        }
        out
    }

    fn check(&self, other: &Self) {
        debug_assert_eq!(self.bits, other.bits, "precision mismatch");
    }
}

impl PartialOrd for Fixed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fixed {
    fn cmp(&self, other: &Self) -> Ordering {
        self.check(other);
        self.mant.cmp(&other.mant)
    }
}

impl Add for &Fixed {
    type Output = Fixed;
    fn add(self, rhs: Self) -> Fixed {
        self.check(rhs);
        Fixed {
            mant: &self.mant + &rhs.mant,
            bits: self.bits,
        }
    }
}

impl Sub for &Fixed {
    type Output = Fixed;
    fn sub(self, rhs: Self) -> Fixed {
        self.check(rhs);
        Fixed {
            mant: &self.mant - &rhs.mant,
            bits: self.bits,
        }
    }
}

impl Mul for &Fixed {
    type Output = Fixed;
    fn mul(self, rhs: Self) -> Fixed {
        self.check(rhs);
        let half = BigInt::one() << (self.bits - 1);
        Fixed {
            mant: (&self.mant * &rhs.mant + half) >> self.bits,
            bits: self.bits,
        }
    }
}

impl Div for &Fixed {
    type Output = Fixed;
    fn div(self, rhs: Self) -> Fixed {
        self.check(rhs);
        assert!(!rhs.is_zero(), "fixed-point division by zero");
        Fixed {
            mant: (&self.mant << self.bits) / &rhs.mant,
            bits: self.bits,
        }
    }
}

impl Neg for &Fixed {
    type Output = Fixed;
    fn neg(self) -> Fixed {
        Fixed {
            mant: -&self.mant,
            bits: self.bits,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Complex {
    pub re: Fixed,
    pub im: Fixed,
}

impl Complex {
    pub fn new(re: Fixed, im: Fixed) -> Self {
        Self { re, im }
    }

    pub fn real(re: Fixed) -> Self {
        let bits = re.bits;
        Self {
            re,
            im: Fixed::zero(bits),
        }
    }

    pub fn zero(bits: u32) -> Self {
        Self::real(Fixed::zero(bits))
    }

    pub fn one(bits: u32) -> Self {
        Self::real(Fixed::from_i64(1, bits))
    }

    pub fn from_f64(re: f64, im: f64, bits: u32) -> Self {
        Self::new(Fixed::from_f64(re, bits), Fixed::from_f64(im, bits))
    }

    pub fn bits(&self) -> u32 {
        self.re.bits
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn norm_sqr(&self) -> Fixed {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    /// Modulus, computed from the mantissas so no precision is lost
    /// squaring small values.
    pub fn abs(&self) -> Fixed {
        let m = &self.re.mant * &self.re.mant + &self.im.mant * &self.im.mant;
        Fixed {
            mant: m.sqrt(),
            bits: self.bits(),
        }
    }

    pub fn recip(&self) -> Self {
        &Complex::one(self.bits()) / self
    }

    pub fn powu(&self, mut exp: u64) -> Self {
        let mut acc = Complex::one(self.bits());
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Horner evaluation of integer coefficients given in ascending order.
    pub fn eval_poly(&self, coeffs: &[BigInt]) -> Self {
        let bits = self.bits();
        coeffs.iter().rev().fold(Complex::zero(bits), |acc, c| {
            let mut next = &acc * self;
            next.re = &next.re + &Fixed::from_int(c, bits);
            next
        })
    }
}

impl Add for &Complex {
    type Output = Complex;
    fn add(self, rhs: Self) -> Complex {
        Complex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &Complex {
    type Output = Complex;
    fn sub(self, rhs: Self) -> Complex {
        Complex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &Complex {
    type Output = Complex;
    fn mul(self, rhs: Self) -> Complex {
        Complex::new(
            &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        )
    }
}

/// Smith's algorithm: divides through by the larger component of the
/// divisor instead of forming `|rhs|^2`.
impl Div for &Complex {
    type Output = Complex;
    fn div(self, rhs: Self) -> Complex {
        if rhs.re.abs() >= rhs.im.abs() {
            let r = &rhs.im / &rhs.re;
            let den = &rhs.re + &(&rhs.im * &r);
            Complex::new(
                &(&self.re + &(&self.im * &r)) / &den,
                &(&self.im - &(&self.re * &r)) / &den,
            )
        } else {
            let r = &rhs.re / &rhs.im;
            let den = &(&rhs.re * &r) + &rhs.im;
            Complex::new(
                &(&(&self.re * &r) + &self.im) / &den,
                &(&(&self.im * &r) - &self.re) / &den,
            )
        }
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-&self.re, -&self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BITS: u32 = 200;

    fn fx(v: f64) -> Fixed {
        Fixed::from_f64(v, BITS)
    }

    #[test]
    fn arithmetic() {
        assert_eq!((&fx(1.5) * &fx(-2.0)).to_f64(), -3.0);
        assert_eq!((&fx(1.0) / &fx(4.0)).to_f64(), 0.25);
        assert!((fx(2.0).sqrt().to_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert_eq!(fx(2.5).round(), BigInt::from(3));
        assert_eq!(fx(-2.5).round(), BigInt::from(-3));
        assert_eq!(fx(-2.4).round(), BigInt::from(-2));
    }

    #[test]
    fn tiny_values_convert() {
        let v = Fixed::pow10_neg(40, BITS);
        assert!((v.to_f64() / 1e-40 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn complex_division() {
        let a = Complex::from_f64(1.0, 2.0, BITS);
        let b = Complex::from_f64(3.0, -4.0, BITS);
        let (re, im) = (&a / &b).to_f64();
        assert!((re - -0.2).abs() < 1e-15 && (im - 0.4).abs() < 1e-15);
        let b = Complex::from_f64(0.5, 4.0, BITS);
        let back = &(&a / &b) * &b;
        assert!((&back - &a).abs().to_f64() < 1e-50);
        assert_eq!(Complex::from_f64(3.0, 4.0, BITS).abs().to_f64(), 5.0);
    }

    #[test]
    fn sig_digits() {
        let third = &Fixed::from_i64(1, BITS) / &Fixed::from_i64(3, BITS);
        assert_eq!(third.to_sig_string(5), "0.33333");
        assert_eq!((-&third).to_sig_string(3), "-0.333");
        assert_eq!(Fixed::from_i64(19, BITS).to_sig_string(4), "19.00");
        assert_eq!(Fixed::from_i64(101902, BITS).to_sig_string(3), "102000");
        assert_eq!(fx(0.000123456).to_sig_string(3), "0.000123");
        assert_eq!(fx(9.9996).to_sig_string(4), "10.00");
        assert_eq!(Fixed::zero(BITS).to_sig_string(5), "0");
    }
}
