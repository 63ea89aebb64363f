//! Coefficient types.
//!
//! Everything in the exact layer is generic over a [`Coeff`]: a field with
//! enough structure to parse and print literals. The crate root exposes
//! aliases for the concrete choices (`Rational`, `GaussianRational`, `f64`).

use std::fmt::Debug;
use std::ops::Neg;

use num::{BigInt, BigRational, Complex, Signed, ToPrimitive};
use num_traits::{Num, One, Zero};

/// A field usable as polynomial coefficient.
pub trait Coeff:
    Clone + PartialEq + Debug + Num + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_i64(n: i64) -> Self;

    fn from_ratio(num: &BigInt, den: &BigInt) -> Self;

    /// Returns `(negative, magnitude)` for printing. Types without an order
    /// report `negative = false` and wrap the magnitude in parentheses.
    fn display_parts(&self) -> (bool, String);

    /// Best-effort conversion used by numeric cross-checks.
    fn to_f64(&self) -> f64;

    /// Whether the coefficient is known exactly (drives zero tests).
    fn is_exact() -> bool {
        true
    }

    fn binomial(n: u32, k: u32) -> Self {
        if k > n {
            return Self::zero();
        }
        let mut acc = BigInt::one();
        for i in 0..k {
            acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
        }
        Self::from_ratio(&acc, &BigInt::one())
    }

    fn factorial(n: u32) -> Self {
        let mut acc = BigInt::one();
        for i in 2..=n {
            acc *= BigInt::from(i);
        }
        Self::from_ratio(&acc, &BigInt::one())
    }

    fn pow_u(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Coeff for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        BigRational::new(num.clone(), den.clone())
    }

    fn display_parts(&self) -> (bool, String) {
        (self.is_negative(), self.abs().to_string())
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Coeff for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        num.to_f64().unwrap_or(f64::NAN) / den.to_f64().unwrap_or(f64::NAN)
    }

    fn display_parts(&self) -> (bool, String) {
        (*self < 0.0, format!("{}", self.abs()))
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_exact() -> bool {
        false
    }
}

impl Coeff for Complex<BigRational> {
    fn from_i64(n: i64) -> Self {
        Complex::new(BigRational::from_i64(n), BigRational::zero())
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        Complex::new(BigRational::new(num.clone(), den.clone()), BigRational::zero())
    }

    fn display_parts(&self) -> (bool, String) {
        if self.im.is_zero() {
            return self.re.display_parts();
        }
        if self.re.is_zero() {
            let (neg, mag) = self.im.display_parts();
            let mag = if mag == "1" { "i".to_string() } else { format!("{mag}*i") };
            return (neg, mag);
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        (false, format!("({}{}{}*i)", self.re, sign, self.im.abs()))
    }

    fn to_f64(&self) -> f64 {
        Coeff::to_f64(&self.re)
    }
}

/// Gaussian rational `a + b i` with `a, b` rational.
pub type GaussianRational = Complex<BigRational>;

/// Shorthand for a rational literal `n/d`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact imaginary unit in `Q(i)`.
pub fn gauss_i() -> GaussianRational {
    Complex::new(BigRational::zero(), BigRational::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(BigRational::binomial(5, 2), rat(10, 1));
        assert_eq!(BigRational::binomial(2, 3), rat(0, 1));
        assert_eq!(BigRational::factorial(4), rat(24, 1));
        assert_eq!(f64::binomial(6, 3), 20.0);
    }

    #[test]
    fn display_parts_rational() {
        assert_eq!(rat(-3, 2).display_parts(), (true, "3/2".to_string()));
        let z = gauss_i() * GaussianRational::from_i64(-2);
        assert_eq!(z.display_parts(), (true, "2*i".to_string()));
    }
}
