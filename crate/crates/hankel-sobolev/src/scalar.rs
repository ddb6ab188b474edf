//! Arbitrary-precision rational scalars.
//!
//! `ExactScalar` is the default coefficient field of the crate. Every
//! structural computation (shift conjugation, the Φ/Ψ operators, layer
//! decomposition, minors, LDL) runs over it, so identities that hold for the
//! infinite matrices hold bit-exactly on every truncation. Floating point
//! appears only where square roots are unavoidable; those paths use `f64`
//! together with [`Tolerance`] for zero tests.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact rational number, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactScalar(BigRational);

impl ExactScalar {
    pub fn from_int(n: i64) -> Self {
        ExactScalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds `num/den`, reducing to lowest terms. Panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        ExactScalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(ExactScalar(BigRational::new(num, den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        ExactScalar(self.0.abs())
    }

    /// Multiplicative inverse; fails on zero.
    pub fn recip(&self) -> Result<Self> {
        if self.0.is_zero() {
            return Err(Error::SingularDiagonal(0));
        }
        Ok(ExactScalar(self.0.recip()))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = ExactScalar::one();
        for _ in 0..exp {
            acc *= self.clone();
        }
        acc
    }

    /// Nearest `f64`; saturates to ±∞ if the value is out of range.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// `n!` as an exact scalar.
    pub fn factorial(n: usize) -> Self {
        let mut acc = BigInt::one();
        for k in 2..=n {
            acc *= BigInt::from(k);
        }
        ExactScalar(BigRational::from_integer(acc))
    }

    /// The falling-factorial ratio `(k + i)! / i!` as an exact scalar.
    pub fn shift_factor(k: usize, i: usize) -> Self {
        let mut acc = BigInt::one();
        for t in 1..=k {
            acc *= BigInt::from(i + t);
        }
        ExactScalar(BigRational::from_integer(acc))
    }

    /// Binomial coefficient `C(n, k)`.
    pub fn binomial(n: usize, k: usize) -> Self {
        if k > n {
            return ExactScalar::zero();
        }
        let k = k.min(n - k);
        let mut acc = BigInt::one();
        for t in 0..k {
            acc = acc * BigInt::from(n - t) / BigInt::from(t + 1);
        }
        ExactScalar(BigRational::from_integer(acc))
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for ExactScalar {
    type Err = Error;

    /// Parses `"p"` or `"p/q"` with optional sign on the numerator.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("invalid rational literal {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            None => {
                let n = BigInt::from_str(s).map_err(|_| bad())?;
                Ok(ExactScalar(BigRational::from_integer(n)))
            }
            Some((p, q)) => {
                let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
                let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(bad());
                }
                Ok(ExactScalar(BigRational::new(p, q)))
            }
        }
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::from_int(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar($trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $trait<&'a ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &'a ExactScalar) -> ExactScalar {
                ExactScalar($trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-self.0)
    }
}

impl AddAssign for ExactScalar {
    fn add_assign(&mut self, rhs: ExactScalar) {
        self.0 += rhs.0;
    }
}

impl SubAssign for ExactScalar {
    fn sub_assign(&mut self, rhs: ExactScalar) {
        self.0 -= rhs.0;
    }
}

impl MulAssign for ExactScalar {
    fn mul_assign(&mut self, rhs: ExactScalar) {
        self.0 *= rhs.0;
    }
}

impl Zero for ExactScalar {
    fn zero() -> Self {
        ExactScalar(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for ExactScalar {
    fn one() -> Self {
        ExactScalar(BigRational::one())
    }
}

impl FromPrimitive for ExactScalar {
    fn from_i64(n: i64) -> Option<Self> {
        Some(ExactScalar::from_int(n))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(ExactScalar(BigRational::from_integer(BigInt::from(n))))
    }
    fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_f64(x).map(ExactScalar)
    }
}

/// Absolute zero tolerance for the floating-point path.
///
/// An entry `x` computed from data of magnitude `scale` counts as zero when
/// `|x| <= tol * (1 + scale)`, so index detection does not flip on rounding
/// noise while genuinely nonzero structure stays visible.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance(pub f64);

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance(1e-10)
    }
}

impl Tolerance {
    pub fn is_zero(&self, value: f64, scale: f64) -> bool {
        value.abs() <= self.0 * (1.0 + scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_sign() {
        let x = ExactScalar::ratio(-4, -6);
        assert_eq!(x, ExactScalar::ratio(2, 3));
        assert_eq!(x.to_string(), "2/3");
        let y = ExactScalar::ratio(3, -9);
        assert_eq!(y.to_string(), "-1/3");
        assert!(y.denom().is_positive());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "-7", "22/7", "-1/3", "123456789012345678901/7"] {
            let x: ExactScalar = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert!("1/0".parse::<ExactScalar>().is_err());
        assert!("a/b".parse::<ExactScalar>().is_err());
        assert!("1.5".parse::<ExactScalar>().is_err());
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = ExactScalar::ratio(1, 3);
        let b = ExactScalar::ratio(1, 6);
        assert_eq!(a.clone() + b.clone(), ExactScalar::ratio(1, 2));
        assert_eq!(a.clone() - b.clone(), b.clone());
        assert_eq!(a.clone() * b.clone(), ExactScalar::ratio(1, 18));
        assert_eq!(a / b, ExactScalar::from_int(2));
    }

    #[test]
    fn factorial_and_shift_factor() {
        assert_eq!(ExactScalar::factorial(0), ExactScalar::from_int(1));
        assert_eq!(ExactScalar::factorial(5), ExactScalar::from_int(120));
        // (k+i)!/i! for k=2: 2, 6, 12
        assert_eq!(ExactScalar::shift_factor(2, 0), ExactScalar::from_int(2));
        assert_eq!(ExactScalar::shift_factor(2, 1), ExactScalar::from_int(6));
        assert_eq!(ExactScalar::shift_factor(2, 2), ExactScalar::from_int(12));
        assert_eq!(ExactScalar::shift_factor(0, 7), ExactScalar::from_int(1));
    }

    #[test]
    fn binomial_row() {
        let row: Vec<ExactScalar> = (0..=4).map(|k| ExactScalar::binomial(4, k)).collect();
        let expect: Vec<ExactScalar> = [1, 4, 6, 4, 1].iter().map(|&n| n.into()).collect();
        assert_eq!(row, expect);
        assert!(ExactScalar::binomial(3, 5).is_zero());
    }

    #[test]
    fn tolerance_scales_with_input() {
        let tol = Tolerance::default();
        assert!(tol.is_zero(5e-11, 0.0));
        assert!(!tol.is_zero(5e-10, 0.0));
        assert!(tol.is_zero(5e-10, 100.0));
    }
}
