//! Exact scalar arithmetic: dyadic multiples of powers of 1/√2 and
//! quadratic field elements (a + b√d)/c for a fixed radicand d.
//!
//! No floating point anywhere; every value has a unique canonical form so
//! equality is plain structural comparison.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed radicands: √{0} vs √{1}")]
    MixedRadicands(u32, u32),
    #[error("quotient not representable in Z[1/√2]")]
    NotDivisible,
    #[error("sum of √2-powers with mixed parity is not representable as m/(√2)^k")]
    MixedRootParity,
}

/// `mantissa / (√2)^halfpow`, canonical: mantissa odd or halfpow < 2; zero is (0, 0).
///
/// This ring carries every coefficient that appears in spinor words: each
/// transposition lift contributes a single factor of 1/√2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DyadicRootTwo {
    mantissa: BigInt,
    halfpow: u32,
}

impl DyadicRootTwo {
    pub fn new(mantissa: impl Into<BigInt>, halfpow: u32) -> Self {
        let mut v = DyadicRootTwo { mantissa: mantissa.into(), halfpow };
        v.canonicalize();
        v
    }

    pub fn zero() -> Self {
        DyadicRootTwo { mantissa: BigInt::zero(), halfpow: 0 }
    }

    pub fn one() -> Self {
        DyadicRootTwo { mantissa: BigInt::one(), halfpow: 0 }
    }

    /// 1/√2, the coefficient of every unit vector (e_a - e_b)/√2.
    pub fn inv_sqrt2() -> Self {
        DyadicRootTwo { mantissa: BigInt::one(), halfpow: 1 }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.halfpow == 0 && self.mantissa.is_one()
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn halfpow(&self) -> u32 {
        self.halfpow
    }

    fn canonicalize(&mut self) {
        if self.mantissa.is_zero() {
            self.halfpow = 0;
            return;
        }
        while self.halfpow >= 2 && self.mantissa.is_even() {
            self.mantissa /= 2;
            self.halfpow -= 2;
        }
    }

    /// Fallible addition. Values with distinct √2-parity (for example 1 and
    /// 1/√2) have no representative of the form m/(√2)^k.
    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.halfpow % 2 != other.halfpow % 2 {
            return Err(ScalarError::MixedRootParity);
        }
        let k = self.halfpow.max(other.halfpow);
        // (√2)^(k - k_i) is the integer 2^((k - k_i)/2) because parities agree.
        let lift = |v: &Self| -> BigInt { &v.mantissa * (BigInt::one() << ((k - v.halfpow) / 2)) };
        Ok(DyadicRootTwo::new(lift(self) + lift(other), k))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.checked_add(&other.clone().neg())
    }

    /// Exact division; errors when the quotient leaves Z[1/√2] in m/(√2)^k form.
    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        if other.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        // self / other = (m1 / m2) (√2)^(k2 - k1); shift by (√2)^2 = 2 until
        // the mantissa quotient is exact and the power non-negative.
        let mut num = self.mantissa.clone();
        let den = &other.mantissa;
        let mut k = self.halfpow as i64 - other.halfpow as i64;
        while k < 0 || !(&num % den).is_zero() {
            num *= 2;
            k += 2;
            // once every factor of 2 available in `den` is matched there is
            // nothing more to gain: bail out if the odd parts do not divide.
            if k > self.halfpow as i64 + 2 * (den.bits() as i64 + 2) {
                return Err(ScalarError::NotDivisible);
            }
        }
        Ok(DyadicRootTwo::new(num / den, k as u32))
    }
}

impl Add for DyadicRootTwo {
    type Output = DyadicRootTwo;
    fn add(self, rhs: DyadicRootTwo) -> DyadicRootTwo {
        self.checked_add(&rhs).expect("incompatible √2-parity in DyadicRootTwo addition")
    }
}

impl Sub for DyadicRootTwo {
    type Output = DyadicRootTwo;
    fn sub(self, rhs: DyadicRootTwo) -> DyadicRootTwo {
        self.checked_sub(&rhs).expect("incompatible √2-parity in DyadicRootTwo subtraction")
    }
}

impl Mul for DyadicRootTwo {
    type Output = DyadicRootTwo;
    fn mul(self, rhs: DyadicRootTwo) -> DyadicRootTwo {
        DyadicRootTwo::new(self.mantissa * rhs.mantissa, self.halfpow + rhs.halfpow)
    }
}

impl<'a> Mul<&'a DyadicRootTwo> for &'a DyadicRootTwo {
    type Output = DyadicRootTwo;
    fn mul(self, rhs: &'a DyadicRootTwo) -> DyadicRootTwo {
        DyadicRootTwo::new(&self.mantissa * &rhs.mantissa, self.halfpow + rhs.halfpow)
    }
}

impl Neg for DyadicRootTwo {
    type Output = DyadicRootTwo;
    fn neg(mut self) -> DyadicRootTwo {
        self.mantissa = -self.mantissa;
        self
    }
}

impl fmt::Display for DyadicRootTwo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.halfpow {
            0 => write!(f, "{}", self.mantissa),
            1 => write!(f, "{}/√2", self.mantissa),
            k if k % 2 == 0 => write!(f, "{}/{}", self.mantissa, BigInt::one() << (k / 2)),
            k => write!(f, "{}/({}√2)", self.mantissa, BigInt::one() << (k / 2)),
        }
    }
}

/// `(a + b√d)/c` with d square-free (2 or 5 in this crate), gcd(a,b,c) = 1, c > 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticScalar {
    d: u32,
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl QuadraticScalar {
    pub fn new(d: u32, a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        let mut v = QuadraticScalar { d, a: a.into(), b: b.into(), c: c.into() };
        assert!(!v.c.is_zero(), "denominator must be nonzero");
        v.canonicalize();
        v
    }

    pub fn from_int(d: u32, a: impl Into<BigInt>) -> Self {
        Self::new(d, a, 0, 1)
    }

    pub fn zero(d: u32) -> Self {
        Self::from_int(d, 0)
    }

    pub fn one(d: u32) -> Self {
        Self::from_int(d, 1)
    }

    pub fn radicand(&self) -> u32 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn canonicalize(&mut self) {
        if self.c.is_negative() {
            self.a = -std::mem::take(&mut self.a);
            self.b = -std::mem::take(&mut self.b);
            self.c = -std::mem::take(&mut self.c);
        }
        let g = self.a.gcd(&self.b).gcd(&self.c);
        if !g.is_one() && !g.is_zero() {
            self.a /= &g;
            self.b /= &g;
            self.c /= &g;
        }
    }

    fn check(&self, other: &Self) -> Result<(), ScalarError> {
        if self.d != other.d {
            return Err(ScalarError::MixedRadicands(self.d, other.d));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        Ok(Self::new(
            self.d,
            &self.a * &other.c + &other.a * &self.c,
            &self.b * &other.c + &other.b * &self.c,
            &self.c * &other.c,
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        Ok(Self::new(
            self.d,
            &self.a * &other.a + BigInt::from(self.d) * &self.b * &other.b,
            &self.a * &other.b + &self.b * &other.a,
            &self.c * &other.c,
        ))
    }

    pub fn neg(&self) -> Self {
        QuadraticScalar { d: self.d, a: -self.a.clone(), b: -self.b.clone(), c: self.c.clone() }
    }

    /// Galois conjugate √d ↦ -√d.
    pub fn conjugate(&self) -> Self {
        QuadraticScalar { d: self.d, a: self.a.clone(), b: -self.b.clone(), c: self.c.clone() }
    }

    pub fn inverse(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        // ((a + b√d)/c)^-1 = c(a - b√d) / (a² - d b²)
        let norm = &self.a * &self.a - BigInt::from(self.d) * &self.b * &self.b;
        Ok(Self::new(self.d, &self.a * &self.c, -(&self.b * &self.c), norm))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        self.mul(&other.inverse()?)
    }

    /// Field norm a² - d b² over c², as an element with b = 0.
    pub fn norm(&self) -> Self {
        Self::new(
            self.d,
            &self.a * &self.a - BigInt::from(self.d) * &self.b * &self.b,
            0,
            &self.c * &self.c,
        )
    }
}

impl fmt::Display for QuadraticScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_one() {
            if self.b.is_zero() {
                write!(f, "{}", self.a)
            } else if self.a.is_zero() {
                write!(f, "{}√{}", self.b, self.d)
            } else {
                write!(f, "{} + {}√{}", self.a, self.b, self.d)
            }
        } else {
            write!(f, "({} + {}√{})/{}", self.a, self.b, self.d, self.c)
        }
    }
}
