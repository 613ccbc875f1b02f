//! The coefficient abstraction shared by polynomials and matrices.
//!
//! Everything downstream (polynomial division, Gaussian elimination,
//! characteristic polynomials) only needs exact field arithmetic, so it is
//! written once against [`Scalar`] and instantiated for finite-field
//! elements and for arbitrary-precision rationals. No floating point
//! anywhere.

use crate::error::{Error, Result};
use crate::ff::FieldElement;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Exact field arithmetic. `zero_like`/`one_like` take a prototype so
/// finite-field elements can carry their field handle; fallible ops
/// surface mixed-field and divide-by-zero errors instead of panicking.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    /// Embedding of a small nonnegative integer (mod p in finite fields).
    fn from_usize_like(&self, n: usize) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Result<Self>;
    fn sub(&self, rhs: &Self) -> Result<Self>;
    fn mul(&self, rhs: &Self) -> Result<Self>;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;

    fn is_one(&self) -> bool {
        self.one_like() == *self
    }
}

impl Scalar for FieldElement {
    fn zero_like(&self) -> Self {
        FieldElement::zero(self.field())
    }

    fn one_like(&self) -> Self {
        FieldElement::one(self.field())
    }

    fn from_usize_like(&self, n: usize) -> Self {
        let p = self.field().characteristic();
        FieldElement::from_int(self.field(), (n as u64 % p) as i64)
    }

    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Result<Self> {
        FieldElement::add(self, rhs)
    }

    fn sub(&self, rhs: &Self) -> Result<Self> {
        FieldElement::sub(self, rhs)
    }

    fn mul(&self, rhs: &Self) -> Result<Self> {
        FieldElement::mul(self, rhs)
    }

    fn neg(&self) -> Self {
        FieldElement::neg(self)
    }

    fn inv(&self) -> Result<Self> {
        FieldElement::inv(self)
    }

    fn is_one(&self) -> bool {
        FieldElement::is_one(self)
    }
}

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }

    fn one_like(&self) -> Self {
        BigRational::one()
    }

    fn from_usize_like(&self, n: usize) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Result<Self> {
        Ok(self + rhs)
    }

    fn sub(&self, rhs: &Self) -> Result<Self> {
        Ok(self - rhs)
    }

    fn mul(&self, rhs: &Self) -> Result<Self> {
        Ok(self * rhs)
    }

    fn neg(&self) -> Self {
        -self.clone()
    }

    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            return Err(Error::ZeroInverse);
        }
        Ok(self.recip())
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

/// Parses a rational like "3", "-7/2", keeping it exact.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("bad rational {text:?}: expected a or a/b"));
    match text.split_once('/') {
        None => {
            let n: BigInt = text.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().map_err(|_| bad())?;
            let d: BigInt = den.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// Renders a rational as "a" or "a/b" (always in lowest terms).
pub fn rational_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Absolute value helper used by magnitude caps.
pub fn rational_abs(x: &BigRational) -> BigRational {
    x.abs()
}
