//! Dense univariate polynomials over any [`Scalar`] field.
//!
//! Coefficients are stored low-to-high. The zero polynomial is a single
//! zero coefficient, so every polynomial carries at least one scalar that
//! downstream code can use as a prototype for its field.

use crate::error::{Error, Result};
use crate::ff::{self, FieldElement, FieldRef};
use crate::scalar::Scalar;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub struct Poly<T: Scalar> {
    /// Invariant: non-empty; no trailing zeros unless len == 1.
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    /// Builds a polynomial from low-to-high coefficients (trailing zeros
    /// are trimmed). Panics on an empty vector — use `zero` instead.
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "polynomial needs at least one coefficient");
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn zero(proto: &T) -> Self {
        Poly { coeffs: vec![proto.zero_like()] }
    }

    pub fn one(proto: &T) -> Self {
        Poly { coeffs: vec![proto.one_like()] }
    }

    pub fn constant(c: T) -> Self {
        Poly { coeffs: vec![c] }
    }

    /// The monomial x.
    pub fn x(proto: &T) -> Self {
        Poly { coeffs: vec![proto.zero_like(), proto.one_like()] }
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().map_or(false, Scalar::is_zero) {
            self.coeffs.pop();
        }
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero when i exceeds the degree).
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.proto().zero_like())
    }

    pub fn leading(&self) -> &T {
        self.coeffs.last().unwrap()
    }

    /// Any scalar of the right field, for building zeros and ones.
    pub fn proto(&self) -> &T {
        &self.coeffs[0]
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = self.proto().zero_like();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).unwrap_or(&zero);
            let b = rhs.coeffs.get(i).unwrap_or(&zero);
            out.push(a.add(b)?);
        }
        Ok(Poly::from_coeffs(out))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(Scalar::neg).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.is_zero() || rhs.is_zero() {
            return Ok(Poly::zero(self.proto()));
        }
        let zero = self.proto().zero_like();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(Poly::from_coeffs(out))
    }

    pub fn mul_scalar(&self, c: &T) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.mul(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(coeffs))
    }

    /// Euclidean division: `self = q * rhs + r` with deg r < deg rhs.
    pub fn divmod(&self, rhs: &Self) -> Result<(Self, Self)> {
        if rhs.is_zero() {
            return Err(Error::ZeroPolyDivision);
        }
        let dr = rhs.coeffs.len() - 1;
        if self.is_zero() || self.coeffs.len() - 1 < dr {
            return Ok((Poly::zero(self.proto()), self.clone()));
        }
        let lead_inv = rhs.leading().inv()?;
        let mut rem = self.coeffs.clone();
        let zero = self.proto().zero_like();
        let mut quot = vec![zero.clone(); rem.len() - dr];
        for i in (0..quot.len()).rev() {
            let top = rem[i + dr].clone();
            if top.is_zero() {
                continue;
            }
            let c = top.mul(&lead_inv)?;
            for (j, b) in rhs.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].sub(&c.mul(b)?)?;
            }
            quot[i] = c;
        }
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    pub fn rem(&self, rhs: &Self) -> Result<Self> {
        Ok(self.divmod(rhs)?.1)
    }

    /// True when rhs divides self exactly.
    pub fn divisible_by(&self, rhs: &Self) -> Result<bool> {
        Ok(self.rem(rhs)?.is_zero())
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, rhs: &Self) -> Result<Self> {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.monic()
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_monic() {
            return Ok(self.clone());
        }
        self.mul_scalar(&self.leading().inv()?)
    }

    /// self^e mod modulus by binary exponentiation. The modulus must have
    /// degree >= 1.
    pub fn powmod(&self, mut e: u128, modulus: &Self) -> Result<Self> {
        if modulus.degree().map_or(true, |d| d < 1) {
            return Err(Error::ConstantPolynomial);
        }
        let mut acc = Poly::one(self.proto());
        let mut base = self.rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?.rem(modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?.rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// Plain power (no modulus); exponent kept small by callers.
    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Poly::one(self.proto());
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Formal derivative; the i-th coefficient is multiplied by i in the
    /// coefficient field (so it can vanish in characteristic p).
    pub fn derivative(&self) -> Result<Self> {
        if self.coeffs.len() == 1 {
            return Ok(Poly::zero(self.proto()));
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c.mul(&c.from_usize_like(i))?);
        }
        Ok(Poly::from_coeffs(out))
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> Result<T> {
        let mut acc = self.coeffs.last().unwrap().clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc.mul(x)?.add(c)?;
        }
        Ok(acc)
    }

    /// Strips the largest power of x dividing self; returns (k, self / x^k).
    pub fn strip_x_power(&self) -> (usize, Self) {
        if self.is_zero() {
            return (0, self.clone());
        }
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (k, Poly { coeffs: self.coeffs[k..].to_vec() })
    }
}

impl Poly<FieldElement> {
    /// The field the coefficients live in.
    pub fn field(&self) -> &FieldRef {
        self.coeffs[0].field()
    }

    /// Parses a low-to-high coefficient list: "1,1,0,0,0,1" over a prime
    /// field, or with bracketed extension elements like "[1,0],[0,1]".
    pub fn parse(field: &FieldRef, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty coefficient list".into()));
        }
        let coeffs = ff::split_top_level(text)
            .into_iter()
            .map(|tok| FieldElement::parse(field, tok))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(coeffs))
    }

    /// Low-to-high coefficient list in the same syntax `parse` accepts.
    pub fn coeff_string(&self) -> String {
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl<T: Scalar> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            // coefficients rendered with a leading minus (rationals) move
            // the sign into the separator: "x^2 - 3*x" not "x^2 + -3*x"
            let rendered = c.to_string();
            let (negative, magnitude) = match rendered.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, rendered),
            };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let unit_coeff = c.is_one() || (negative && magnitude == "1");
            match i {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if !unit_coeff {
                        write!(f, "{magnitude}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::Field;
    use crate::scalar::parse_rational;
    use num_rational::BigRational;
    use rand_chacha::rand_core::{RngCore, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn poly2(field: &FieldRef, bits: &[i64]) -> Poly<FieldElement> {
        Poly::from_coeffs(bits.iter().map(|&b| FieldElement::from_int(field, b)).collect())
    }

    fn random_poly(field: &FieldRef, max_deg: usize, rng: &mut ChaCha8Rng) -> Poly<FieldElement> {
        let deg = (rng.next_u64() as usize) % (max_deg + 1);
        let p = field.characteristic();
        let coeffs = (0..=deg)
            .map(|_| FieldElement::from_int(field, (rng.next_u64() % p) as i64))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    #[test]
    fn degree_and_zero_conventions() {
        let f2 = Field::new(2, 1).unwrap();
        let z = Poly::zero(&FieldElement::one(&f2));
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(poly2(&f2, &[1]).degree(), Some(0));
        assert_eq!(poly2(&f2, &[1, 1, 0, 0]).degree(), Some(1));
    }

    #[test]
    fn divmod_worked_example() {
        // (x^5 + x^2 + 1) = (x^3 + x^2)(x^2 + x + 1) + 1 over F_2,
        // checked by hand with two steps of long division
        let f2 = Field::new(2, 1).unwrap();
        let dividend = poly2(&f2, &[1, 0, 1, 0, 0, 1]);
        let divisor = poly2(&f2, &[1, 1, 1]);
        let (q, r) = dividend.divmod(&divisor).unwrap();
        assert_eq!(q, poly2(&f2, &[0, 0, 1, 1]));
        assert_eq!(r, poly2(&f2, &[1]));
        let back = q.mul(&divisor).unwrap().add(&r).unwrap();
        assert_eq!(back, dividend);
    }

    #[test]
    fn divmod_reconstruction_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, m) in [(2u64, 1usize), (3, 1), (5, 1), (2, 2), (3, 2)] {
            let field = Field::new(p, m).unwrap();
            for _ in 0..100 {
                let a = random_poly(&field, 8, &mut rng);
                let b = random_poly(&field, 4, &mut rng);
                if b.is_zero() {
                    assert_eq!(a.divmod(&b).unwrap_err(), Error::ZeroPolyDivision);
                    continue;
                }
                let (q, r) = a.divmod(&b).unwrap();
                assert_eq!(q.mul(&b).unwrap().add(&r).unwrap(), a);
                if let (Some(dr), Some(db)) = (r.degree(), b.degree()) {
                    assert!(dr < db);
                }
            }
        }
    }

    #[test]
    fn gcd_contains_common_factor() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let field = Field::new(3, 1).unwrap();
        for _ in 0..50 {
            let a = random_poly(&field, 4, &mut rng);
            let b = random_poly(&field, 4, &mut rng);
            let c = random_poly(&field, 3, &mut rng);
            if c.is_zero() {
                continue;
            }
            let g = a.mul(&c).unwrap().gcd(&b.mul(&c).unwrap()).unwrap();
            if g.is_zero() {
                continue;
            }
            assert!(g.divisible_by(&c.monic().unwrap()).unwrap(), "gcd {g} missing factor {c}");
            assert!(g.is_monic());
        }
    }

    #[test]
    fn gcd_of_zero() {
        let f2 = Field::new(2, 1).unwrap();
        let f = poly2(&f2, &[1, 1]);
        let z = Poly::zero(f.proto());
        assert_eq!(f.gcd(&z).unwrap(), f);
        assert!(z.gcd(&z).unwrap().is_zero());
    }

    #[test]
    fn powmod_matches_naive_power() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let field = Field::new(5, 1).unwrap();
        for _ in 0..30 {
            let base = random_poly(&field, 3, &mut rng);
            let modulus = random_poly(&field, 3, &mut rng);
            if modulus.degree().map_or(true, |d| d < 1) {
                continue;
            }
            let e = (rng.next_u64() % 12) as u32;
            let naive = base.pow(e).unwrap().rem(&modulus).unwrap();
            assert_eq!(base.powmod(e as u128, &modulus).unwrap(), naive);
        }
        let c = Poly::one(&FieldElement::one(&field));
        assert_eq!(c.powmod(3, &c).unwrap_err(), Error::ConstantPolynomial);
    }

    #[test]
    fn derivative_product_rule() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for (p, m) in [(2u64, 1usize), (5, 1), (3, 2)] {
            let field = Field::new(p, m).unwrap();
            for _ in 0..40 {
                let f = random_poly(&field, 5, &mut rng);
                let g = random_poly(&field, 5, &mut rng);
                let lhs = f.mul(&g).unwrap().derivative().unwrap();
                let rhs = f
                    .derivative()
                    .unwrap()
                    .mul(&g)
                    .unwrap()
                    .add(&f.mul(&g.derivative().unwrap()).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn derivative_vanishes_on_pth_powers() {
        let f2 = Field::new(2, 1).unwrap();
        // x^2 + 1 = (x+1)^2 over F_2
        let f = poly2(&f2, &[1, 0, 1]);
        assert!(f.derivative().unwrap().is_zero());
    }

    #[test]
    fn eval_matches_direct_sum() {
        let f7 = Field::new(7, 1).unwrap();
        let f = poly2(&f7, &[3, 0, 2, 5]);
        for a in 0..7i64 {
            let x = FieldElement::from_int(&f7, a);
            let direct = (3 + 2 * a * a + 5 * a * a * a).rem_euclid(7);
            assert_eq!(f.eval(&x).unwrap(), FieldElement::from_int(&f7, direct));
        }
    }

    #[test]
    fn strip_x_power_examples() {
        let f3 = Field::new(3, 1).unwrap();
        let f = poly2(&f3, &[0, 0, 1, 2]);
        let (k, rest) = f.strip_x_power();
        assert_eq!(k, 2);
        assert_eq!(rest, poly2(&f3, &[1, 2]));
        let g = poly2(&f3, &[1, 1]);
        assert_eq!(g.strip_x_power(), (0, g.clone()));
    }

    #[test]
    fn parse_and_display() {
        let f2 = Field::new(2, 1).unwrap();
        let f = Poly::parse(&f2, "1,1,0,0,0,1").unwrap();
        assert_eq!(f.to_string(), "x^5 + x + 1");
        assert_eq!(f.coeff_string(), "1,1,0,0,0,1");
        assert_eq!(Poly::parse(&f2, &f.coeff_string()).unwrap(), f);

        let f9 = Field::new(3, 2).unwrap();
        let g = Poly::parse(&f9, "[1,2],[0,1],1").unwrap();
        assert_eq!(g.degree(), Some(2));
        assert_eq!(g.to_string(), "x^2 + [0,1]*x + [1,2]");
        assert_eq!(Poly::parse(&f9, &g.coeff_string()).unwrap(), g);

        assert!(Poly::<FieldElement>::parse(&f2, "").is_err());
        assert!(Poly::<FieldElement>::parse(&f2, "1,x").is_err());
    }

    #[test]
    fn rational_polynomials_work_too() {
        let half = parse_rational("1/2").unwrap();
        let f = Poly::from_coeffs(vec![
            parse_rational("-1").unwrap(),
            parse_rational("0").unwrap(),
            parse_rational("1").unwrap(),
        ]);
        // (x^2 - 1) / (x - 1) = x + 1
        let d = Poly::from_coeffs(vec![parse_rational("-1").unwrap(), parse_rational("1").unwrap()]);
        let (q, r) = f.divmod(&d).unwrap();
        assert!(r.is_zero());
        assert_eq!(q.eval(&half).unwrap(), parse_rational("3/2").unwrap());
        let v = f.eval(&half).unwrap();
        assert_eq!(v, parse_rational("-3/4").unwrap());
        assert_eq!(f.to_string(), "x^2 - 1");
        let g = Poly::from_coeffs(vec![
            parse_rational("1/2").unwrap(),
            parse_rational("-3/2").unwrap(),
            parse_rational("-1").unwrap(),
        ]);
        assert_eq!(g.to_string(), "-x^2 - 3/2*x + 1/2");
        let _ = BigRational::from_integer(1.into());
    }
}
