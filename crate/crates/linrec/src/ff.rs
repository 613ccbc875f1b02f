//! Prime fields F_p and extensions F_{p^m}.
//!
//! A [`Field`] is fully determined by `(p, m)`: for `m > 1` the defining
//! modulus is always the lexicographically smallest monic irreducible of
//! degree `m` over F_p (coefficient tuples `(c_0, ..., c_{m-1})` compared
//! left to right), so the same `(p, m)` always produces the identical
//! field on every platform. Elements are coefficient vectors in the power
//! basis of that modulus and carry a shared handle to their field;
//! arithmetic between elements of different fields is an error, never a
//! coercion.

use crate::arith;
use crate::error::{Error, Result};
use smallvec::{smallvec, SmallVec};
use std::fmt;
use std::sync::Arc;

/// Largest field size accepted by [`Field::new`]. Keeps q^k - 1
/// arithmetic inside u128 for the degrees this crate targets.
pub const MAX_Q: u128 = 1 << 32;

type Coeffs = SmallVec<[u64; 4]>;

/// A finite field F_{p^m}, with its defining modulus when m > 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Field {
    p: u64,
    m: usize,
    /// Monic irreducible of degree m over F_p, low-to-high, `m + 1`
    /// coefficients. `None` exactly when m = 1.
    modulus: Option<Vec<u64>>,
}

/// Shared handle to a field; all elements hold one.
pub type FieldRef = Arc<Field>;

impl Field {
    /// Builds F_{p^m}. Pure: identical inputs give bit-identical fields.
    pub fn new(p: u64, m: usize) -> Result<FieldRef> {
        if !arith::is_prime(p as u128) {
            return Err(Error::NotPrime(p));
        }
        if m < 1 {
            return Err(Error::BadExtensionDegree);
        }
        let q = (p as u128)
            .checked_pow(m as u32)
            .filter(|&q| q <= MAX_Q)
            .ok_or_else(|| Error::SizeLimit(format!("field size {p}^{m} exceeds 2^32")))?;
        let _ = q;
        if m == 1 {
            return Ok(Arc::new(Field { p, m, modulus: None }));
        }
        let modulus = smallest_irreducible(p, m)?;
        Ok(Arc::new(Field { p, m, modulus: Some(modulus) }))
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn extension_degree(&self) -> usize {
        self.m
    }

    /// Field size q = p^m.
    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.m as u32)
    }

    /// Defining modulus for m > 1, low-to-high coefficients.
    pub fn modulus(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }

    /// CLI/file notation: "p" for prime fields, "p^m" for extensions.
    pub fn notation(&self) -> String {
        if self.m == 1 {
            format!("{}", self.p)
        } else {
            format!("{}^{}", self.p, self.m)
        }
    }

    /// Parses the "p" / "p^m" notation used by the CLI and file formats.
    pub fn parse(text: &str) -> Result<FieldRef> {
        let text = text.trim();
        let (p_str, m_str) = match text.split_once('^') {
            Some((a, b)) => (a, b),
            None => (text, "1"),
        };
        let p: u64 = p_str
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad field notation {text:?}: expected p or p^m")))?;
        let m: usize = m_str
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad field notation {text:?}: expected p or p^m")))?;
        Field::new(p, m)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.m)
        }
    }
}

/// Lexicographically smallest monic irreducible of degree m over F_p.
fn smallest_irreducible(p: u64, m: usize) -> Result<Vec<u64>> {
    let base = Field::new(p, 1)?;
    let mut tuple = vec![0u64; m];
    loop {
        // constant term 0 means the polynomial is divisible by x
        if tuple[0] != 0 {
            let mut coeffs: Vec<u64> = tuple.clone();
            coeffs.push(1);
            let candidate = crate::poly::Poly::from_coeffs(
                coeffs
                    .iter()
                    .map(|&c| FieldElement::from_int(&base, c as i64))
                    .collect(),
            );
            if crate::factor::is_irreducible(&candidate)? {
                return Ok(coeffs);
            }
        }
        // next tuple in lex order: rightmost coordinate varies fastest
        let mut i = m;
        loop {
            if i == 0 {
                return Err(Error::TheoryViolation(format!(
                    "no irreducible of degree {m} over F_{p}"
                )));
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < p {
                break;
            }
            tuple[i] = 0;
        }
    }
}

/// An element of a finite field: `m` residues mod p in the power basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: FieldRef,
    coeffs: Coeffs,
}

impl FieldElement {
    pub fn zero(field: &FieldRef) -> Self {
        FieldElement { field: field.clone(), coeffs: smallvec![0; field.m] }
    }

    pub fn one(field: &FieldRef) -> Self {
        let mut coeffs: Coeffs = smallvec![0; field.m];
        coeffs[0] = 1;
        FieldElement { field: field.clone(), coeffs }
    }

    /// Embeds an integer via the prime subfield (constant coefficient).
    pub fn from_int(field: &FieldRef, n: i64) -> Self {
        let p = field.p as i64;
        let r = n.rem_euclid(p) as u64;
        let mut coeffs: Coeffs = smallvec![0; field.m];
        coeffs[0] = r;
        FieldElement { field: field.clone(), coeffs }
    }

    /// Builds an element from up to `m` coefficients (low to high),
    /// reducing each one mod p.
    pub fn from_coeffs(field: &FieldRef, coeffs: &[i64]) -> Result<Self> {
        if coeffs.is_empty() || coeffs.len() > field.m {
            return Err(Error::Parse(format!(
                "element of {} needs 1..={} coefficients, got {}",
                field,
                field.m,
                coeffs.len()
            )));
        }
        let p = field.p as i64;
        let mut out: Coeffs = smallvec![0; field.m];
        for (i, &c) in coeffs.iter().enumerate() {
            out[i] = c.rem_euclid(p) as u64;
        }
        Ok(FieldElement { field: field.clone(), coeffs: out })
    }

    /// The generator x of the power basis (requires m > 1).
    pub fn generator(field: &FieldRef) -> Result<Self> {
        if field.m < 2 {
            return Err(Error::Parse("prime fields have no power-basis generator".into()));
        }
        let mut coeffs: Coeffs = smallvec![0; field.m];
        coeffs[1] = 1;
        Ok(FieldElement { field: field.clone(), coeffs })
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn check_same_field(&self, rhs: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &rhs.field) || self.field == rhs.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_same_field(rhs)?;
        let p = self.field.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        Ok(FieldElement { field: self.field.clone(), coeffs })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        let p = self.field.p;
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        FieldElement { field: self.field.clone(), coeffs }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_same_field(rhs)?;
        let p = self.field.p;
        if self.field.m == 1 {
            let c = (self.coeffs[0] as u128 * rhs.coeffs[0] as u128 % p as u128) as u64;
            return Ok(FieldElement { field: self.field.clone(), coeffs: smallvec![c] });
        }
        let prod = pp_mul(&self.coeffs, &rhs.coeffs, p);
        let modulus = self.field.modulus.as_ref().unwrap();
        let mut red = pp_rem(&prod, modulus, p);
        red.resize(self.field.m, 0);
        Ok(FieldElement { field: self.field.clone(), coeffs: Coeffs::from_vec(red) })
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let p = self.field.p;
        if self.field.m == 1 {
            let c = modpow_u64(self.coeffs[0], p - 2, p);
            return Ok(FieldElement { field: self.field.clone(), coeffs: smallvec![c] });
        }
        let modulus = self.field.modulus.as_ref().unwrap();
        let mut inv = pp_inv_mod(&self.coeffs, modulus, p)
            .ok_or_else(|| Error::TheoryViolation("modulus not irreducible".into()))?;
        inv.resize(self.field.m, 0);
        Ok(FieldElement { field: self.field.clone(), coeffs: Coeffs::from_vec(inv) })
    }

    /// Square-and-multiply; negative exponents go through the inverse.
    pub fn pow(&self, e: i128) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow_u(e.unsigned_abs());
        }
        self.pow_u(e as u128)
    }

    fn pow_u(&self, mut e: u128) -> Result<Self> {
        let mut acc = FieldElement::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Smallest d >= 1 with a^d = 1. Factors q - 1 and descends through
    /// its prime factors rather than scanning.
    pub fn multiplicative_order(&self) -> Result<u128> {
        if self.is_zero() {
            return Err(Error::ZeroOrder);
        }
        let q = self.field.order();
        let mut d = q - 1;
        for (r, _) in arith::factor(q - 1)? {
            while d % r == 0 && self.pow_u(d / r)?.is_one() {
                d /= r;
            }
        }
        debug_assert!(self.pow_u(d)?.is_one());
        Ok(d)
    }

    /// Parses "3" or "[c0,c1,...]".
    pub fn parse(field: &FieldRef, token: &str) -> Result<Self> {
        let token = token.trim();
        let inner = if let Some(stripped) = token.strip_prefix('[') {
            stripped
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse(format!("unclosed bracket in element {token:?}")))?
        } else {
            let n: i64 = token
                .parse()
                .map_err(|_| Error::Parse(format!("bad field element {token:?}")))?;
            return Ok(FieldElement::from_int(field, n));
        };
        let coeffs: Vec<i64> = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {:?} in {token:?}", t.trim())))
            })
            .collect::<Result<_>>()?;
        FieldElement::from_coeffs(field, &coeffs)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.m == 1 {
            write!(f, "{}", self.coeffs[0])
        } else {
            write!(f, "[")?;
            for (i, c) in self.coeffs.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "]")
        }
    }
}

/// Every element of the field, in lexicographic coefficient order.
/// Intended for small fields (tests, exhaustive checks).
pub fn all_elements(field: &FieldRef) -> Vec<FieldElement> {
    let q = field.order();
    assert!(q <= 1 << 16, "all_elements is for small fields");
    let mut out = Vec::with_capacity(q as usize);
    let mut tuple: Coeffs = smallvec![0; field.m];
    loop {
        out.push(FieldElement { field: field.clone(), coeffs: tuple.clone() });
        let mut i = field.m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < field.p {
                break;
            }
            tuple[i] = 0;
        }
    }
}

/// Splits on `,` at bracket depth zero, so "[0,1],[1,0]" gives two tokens.
pub(crate) fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn modpow_u64(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc: u64 = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        e >>= 1;
        if e > 0 {
            base = (base as u128 * base as u128 % p as u128) as u64;
        }
    }
    acc
}

// ---- raw polynomial arithmetic over F_p (coefficient vectors, low to high) ----
//
// Used for the internal modulus arithmetic of extension fields; the public
// polynomial type lives in `poly` and is built on top of FieldElement.

fn pp_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn pp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.iter().all(|&x| x == 0) || b.iter().all(|&x| x == 0) {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u128 + ai as u128 * bj as u128) % p as u128) as u64;
        }
    }
    pp_trim(&mut out);
    out
}

fn pp_divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut rem: Vec<u64> = a.to_vec();
    pp_trim(&mut rem);
    let mut bb: Vec<u64> = b.to_vec();
    pp_trim(&mut bb);
    assert!(!bb.is_empty(), "pp_divmod by zero");
    if rem.len() < bb.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = modpow_u64(*bb.last().unwrap(), p - 2, p);
    let mut quot = vec![0u64; rem.len() - bb.len() + 1];
    for i in (0..quot.len()).rev() {
        let top = rem[i + bb.len() - 1];
        if top == 0 {
            continue;
        }
        let c = (top as u128 * lead_inv as u128 % p as u128) as u64;
        quot[i] = c;
        for (j, &bj) in bb.iter().enumerate() {
            let sub = c as u128 * bj as u128 % p as u128;
            let cur = rem[i + j] as u128;
            rem[i + j] = ((cur + p as u128 * p as u128 - sub) % p as u128) as u64;
        }
    }
    pp_trim(&mut rem);
    pp_trim(&mut quot);
    (quot, rem)
}

fn pp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    pp_divmod(a, b, p).1
}

/// Inverse of `a` mod `modulus` by the extended Euclidean algorithm.
/// Returns None when gcd(a, modulus) is not constant.
fn pp_inv_mod(a: &[u64], modulus: &[u64], p: u64) -> Option<Vec<u64>> {
    let mut r0: Vec<u64> = modulus.to_vec();
    let mut r1: Vec<u64> = pp_rem(a, modulus, p);
    let mut t0: Vec<u64> = Vec::new();
    let mut t1: Vec<u64> = vec![1];
    pp_trim(&mut r0);
    while !r1.is_empty() {
        let (q, r2) = pp_divmod(&r0, &r1, p);
        let qt1 = pp_mul(&q, &t1, p);
        // t2 = t0 - q*t1
        let n = t0.len().max(qt1.len());
        let mut t2 = vec![0u64; n];
        for i in 0..n {
            let x = t0.get(i).copied().unwrap_or(0);
            let y = qt1.get(i).copied().unwrap_or(0);
            t2[i] = (x + p - y % p) % p;
        }
        pp_trim(&mut t2);
        (r0, r1) = (r1, r2);
        (t0, t1) = (t1, t2);
    }
    if r0.len() != 1 {
        return None;
    }
    // scale so the gcd is exactly 1
    let scale = modpow_u64(r0[0], p - 2, p);
    let mut out: Vec<u64> = t0
        .iter()
        .map(|&c| (c as u128 * scale as u128 % p as u128) as u64)
        .collect();
    pp_trim(&mut out);
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::rand_core::{RngCore, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn make_field_examples() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(f2.modulus(), None);
        assert_eq!(f2.order(), 2);

        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), Some(&[1, 1, 1][..])); // x^2 + x + 1
        assert_eq!(f4.order(), 4);

        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(f5.order(), 5);
    }

    #[test]
    fn make_field_is_deterministic() {
        for (p, m) in [(2u64, 3usize), (3, 2), (5, 2), (2, 4)] {
            let a = Field::new(p, m).unwrap();
            let b = Field::new(p, m).unwrap();
            assert_eq!(*a, *b);
        }
    }

    #[test]
    fn lex_smallest_modulus_f8() {
        // candidates in lex order on (c0,c1,c2): x^3+1 factors, x^3+x^2+1 is
        // the first irreducible
        let f8 = Field::new(2, 3).unwrap();
        assert_eq!(f8.modulus(), Some(&[1, 0, 1, 1][..]));
    }

    #[test]
    fn make_field_rejects_bad_input() {
        assert_eq!(Field::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(Field::new(1, 1).unwrap_err(), Error::NotPrime(1));
        assert_eq!(Field::new(2, 0).unwrap_err(), Error::BadExtensionDegree);
        assert!(matches!(Field::new(2, 40).unwrap_err(), Error::SizeLimit(_)));
        assert!(matches!(Field::new(4_294_967_311, 1).unwrap_err(), Error::SizeLimit(_)));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f5 = Field::new(5, 1).unwrap();
        let three = FieldElement::from_int(&f5, 3);
        let four = FieldElement::from_int(&f5, 4);
        assert_eq!(three.mul(&four).unwrap(), FieldElement::from_int(&f5, 2));
        assert_eq!(three.add(&four).unwrap(), FieldElement::from_int(&f5, 2));
        assert_eq!(three.neg(), FieldElement::from_int(&f5, 2));
        assert_eq!(FieldElement::from_int(&f5, -1), FieldElement::from_int(&f5, 4));
    }

    #[test]
    fn inverse_of_one_and_zero() {
        for field in [Field::new(7, 1).unwrap(), Field::new(2, 2).unwrap()] {
            let one = FieldElement::one(&field);
            assert_eq!(one.inv().unwrap(), one);
            assert_eq!(FieldElement::zero(&field).inv().unwrap_err(), Error::ZeroInverse);
        }
    }

    #[test]
    fn f4_multiplication_matches_exhaustive_table() {
        // independent oracle: multiply (a0 + a1 x)(b0 + b1 x) over F_2 and
        // reduce with x^2 = x + 1 by hand
        let f4 = Field::new(2, 2).unwrap();
        let elems = all_elements(&f4);
        assert_eq!(elems.len(), 4);
        for a in &elems {
            for b in &elems {
                let (a0, a1) = (a.coeffs()[0], a.coeffs()[1]);
                let (b0, b1) = (b.coeffs()[0], b.coeffs()[1]);
                let x2 = a1 & b1; // coefficient of x^2
                let expect = FieldElement::from_coeffs(
                    &f4,
                    &[((a0 & b0) ^ x2) as i64, ((a0 & b1) ^ (a1 & b0) ^ x2) as i64],
                )
                .unwrap();
                assert_eq!(a.mul(b).unwrap(), expect, "{a} * {b}");
            }
        }
        // the generator squares to g + 1
        let g = FieldElement::generator(&f4).unwrap();
        let g_plus_1 = FieldElement::from_coeffs(&f4, &[1, 1]).unwrap();
        assert_eq!(g.mul(&g).unwrap(), g_plus_1);
    }

    #[test]
    fn fermat_for_small_fields() {
        for (p, m) in [(2u64, 1usize), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3), (2, 4), (2, 5), (2, 6)] {
            let field = Field::new(p, m).unwrap();
            let q = field.order();
            assert!(q <= 64);
            for a in all_elements(&field) {
                if a.is_zero() {
                    continue;
                }
                assert!(a.pow((q - 1) as i128).unwrap().is_one(), "{a}^{} in {field}", q - 1);
            }
        }
    }

    #[test]
    fn orders_divide_group_order() {
        for (p, m) in [(2u64, 1usize), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3)] {
            let field = Field::new(p, m).unwrap();
            let q = field.order();
            for a in all_elements(&field) {
                if a.is_zero() {
                    continue;
                }
                let d = a.multiplicative_order().unwrap();
                assert_eq!((q - 1) % d, 0, "order {d} of {a} in {field}");
                assert!(a.pow(d as i128).unwrap().is_one());
            }
        }
    }

    #[test]
    fn order_examples() {
        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(FieldElement::one(&f5).multiplicative_order().unwrap(), 1);
        // oracle: 2, 4, 3, 1 by direct powering
        let two = FieldElement::from_int(&f5, 2);
        let mut x = two.clone();
        let mut seen = vec![];
        loop {
            seen.push(x.clone());
            if x.is_one() {
                break;
            }
            x = x.mul(&two).unwrap();
        }
        assert_eq!(seen.len(), 4);
        assert_eq!(two.multiplicative_order().unwrap(), 4);

        let f4 = Field::new(2, 2).unwrap();
        let g = FieldElement::generator(&f4).unwrap();
        assert_eq!(g.multiplicative_order().unwrap(), 3);
        assert_eq!(
            FieldElement::zero(&f4).multiplicative_order().unwrap_err(),
            Error::ZeroOrder
        );
    }

    #[test]
    fn random_inverses() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, m) in [(5u64, 1usize), (7, 1), (101, 1), (2, 2), (3, 2), (2, 3), (3, 3)] {
            let field = Field::new(p, m).unwrap();
            for _ in 0..200 {
                let coeffs: Vec<i64> = (0..m).map(|_| (rng.next_u64() % p) as i64).collect();
                let a = FieldElement::from_coeffs(&field, &coeffs).unwrap();
                if a.is_zero() {
                    continue;
                }
                assert!(a.inv().unwrap().mul(&a).unwrap().is_one(), "{a} in {field}");
            }
        }
    }

    #[test]
    fn negative_exponents_route_through_inverse() {
        let f7 = Field::new(7, 1).unwrap();
        let three = FieldElement::from_int(&f7, 3);
        assert_eq!(three.pow(-1).unwrap(), three.inv().unwrap());
        assert_eq!(three.pow(-2).unwrap(), three.mul(&three).unwrap().inv().unwrap());
        assert!(three.pow(0).unwrap().is_one());
    }

    #[test]
    fn mixed_fields_error() {
        let f2 = Field::new(2, 1).unwrap();
        let f3 = Field::new(3, 1).unwrap();
        let a = FieldElement::one(&f2);
        let b = FieldElement::one(&f3);
        assert_eq!(a.add(&b).unwrap_err(), Error::MixedFields);
        assert_eq!(a.mul(&b).unwrap_err(), Error::MixedFields);
        // same (p, m) constructed twice is the same field
        let f2b = Field::new(2, 1).unwrap();
        assert!(a.add(&FieldElement::one(&f2b)).is_ok());
    }

    #[test]
    fn notation_round_trip() {
        for text in ["2", "7", "2^3", "3^2"] {
            let field = Field::parse(text).unwrap();
            assert_eq!(field.notation(), text);
        }
        assert!(Field::parse("4").is_err());
        assert!(Field::parse("2^").is_err());
        assert!(Field::parse("x").is_err());
    }

    #[test]
    fn element_parse_and_display() {
        let f9 = Field::new(3, 2).unwrap();
        let e = FieldElement::parse(&f9, "[1,2]").unwrap();
        assert_eq!(e.to_string(), "[1,2]");
        assert_eq!(FieldElement::parse(&f9, &e.to_string()).unwrap(), e);
        let f7 = Field::new(7, 1).unwrap();
        assert_eq!(FieldElement::parse(&f7, "-1").unwrap().to_string(), "6");
        assert!(FieldElement::parse(&f7, "[1").is_err());
        assert!(FieldElement::parse(&f9, "[1,2,3]").is_err());
    }

    #[test]
    fn split_respects_brackets() {
        assert_eq!(split_top_level("[0,1],[1,0]"), vec!["[0,1]", "[1,0]"]);
        assert_eq!(split_top_level("1,2,3"), vec!["1", "2", "3"]);
    }
}
