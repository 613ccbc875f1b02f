//! Factorization of polynomials over finite fields.
//!
//! Pipeline: squarefree decomposition (characteristic-p variant with
//! explicit p-th roots), then distinct-degree splitting by iterated
//! Frobenius, then equal-degree splitting (Cantor-Zassenhaus for odd q,
//! trace maps in characteristic 2). The splitting step draws random
//! elements from a caller-seeded generator, but results are sorted into a
//! canonical order, so the returned factorization does not depend on the
//! seed.

use crate::arith;
use crate::error::{Error, Result};
use crate::ff::FieldElement;
use crate::poly::Poly;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A complete factorization: `unit * prod factors[i].0 ^ factors[i].1`.
/// Factors are monic irreducible, sorted by degree then by coefficient
/// sequence, and pairwise distinct.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(Poly<FieldElement>, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn product(&self) -> Result<Poly<FieldElement>> {
        let mut acc = Poly::constant(self.unit.clone());
        for (f, e) in &self.factors {
            acc = acc.mul(&f.pow(*e)?)?;
        }
        Ok(acc)
    }

    /// Largest multiplicity, or 0 for a constant.
    pub fn max_multiplicity(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).max().unwrap_or(0)
    }
}

/// Deterministic sort key: degree first, then coefficients low-to-high.
fn sort_key(f: &Poly<FieldElement>) -> (usize, Vec<Vec<u64>>) {
    (
        f.degree().unwrap_or(0),
        f.coeffs().iter().map(|c| c.coeffs().to_vec()).collect(),
    )
}

/// Rabin's test: f (degree >= 1) is irreducible over F_q iff x^{q^n} = x
/// mod f and gcd(x^{q^{n/r}} - x, f) = 1 for every prime r dividing n.
pub fn is_irreducible(f: &Poly<FieldElement>) -> Result<bool> {
    let n = match f.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(1) => return Ok(true),
        Some(n) => n,
    };
    let f = f.monic()?;
    let q = f.field().order();
    let x = Poly::x(f.proto());
    // frob[i] = x^{q^i} mod f
    let mut frob = Vec::with_capacity(n + 1);
    frob.push(x.rem(&f)?);
    for i in 1..=n {
        let next = frob[i - 1].powmod(q, &f)?;
        frob.push(next);
    }
    if frob[n] != x.rem(&f)? {
        return Ok(false);
    }
    for (r, _) in arith::factor(n as u128)? {
        let h = frob[n / r as usize].sub(&x)?;
        if !h.gcd(&f)?.is_constant() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// p-th root of a polynomial whose derivative vanishes: every exponent is
/// a multiple of p and each coefficient is a p-th power. Over F_{p^m} the
/// inverse Frobenius is c -> c^{p^{m-1}}.
fn pth_root(f: &Poly<FieldElement>) -> Result<Poly<FieldElement>> {
    let field = f.field();
    let p = field.characteristic() as usize;
    let m = field.extension_degree() as u32;
    let root_exp = (field.characteristic() as u128).pow(m - 1);
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    debug_assert!(deg % p == 0);
    let mut coeffs = Vec::with_capacity(deg / p + 1);
    for j in 0..=deg / p {
        let c = f.coeff(j * p);
        debug_assert!(f
            .coeffs()
            .iter()
            .enumerate()
            .all(|(i, c)| i % p == 0 || c.is_zero()));
        coeffs.push(c.pow(root_exp as i128)?);
    }
    Ok(Poly::from_coeffs(coeffs))
}

/// Splits a monic polynomial of degree >= 1 into pairwise-coprime
/// squarefree parts with their multiplicities, sorted by multiplicity.
pub fn squarefree_decompose(
    f: &Poly<FieldElement>,
) -> Result<Vec<(Poly<FieldElement>, u32)>> {
    if f.degree().map_or(true, |d| d < 1) {
        return Err(Error::ConstantPolynomial);
    }
    let f = f.monic()?;
    let p = f.field().characteristic() as u32;
    let mut out: Vec<(Poly<FieldElement>, u32)> = Vec::new();

    let mut c = f.gcd(&f.derivative()?)?;
    let mut w = f.divmod(&c)?.0;
    let mut i: u32 = 1;
    while !w.is_one() {
        let y = w.gcd(&c)?;
        let fac = w.divmod(&y)?.0;
        if fac.degree().map_or(false, |d| d >= 1) {
            out.push((fac, i));
        }
        w = y;
        c = c.divmod(&w)?.0;
        i += 1;
    }
    if !c.is_one() {
        // c is a p-th power; take the root and scale multiplicities
        let root = pth_root(&c)?;
        for (g, e) in squarefree_decompose(&root)? {
            out.push((g, e * p));
        }
    }
    out.sort_by(|a, b| (a.1, sort_key(&a.0)).cmp(&(b.1, sort_key(&b.0))));
    Ok(out)
}

/// Splits a squarefree monic polynomial into (product of irreducibles of
/// degree d, d) pairs, ascending in d.
fn distinct_degree(g: &Poly<FieldElement>) -> Result<Vec<(Poly<FieldElement>, usize)>> {
    let q = g.field().order();
    let x = Poly::x(g.proto());
    let mut out = Vec::new();
    let mut gg = g.clone();
    let mut h = x.rem(&gg)?;
    let mut d = 0usize;
    while gg.degree().map_or(false, |deg| deg >= 1) {
        d += 1;
        if 2 * d > gg.degree().unwrap() {
            let deg = gg.degree().unwrap();
            out.push((gg, deg));
            break;
        }
        h = h.powmod(q, &gg)?;
        let gd = h.sub(&x)?.gcd(&gg)?;
        if gd.degree().map_or(false, |deg| deg >= 1) {
            out.push((gd.clone(), d));
            gg = gg.divmod(&gd)?.0;
            h = h.rem(&gg)?;
        }
    }
    Ok(out)
}

/// Splits a monic product of distinct irreducibles, all of degree d, into
/// the individual irreducibles.
fn equal_degree(
    f: &Poly<FieldElement>,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Poly<FieldElement>>> {
    let deg = f.degree().unwrap_or(0);
    if deg == d {
        return Ok(vec![f.clone()]);
    }
    let field = f.field().clone();
    let p = field.characteristic();
    let m = field.extension_degree();
    let q = field.order();
    let qd = arith::checked_pow(q, d as u32)?;
    loop {
        // random polynomial of degree < deg f
        let coeffs: Vec<FieldElement> = (0..deg)
            .map(|_| {
                let raw: Vec<i64> = (0..m).map(|_| (rng.next_u64() % p) as i64).collect();
                FieldElement::from_coeffs(&field, &raw)
            })
            .collect::<Result<_>>()?;
        let a = Poly::from_coeffs(coeffs);
        if a.is_constant() {
            continue;
        }
        let g0 = a.gcd(f)?;
        if g0.degree().map_or(false, |dg| dg >= 1) && g0.degree().unwrap() < deg {
            let rest = f.divmod(&g0)?.0;
            let mut out = equal_degree(&g0, d, rng)?;
            out.extend(equal_degree(&rest, d, rng)?);
            return Ok(out);
        }
        let b = if p == 2 {
            // trace map: a + a^2 + a^4 + ... over F_2 (d*m squarings total)
            let mut acc = a.rem(f)?;
            let mut cur = a.rem(f)?;
            for _ in 1..(d * m) {
                cur = cur.mul(&cur)?.rem(f)?;
                acc = acc.add(&cur)?;
            }
            acc
        } else {
            let e = (qd - 1) / 2;
            let one = Poly::one(f.proto());
            a.powmod(e, f)?.sub(&one)?
        };
        let g = b.gcd(f)?;
        if let Some(dg) = g.degree() {
            if dg >= 1 && dg < deg {
                let rest = f.divmod(&g)?.0;
                let mut out = equal_degree(&g, d, rng)?;
                out.extend(equal_degree(&rest, d, rng)?);
                return Ok(out);
            }
        }
    }
}

/// Factors a nonzero polynomial into monic irreducibles. Randomness in
/// the splitting step comes from the given seed; the canonical sort makes
/// the result seed-independent.
pub fn factor_seeded(f: &Poly<FieldElement>, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = f.leading().clone();
    if f.is_constant() {
        return Ok(Factorization { unit, factors: Vec::new() });
    }
    let monic = f.monic()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors: Vec<(Poly<FieldElement>, u32)> = Vec::new();
    for (g, e) in squarefree_decompose(&monic)? {
        for (gd, d) in distinct_degree(&g)? {
            for irr in equal_degree(&gd, d, &mut rng)? {
                factors.push((irr, e));
            }
        }
    }
    factors.sort_by(|a, b| sort_key(&a.0).cmp(&sort_key(&b.0)));
    let result = Factorization { unit, factors };
    // hard guarantee: the factorization multiplies back to the input
    if result.product()? != *f {
        return Err(Error::TheoryViolation(format!(
            "factorization of {f} failed to reproduce the input"
        )));
    }
    Ok(result)
}

/// [`factor_seeded`] with the default seed 0.
pub fn factor(f: &Poly<FieldElement>) -> Result<Factorization> {
    factor_seeded(f, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{all_elements, Field, FieldRef};

    fn poly(field: &FieldRef, coeffs: &[i64]) -> Poly<FieldElement> {
        Poly::from_coeffs(coeffs.iter().map(|&c| FieldElement::from_int(field, c)).collect())
    }

    #[test]
    fn splits_degree_five_with_two_factors() {
        // x^5 + x^4 + 1 = (x^2 + x + 1)(x^3 + x + 1) over F_2; verified by
        // expanding the product by hand
        let f2 = Field::new(2, 1).unwrap();
        let f = poly(&f2, &[1, 0, 0, 0, 1, 1]);
        let fac = factor(&f).unwrap();
        assert!(fac.unit.is_one());
        assert_eq!(
            fac.factors,
            vec![(poly(&f2, &[1, 1, 1]), 1), (poly(&f2, &[1, 1, 0, 1]), 1)]
        );
        assert_eq!(fac.product().unwrap(), f);
    }

    #[test]
    fn irreducibility_examples() {
        let f2 = Field::new(2, 1).unwrap();
        // no roots and not divisible by the only irreducible quadratic
        assert!(is_irreducible(&poly(&f2, &[1, 0, 1, 0, 0, 1])).unwrap()); // x^5+x^2+1
        assert!(!is_irreducible(&poly(&f2, &[1, 0, 0, 0, 1, 1])).unwrap()); // x^5+x^4+1
        assert!(is_irreducible(&poly(&f2, &[1, 1, 1])).unwrap()); // x^2+x+1
        assert!(!is_irreducible(&poly(&f2, &[1, 0, 1])).unwrap()); // (x+1)^2
        assert!(is_irreducible(&poly(&f2, &[0, 1])).unwrap()); // x
        let f3 = Field::new(3, 1).unwrap();
        assert!(is_irreducible(&poly(&f3, &[1, 0, 1])).unwrap()); // x^2+1 over F_3
        assert_eq!(
            is_irreducible(&poly(&f3, &[2])).unwrap_err(),
            Error::ConstantPolynomial
        );
    }

    #[test]
    fn rabin_matches_trial_division() {
        // brute-force oracle: try every monic divisor of degree 1..=n/2
        fn brute(f: &Poly<FieldElement>) -> bool {
            let field = f.field().clone();
            let n = f.degree().unwrap();
            let elems = all_elements(&field);
            for d in 1..=n / 2 {
                // enumerate monic candidates of degree d by odometer
                let mut idx = vec![0usize; d];
                loop {
                    let mut coeffs: Vec<FieldElement> =
                        idx.iter().map(|&i| elems[i].clone()).collect();
                    coeffs.push(FieldElement::one(&field));
                    let cand = Poly::from_coeffs(coeffs);
                    if f.divisible_by(&cand).unwrap() {
                        return false;
                    }
                    let mut k = 0;
                    loop {
                        if k == d {
                            break;
                        }
                        idx[k] += 1;
                        if idx[k] < elems.len() {
                            break;
                        }
                        idx[k] = 0;
                        k += 1;
                    }
                    if k == d {
                        break;
                    }
                }
            }
            true
        }

        for (p, m, max_deg) in [(2u64, 1usize, 6usize), (3, 1, 4), (2, 2, 3)] {
            let field = Field::new(p, m).unwrap();
            let elems = all_elements(&field);
            let q = elems.len();
            for deg in 2..=max_deg {
                // all monic polynomials of this degree
                let mut idx = vec![0usize; deg];
                loop {
                    let mut coeffs: Vec<FieldElement> =
                        idx.iter().map(|&i| elems[i].clone()).collect();
                    coeffs.push(FieldElement::one(&field));
                    let f = Poly::from_coeffs(coeffs);
                    assert_eq!(
                        is_irreducible(&f).unwrap(),
                        brute(&f),
                        "{f} over {field}"
                    );
                    let mut k = 0;
                    loop {
                        if k == deg {
                            break;
                        }
                        idx[k] += 1;
                        if idx[k] < q {
                            break;
                        }
                        idx[k] = 0;
                        k += 1;
                    }
                    if k == deg {
                        break;
                    }
                }
            }
        }
    }

    #[test]
    fn squarefree_decomposition_with_pth_powers() {
        let f2 = Field::new(2, 1).unwrap();
        // (x+1)^2 (x^2+x+1)
        let f = poly(&f2, &[1, 1])
            .mul(&poly(&f2, &[1, 1]))
            .unwrap()
            .mul(&poly(&f2, &[1, 1, 1]))
            .unwrap();
        let parts = squarefree_decompose(&f).unwrap();
        assert_eq!(parts, vec![(poly(&f2, &[1, 1, 1]), 1), (poly(&f2, &[1, 1]), 2)]);

        // pure p-th power: (x+1)^4 over F_2
        let g = poly(&f2, &[1, 1]).pow(4).unwrap();
        assert_eq!(squarefree_decompose(&g).unwrap(), vec![(poly(&f2, &[1, 1]), 4)]);

        // odd characteristic: (x - 3)^2 over F_5
        let f5 = Field::new(5, 1).unwrap();
        let h = poly(&f5, &[-3, 1]).pow(2).unwrap();
        assert_eq!(squarefree_decompose(&h).unwrap(), vec![(poly(&f5, &[2, 1]), 2)]);
    }

    #[test]
    fn equal_degree_split_char2() {
        // x^3+x+1 and x^3+x^2+1 are the two irreducible cubics over F_2;
        // their product forces a d=3 trace-map split
        let f2 = Field::new(2, 1).unwrap();
        let a = poly(&f2, &[1, 1, 0, 1]);
        let b = poly(&f2, &[1, 0, 1, 1]);
        let fac = factor(&a.mul(&b).unwrap()).unwrap();
        // canonical order compares coefficient vectors low-to-high
        assert_eq!(fac.factors, vec![(b, 1), (a, 1)]);
    }

    #[test]
    fn fibonacci_characteristic_polynomial_by_field() {
        // x^2 - x - 1
        let f2 = Field::new(2, 1).unwrap();
        let fac = factor(&poly(&f2, &[-1, -1, 1])).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0], (poly(&f2, &[1, 1, 1]), 1));

        let f3 = Field::new(3, 1).unwrap();
        let fac = factor(&poly(&f3, &[-1, -1, 1])).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].0.degree(), Some(2));

        // over F_5 it is (x - 3)^2
        let f5 = Field::new(5, 1).unwrap();
        let fac = factor(&poly(&f5, &[-1, -1, 1])).unwrap();
        assert_eq!(fac.factors, vec![(poly(&f5, &[2, 1]), 2)]);

        // over F_4 it splits into two distinct linear factors
        let f4 = Field::new(2, 2).unwrap();
        let fac = factor(&poly(&f4, &[1, 1, 1])).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert!(fac.factors.iter().all(|(g, e)| g.degree() == Some(1) && *e == 1));
    }

    #[test]
    fn factorization_is_seed_independent() {
        let f2 = Field::new(2, 1).unwrap();
        let f5 = Field::new(5, 1).unwrap();
        for f in [
            poly(&f2, &[1, 0, 0, 0, 1, 1]),
            poly(&f2, &[1, 1, 0, 1]).mul(&poly(&f2, &[1, 0, 1, 1])).unwrap(),
            poly(&f5, &[1, 2, 3, 4, 1]),
            poly(&f5, &[2, 0, 1]).mul(&poly(&f5, &[3, 1, 1])).unwrap(),
        ] {
            let base = factor_seeded(&f, 0).unwrap();
            for seed in [1u64, 7, 12345] {
                assert_eq!(factor_seeded(&f, seed).unwrap(), base, "{f}");
            }
        }
    }

    #[test]
    fn non_monic_input_keeps_unit() {
        let f5 = Field::new(5, 1).unwrap();
        let f = poly(&f5, &[2, 0, 0, 3]); // 3x^3 + 2
        let fac = factor(&f).unwrap();
        assert_eq!(fac.unit, FieldElement::from_int(&f5, 3));
        assert_eq!(fac.product().unwrap(), f);
        for (g, _) in &fac.factors {
            assert!(g.is_monic());
            assert!(is_irreducible(g).unwrap());
        }
    }

    #[test]
    fn constants_and_zero() {
        let f3 = Field::new(3, 1).unwrap();
        let c = poly(&f3, &[2]);
        let fac = factor(&c).unwrap();
        assert_eq!(fac.unit, FieldElement::from_int(&f3, 2));
        assert!(fac.factors.is_empty());
        assert_eq!(fac.max_multiplicity(), 0);
        let z = Poly::zero(&FieldElement::one(&f3));
        assert_eq!(factor(&z).unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn random_reconstruction_over_extension_field() {
        use rand_chacha::rand_core::{RngCore, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for (p, m) in [(2u64, 2usize), (3, 2), (2, 3)] {
            let field = Field::new(p, m).unwrap();
            for _ in 0..25 {
                let deg = 1 + (rng.next_u64() as usize) % 6;
                let mut coeffs: Vec<FieldElement> = (0..=deg)
                    .map(|_| {
                        let raw: Vec<i64> =
                            (0..m).map(|_| (rng.next_u64() % p) as i64).collect();
                        FieldElement::from_coeffs(&field, &raw).unwrap()
                    })
                    .collect();
                if coeffs[deg].is_zero() {
                    coeffs[deg] = FieldElement::one(&field);
                }
                let f = Poly::from_coeffs(coeffs);
                let fac = factor(&f).unwrap();
                assert_eq!(fac.product().unwrap(), f);
                for (g, _) in &fac.factors {
                    assert!(is_irreducible(g).unwrap(), "{g} over {field}");
                }
            }
        }
    }
}
