//! Period prediction and verification for v_{n+1} = A v_n over F_q.
//!
//! The prediction: every root of an irreducible factor of degree α lies
//! in F_{q^α}, so it satisfies λ^{q^α - 1} = 1. Taking Q = lcm of the
//! q^α - 1 over the distinct factor degrees kills every eigenvalue;
//! repeated factors additionally need binomial coefficients C(n, j) mod p
//! to repeat, which they do with period p^⌈log_p(e_max)⌉ for j up to
//! e_max - 1. The product T_pred = Q * p_power is therefore a period of
//! the whole system. It need not be minimal: the minimal one, T_exact, is
//! the multiplicative order of A, and orbit simulation gives a fully
//! independent check of both.

use crate::arith;
use crate::error::{Error, Result};
use crate::factor::{factor_seeded, Factorization};
use crate::ff::{FieldElement, FieldRef};
use crate::linalg::Mat;
use crate::poly::Poly;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// The predicted period T_pred = Q * p_power and its ingredients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodBound {
    /// lcm of q^α - 1 over the distinct irreducible factor degrees α.
    pub q_lcm: u128,
    /// Largest irreducible-factor multiplicity.
    pub e_max: u32,
    /// p^⌈log_p(e_max)⌉: 1 when e_max = 1, p when 2 <= e_max <= p.
    pub p_power: u128,
    /// Q * p_power: a guaranteed period of the invertible system.
    pub t_pred: u128,
}

/// Predicted period from a factorization of the characteristic
/// polynomial of an invertible matrix. Rejects factorizations containing
/// the factor x (zero eigenvalue): decompose the matrix first. An empty
/// factor list yields the trivial bound (Q = 1, used for the nilpotent
/// part of singular systems).
pub fn period_bound(fact: &Factorization, field: &FieldRef) -> Result<PeriodBound> {
    if fact.factors.iter().any(|(f, _)| f.coeff(0).is_zero()) {
        return Err(Error::SingularFactor);
    }
    let q = field.order();
    let mut degrees: Vec<usize> = fact
        .factors
        .iter()
        .map(|(f, _)| f.degree().unwrap_or(0))
        .collect();
    degrees.sort_unstable();
    degrees.dedup();
    let terms: Vec<u128> = degrees
        .iter()
        .map(|&a| Ok(arith::checked_pow(q, a as u32)? - 1))
        .collect::<Result<_>>()?;
    let q_lcm = if terms.is_empty() { 1 } else { arith::lcm_list(&terms)? };
    let e_max = fact.max_multiplicity().max(1);
    let p = field.characteristic() as u128;
    let mut p_power: u128 = 1;
    while p_power < e_max as u128 {
        p_power = p_power
            .checked_mul(p)
            .ok_or_else(|| Error::SizeLimit("p_power exceeds 128 bits".into()))?;
    }
    let t_pred = q_lcm
        .checked_mul(p_power)
        .ok_or_else(|| Error::SizeLimit("T_pred exceeds 128 bits".into()))?;
    Ok(PeriodBound { q_lcm, e_max, p_power, t_pred })
}

/// Smallest d >= 1 with A^d = I. Requires A invertible. First asserts
/// A^{T_pred} = I (a theory violation if it fails), then descends through
/// the prime factors of T_pred, testing only divisors.
pub fn matrix_order(a: &Mat<FieldElement>, bound: &PeriodBound) -> Result<u128> {
    if !a.is_invertible()? {
        return Err(Error::NotInvertible);
    }
    if !a.pow(bound.t_pred)?.is_identity() {
        return Err(Error::TheoryViolation(format!(
            "A^{} is not the identity although {} was predicted as a period",
            bound.t_pred, bound.t_pred
        )));
    }
    let mut d = bound.t_pred;
    for (r, _) in arith::factor(bound.t_pred)? {
        while d % r == 0 && a.pow(d / r)?.is_identity() {
            d /= r;
        }
    }
    Ok(d)
}

/// First-repeat decomposition of the orbit v0, Av0, A²v0, ...: returns
/// (transient, period) where the state at step `transient` is the first
/// one ever revisited and `period` is the gap between its two visits.
/// This simulation is the independent oracle for every claim the theory
/// side makes.
pub fn orbit_period(
    a: &Mat<FieldElement>,
    v0: &[FieldElement],
    max_steps: usize,
) -> Result<(usize, u128)> {
    let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut v: Vec<FieldElement> = v0.to_vec();
    for step in 0..=max_steps {
        let key: Vec<u64> = v.iter().flat_map(|e| e.coeffs().iter().copied()).collect();
        if let Some(&first) = seen.get(&key) {
            return Ok((first, (step - first) as u128));
        }
        seen.insert(key, step);
        v = a.matvec(&v)?;
    }
    Err(Error::StepLimit(max_steps))
}

/// One simulated orbit in a report.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitResult {
    pub v0: Vec<FieldElement>,
    pub transient: usize,
    pub period: u128,
}

/// Everything the period pipeline knows about one system.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodReport {
    pub field: FieldRef,
    pub char_poly: Poly<FieldElement>,
    /// Factorization of the full characteristic polynomial (including
    /// any power of x when the matrix is singular).
    pub factorization: Factorization,
    pub bound: PeriodBound,
    pub invertible: bool,
    /// Order of A on the invertible part (1 for nilpotent A).
    pub t_exact: u128,
    /// 0 for invertible A, else the dimension k.
    pub transient_bound: usize,
    pub orbits: Vec<OrbitResult>,
    pub notes: Vec<String>,
}

/// Full pipeline: characteristic polynomial, factorization, period bound,
/// exact order, and a simulated orbit per probe vector. Singular matrices
/// are decomposed first (image/kernel of A^k) and the bound is computed
/// from the invertible part; all divisibility invariants are re-checked
/// and violations surface as hard errors.
pub fn analyze(
    a: &Mat<FieldElement>,
    probes: &[Vec<FieldElement>],
    seed: u64,
) -> Result<PeriodReport> {
    let field = a.proto().field().clone();
    let k = a.dim();
    let char_poly = a.char_poly()?;
    let factorization = factor_seeded(&char_poly, seed)?;
    let mut notes = Vec::new();

    // split off x^d (the nilpotent part's contribution)
    let nonsingular_factors: Vec<_> = factorization
        .factors
        .iter()
        .filter(|(f, _)| !f.coeff(0).is_zero())
        .cloned()
        .collect();
    let invertible = nonsingular_factors.len() == factorization.factors.len();
    let reduced = Factorization {
        unit: factorization.unit.clone(),
        factors: nonsingular_factors,
    };

    let bound = period_bound(&reduced, &field)?;
    let (t_exact, transient_bound) = if invertible {
        (matrix_order(a, &bound)?, 0)
    } else {
        let fit = a.fitting_decompose()?;
        match &fit.restricted {
            Some(r) => {
                let d = fit.invertible_part.dim();
                notes.push(format!(
                    "singular matrix: invariant decomposition uses the image and kernel \
                     of A^{k} (the kernel of A alone need not be invariant); periodic part \
                     has dimension {d}, transient at most {k}"
                ));
                (matrix_order(r, &bound)?, k)
            }
            None => {
                notes.push(format!(
                    "nilpotent matrix: v_n = 0 for n >= {k}; period 1"
                ));
                (1, k)
            }
        }
    };

    if bound.t_pred % t_exact != 0 {
        return Err(Error::TheoryViolation(format!(
            "exact order {t_exact} does not divide the predicted period {}",
            bound.t_pred
        )));
    }
    let p = field.characteristic() as u128;
    if (bound.e_max as u128) > p {
        notes.push(format!(
            "factor multiplicity {} exceeds the field characteristic {p}; the period \
             uses p_power = {} (smallest power of {p} at or above the multiplicity) \
             in place of a single factor of {p}",
            bound.e_max, bound.p_power
        ));
    }

    let horizon = usize::try_from(t_exact)
        .ok()
        .and_then(|t| t.checked_add(transient_bound + 2))
        .ok_or_else(|| Error::SizeLimit("orbit horizon exceeds addressable steps".into()))?;
    let mut orbits = Vec::with_capacity(probes.len());
    for v0 in probes {
        let (transient, period) = orbit_period(a, v0, horizon)?;
        if transient > transient_bound {
            return Err(Error::TheoryViolation(format!(
                "orbit transient {transient} exceeds the bound {transient_bound}"
            )));
        }
        if t_exact % period != 0 {
            return Err(Error::TheoryViolation(format!(
                "orbit period {period} does not divide the matrix order {t_exact}"
            )));
        }
        orbits.push(OrbitResult { v0: v0.clone(), transient, period });
    }

    Ok(PeriodReport {
        field,
        char_poly,
        factorization,
        bound,
        invertible,
        t_exact,
        transient_bound,
        orbits,
        notes,
    })
}

/// Standard basis of F_q^k, the default probe set.
pub fn standard_basis(field: &FieldRef, k: usize) -> Vec<Vec<FieldElement>> {
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if i == j {
                        FieldElement::one(field)
                    } else {
                        FieldElement::zero(field)
                    }
                })
                .collect()
        })
        .collect()
}

// ---- JSON serialization ----

fn to_u64(x: u128, what: &str) -> Result<u64> {
    u64::try_from(x).map_err(|_| Error::SizeLimit(format!("{what} exceeds 64 bits")))
}

/// JSON rendering of one field element: a bare number over a prime
/// field, the coefficient vector [c0, ..., c_{m-1}] over an extension.
pub fn elem_json(e: &FieldElement) -> serde_json::Value {
    if e.field().extension_degree() == 1 {
        serde_json::Value::from(e.coeffs()[0])
    } else {
        serde_json::Value::from(e.coeffs().to_vec())
    }
}

/// JSON shape of one irreducible factor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorJson {
    pub coeffs: Vec<serde_json::Value>,
    pub degree: u64,
    pub multiplicity: u32,
}

/// JSON shape of one orbit line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitJson {
    pub v0: Vec<serde_json::Value>,
    pub transient: u64,
    pub period: u64,
}

/// Serialized report; field order here is the emitted key order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodReportJson {
    pub field: String,
    pub char_poly: Vec<serde_json::Value>,
    pub factors: Vec<FactorJson>,
    #[serde(rename = "Q")]
    pub q: u64,
    pub e_max: u32,
    pub p_power: u64,
    #[serde(rename = "T_pred")]
    pub t_pred: u64,
    #[serde(rename = "T_exact")]
    pub t_exact: u64,
    pub invertible: bool,
    pub transient_bound: u64,
    pub orbits: Vec<OrbitJson>,
    pub notes: Vec<String>,
}

impl PeriodReport {
    pub fn to_json(&self) -> Result<PeriodReportJson> {
        Ok(PeriodReportJson {
            field: self.field.notation(),
            char_poly: self.char_poly.coeffs().iter().map(elem_json).collect(),
            factors: self
                .factorization
                .factors
                .iter()
                .map(|(f, e)| FactorJson {
                    coeffs: f.coeffs().iter().map(elem_json).collect(),
                    degree: f.degree().unwrap_or(0) as u64,
                    multiplicity: *e,
                })
                .collect(),
            q: to_u64(self.bound.q_lcm, "Q")?,
            e_max: self.bound.e_max,
            p_power: to_u64(self.bound.p_power, "p_power")?,
            t_pred: to_u64(self.bound.t_pred, "T_pred")?,
            t_exact: to_u64(self.t_exact, "T_exact")?,
            invertible: self.invertible,
            transient_bound: self.transient_bound as u64,
            orbits: self
                .orbits
                .iter()
                .map(|o| {
                    Ok(OrbitJson {
                        v0: o.v0.iter().map(elem_json).collect(),
                        transient: o.transient as u64,
                        period: to_u64(o.period, "orbit period")?,
                    })
                })
                .collect::<Result<_>>()?,
            notes: self.notes.clone(),
        })
    }

    /// Human-readable rendering for the text output mode.
    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        let _ = writeln!(s, "field: {}", self.field);
        let _ = writeln!(s, "characteristic polynomial: {}", self.char_poly);
        let _ = write!(s, "factors:");
        for (f, e) in &self.factorization.factors {
            if *e == 1 {
                let _ = write!(s, " ({f})");
            } else {
                let _ = write!(s, " ({f})^{e}");
            }
        }
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "Q = {}, e_max = {}, p_power = {}, T_pred = {}",
            self.bound.q_lcm, self.bound.e_max, self.bound.p_power, self.bound.t_pred
        );
        let _ = writeln!(s, "T_exact = {} (invertible: {})", self.t_exact, self.invertible);
        let _ = writeln!(s, "transient bound: {}", self.transient_bound);
        for o in &self.orbits {
            let _ = writeln!(
                s,
                "orbit v0 = {}: transient {}, period {}",
                crate::linalg::format_vector(&o.v0),
                o.transient,
                o.period
            );
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::factor;
    use crate::ff::Field;

    fn felems(field: &FieldRef, vals: &[i64]) -> Vec<FieldElement> {
        vals.iter().map(|&v| FieldElement::from_int(field, v)).collect()
    }

    fn fpoly(field: &FieldRef, coeffs: &[i64]) -> Poly<FieldElement> {
        Poly::from_coeffs(felems(field, coeffs))
    }

    fn companion(field: &FieldRef, c: &[i64]) -> Mat<FieldElement> {
        Mat::companion(&felems(field, c)).unwrap()
    }

    #[test]
    fn bound_for_degree_two_and_three_factors() {
        // (x^2+x+1)(x^3+x^2+1) over F_2: lcm(2^2-1, 2^3-1) = 21
        let f2 = Field::new(2, 1).unwrap();
        let f = fpoly(&f2, &[1, 1, 1]).mul(&fpoly(&f2, &[1, 0, 1, 1])).unwrap();
        let b = period_bound(&factor(&f).unwrap(), &f2).unwrap();
        assert_eq!(b.q_lcm, 21);
        assert_eq!(b.e_max, 1);
        assert_eq!(b.p_power, 1);
        assert_eq!(b.t_pred, 21);
    }

    #[test]
    fn bound_for_irreducible_quintic() {
        let f2 = Field::new(2, 1).unwrap();
        let f = fpoly(&f2, &[1, 0, 1, 0, 0, 1]); // x^5 + x^2 + 1
        let b = period_bound(&factor(&f).unwrap(), &f2).unwrap();
        assert_eq!(b.q_lcm, 31);
        assert_eq!(b.t_pred, 31);
    }

    #[test]
    fn bound_for_repeated_root() {
        // (x - 3)^2 over F_5: one distinct degree (1), so Q = 5 - 1 = 4;
        // the doubled root forces p_power = 5
        let f5 = Field::new(5, 1).unwrap();
        let f = fpoly(&f5, &[2, 1]).pow(2).unwrap();
        let b = period_bound(&factor(&f).unwrap(), &f5).unwrap();
        assert_eq!(b.q_lcm, 4);
        assert_eq!(b.e_max, 2);
        assert_eq!(b.p_power, 5);
        assert_eq!(b.t_pred, 20);
    }

    #[test]
    fn bound_rejects_factor_x() {
        let f3 = Field::new(3, 1).unwrap();
        let f = fpoly(&f3, &[0, 1, 1]); // x(x + 1)
        assert_eq!(
            period_bound(&factor(&f).unwrap(), &f3).unwrap_err(),
            Error::SingularFactor
        );
    }

    #[test]
    fn p_power_steps_at_powers_of_p() {
        // multiplicities 1..=5 over F_2: p_power = 1,2,4,4,8
        let f2 = Field::new(2, 1).unwrap();
        let lin = fpoly(&f2, &[1, 1]);
        for (e, expect) in [(1u32, 1u128), (2, 2), (3, 4), (4, 4), (5, 8)] {
            let f = lin.pow(e).unwrap();
            let b = period_bound(&factor(&f).unwrap(), &f2).unwrap();
            assert_eq!(b.e_max, e);
            assert_eq!(b.p_power, expect, "multiplicity {e}");
            assert_eq!((b.p_power == 1), (b.e_max == 1));
        }
    }

    #[test]
    fn matrix_order_examples() {
        let f2 = Field::new(2, 1).unwrap();
        let id = Mat::identity(&FieldElement::one(&f2), 3).unwrap();
        let b = period_bound(&factor(&id.char_poly().unwrap()).unwrap(), &f2).unwrap();
        assert_eq!(matrix_order(&id, &b).unwrap(), 1);

        let fib2 = companion(&f2, &[1, 1]);
        let b = period_bound(&factor(&fib2.char_poly().unwrap()).unwrap(), &f2).unwrap();
        assert_eq!(b.t_pred, 3);
        assert_eq!(matrix_order(&fib2, &b).unwrap(), 3);
    }

    #[test]
    fn matrix_order_f7_brute_force_oracle() {
        let f7 = Field::new(7, 1).unwrap();
        let fib = companion(&f7, &[1, 1]);
        let b = period_bound(&factor(&fib.char_poly().unwrap()).unwrap(), &f7).unwrap();
        assert_eq!(b.t_pred, 48);
        let order = matrix_order(&fib, &b).unwrap();
        // oracle: power A step by step until the identity appears
        let mut m = fib.clone();
        let mut d = 1u128;
        while !m.is_identity() {
            m = m.mul(&fib).unwrap();
            d += 1;
            assert!(d <= 48);
        }
        assert_eq!(d, 16);
        assert_eq!(order, d);
        assert_eq!(48 % order, 0);
    }

    #[test]
    fn singular_matrix_order_is_rejected() {
        let f2 = Field::new(2, 1).unwrap();
        let z = Mat::zero(&FieldElement::one(&f2), 2).unwrap();
        let b = PeriodBound { q_lcm: 1, e_max: 1, p_power: 1, t_pred: 1 };
        assert_eq!(matrix_order(&z, &b).unwrap_err(), Error::NotInvertible);
    }

    #[test]
    fn orbit_period_examples() {
        let f3 = Field::new(3, 1).unwrap();
        let fib = companion(&f3, &[1, 1]);
        // zero vector is a fixed point
        let (t, p) = orbit_period(&fib, &felems(&f3, &[0, 0]), 10).unwrap();
        assert_eq!((t, p), (0, 1));
        // Fibonacci over F_3 has period 8
        let (t, p) = orbit_period(&fib, &felems(&f3, &[1, 0]), 100).unwrap();
        assert_eq!((t, p), (0, 8));
        // three-term recurrence over F_3 started from (2,1,0): period 3^2 - 1
        let lag3 = companion(&f3, &[1, 0, 1]);
        let (t, p) = orbit_period(&lag3, &felems(&f3, &[2, 1, 0]), 100).unwrap();
        assert_eq!((t, p), (0, 8));
        // horizon too small
        assert_eq!(
            orbit_period(&fib, &felems(&f3, &[1, 0]), 3).unwrap_err(),
            Error::StepLimit(3)
        );
    }

    #[test]
    fn analyze_order_four_system() {
        // x_{n+4} = x_{n+2} + x_{n+1} + x_n over F_2:
        // char poly (x+1)(x^3+x^2+1), T_pred = lcm(1, 7) = 7
        let f2 = Field::new(2, 1).unwrap();
        let a = companion(&f2, &[0, 1, 1, 1]);
        let report = analyze(&a, &standard_basis(&f2, 4), 0).unwrap();
        assert!(report.invertible);
        assert_eq!(report.bound.t_pred, 7);
        assert_eq!(report.t_exact, 7);
        assert_eq!(report.factorization.factors.len(), 2);
        assert_eq!(report.factorization.factors[0].0, fpoly(&f2, &[1, 1]));
        assert_eq!(report.factorization.factors[1].0, fpoly(&f2, &[1, 0, 1, 1]));
        for o in &report.orbits {
            assert_eq!(o.transient, 0);
            assert_eq!(7 % o.period, 0);
        }
        // simulation from (1,0,0,0) gives exactly 7
        let (t, p) = orbit_period(&a, &felems(&f2, &[1, 0, 0, 0]), 20).unwrap();
        assert_eq!((t, p), (0, 7));
    }

    #[test]
    fn analyze_fibonacci_family() {
        // F_2 and F_3: irreducible quadratic; F_5: double root; F_4: two
        // distinct linear roots
        let cases: [(u64, usize, u128, u128, u128); 4] = [
            (2, 1, 3, 3, 3),
            (3, 1, 8, 8, 8),
            (5, 1, 20, 20, 20),
            (2, 2, 3, 3, 3),
        ];
        for (p, m, t_pred, t_exact, orbit) in cases {
            let field = Field::new(p, m).unwrap();
            let a = companion(&field, &[1, 1]);
            let report = analyze(&a, &[felems(&field, &[1, 0])], 0).unwrap();
            assert_eq!(report.bound.t_pred, t_pred, "T_pred over {field}");
            assert_eq!(report.t_exact, t_exact, "T_exact over {field}");
            assert_eq!(report.orbits[0].period, orbit, "orbit over {field}");
            assert_eq!(report.orbits[0].transient, 0);
        }
        // the F_5 case must take the multiplicity branch
        let f5 = Field::new(5, 1).unwrap();
        let report = analyze(&companion(&f5, &[1, 1]), &[], 0).unwrap();
        assert_eq!(report.bound.q_lcm, 4);
        assert_eq!(report.bound.e_max, 2);
        assert_eq!(report.bound.p_power, 5);
        // the F_4 case: two linear factors, Q = lcm(3, 3) = 3
        let f4 = Field::new(2, 2).unwrap();
        let report = analyze(&companion(&f4, &[1, 1]), &[], 0).unwrap();
        assert_eq!(report.bound.q_lcm, 3);
        assert_eq!(report.bound.e_max, 1);
    }

    #[test]
    fn analyze_nilpotent_matrix() {
        let f2 = Field::new(2, 1).unwrap();
        let n = Mat::from_rows(vec![
            felems(&f2, &[0, 1]),
            felems(&f2, &[0, 0]),
        ])
        .unwrap();
        let report = analyze(&n, &standard_basis(&f2, 2), 0).unwrap();
        assert!(!report.invertible);
        assert_eq!(report.t_exact, 1);
        assert_eq!(report.bound.t_pred, 1);
        assert_eq!(report.transient_bound, 2);
        assert!(report.notes.iter().any(|n| n.contains("nilpotent")));
        for o in &report.orbits {
            assert!(o.transient <= 2);
            assert_eq!(o.period, 1);
        }
    }

    #[test]
    fn analyze_singular_mixed_matrix() {
        // block diag(Fibonacci over F_2, nilpotent Jordan cell):
        // eventually periodic with period 3 after at most k steps
        let f2 = Field::new(2, 1).unwrap();
        let a = Mat::from_rows(vec![
            felems(&f2, &[1, 1, 0, 0]),
            felems(&f2, &[1, 0, 0, 0]),
            felems(&f2, &[0, 0, 0, 1]),
            felems(&f2, &[0, 0, 0, 0]),
        ])
        .unwrap();
        let report = analyze(&a, &standard_basis(&f2, 4), 0).unwrap();
        assert!(!report.invertible);
        assert_eq!(report.t_exact, 3);
        assert_eq!(report.transient_bound, 4);
        assert!(report.notes.iter().any(|n| n.contains("singular")));
        // the x factor still shows up in the reported factorization
        assert!(report
            .factorization
            .factors
            .iter()
            .any(|(f, _)| f.coeff(0).is_zero()));
        // mixed probe: e1 + e3 has both a periodic and a dying component
        let (t, p) = orbit_period(&a, &felems(&f2, &[1, 0, 1, 0]), 20).unwrap();
        assert!(t >= 1 && t <= 4);
        assert_eq!(p, 3);
    }

    #[test]
    fn multiplicity_above_p_notes_the_generalization() {
        // (x+1)^3 over F_2: e_max = 3 > p = 2, p_power = 4
        let f2 = Field::new(2, 1).unwrap();
        let a = Mat::from_rows(vec![
            felems(&f2, &[1, 1, 0]),
            felems(&f2, &[0, 1, 1]),
            felems(&f2, &[0, 0, 1]),
        ])
        .unwrap();
        let report = analyze(&a, &standard_basis(&f2, 3), 0).unwrap();
        assert_eq!(report.bound.e_max, 3);
        assert_eq!(report.bound.p_power, 4);
        assert_eq!(report.bound.t_pred, 4);
        assert_eq!(report.t_exact, 4);
        assert!(report.notes.iter().any(|n| n.contains("multiplicity")));
    }

    #[test]
    fn binomials_repeat_with_period_p_below_p() {
        // C(n + p, j) = C(n, j) mod p for j < p, checked against an
        // exact Pascal triangle for n up to 500
        for p in [2u64, 3, 5, 7] {
            let n_max = 500 + p as usize;
            let mut row = vec![1u64]; // row n of Pascal's triangle mod p
            let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n_max + 1);
            rows.push(row.clone());
            for _ in 1..=n_max {
                let mut next = vec![1u64];
                for w in row.windows(2) {
                    next.push((w[0] + w[1]) % p);
                }
                next.push(1);
                rows.push(next.clone());
                row = next;
            }
            for n in 0..=500usize {
                for j in 0..p.min(n as u64 + 1) as usize {
                    let a = rows[n][j];
                    let b = rows[n + p as usize][j];
                    assert_eq!(a, b, "C({n},{j}) vs C({},{j}) mod {p}", n + p as usize);
                    assert_eq!(
                        arith::binomial_mod_p(n as u128, j as u128, p),
                        a,
                        "Lucas value C({n},{j}) mod {p}"
                    );
                }
            }
        }
    }

    #[test]
    fn json_round_trip_and_key_order() {
        let f2 = Field::new(2, 1).unwrap();
        let a = companion(&f2, &[0, 1, 1, 1]);
        let report = analyze(&a, &standard_basis(&f2, 4), 0).unwrap();
        let dto = report.to_json().unwrap();
        let s = serde_json::to_string_pretty(&dto).unwrap();
        let back: PeriodReportJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back, dto);
        // stable key order, as declared
        let order = [
            "\"field\"",
            "\"char_poly\"",
            "\"factors\"",
            "\"Q\"",
            "\"e_max\"",
            "\"p_power\"",
            "\"T_pred\"",
            "\"T_exact\"",
            "\"invertible\"",
            "\"transient_bound\"",
            "\"orbits\"",
            "\"notes\"",
        ];
        let mut last = 0;
        for key in order {
            let pos = s.find(key).unwrap_or_else(|| panic!("missing {key}"));
            assert!(pos > last, "{key} out of order");
            last = pos;
        }
        assert_eq!(dto.q, 7);
        assert_eq!(dto.t_pred, 7);
        assert_eq!(dto.t_exact, 7);
    }

    #[test]
    fn text_report_mentions_everything() {
        let f5 = Field::new(5, 1).unwrap();
        let report = analyze(&companion(&f5, &[1, 1]), &[felems(&f5, &[1, 0])], 0).unwrap();
        let text = report.to_text();
        assert!(text.contains("T_pred = 20"));
        assert!(text.contains("T_exact = 20"));
        assert!(text.contains("period 20"));
    }

    #[test]
    fn standard_basis_orbit_lcm_equals_order() {
        let f3 = Field::new(3, 1).unwrap();
        for c in [&[1i64, 0, 1][..], &[1, 1, 1], &[2, 1, 2], &[0, 2, 1]] {
            let a = companion(&f3, c);
            if !a.is_invertible().unwrap() {
                continue;
            }
            let report = analyze(&a, &standard_basis(&f3, 3), 0).unwrap();
            let lcm = report
                .orbits
                .iter()
                .map(|o| o.period)
                .fold(1u128, |acc, p| acc / gcd(acc, p) * p);
            assert_eq!(lcm, report.t_exact, "recurrence {c:?}");
        }

        fn gcd(a: u128, b: u128) -> u128 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
    }
}
