//! p-adic convergence of v_{n+1} = A v_n over the rationals.
//!
//! The iterates converge to zero in the p-adic metric exactly when every
//! eigenvalue has p-adic absolute value below 1, i.e. valuation above 0.
//! Eigenvalue valuations are read off the Newton polygon of the
//! characteristic polynomial — no root-finding in any extension of Q_p is
//! ever needed, and no floating point appears anywhere. An exact
//! big-rational iteration provides the empirical cross-check.

use crate::arith;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::poly::Poly;
use crate::scalar::{rational_string, Scalar};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// Default horizon for the empirical valuation trace.
pub const DEFAULT_TRACE_STEPS: usize = 200;
/// Default cap on numerator/denominator size during exact iteration,
/// in decimal digits. Exceeding it is a size error, not a wrong answer.
pub const DEFAULT_DIGIT_CAP: usize = 100_000;

/// A p-adic valuation: a rational number or +∞ (the valuation of 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Valuation {
    Finite(BigRational),
    Infinite,
}

impl Valuation {
    pub fn finite_int(n: i64) -> Self {
        Valuation::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Valuation::Finite(r) => r.is_positive(),
            Valuation::Infinite => true,
        }
    }

    /// "a/b" or "inf", the rendering used in JSON reports.
    pub fn as_string(&self) -> String {
        match self {
            Valuation::Finite(r) => rational_string(r),
            Valuation::Infinite => "inf".into(),
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
            (Valuation::Infinite, _) => Ordering::Greater,
            (_, Valuation::Infinite) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_string())
    }
}

fn check_prime(p: u64) -> Result<()> {
    if arith::is_prime(p as u128) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn vp_biguint(n: &BigUint, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigUint::from(p);
    let mut n = n.clone();
    let mut v = 0i64;
    loop {
        let (q, r) = num_integer::Integer::div_rem(&n, &p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// v_p(x) = v_p(numerator) - v_p(denominator); +∞ for x = 0.
pub fn vp_rational(x: &BigRational, p: u64) -> Result<Valuation> {
    check_prime(p)?;
    if Scalar::is_zero(x) {
        return Ok(Valuation::Infinite);
    }
    let v = vp_biguint(x.numer().magnitude(), p) - vp_biguint(x.denom().magnitude(), p);
    Ok(Valuation::finite_int(v))
}

/// The Newton polygon of a nonzero rational polynomial at p: the power
/// of x first (roots of valuation +∞), then the lower convex hull of the
/// points (i, v_p(a_i)). A hull segment of slope s and horizontal length
/// l accounts for l roots of valuation -s, so x - p (points (0,1),(1,0),
/// slope -1) has one root of valuation 1.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonPolygon {
    pub zero_roots: usize,
    /// (slope, horizontal length), slopes strictly increasing.
    pub segments: Vec<(BigRational, usize)>,
}

impl NewtonPolygon {
    /// Root valuations with multiplicities: +∞ for the zero roots, then
    /// -slope per segment, in decreasing order of valuation.
    pub fn root_valuations(&self) -> Vec<(Valuation, usize)> {
        let mut out = Vec::new();
        if self.zero_roots > 0 {
            out.push((Valuation::Infinite, self.zero_roots));
        }
        for (slope, len) in &self.segments {
            out.push((Valuation::Finite(-slope.clone()), *len));
        }
        out
    }

    /// True when every finite root valuation is strictly positive.
    pub fn all_roots_contracting(&self) -> bool {
        self.segments.iter().all(|(slope, _)| slope.is_negative())
    }
}

pub fn newton_polygon(f: &Poly<BigRational>, p: u64) -> Result<NewtonPolygon> {
    check_prime(p)?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (zero_roots, g) = f.strip_x_power();
    // points (i, v_p(a_i)) for the nonzero coefficients of g
    let mut points: Vec<(i128, i128)> = Vec::new();
    for (i, c) in g.coeffs().iter().enumerate() {
        if Scalar::is_zero(c) {
            continue;
        }
        match vp_rational(c, p)? {
            Valuation::Finite(v) => points.push((i as i128, v.to_integer().try_into().unwrap())),
            Valuation::Infinite => unreachable!("nonzero coefficient"),
        }
    }
    // lower convex hull, left to right (monotone chain); collinear
    // points are merged into one segment
    let mut hull: Vec<(i128, i128)> = Vec::new();
    for &q in &points {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 - a.0) * (q.1 - a.1) - (b.1 - a.1) * (q.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(q);
    }
    let segments = hull
        .windows(2)
        .map(|w| {
            let (x0, y0) = w[0];
            let (x1, y1) = w[1];
            let slope = BigRational::new(BigInt::from(y1 - y0), BigInt::from(x1 - x0));
            (slope, (x1 - x0) as usize)
        })
        .collect();
    Ok(NewtonPolygon { zero_roots, segments })
}

/// One analyzed rational system.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub p: u64,
    pub char_poly: Poly<BigRational>,
    pub polygon: NewtonPolygon,
    /// Decided symbolically from the polygon: true iff every finite
    /// eigenvalue valuation is > 0 (zero eigenvalues never block it).
    pub converges: bool,
    /// (n, min entry valuation of v_n) from exact iteration — evidence,
    /// not the decision.
    pub trace: Vec<(usize, Valuation)>,
}

/// Decides p-adic convergence to zero symbolically and attaches an
/// exact-iteration trace (default v0 = all ones, 200 steps).
pub fn converges_to_zero(a: &Mat<BigRational>, p: u64) -> Result<ConvergenceReport> {
    let ones = vec![BigRational::one(); a.dim()];
    converges_to_zero_with(a, p, &ones, DEFAULT_TRACE_STEPS, DEFAULT_DIGIT_CAP)
}

/// [`converges_to_zero`] with explicit trace start vector, horizon and
/// digit cap.
pub fn converges_to_zero_with(
    a: &Mat<BigRational>,
    p: u64,
    v0: &[BigRational],
    steps: usize,
    digit_cap: usize,
) -> Result<ConvergenceReport> {
    let char_poly = a.char_poly()?;
    let polygon = newton_polygon(&char_poly, p)?;
    let converges = polygon.all_roots_contracting();
    let trace = iterate_valuations(a, v0, p, steps, digit_cap)?;
    Ok(ConvergenceReport { p, char_poly, polygon, converges, trace })
}

/// Exact iteration v_{n+1} = A v_n recording (n, min entry valuation)
/// for n = 0..=n_max; stops early when v_n = 0 (valuation +∞). Aborts
/// with a size error if any numerator or denominator outgrows
/// `digit_cap` decimal digits.
pub fn iterate_valuations(
    a: &Mat<BigRational>,
    v0: &[BigRational],
    p: u64,
    n_max: usize,
    digit_cap: usize,
) -> Result<Vec<(usize, Valuation)>> {
    check_prime(p)?;
    if v0.len() != a.dim() {
        return Err(Error::Dimension(format!(
            "initial vector length {} does not match dimension {}",
            v0.len(),
            a.dim()
        )));
    }
    // digits * log2(10), rounded up a little, as a bit bound
    let bit_cap = (digit_cap as u64).saturating_mul(332_193) / 100_000 + 64;
    let mut out = Vec::with_capacity(n_max + 1);
    let mut v: Vec<BigRational> = v0.to_vec();
    for n in 0..=n_max {
        let min_val = v
            .iter()
            .map(|e| vp_rational(e, p))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .min()
            .unwrap_or(Valuation::Infinite);
        let stop = min_val == Valuation::Infinite;
        out.push((n, min_val));
        if stop || n == n_max {
            break;
        }
        v = a.matvec(&v)?;
        for e in &v {
            if e.numer().bits() > bit_cap || e.denom().bits() > bit_cap {
                return Err(Error::SizeLimit(format!(
                    "iterate entries exceed {digit_cap} decimal digits at step {}",
                    n + 1
                )));
            }
        }
    }
    Ok(out)
}

/// v_p(C(n, j)) by Kummer's theorem: the number of carries when adding
/// j and n - j in base p.
pub fn vp_binomial(n: u64, j: u64, p: u64) -> Result<u32> {
    check_prime(p)?;
    if j > n {
        return Err(Error::Parse(format!("binomial index {j} out of range 0..={n}")));
    }
    let mut a = j;
    let mut b = n - j;
    let mut carry = 0u64;
    let mut carries = 0u32;
    while a > 0 || b > 0 || carry > 0 {
        let digit = a % p + b % p + carry;
        carry = digit / p;
        if carry > 0 {
            carries += 1;
        }
        a /= p;
        b /= p;
    }
    Ok(carries)
}

// ---- JSON serialization ----

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValuationJson {
    pub val: String,
    pub count: u64,
}

/// Serialized convergence report; field order here is the key order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReportJson {
    pub p: u64,
    pub char_poly: Vec<String>,
    pub zero_roots: u64,
    pub valuations: Vec<ValuationJson>,
    pub converges: bool,
    pub trace: Vec<(u64, String)>,
}

impl ConvergenceReport {
    pub fn to_json(&self) -> ConvergenceReportJson {
        ConvergenceReportJson {
            p: self.p,
            char_poly: self.char_poly.coeffs().iter().map(rational_string).collect(),
            zero_roots: self.polygon.zero_roots as u64,
            valuations: self
                .polygon
                .root_valuations()
                .iter()
                .map(|(v, c)| ValuationJson { val: v.as_string(), count: *c as u64 })
                .collect(),
            converges: self.converges,
            trace: self
                .trace
                .iter()
                .map(|(n, v)| (*n as u64, v.as_string()))
                .collect(),
        }
    }

    /// Human-readable rendering for the text output mode.
    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        let _ = writeln!(s, "prime: {}", self.p);
        let _ = writeln!(s, "characteristic polynomial: {}", self.char_poly);
        let _ = writeln!(s, "zero eigenvalues: {}", self.polygon.zero_roots);
        for (v, c) in self.polygon.root_valuations() {
            let _ = writeln!(s, "eigenvalue valuation {v} (count {c})");
        }
        let _ = writeln!(s, "converges to zero: {}", self.converges);
        if let Some((n, v)) = self.trace.last() {
            let _ = writeln!(s, "trace: {} steps, final min valuation {v}", n);
        }
        s
    }
}
