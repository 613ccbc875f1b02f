//! Randomized property suites.
//!
//! Five independent suites stress the pipeline against its own invariants
//! and against second routes to the same numbers: polynomial factorization
//! (reconstruction, irreducibility, divisibility of x^{q^α} - x), period
//! prediction on invertible and on singular matrices, carry-counting
//! versus factorial valuations for binomial coefficients, and the Newton
//! polygon versus exact p-adic iteration. Everything is seeded; a given
//! configuration always runs the same trials.

use crate::arith;
use crate::error::{Error, Result};
use crate::factor::{factor_seeded, is_irreducible};
use crate::ff::{Field, FieldElement, FieldRef};
use crate::linalg::Mat;
use crate::padic::{iterate_valuations, newton_polygon, vp_binomial, Valuation, DEFAULT_DIGIT_CAP};
use crate::period::{analyze, matrix_order, period_bound};
use crate::poly::Poly;
use crate::scalar::Scalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Trial counts for one run of the property suites.
#[derive(Debug, Clone)]
pub struct SuiteCfg {
    pub seed: u64,
    /// Random polynomials factored and re-verified.
    pub factor_trials: usize,
    /// Random invertible matrices whose exact order must divide the bound.
    pub invertible_trials: usize,
    /// Random singular matrices checked for transient and period shape.
    pub singular_trials: usize,
    /// Binomial valuations checked for all j <= n <= this.
    pub kummer_n_max: u64,
    /// Rational matrices per class (contracting / unit determinant).
    pub padic_trials: usize,
}

impl SuiteCfg {
    /// The sizes the library is validated with.
    pub fn full() -> Self {
        SuiteCfg {
            seed: 0,
            factor_trials: 1000,
            invertible_trials: 500,
            singular_trials: 200,
            kummer_n_max: 300,
            padic_trials: 100,
        }
    }

    /// Reduced sizes for a fast smoke run.
    pub fn quick() -> Self {
        SuiteCfg {
            seed: 0,
            factor_trials: 120,
            invertible_trials: 60,
            singular_trials: 25,
            kummer_n_max: 80,
            padic_trials: 15,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// Outcome of one suite: how many trials ran and what failed.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub trials: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, msg: String) {
        self.failures.push(msg);
    }

    /// "name: N trials, ok" or "name: N trials, M failures".
    pub fn summary(&self) -> String {
        if self.pass() {
            format!("{}: {} trials, ok", self.name, self.trials)
        } else {
            format!(
                "{}: {} trials, {} failures (first: {})",
                self.name,
                self.trials,
                self.failures.len(),
                self.failures[0]
            )
        }
    }
}

fn small_fields() -> Vec<FieldRef> {
    [(2u64, 1usize), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]
        .iter()
        .map(|&(p, m)| Field::new(p, m).expect("small field"))
        .collect()
}

fn rand_elem(rng: &mut ChaCha8Rng, field: &FieldRef) -> FieldElement {
    let p = field.characteristic();
    let coeffs: Vec<i64> = (0..field.extension_degree())
        .map(|_| (rng.next_u64() % p) as i64)
        .collect();
    FieldElement::from_coeffs(field, &coeffs).expect("in-range coefficients")
}

fn rand_poly(rng: &mut ChaCha8Rng, field: &FieldRef, max_deg: usize) -> Poly<FieldElement> {
    let deg = 1 + (rng.next_u64() as usize) % max_deg;
    let mut coeffs: Vec<FieldElement> = (0..=deg).map(|_| rand_elem(rng, field)).collect();
    while coeffs[deg].is_zero() {
        coeffs[deg] = rand_elem(rng, field);
    }
    Poly::from_coeffs(coeffs)
}

fn rand_matrix(rng: &mut ChaCha8Rng, field: &FieldRef, k: usize) -> Mat<FieldElement> {
    let rows: Vec<Vec<FieldElement>> = (0..k)
        .map(|_| (0..k).map(|_| rand_elem(rng, field)).collect())
        .collect();
    Mat::from_rows(rows).expect("square rows")
}

fn rand_int_matrix(rng: &mut ChaCha8Rng, k: usize, bound: i64) -> Mat<BigRational> {
    let span = (2 * bound + 1) as u64;
    let rows: Vec<Vec<BigRational>> = (0..k)
        .map(|_| {
            (0..k)
                .map(|_| {
                    let c = (rng.next_u64() % span) as i64 - bound;
                    BigRational::from_integer(BigInt::from(c))
                })
                .collect()
        })
        .collect();
    Mat::from_rows(rows).expect("square rows")
}

/// Suite (1): factor random polynomials, then verify the factorization by
/// three independent routes — multiply the factors back, re-test each
/// factor's irreducibility, and check that every irreducible factor of
/// degree α divides x^{q^α} - x (whose roots are exactly F_{q^α}).
pub fn check_factorization(cfg: &SuiteCfg) -> Result<SuiteReport> {
    let mut report = SuiteReport { name: "factorization", trials: cfg.factor_trials, failures: Vec::new() };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xfac7_0e1a);
    let fields = small_fields();
    for trial in 0..cfg.factor_trials {
        let field = &fields[trial % fields.len()];
        let f = rand_poly(&mut rng, field, 12);
        let fact = match factor_seeded(&f, cfg.seed.wrapping_add(trial as u64)) {
            Ok(fa) => fa,
            Err(e) => {
                report.fail(format!("trial {trial}: factor({f}) over {field} errored: {e}"));
                continue;
            }
        };
        match fact.product() {
            Ok(prod) if prod == f => {}
            Ok(prod) => report.fail(format!("trial {trial}: product {prod} != input {f} over {field}")),
            Err(e) => report.fail(format!("trial {trial}: product errored: {e}")),
        }
        let q = field.order();
        for (g, _) in &fact.factors {
            if !matches!(is_irreducible(g), Ok(true)) {
                report.fail(format!("trial {trial}: factor {g} of {f} not irreducible over {field}"));
                continue;
            }
            let alpha = g.degree().expect("factors are nonconstant") as u32;
            let q_alpha = match arith::checked_pow(q, alpha) {
                Ok(v) => v,
                Err(e) => {
                    report.fail(format!("trial {trial}: q^α overflow: {e}"));
                    continue;
                }
            };
            // route 1: x^{q^α} mod g must equal x mod g
            let x = Poly::x(f.proto());
            let frob = x.powmod(q_alpha, g)?;
            if frob != x.rem(g)? {
                report.fail(format!(
                    "trial {trial}: {g} does not divide x^{q_alpha} - x over {field}"
                ));
            }
            // route 2 (small cases): build x^{q^α} - x densely and divide
            if q_alpha <= 4096 {
                let n = q_alpha as usize;
                let mut coeffs = vec![FieldElement::zero(field); n + 1];
                coeffs[1] = FieldElement::zero(field).sub(&FieldElement::one(field))?;
                coeffs[n] = coeffs[n].add(&FieldElement::one(field))?;
                let dense = Poly::from_coeffs(coeffs);
                if !dense.divisible_by(g)? {
                    report.fail(format!(
                        "trial {trial}: dense x^{q_alpha} - x not divisible by {g} over {field}"
                    ));
                }
            }
        }
    }
    Ok(report)
}

/// Suite (2): random invertible matrices. The predicted period must be a
/// true period (A^{T_pred} = I — asserted inside `matrix_order`), the
/// exact order must divide it, and with squarefree characteristic
/// polynomial the order must already divide the lcm part.
pub fn check_invertible_periods(cfg: &SuiteCfg) -> Result<SuiteReport> {
    let mut report =
        SuiteReport { name: "invertible-periods", trials: cfg.invertible_trials, failures: Vec::new() };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x1afe_57a7);
    let fields = small_fields();
    for trial in 0..cfg.invertible_trials {
        let field = &fields[trial % fields.len()];
        let k = 1 + (rng.next_u64() as usize) % 6;
        let a = loop {
            let cand = rand_matrix(&mut rng, field, k);
            if cand.is_invertible()? {
                break cand;
            }
        };
        let run = || -> Result<()> {
            let chi = a.char_poly()?;
            let fact = factor_seeded(&chi, cfg.seed.wrapping_add(trial as u64))?;
            let bound = period_bound(&fact, field)?;
            let t_exact = matrix_order(&a, &bound)?;
            if bound.t_pred % t_exact != 0 {
                return Err(Error::TheoryViolation(format!(
                    "order {t_exact} does not divide T_pred {}",
                    bound.t_pred
                )));
            }
            if bound.e_max == 1 && bound.q_lcm % t_exact != 0 {
                return Err(Error::TheoryViolation(format!(
                    "squarefree case: order {t_exact} does not divide Q {}",
                    bound.q_lcm
                )));
            }
            Ok(())
        };
        if let Err(e) = run() {
            report.fail(format!("trial {trial}: k={k} over {field}: {e}"));
        }
    }
    Ok(report)
}

/// Suite (3): random singular matrices (one row forced into the span of
/// the others). Every orbit must settle after a transient of at most k
/// steps into a cycle whose length divides the order of the invertible
/// part.
pub fn check_singular_periods(cfg: &SuiteCfg) -> Result<SuiteReport> {
    let mut report =
        SuiteReport { name: "singular-periods", trials: cfg.singular_trials, failures: Vec::new() };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x51f6_0a2d);
    let fields = small_fields();
    for trial in 0..cfg.singular_trials {
        let field = &fields[trial % fields.len()];
        let k = 1 + (rng.next_u64() as usize) % 5;
        let mut rows: Vec<Vec<FieldElement>> = (0..k)
            .map(|_| (0..k).map(|_| rand_elem(&mut rng, field)).collect())
            .collect();
        // overwrite one row with a combination of the others
        let victim = (rng.next_u64() as usize) % k;
        let mut new_row = vec![FieldElement::zero(field); k];
        for i in 0..k {
            if i == victim {
                continue;
            }
            let c = rand_elem(&mut rng, field);
            for j in 0..k {
                new_row[j] = new_row[j].add(&c.mul(&rows[i][j])?)?;
            }
        }
        rows[victim] = new_row;
        let a = Mat::from_rows(rows)?;
        let probes: Vec<Vec<FieldElement>> = (0..2)
            .map(|_| (0..k).map(|_| rand_elem(&mut rng, field)).collect())
            .collect();
        match analyze(&a, &probes, cfg.seed.wrapping_add(trial as u64)) {
            Ok(rep) => {
                if rep.invertible {
                    report.fail(format!("trial {trial}: constructed matrix not singular"));
                    continue;
                }
                for o in &rep.orbits {
                    if o.transient > k {
                        report.fail(format!(
                            "trial {trial}: transient {} exceeds dimension {k} over {field}",
                            o.transient
                        ));
                    }
                    if rep.t_exact % o.period != 0 {
                        report.fail(format!(
                            "trial {trial}: orbit period {} does not divide T_exact {} over {field}",
                            o.period, rep.t_exact
                        ));
                    }
                }
            }
            Err(e) => report.fail(format!("trial {trial}: analyze failed over {field}: {e}")),
        }
    }
    Ok(report)
}

/// Suite (4): v_p(C(n, j)) by carry counting must equal the value from
/// Legendre's factorial formula for every j <= n up to the configured
/// bound, at p in {2, 3, 5, 7}.
pub fn check_binomial_valuations(cfg: &SuiteCfg) -> Result<SuiteReport> {
    fn legendre(n: u64, p: u64) -> u64 {
        let mut total = 0;
        let mut q = p;
        while q <= n {
            total += n / q;
            match q.checked_mul(p) {
                Some(next) => q = next,
                None => break,
            }
        }
        total
    }
    let mut report =
        SuiteReport { name: "binomial-valuations", trials: 0, failures: Vec::new() };
    for p in [2u64, 3, 5, 7] {
        for n in 0..=cfg.kummer_n_max {
            for j in 0..=n {
                report.trials += 1;
                let kummer = vp_binomial(n, j, p)? as u64;
                let leg = legendre(n, p) - legendre(j, p) - legendre(n - j, p);
                if kummer != leg {
                    report.fail(format!("C({n},{j}) at p={p}: carries {kummer}, Legendre {leg}"));
                }
            }
        }
    }
    Ok(report)
}

/// Suite (5): the Newton polygon decision against exact iteration. A
/// matrix p·B (B integral) contracts: the polygon must say so and the
/// trace minimum must grow at least linearly. A matrix with determinant
/// prime to p preserves the unit lattice: the polygon must refuse and
/// the trace minimum must sit at exactly 0 forever.
pub fn check_padic_convergence(cfg: &SuiteCfg) -> Result<SuiteReport> {
    let mut report =
        SuiteReport { name: "padic-convergence", trials: 2 * cfg.padic_trials, failures: Vec::new() };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9ad1_c0de);
    let primes = [2u64, 3, 5];
    let steps = 50;
    for trial in 0..cfg.padic_trials {
        let p = primes[trial % primes.len()];
        let k = 1 + (rng.next_u64() as usize) % 4;

        // contracting class: A = p·B
        let b = rand_int_matrix(&mut rng, k, 3);
        let a = b.scale(&BigRational::from_integer(BigInt::from(p)))?;
        let ones = vec![BigRational::one(); k];
        let run = || -> Result<()> {
            let polygon = newton_polygon(&a.char_poly()?, p)?;
            if !polygon.all_roots_contracting() {
                return Err(Error::TheoryViolation(format!(
                    "polygon refuses p·B (p={p}, k={k})"
                )));
            }
            let trace = iterate_valuations(&a, &ones, p, steps, DEFAULT_DIGIT_CAP)?;
            for (n, v) in &trace {
                if *v < Valuation::finite_int(*n as i64) {
                    return Err(Error::TheoryViolation(format!(
                        "trace minimum {v} below {n} at step {n} for p·B (p={p})"
                    )));
                }
            }
            Ok(())
        };
        if let Err(e) = run() {
            report.fail(format!("trial {trial} (contracting): {e}"));
        }

        // unit-determinant class: det(A) prime to p
        let a = loop {
            let cand = rand_int_matrix(&mut rng, k, 3);
            let det = cand.determinant()?;
            let whole = det.to_integer();
            if !det.is_zero() && (&whole % BigInt::from(p)) != BigInt::from(0) {
                break cand;
            }
        };
        let run = || -> Result<()> {
            let polygon = newton_polygon(&a.char_poly()?, p)?;
            if polygon.all_roots_contracting() {
                return Err(Error::TheoryViolation(format!(
                    "polygon accepts unit-determinant matrix (p={p}, k={k})"
                )));
            }
            if polygon.zero_roots != 0 {
                return Err(Error::TheoryViolation("invertible matrix with zero root".into()));
            }
            let trace = iterate_valuations(&a, &ones, p, steps, DEFAULT_DIGIT_CAP)?;
            if trace.len() != steps + 1 {
                return Err(Error::TheoryViolation("trace stopped early".into()));
            }
            for (n, v) in &trace {
                // A ± its powers preserve Z_p^k bijectively, so the minimum
                // entry valuation of A^n·(1,...,1) is exactly 0
                if *v != Valuation::finite_int(0) {
                    return Err(Error::TheoryViolation(format!(
                        "trace minimum {v} != 0 at step {n} (p={p})"
                    )));
                }
            }
            Ok(())
        };
        if let Err(e) = run() {
            report.fail(format!("trial {trial} (unit determinant): {e}"));
        }
    }
    Ok(report)
}

/// Runs all five suites with the given configuration.
pub fn run_property_suites(cfg: &SuiteCfg) -> Result<Vec<SuiteReport>> {
    Ok(vec![
        check_factorization(cfg)?,
        check_invertible_periods(cfg)?,
        check_singular_periods(cfg)?,
        check_binomial_valuations(cfg)?,
        check_padic_convergence(cfg)?,
    ])
}
