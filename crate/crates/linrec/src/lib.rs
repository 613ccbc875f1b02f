//! Exact analysis of linear difference systems v_{n+1} = A v_n.
//!
//! Over a finite field every invertible system is periodic; this crate
//! predicts the period from the characteristic polynomial's irreducible
//! factors and verifies the prediction by explicit matrix powering and
//! orbit simulation. Over the rationals it decides whether iterates
//! converge to zero in the p-adic metric by reading root valuations off a
//! Newton polygon, again cross-checked by exact iteration. All arithmetic
//! is exact: machine integers with overflow checks, arbitrary-precision
//! rationals, no floating point.

pub mod arith;
pub mod checks;
pub mod error;
pub mod factor;
pub mod ff;
pub mod linalg;
pub mod padic;
pub mod period;
pub mod poly;
pub mod scalar;
pub mod suite;

pub use checks::{run_property_suites, SuiteCfg, SuiteReport};
pub use error::{Error, Result};
pub use factor::{factor, factor_seeded, is_irreducible, squarefree_decompose, Factorization};
pub use ff::{Field, FieldElement, FieldRef};
pub use linalg::{FittingDecomposition, Mat, Subspace};
pub use padic::{
    converges_to_zero, iterate_valuations, newton_polygon, vp_binomial, vp_rational,
    ConvergenceReport, NewtonPolygon, Valuation,
};
pub use period::{analyze, matrix_order, orbit_period, period_bound, PeriodBound, PeriodReport};
pub use poly::Poly;
pub use scalar::{parse_rational, rational_string, Scalar};
pub use suite::{run_examples, ExamplesDocument};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
