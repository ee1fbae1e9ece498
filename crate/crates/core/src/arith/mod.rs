//! Exact arithmetic kernel: rationals, multivariate and univariate
//! polynomials, rational functions, GCDs, coprime bases and Sturm counting.

pub mod coprime;
pub mod gcd;
pub mod mpoly;
pub mod qrat;
pub mod ratfunc;
pub mod sturm;
pub mod upoly;

use thiserror::Error;

pub type Rational = num_rational::BigRational;

pub use coprime::{coprime_basis, coprime_basis_fractions, CoprimeBasis};
pub use gcd::{mpoly_gcd, mpoly_lcm};
pub use mpoly::MPoly;
pub use qrat::QRat;
pub use ratfunc::RatFunc;
pub use sturm::{real_root_count, sturm_real_root_count};
pub use upoly::UPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("polynomial has a negative constant factor")]
    NegativeConstant,
    #[error("polynomial is not univariate")]
    NotUnivariate,
}

/// Parses `"p/q"`, `"p"` or a decimal-free integer string into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: num_bigint::BigInt = p.trim().parse().ok()?;
            let q: num_bigint::BigInt = q.trim().parse().ok()?;
            if q == num_bigint::BigInt::from(0) {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => s.parse::<num_bigint::BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn rational_from_int(n: i64) -> Rational {
    Rational::from_integer(num_bigint::BigInt::from(n))
}

/// `"p/q"`, or `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}
