//! Euler and Rogers dilogarithms of higher degree.
//!
//! For `P(x) = sum_s z_s x^s` with `z_0 = z_d = 1`:
//!
//! * `Li2(x) = -int_0^{-x} log P(y) / y dy` for `x <= 1`,
//! * `L~(x) = -Li2(-x) - (1/2) log x log P(x)` for `x >= 0`,
//! * `L~_z(x) + L~_{z*}(1/x) = L~_z(inf)`, which fixes `L~(inf)` from `x = 1`.

pub mod identity;
pub mod quadrature;

use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{real_root_count, Rational, UPoly};

pub use identity::{
    phi_independence, random_phi, verify_identity, IdentityForm, IdentityReport, PhiSampler,
};
pub use quadrature::{integrate, QuadratureConfig};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DilogError {
    #[error("quadrature tolerance not reached on [{a}, {b}] (error estimate {err:e})")]
    ToleranceNotReached { a: f64, b: f64, err: f64 },
    #[error("invalid coefficients: {0}")]
    InvalidParams(String),
    #[error("coefficients {0} violate the generic condition")]
    NotGeneric(String),
    #[error("argument {0} outside the domain")]
    Domain(f64),
}

/// Degree and coefficients of `P_{d,z}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DilogParams {
    d: u32,
    z: Vec<Rational>,
}

impl DilogParams {
    /// `z = (z_0, ..., z_d)` with `z_0 = z_d = 1` and all entries nonnegative.
    pub fn new(z: Vec<Rational>) -> Result<Self, DilogError> {
        if z.len() < 2 {
            return Err(DilogError::InvalidParams("need at least z_0 and z_d".into()));
        }
        if !z[0].is_one() || !z[z.len() - 1].is_one() {
            return Err(DilogError::InvalidParams("z_0 and z_d must be 1".into()));
        }
        if z.iter().any(|c| c.is_negative()) {
            return Err(DilogError::InvalidParams("coefficients must be nonnegative".into()));
        }
        Ok(DilogParams {
            d: (z.len() - 1) as u32,
            z,
        })
    }

    pub fn from_ints(z: &[i64]) -> Result<Self, DilogError> {
        Self::new(z.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn z(&self) -> &[Rational] {
        &self.z
    }

    /// `z* = (z_d, ..., z_0)`.
    pub fn reverse(&self) -> Self {
        let mut z = self.z.clone();
        z.reverse();
        DilogParams { d: self.d, z }
    }

    pub fn poly(&self) -> UPoly {
        UPoly::new(self.z.clone())
    }

    /// `P` has no real root other than `-1`: strip every factor `1 + x`,
    /// then count real roots of the rest with a Sturm sequence.
    pub fn check_generic(&self) -> bool {
        let (_, q) = deflate_at_minus_one(&self.poly());
        q.is_constant() || real_root_count(&q) == 0
    }

    fn require_generic(&self) -> Result<(), DilogError> {
        if self.check_generic() {
            Ok(())
        } else {
            Err(DilogError::NotGeneric(self.display()))
        }
    }

    pub fn display(&self) -> String {
        let parts: Vec<String> = self.z.iter().map(|c| c.to_string()).collect();
        format!("({})", parts.join(","))
    }

    fn floats(&self) -> Vec<f64> {
        self.z.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

/// `p = (1 + x)^m q` with `q(-1) != 0`.
fn deflate_at_minus_one(p: &UPoly) -> (u32, UPoly) {
    let lin = UPoly::from_ints(&[1, 1]);
    let minus_one = -Rational::one();
    let mut q = p.clone();
    let mut m = 0;
    while q.degree() > 0 && q.eval(&minus_one).is_zero() {
        q = q.div_exact(&lin).expect("root at -1 gives an exact factor");
        m += 1;
    }
    (m, q)
}

/// Floating-point view of `P` used by the integrands.
struct Numeric {
    z: Vec<f64>,
    /// Lower bound on `|root|` for every complex root.
    root_radius: f64,
}

impl Numeric {
    fn new(p: &DilogParams) -> Self {
        let z = p.floats();
        let zmax = z[1..].iter().cloned().fold(0.0, f64::max);
        Numeric {
            z,
            root_radius: 1.0 / (1.0 + zmax),
        }
    }

    fn d(&self) -> usize {
        self.z.len() - 1
    }

    /// `log P(y)` for `y >= 0`, factoring out `y^d` above 1.
    fn log_p(&self, y: f64) -> f64 {
        let d = self.d();
        if y <= 1.0 {
            let mut s = 0.0;
            for c in self.z[1..].iter().rev() {
                s = (s + c) * y;
            }
            s.ln_1p()
        } else {
            let w = y.recip();
            let mut s = 0.0;
            for c in self.z[..d].iter() {
                s = (s + c) * w;
            }
            d as f64 * y.ln() + s.ln_1p()
        }
    }

    /// `log P(e^u)` for `u >= 0`.
    fn log_p_exp(&self, u: f64) -> f64 {
        let d = self.d();
        let w = (-u).exp();
        let mut s = 0.0;
        for c in self.z[..d].iter() {
            s = (s + c) * w;
        }
        d as f64 * u + s.ln_1p()
    }

    /// Taylor coefficients `a_1..a_N` of `log P(y)` at 0, from
    /// `m a_m = m z_m - sum_{s=1}^{m-1} z_s (m-s) a_{m-s}`.
    fn log_series(&self, terms: usize) -> Vec<f64> {
        let d = self.d();
        let mut a = vec![0.0; terms + 1];
        for m in 1..=terms {
            let mut v = if m <= d { m as f64 * self.z[m] } else { 0.0 };
            for s in 1..m.min(d + 1) {
                v -= self.z[s] * (m - s) as f64 * a[m - s];
            }
            a[m] = v / m as f64;
        }
        a
    }

    /// `int_0^x log P(y) / y dy` for `x >= 0`.
    fn integral_pos(&self, x: f64, cfg: &QuadratureConfig) -> Result<f64, DilogError> {
        if x == 0.0 {
            return Ok(0.0);
        }
        let h = x.min(1e-3).min(self.root_radius / 4.0);
        let a = self.log_series(60);
        let mut total = 0.0;
        let mut hp = 1.0;
        for (n, an) in a.iter().enumerate().skip(1) {
            hp *= h;
            total += an * hp / n as f64;
        }
        let mid = x.min(1.0);
        if mid > h {
            total += integrate(|y| self.log_p(y) / y, h, mid, cfg)?;
        }
        if x > 1.0 {
            total += integrate(|u| self.log_p_exp(u), 0.0, x.ln(), cfg)?;
        }
        Ok(total)
    }
}

/// `-int_0^x log(1 - s) / s ds` for `0 <= x <= 1`, reflecting above 1/2.
fn classical_li2(x: f64, cfg: &QuadratureConfig) -> Result<f64, DilogError> {
    let zeta2 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
    if x == 1.0 {
        return Ok(zeta2);
    }
    if x <= 0.5 {
        return integrate(|s: f64| -(-s).ln_1p() / s, 0.0, x, cfg);
    }
    Ok(zeta2 - x.ln() * (1.0 - x).ln() - classical_li2(1.0 - x, cfg)?)
}

/// `Li_{2;d,z}(x) = -int_0^{-x} log P(y) / y dy` for `x <= 1`.
pub fn li2_hd(x: f64, p: &DilogParams, cfg: &QuadratureConfig) -> Result<f64, DilogError> {
    p.require_generic()?;
    if !(x <= 1.0) {
        return Err(DilogError::Domain(x));
    }
    if x <= 0.0 {
        return Ok(-Numeric::new(p).integral_pos(-x, cfg)?);
    }
    // P = (1 + y)^m Q with Q free of real roots; the (1 + y)^m part is the
    // classical dilogarithm and carries the only singularity at y = -1.
    let (m, q) = deflate_at_minus_one(&p.poly());
    let qc: Vec<f64> = q.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
    let q0 = qc[0];
    let log_q_neg = |s: f64| {
        let mut v = 0.0;
        for c in qc[1..].iter().rev() {
            v = (v + c) * -s;
        }
        (v / q0).ln_1p() + q0.ln()
    };
    let rest = integrate(|s| log_q_neg(s) / s, 0.0, x, cfg)?;
    Ok(m as f64 * classical_li2(x, cfg)? - rest)
}

/// `L~_{d,z}(x) = -Li_{2;d,z}(-x) - (1/2) log x log P(x)`, with `L~(0) = 0`.
pub fn rogers_hd_tilde(x: f64, p: &DilogParams, cfg: &QuadratureConfig) -> Result<f64, DilogError> {
    p.require_generic()?;
    if !(x >= 0.0) || !x.is_finite() {
        return Err(DilogError::Domain(x));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let num = Numeric::new(p);
    Ok(num.integral_pos(x, cfg)? - 0.5 * x.ln() * num.log_p(x))
}

/// `L~_{d,z}(inf) = L~_{d,z}(1) + L~_{d,z*}(1)`.
pub fn rogers_inf(p: &DilogParams, cfg: &QuadratureConfig) -> Result<f64, DilogError> {
    Ok(rogers_hd_tilde(1.0, p, cfg)? + rogers_hd_tilde(1.0, &p.reverse(), cfg)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn generic_condition() {
        assert!(DilogParams::from_ints(&[1, 1]).unwrap().check_generic());
        assert!(DilogParams::from_ints(&[1, 1, 1]).unwrap().check_generic());
        assert!(!DilogParams::from_ints(&[1, 3, 1]).unwrap().check_generic());
        assert!(DilogParams::from_ints(&[1, 2, 1]).unwrap().check_generic());
        assert!(DilogParams::from_ints(&[1, 0, 0, 1]).unwrap().check_generic());
    }

    #[test]
    fn invalid_params() {
        assert!(DilogParams::from_ints(&[2, 1]).is_err());
        assert!(DilogParams::from_ints(&[1, -1, 1]).is_err());
        assert!(DilogParams::from_ints(&[1]).is_err());
    }

    #[test]
    fn li2_values() {
        let p1 = DilogParams::from_ints(&[1, 1]).unwrap();
        assert_eq!(li2_hd(0.0, &p1, &cfg()).unwrap(), 0.0);
        assert!((li2_hd(1.0, &p1, &cfg()).unwrap() - PI * PI / 6.0).abs() < 1e-12);
        let p2 = DilogParams::from_ints(&[1, 2, 1]).unwrap();
        assert!((li2_hd(1.0, &p2, &cfg()).unwrap() - PI * PI / 3.0).abs() < 1e-12);
        // Li2(-1) = -pi^2/12
        assert!((li2_hd(-1.0, &p1, &cfg()).unwrap() + PI * PI / 12.0).abs() < 1e-12);
        // Li2(1/2) = pi^2/12 - ln(2)^2/2
        let want = PI * PI / 12.0 - 0.5 * 2f64.ln().powi(2);
        assert!((li2_hd(0.5, &p1, &cfg()).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn rogers_values() {
        let p1 = DilogParams::from_ints(&[1, 1]).unwrap();
        assert_eq!(rogers_hd_tilde(0.0, &p1, &cfg()).unwrap(), 0.0);
        assert!((rogers_hd_tilde(1.0, &p1, &cfg()).unwrap() - PI * PI / 12.0).abs() < 1e-12);
        assert!((rogers_inf(&p1, &cfg()).unwrap() - PI * PI / 6.0).abs() < 1e-12);
        let p2 = DilogParams::from_ints(&[1, 2, 1]).unwrap();
        assert!((rogers_inf(&p2, &cfg()).unwrap() - PI * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn large_arguments() {
        // L~(x) -> L~(inf) as x grows, since L~_{z*}(1/x) -> 0
        let p = DilogParams::from_ints(&[1, 2, 2, 1]).unwrap();
        let inf = rogers_inf(&p, &cfg()).unwrap();
        let big = rogers_hd_tilde(1e12, &p, &cfg()).unwrap();
        assert!((big - inf).abs() < 1e-9);
    }

    #[test]
    fn non_generic_rejected() {
        let p = DilogParams::from_ints(&[1, 3, 1]).unwrap();
        assert!(matches!(rogers_inf(&p, &cfg()), Err(DilogError::NotGeneric(_))));
    }
}
