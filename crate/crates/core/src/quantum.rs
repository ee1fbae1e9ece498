//! Truncated series over a quantum torus and the quantum dilogarithm
//! identity in tropical form.
//!
//! Monomials multiply as `Y^a Y^b = q^{-<a,b>} Y^{a+b}` with
//! `<a,b> = sum_ij a_i r_i b_ij b_j`. Series are supported on the
//! nonnegative cone and truncated above total degree `N`. Coefficients are
//! exact rational functions of `q` with polynomial dependence on the
//! exchange-coefficient symbols.

use std::collections::BTreeMap;

use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{MPoly, QRat, Rational, UPoly};
use crate::seed::{IntMatrix, MutationTrajectory, SymmetrizerData};
use crate::semifield::SubtractionFreeElem;
use crate::tropical::{TropicalData, TropicalSign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuantumError {
    #[error("series constant term is not 1")]
    NonUnit,
    #[error("argument exponent {0:?} leaves the nonnegative cone")]
    NotPositive(Vec<i64>),
    #[error("exchange coefficient is not a polynomial in the z-symbols")]
    NonPolynomialZ,
}

pub type Exponent = Vec<u32>;

/// Pairing data of the quantum torus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QTorusContext {
    n: usize,
    /// `w_ij = r_i b_ij`, skew-symmetric.
    w: IntMatrix,
    r: Vec<i64>,
    /// Variable count of the coefficient ring: `q` plus extra symbols.
    nvars: usize,
}

impl QTorusContext {
    pub fn new(b: &IntMatrix, r: &[i64], extra_symbols: usize) -> Self {
        let n = b.len();
        let w = (0..n)
            .map(|i| (0..n).map(|j| r[i] * b[i][j]).collect())
            .collect();
        QTorusContext {
            n,
            w,
            r: r.to_vec(),
            nvars: 1 + extra_symbols,
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn r(&self) -> &[i64] {
        &self.r
    }

    pub fn pairing(&self, a: &[u32], b: &[u32]) -> i64 {
        let mut s = 0;
        for i in 0..self.n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                s += a[i] as i64 * self.w[i][j] * b[j] as i64;
            }
        }
        s
    }
}

/// `sum_a c_a Y^a` over `a >= 0` with `|a| <= trunc`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeriesElem {
    trunc: u32,
    nvars: usize,
    terms: BTreeMap<Exponent, QRat>,
}

fn degree(a: &[u32]) -> u32 {
    a.iter().sum()
}

impl QSeriesElem {
    pub fn zero(ctx: &QTorusContext, trunc: u32) -> Self {
        QSeriesElem {
            trunc,
            nvars: ctx.nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &QTorusContext, trunc: u32) -> Self {
        let mut s = Self::zero(ctx, trunc);
        s.terms.insert(vec![0; ctx.n], QRat::one(ctx.nvars));
        s
    }

    /// `c Y^a`, or zero if `a` exceeds the truncation.
    pub fn monomial(ctx: &QTorusContext, trunc: u32, a: Exponent, c: QRat) -> Self {
        let mut s = Self::zero(ctx, trunc);
        if degree(&a) <= trunc && !c.is_zero() {
            s.terms.insert(a, c);
        }
        s
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, QRat> {
        &self.terms
    }

    pub fn coeff(&self, a: &[u32]) -> Option<&QRat> {
        self.terms.get(a)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(a, c)| a.iter().all(|&e| e == 0) && c.is_one())
    }

    /// Terms other than the unit constant, i.e. what separates `self` from 1.
    pub fn residual_terms(&self) -> Vec<(&Exponent, QRat)> {
        self.terms
            .iter()
            .filter_map(|(a, c)| {
                if a.iter().all(|&e| e == 0) {
                    let d = c.sub(&QRat::one(self.nvars));
                    (!d.is_zero()).then_some((a, d))
                } else {
                    Some((a, c.clone()))
                }
            })
            .collect()
    }

    fn add_term(&mut self, a: Exponent, c: QRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&a) {
            Some(v) => {
                let s = v.add(&c);
                if s.is_zero() {
                    self.terms.remove(&a);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(a, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        QSeriesElem {
            trunc: self.trunc,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, c)| (a.clone(), c.neg())).collect(),
        }
    }
}

/// Twisted product, dropping every term above the truncation degree.
pub fn qtorus_mul(a: &QSeriesElem, b: &QSeriesElem, ctx: &QTorusContext) -> QSeriesElem {
    let trunc = a.trunc.min(b.trunc);
    let mut out = QSeriesElem {
        trunc,
        nvars: a.nvars,
        terms: BTreeMap::new(),
    };
    for (ea, ca) in &a.terms {
        let da = degree(ea);
        for (eb, cb) in &b.terms {
            if da + degree(eb) > trunc {
                continue;
            }
            let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let c = ca.mul(cb).mul_q_pow(-ctx.pairing(ea, eb));
            out.add_term(e, c);
        }
    }
    out
}

/// Two-sided inverse of a series with constant term 1, solved degree by
/// degree from `a * b = 1`.
pub fn series_inverse(a: &QSeriesElem, ctx: &QTorusContext) -> Result<QSeriesElem, QuantumError> {
    let zero: Exponent = vec![0; ctx.n];
    if !a.coeff(&zero).is_some_and(|c| c.is_one()) {
        return Err(QuantumError::NonUnit);
    }
    let mut b = QSeriesElem::one(ctx, a.trunc);
    for exps in exponents_by_degree(ctx.n, a.trunc).into_iter().skip(1) {
        for g in exps {
            // coefficient of Y^g in a*b, excluding the unknown b_g
            let mut acc = QRat::zero(ctx.nvars);
            for (ea, ca) in &a.terms {
                if ea.iter().all(|&e| e == 0) || ea.iter().zip(&g).any(|(x, y)| x > y) {
                    continue;
                }
                let eb: Exponent = g.iter().zip(ea).map(|(x, y)| x - y).collect();
                if let Some(cb) = b.terms.get(&eb) {
                    acc = acc.add(&ca.mul(cb).mul_q_pow(-ctx.pairing(ea, &eb)));
                }
            }
            if !acc.is_zero() {
                b.terms.insert(g, acc.neg());
            }
        }
    }
    Ok(b)
}

/// All exponents with `|a| = 0, 1, ..., trunc`, grouped by degree.
fn exponents_by_degree(n: usize, trunc: u32) -> Vec<Vec<Exponent>> {
    let mut out = vec![Vec::new(); trunc as usize + 1];
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, deg: u32, out: &mut Vec<Vec<Exponent>>) {
        if cur.len() == n {
            out[deg as usize].push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(n, left - e, cur, deg + e, out);
            cur.pop();
        }
    }
    rec(n, trunc, &mut Vec::new(), 0, &mut out);
    out
}

/// Coefficients of `Psi_{d,z,q_k}(x) = sum_n c_n x^n` from
/// `c_n (q_k^{2n} - 1) = sum_{s=1}^{min(d,n)} z_s q_k^s c_{n-s}`, `q_k = q^{weight}`.
pub fn psi_coeffs(z: &[QRat], weight: i64, count: u32) -> Vec<QRat> {
    let nvars = z[0].nvars();
    let d = z.len() - 1;
    let w = weight;
    let mut c = vec![QRat::one(nvars)];
    for n in 1..=count as usize {
        let mut rhs = QRat::zero(nvars);
        for s in 1..=d.min(n) {
            rhs = rhs.add(&z[s].mul(&c[n - s]).mul_q_pow(w * s as i64));
        }
        // q^{2 w n} - 1
        let den = &UPoly::monomial(2 * w as usize * n, Rational::one()) - &UPoly::one();
        c.push(rhs.div_upoly(&den));
    }
    c
}

/// `Psi(Y^a) = sum_n c_n Y^{n a}`; valid because `<a, a> = 0`.
pub fn psi_series(
    ctx: &QTorusContext,
    trunc: u32,
    a: &[u32],
    z: &[QRat],
    weight: i64,
) -> QSeriesElem {
    let da = degree(a);
    let count = trunc.checked_div(da).unwrap_or(0);
    let coeffs = psi_coeffs(z, weight, count);
    let mut s = QSeriesElem::zero(ctx, trunc);
    for (n, c) in coeffs.into_iter().enumerate() {
        let e: Exponent = a.iter().map(|&x| x * n as u32).collect();
        s.add_term(e, c);
    }
    s
}

/// Converts an exchange coefficient (a polynomial in the z-generators) into
/// the coefficient ring `Q(q)[z]`: generator slot `n + j` becomes variable `1 + j`.
pub fn z_to_qrat(
    c: &SubtractionFreeElem,
    rank: usize,
    nvars: usize,
) -> Result<QRat, QuantumError> {
    let p = c.as_poly().ok_or(QuantumError::NonPolynomialZ)?;
    let map: Vec<usize> = (0..p.nvars())
        .map(|slot| if slot < rank { 0 } else { 1 + slot - rank })
        .collect();
    if p.terms().any(|(e, _)| e[..rank].iter().any(|&k| k > 0)) {
        return Err(QuantumError::NonPolynomialZ);
    }
    Ok(QRat::from_poly(p.embed(nvars, &map)))
}

/// Which coefficient tuple feeds the factor at step `t`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoefficientRule {
    /// `z_{k_t}[t]` when `eps_t = +1` and its reverse when `eps_t = -1`,
    /// matching the classical form with inverted arguments.
    #[default]
    SignAdjusted,
    /// `z_{k_t}[t]` for every factor. Agrees with `SignAdjusted` only when
    /// every `z` tuple is a palindrome.
    Literal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantumReport {
    pub rule: CoefficientRule,
    pub truncation: u32,
    pub is_one: bool,
    /// Nonzero coefficients of `product - 1`.
    pub residual_count: usize,
    /// Lowest-degree offending coefficient, rendered.
    pub first_residual: Option<String>,
    /// The product truncated at degree 1 equals 1.
    pub degree_one_cancels: bool,
}

fn coefficient_names(traj: &MutationTrajectory) -> Vec<String> {
    let gens = traj.initial().generators();
    let mut names = vec!["q".to_string()];
    names.extend(gens.names()[traj.rank()..].iter().cloned());
    names
}

fn identity_product(
    traj: &MutationTrajectory,
    data: &TropicalData,
    ctx: &QTorusContext,
    trunc: u32,
    rule: CoefficientRule,
) -> Result<QSeriesElem, QuantumError> {
    let n = traj.rank();
    let mut prod = QSeriesElem::one(ctx, trunc);
    for (t, &k) in traj.ks.iter().enumerate() {
        let v = data.positive_c_vector(traj, t);
        if v.iter().any(|&e| e < 0) {
            return Err(QuantumError::NotPositive(v));
        }
        let a: Exponent = v.iter().map(|&e| e as u32).collect();
        let mut z = traj.seeds[t].z[k]
            .iter()
            .map(|c| z_to_qrat(c, n, ctx.nvars()))
            .collect::<Result<Vec<_>, _>>()?;
        if rule == CoefficientRule::SignAdjusted && data.signs[t] == TropicalSign::Minus {
            z.reverse();
        }
        let psi = psi_series(ctx, trunc, &a, &z, ctx.r()[k]);
        let factor = match data.signs[t] {
            TropicalSign::Plus => psi,
            TropicalSign::Minus => series_inverse(&psi, ctx)?,
        };
        prod = qtorus_mul(&prod, &factor, ctx);
    }
    Ok(prod)
}

/// Multiplies `Psi_{z°}(Y^{eps_t c_{k_t}[t]})^{eps_t}` for `t = 1..m` left to
/// right and compares with 1 up to total degree `trunc`; `z°` follows `rule`.
pub fn verify_quantum_identity(
    traj: &MutationTrajectory,
    data: &TropicalData,
    sym: &SymmetrizerData,
    trunc: u32,
    rule: CoefficientRule,
) -> Result<QuantumReport, QuantumError> {
    let gens = traj.initial().generators();
    let extra = gens.len() - traj.rank();
    let ctx = QTorusContext::new(&traj.initial().b, &sym.r, extra);
    let degree_one_cancels = identity_product(traj, data, &ctx, 1.min(trunc), rule)?.is_one();
    let prod = identity_product(traj, data, &ctx, trunc, rule)?;
    let residuals = prod.residual_terms();
    let names = coefficient_names(traj);
    let first_residual = residuals
        .iter()
        .min_by_key(|(a, _)| (degree(a), (*a).clone()))
        .map(|(a, c)| format!("Y^{a:?}: {}", c.display_with(&names)));
    Ok(QuantumReport {
        rule,
        truncation: trunc,
        is_one: residuals.is_empty(),
        residual_count: residuals.len(),
        first_residual,
        degree_one_cancels,
    })
}

/// Polynomial in `q` as a coefficient, for tests and callers building series by hand.
pub fn qrat_from_upoly(p: &UPoly, nvars: usize) -> QRat {
    QRat::from_poly(p.to_mpoly(nvars, 0))
}

/// The constant `c` in a coefficient ring with `nvars` variables.
pub fn qrat_constant(c: Rational, nvars: usize) -> QRat {
    QRat::from_poly(MPoly::constant(nvars, c))
}
