//! Coprime-basis refinement of a family of polynomials.
//!
//! Every input is written as a positive rational constant times a product of
//! powers of pairwise coprime, non-unit, normalized polynomials. Constants are
//! split into integer primes, so the whole family lives in a free abelian
//! group with an explicit basis.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::gcd::mpoly_gcd;
use super::mpoly::MPoly;
use super::{ArithError, Rational};

#[derive(Debug, Clone)]
pub struct CoprimeBasis {
    /// Normalized non-constant polynomials followed by integer primes
    /// (stored as constant polynomials).
    pub basis: Vec<MPoly>,
    /// Number of leading polynomial (non-constant) basis entries.
    pub num_polys: usize,
    pub nvars: usize,
    /// `exps[i][j]` is the exponent of `basis[j]` in input `i`.
    pub exps: Vec<Vec<i64>>,
}

impl CoprimeBasis {
    /// Multiplies out row `i` (polynomial part over the rationals).
    pub fn reconstruct(&self, i: usize) -> (MPoly, MPoly) {
        let mut num = MPoly::one(self.nvars);
        let mut den = MPoly::one(self.nvars);
        for (b, &e) in self.basis.iter().zip(&self.exps[i]) {
            if e > 0 {
                num = &num * &b.pow(e as u32);
            } else if e < 0 {
                den = &den * &b.pow((-e) as u32);
            }
        }
        (num, den)
    }
}

/// Splits a family of nonzero polynomials over a common coprime basis.
pub fn coprime_basis(fs: &[MPoly]) -> Result<CoprimeBasis, ArithError> {
    let rows: Vec<(MPoly, MPoly)> = fs
        .iter()
        .map(|f| (f.clone(), MPoly::one(f.nvars())))
        .collect();
    coprime_basis_fractions(&rows)
}

/// Like [`coprime_basis`] but for quotients `num / den`; exponents of the
/// denominator enter negatively.
pub fn coprime_basis_fractions(fs: &[(MPoly, MPoly)]) -> Result<CoprimeBasis, ArithError> {
    let nvars = fs.first().map(|f| f.0.nvars()).unwrap_or(0);
    // per input: constant, per-variable exponents, list of (primitive monomial-free part, sign)
    struct Split {
        constant: Rational,
        var_exps: Vec<i64>,
        parts: Vec<(MPoly, i64)>,
    }
    let mut splits = Vec::with_capacity(fs.len());
    let mut pending = Vec::new();
    for (num, den) in fs {
        let mut s = Split {
            constant: Rational::one(),
            var_exps: vec![0; nvars],
            parts: Vec::new(),
        };
        for (p, sign) in [(num, 1i64), (den, -1i64)] {
            if p.is_zero() {
                return Err(ArithError::ZeroPolynomial);
            }
            let (c, prim) = p.normalize();
            s.constant = if sign > 0 { s.constant * c } else { s.constant / c };
            let m = prim.min_exponents().unwrap();
            for (v, &k) in m.iter().enumerate() {
                s.var_exps[v] += sign * k as i64;
            }
            let rest = prim
                .div_exact(&MPoly::monomial(m, Rational::one()))
                .expect("monomial content divides");
            if !rest.is_constant() {
                pending.push(rest.clone());
                s.parts.push((rest, sign));
            }
        }
        splits.push(s);
    }

    let refined = refine(pending);

    let used_vars: Vec<usize> = (0..nvars)
        .filter(|&v| splits.iter().any(|s| s.var_exps[v] != 0))
        .collect();
    let mut basis: Vec<MPoly> = used_vars.iter().map(|&v| MPoly::var(nvars, v)).collect();
    basis.extend(refined.iter().cloned());
    let num_polys = basis.len();

    let mut poly_rows = Vec::with_capacity(splits.len());
    let mut constants = Vec::with_capacity(splits.len());
    for s in &splits {
        let mut row: Vec<i64> = used_vars.iter().map(|&v| s.var_exps[v]).collect();
        row.extend(std::iter::repeat_n(0, refined.len()));
        let mut constant = s.constant.clone();
        for (part, sign) in &s.parts {
            let mut rem = part.clone();
            for (j, b) in refined.iter().enumerate() {
                while let Some(q) = rem.div_exact(b) {
                    if rem.is_constant() {
                        break;
                    }
                    rem = q;
                    row[used_vars.len() + j] += sign;
                }
            }
            let c = rem
                .constant_value()
                .expect("refined basis covers every input factor");
            constant = if *sign > 0 { constant * c } else { constant / c };
        }
        if constant.is_negative() {
            return Err(ArithError::NegativeConstant);
        }
        poly_rows.push(row);
        constants.push(constant);
    }

    // prime factorization of the constants
    let mut primes: BTreeMap<BigInt, ()> = BTreeMap::new();
    let mut factored = Vec::with_capacity(constants.len());
    for c in &constants {
        let mut f = BTreeMap::new();
        for (p, e) in factor_integer(c.numer()) {
            *f.entry(p.clone()).or_insert(0i64) += e;
            primes.insert(p, ());
        }
        for (p, e) in factor_integer(c.denom()) {
            *f.entry(p.clone()).or_insert(0i64) -= e;
            primes.insert(p, ());
        }
        factored.push(f);
    }
    let prime_list: Vec<BigInt> = primes.into_keys().collect();
    basis.extend(
        prime_list
            .iter()
            .map(|p| MPoly::constant(nvars, Rational::from_integer(p.clone()))),
    );
    let exps = poly_rows
        .into_iter()
        .zip(factored)
        .map(|(mut row, f)| {
            row.extend(prime_list.iter().map(|p| f.get(p).copied().unwrap_or(0)));
            row
        })
        .collect();

    Ok(CoprimeBasis {
        basis,
        num_polys,
        nvars,
        exps,
    })
}

/// Refines a list of non-constant primitive polynomials into pairwise
/// coprime normalized ones generating the same multiplicative monoid up to
/// constants.
fn refine(inputs: Vec<MPoly>) -> Vec<MPoly> {
    let mut basis: Vec<MPoly> = Vec::new();
    let mut stack: Vec<MPoly> = inputs.into_iter().map(|p| p.normalized()).collect();
    stack.reverse();
    'outer: while let Some(f) = stack.pop() {
        if f.is_constant() {
            continue;
        }
        for i in 0..basis.len() {
            if basis[i] == f {
                continue 'outer;
            }
            let g = mpoly_gcd(&f, &basis[i]);
            if !g.is_constant() {
                let b = basis.swap_remove(i);
                let bq = b.div_exact(&g).expect("gcd divides").normalized();
                let fq = f.div_exact(&g).expect("gcd divides").normalized();
                stack.push(fq);
                stack.push(bq);
                stack.push(g);
                continue 'outer;
            }
        }
        basis.push(f);
    }
    basis.sort_by(|a, b| {
        a.total_degree()
            .cmp(&b.total_degree())
            .then_with(|| a.num_terms().cmp(&b.num_terms()))
            .then_with(|| format!("{a}").cmp(&format!("{b}")))
    });
    basis
}

/// Trial-division factorization of `|n|` into `(prime, exponent)` pairs.
pub fn factor_integer(n: &BigInt) -> Vec<(BigInt, i64)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        let mut e = 0;
        loop {
            let (q, r) = n.div_rem(&d);
            if !r.is_zero() {
                break;
            }
            n = q;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += if d == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}
