//! Multivariate polynomial GCD over the rationals.
//!
//! Recursive content / primitive-part decomposition with a subresultant
//! pseudo-remainder sequence in the main variable.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::mpoly::MPoly;
use super::upoly::UPoly;
use super::Rational;

/// Greatest common divisor, normalized to a primitive integer polynomial with
/// positive lex-leading coefficient. `gcd(0, b)` is the normalized `b`.
pub fn mpoly_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    assert_eq!(a.nvars(), b.nvars(), "gcd of polynomials in different rings");
    let n = a.nvars();
    if a.is_zero() && b.is_zero() {
        return MPoly::zero(n);
    }
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one(n);
    }
    let ma = a.min_exponents().unwrap();
    let mb = b.min_exponents().unwrap();
    let mono: Vec<u32> = ma.iter().zip(&mb).map(|(x, y)| *x.min(y)).collect();
    let a0 = strip_monomial(a, &ma);
    let b0 = strip_monomial(b, &mb);
    let g = gcd_rec(&a0, &b0);
    g.shift(&mono).normalized()
}

/// Least common multiple, normalized like [`mpoly_gcd`].
pub fn mpoly_lcm(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() || b.is_zero() {
        return MPoly::zero(a.nvars());
    }
    let g = mpoly_gcd(a, b);
    (a * &b.div_exact(&g).expect("gcd divides its argument")).normalized()
}

fn strip_monomial(p: &MPoly, m: &[u32]) -> MPoly {
    if m.iter().all(|&k| k == 0) {
        return p.clone();
    }
    let divisor = MPoly::monomial(m.to_vec(), Rational::one());
    p.div_exact(&divisor).expect("monomial content divides")
}

fn first_var(a: &MPoly, b: &MPoly) -> Option<usize> {
    (0..a.nvars()).find(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0)
}

// gcd up to a rational unit
fn gcd_rec(a: &MPoly, b: &MPoly) -> MPoly {
    let n = a.nvars();
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one(n);
    }
    if a.is_monomial() || b.is_monomial() {
        // monomial content was stripped by the caller only at the top level
        let ma = a.min_exponents().unwrap();
        let mb = b.min_exponents().unwrap();
        let m: Vec<u32> = ma.iter().zip(&mb).map(|(x, y)| *x.min(y)).collect();
        return MPoly::monomial(m, Rational::one());
    }
    if first_var(a, b).is_none() {
        return MPoly::one(n);
    }
    // A variable whose image gcd is trivial cannot occur in the gcd, which
    // then divides every coefficient in that variable.
    let mut best: Option<(u32, usize)> = None;
    for v in (0..n).filter(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0) {
        let bound = image_degree_bound(a, b, v);
        if bound == 0 {
            return gcd_rec(&content_in(a, v), &content_in(b, v));
        }
        if best.is_none_or(|(d, _)| bound < d) {
            best = Some((bound, v));
        }
    }
    let v = best.expect("some variable occurs").1;
    let da = a.degree_in(v);
    let db = b.degree_in(v);
    if da == 0 {
        return gcd_rec(a, &content_in(b, v));
    }
    if db == 0 {
        return gcd_rec(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd_rec(&ca, &cb);
    let g = if da >= db {
        subresultant_gcd(pa, pb, v)
    } else {
        subresultant_gcd(pb, pa, v)
    };
    &c * &g
}

/// Evaluates every variable except `v` at a fixed integer point.
fn univariate_image(p: &MPoly, v: usize, point: &[Rational]) -> UPoly {
    let mut coeffs = vec![Rational::zero(); p.degree_in(v) as usize + 1];
    for (e, c) in p.terms() {
        let mut t = c.clone();
        for (j, &k) in e.iter().enumerate() {
            if j != v && k > 0 {
                t *= num_traits::pow(point[j].clone(), k as usize);
            }
        }
        coeffs[e[v] as usize] += t;
    }
    UPoly::new(coeffs)
}

/// Upper bound on the degree in `v` of `gcd(a, b)`, from univariate images at
/// points where neither leading coefficient in `v` vanishes.
fn image_degree_bound(a: &MPoly, b: &MPoly, v: usize) -> u32 {
    let mut bound = a.degree_in(v).min(b.degree_in(v));
    let (la, lb) = (a.lc_in(v), b.lc_in(v));
    for attempt in 0..2i64 {
        let point: Vec<Rational> = (0..a.nvars() as i64)
            .map(|j| Rational::from_integer(BigInt::from(2 + 3 * j + 7 * attempt)))
            .collect();
        if la.eval(&point).is_zero() || lb.eval(&point).is_zero() {
            continue;
        }
        let g = univariate_image(a, v, &point).gcd(&univariate_image(b, v, &point));
        bound = bound.min(g.degree() as u32);
        if bound == 0 {
            break;
        }
    }
    bound
}

/// GCD of the coefficients of `p` viewed as a polynomial in `v`.
fn content_in(p: &MPoly, v: usize) -> MPoly {
    let mut coeffs = p.coeffs_in(v);
    coeffs.retain(|c| !c.is_zero());
    // cheapest coefficients first; a constant ends the search early
    coeffs.sort_by_key(|c| c.num_terms());
    let mut g = MPoly::zero(p.nvars());
    for c in coeffs {
        g = gcd_rec(&g, &c);
        if g.is_constant() {
            return MPoly::one(p.nvars());
        }
        g = g.normalized();
    }
    g
}

fn primitive_part_in(p: &MPoly, v: usize) -> MPoly {
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides").normalized()
}

/// Pseudo-remainder of `a` by `b` in variable `v`.
pub(crate) fn pseudo_remainder(a: &MPoly, b: &MPoly, v: usize) -> MPoly {
    let db = b.degree_in(v);
    let lcb = b.lc_in(v);
    let mut r = a.clone();
    let mut steps = a.degree_in(v) as i64 - db as i64 + 1;
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lcr = r.lc_in(v);
        let mut e = vec![0; a.nvars()];
        e[v] = dr - db;
        let t = lcr.shift(&e);
        r = &(&r * &lcb) - &(b * &t);
        steps -= 1;
    }
    // scale so the result equals lc(b)^(da-db+1) * a mod b
    if steps > 0 {
        r = &r * &lcb.pow(steps as u32);
    }
    r
}

// Collins–Brown subresultant PRS. Inputs primitive in `v`, deg a >= deg b > 0.
fn subresultant_gcd(mut a: MPoly, mut b: MPoly, v: usize) -> MPoly {
    let n = a.nvars();
    let mut g = MPoly::one(n);
    let mut h = MPoly::one(n);
    loop {
        let delta = a.degree_in(v) - b.degree_in(v);
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            return primitive_part_in(&b, v);
        }
        if r.degree_in(v) == 0 {
            return MPoly::one(n);
        }
        let divisor = &g * &h.pow(delta);
        a = b;
        b = r.div_exact(&divisor).expect("subresultant division is exact");
        g = a.lc_in(v);
        h = if delta == 0 {
            h
        } else {
            let num = g.pow(delta);
            let den = h.pow(delta - 1);
            num.div_exact(&den).expect("subresultant h update is exact")
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(n: usize) -> Vec<MPoly> {
        (0..n).map(|i| MPoly::var(n, i)).collect()
    }

    #[test]
    fn gcd_with_zero_is_normalized_other() {
        let v = vars(1);
        let x = &v[0];
        let p = &(x * x) - &MPoly::one(1);
        assert_eq!(mpoly_gcd(&MPoly::zero(1), &p), p);
        assert_eq!(mpoly_gcd(&MPoly::zero(1), &(-&p)), p);
    }

    #[test]
    fn gcd_extracts_common_factor() {
        let v = vars(2);
        let (x, y) = (&v[0], &v[1]);
        let one = MPoly::one(2);
        let a = &(&(x * x) * y) - y;
        let b = &(x * y) - y;
        let expected = y * &(x - &one);
        assert_eq!(mpoly_gcd(&a, &b), expected.normalized());
    }

    #[test]
    fn coprime_inputs_give_one() {
        let v = vars(2);
        let one = MPoly::one(2);
        assert_eq!(mpoly_gcd(&(&v[0] + &one), &(&v[1] + &one)), one);
    }

    #[test]
    fn trivariate_gcd() {
        let v = vars(3);
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let one = MPoly::one(3);
        let c = &(&(x * y) + &(z * z)) + &one;
        let a = &c * &(&(x * x) + &(y * z));
        let b = &c * &(&(x * z) - &(y * y) + one.clone());
        assert_eq!(mpoly_gcd(&a, &b), c.normalized());
    }
}
