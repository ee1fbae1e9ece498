//! The universal semifield `Q+(y, z)`, the tropical semifield `Trop(y, z)`
//! and the homomorphisms into `Trop` and into the positive reals.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{mpoly_gcd, MPoly, RatFunc, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemifieldError {
    #[error("generator {0} assigned a nonpositive value")]
    NonPositiveAssignment(String),
    #[error("assignment has {got} values, expected {expected}")]
    AssignmentLength { expected: usize, got: usize },
    #[error("not subtraction-free: {0}")]
    NotSubtractionFree(String),
}

/// Generator bookkeeping for `Q+(y, z)`: the `y_i` come first, then every
/// `z_{i,s}` with `0 < s < d_i`. The endpoints `z_{i,0}` and `z_{i,d_i}`
/// are the constant 1 and get no slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generators {
    n: usize,
    degrees: Vec<u32>,
    z_offsets: Vec<usize>,
    names: Vec<String>,
}

impl Generators {
    /// Default names `y1, y2, ...` and `z1_1, ...`.
    pub fn new(degrees: &[u32]) -> Self {
        Self::with_z_names(degrees, None)
    }

    /// `z_names[i][s-1]` names `z_{i,s}` for `0 < s < d_i`.
    pub fn with_z_names(degrees: &[u32], z_names: Option<&[Vec<String>]>) -> Self {
        let n = degrees.len();
        let mut names: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
        let mut z_offsets = Vec::with_capacity(n);
        let mut next = n;
        for (i, &d) in degrees.iter().enumerate() {
            z_offsets.push(next);
            for s in 1..d {
                let name = z_names
                    .and_then(|zn| zn.get(i))
                    .and_then(|v| v.get(s as usize - 1))
                    .cloned()
                    .unwrap_or_else(|| format!("z{}_{}", i + 1, s));
                names.push(name);
                next += 1;
            }
        }
        Generators {
            n,
            degrees: degrees.to_vec(),
            z_offsets,
            names,
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Total number of generators.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn y_index(&self, i: usize) -> usize {
        assert!(i < self.n);
        i
    }

    /// Slot of `z_{i,s}`, or `None` for the constant endpoints.
    pub fn z_index(&self, i: usize, s: u32) -> Option<usize> {
        let d = self.degrees[i];
        assert!(s <= d, "z index s={s} exceeds degree {d}");
        if s == 0 || s == d {
            None
        } else {
            Some(self.z_offsets[i] + s as usize - 1)
        }
    }

    pub fn is_z_slot(&self, slot: usize) -> bool {
        slot >= self.n
    }
}

/// An element of `Q+(y, z)` as a quotient of polynomials with nonnegative
/// coefficients. There is no canonical form; equality is cross-multiplication.
#[derive(Clone)]
pub struct SubtractionFreeElem {
    gens: Arc<Generators>,
    num: MPoly,
    den: MPoly,
}

impl SubtractionFreeElem {
    pub fn new(gens: Arc<Generators>, num: MPoly, den: MPoly) -> Result<Self, SemifieldError> {
        for p in [&num, &den] {
            if p.is_zero() || !p.has_nonnegative_coeffs() {
                return Err(SemifieldError::NotSubtractionFree(format!("{p}")));
            }
        }
        Ok(SubtractionFreeElem { gens, num, den })
    }

    fn raw(gens: Arc<Generators>, num: MPoly, den: MPoly) -> Self {
        SubtractionFreeElem { gens, num, den }
    }

    pub fn one(gens: Arc<Generators>) -> Self {
        let n = gens.len();
        Self::raw(gens, MPoly::one(n), MPoly::one(n))
    }

    pub fn constant(gens: Arc<Generators>, c: Rational) -> Result<Self, SemifieldError> {
        let n = gens.len();
        Self::new(gens, MPoly::constant(n, c), MPoly::one(n))
    }

    pub fn generator(gens: Arc<Generators>, slot: usize) -> Self {
        let n = gens.len();
        Self::raw(gens, MPoly::var(n, slot), MPoly::one(n))
    }

    pub fn y(gens: Arc<Generators>, i: usize) -> Self {
        let slot = gens.y_index(i);
        Self::generator(gens, slot)
    }

    /// `z_{i,s}`, which is 1 at the endpoints.
    pub fn z(gens: Arc<Generators>, i: usize, s: u32) -> Self {
        match gens.z_index(i, s) {
            Some(slot) => Self::generator(gens, slot),
            None => Self::one(gens),
        }
    }

    /// `prod y^{e}` for a signed exponent vector over all generators.
    pub fn monomial(gens: Arc<Generators>, exps: &[i64]) -> Self {
        let n = gens.len();
        let mut num = vec![0u32; n];
        let mut den = vec![0u32; n];
        for (i, &e) in exps.iter().enumerate() {
            if e >= 0 {
                num[i] = e as u32;
            } else {
                den[i] = (-e) as u32;
            }
        }
        Self::raw(
            gens,
            MPoly::monomial(num, Rational::one()),
            MPoly::monomial(den, Rational::one()),
        )
    }

    pub fn from_poly(gens: Arc<Generators>, p: MPoly) -> Result<Self, SemifieldError> {
        let n = gens.len();
        Self::new(gens, p, MPoly::one(n))
    }

    pub fn generators(&self) -> &Arc<Generators> {
        &self.gens
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::raw(self.gens.clone(), &self.num * &other.num, &self.den * &other.den)
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// Semifield sum: ordinary addition of rational functions.
    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::raw(self.gens.clone(), &self.num + &other.num, self.den.clone());
        }
        Self::raw(
            self.gens.clone(),
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn inv(&self) -> Self {
        Self::raw(self.gens.clone(), self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i64) -> Self {
        let b = if e < 0 { self.inv() } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Self::raw(self.gens.clone(), b.num.pow(k), b.den.pow(k))
    }

    /// Cancels common factors whenever the reduced quotient keeps a
    /// subtraction-free witness; otherwise only the common monomial and
    /// constant are removed.
    pub fn simplified(&self) -> Self {
        let g = mpoly_gcd(&self.num, &self.den);
        if !g.is_one() {
            let n = self.num.div_exact(&g).expect("gcd divides");
            let d = self.den.div_exact(&g).expect("gcd divides");
            if n.has_nonnegative_coeffs() && d.has_nonnegative_coeffs() {
                return Self::raw(self.gens.clone(), n, d).normalize_constant();
            }
        }
        let m: Vec<u32> = {
            let a = self.num.min_exponents().unwrap();
            let b = self.den.min_exponents().unwrap();
            a.iter().zip(&b).map(|(x, y)| *x.min(y)).collect()
        };
        let mono = MPoly::monomial(m, Rational::one());
        Self::raw(
            self.gens.clone(),
            self.num.div_exact(&mono).unwrap(),
            self.den.div_exact(&mono).unwrap(),
        )
        .normalize_constant()
    }

    // puts the rational content into the numerator, leaving a primitive denominator
    fn normalize_constant(self) -> Self {
        let c = self.den.rational_content();
        if c.is_one() {
            return self;
        }
        let inv = c.recip();
        Self::raw(self.gens, self.num.scale(&inv), self.den.scale(&inv))
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        RatFunc::new(self.num.clone(), self.den.clone())
    }

    /// Lifts into a ring with more variables; generator `i` goes to slot `i`.
    pub fn embed_ratfunc(&self, nvars: usize) -> RatFunc {
        let map: Vec<usize> = (0..self.gens.len()).collect();
        RatFunc::new(self.num.embed(nvars, &map), self.den.embed(nvars, &map))
    }

    /// True when the element is a polynomial (denominator a constant).
    pub fn as_poly(&self) -> Option<MPoly> {
        let c = self.den.constant_value()?;
        Some(self.num.scale(&c.recip()))
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn display(&self) -> String {
        let r = self.to_ratfunc();
        r.display_with(self.gens.names())
    }
}

/// `a.num * b.den == b.num * a.den`.
pub fn sf_eq(a: &SubtractionFreeElem, b: &SubtractionFreeElem) -> bool {
    &a.num * &b.den == &b.num * &a.den
}

impl PartialEq for SubtractionFreeElem {
    fn eq(&self, other: &Self) -> bool {
        sf_eq(self, other)
    }
}

impl fmt::Debug for SubtractionFreeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

/// A Laurent monomial in `Trop(y, z)`, stored as its exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TropElem {
    pub exponents: Vec<i64>,
}

impl TropElem {
    pub fn one(len: usize) -> Self {
        TropElem {
            exponents: vec![0; len],
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        TropElem {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn inv(&self) -> Self {
        TropElem {
            exponents: self.exponents.iter().map(|a| -a).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        TropElem {
            exponents: self.exponents.iter().map(|a| a * k).collect(),
        }
    }

    /// Tropical sum: componentwise minimum.
    pub fn sum(&self, other: &Self) -> Self {
        TropElem {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| *a.min(b))
                .collect(),
        }
    }
}

/// Minimum exponents of the numerator minus those of the denominator.
pub fn tropicalize(f: &SubtractionFreeElem) -> TropElem {
    let a = f.num.min_exponents().expect("nonzero numerator");
    let b = f.den.min_exponents().expect("nonzero denominator");
    TropElem {
        exponents: a.iter().zip(&b).map(|(x, y)| *x as i64 - *y as i64).collect(),
    }
}

/// Evaluates under the semifield homomorphism sending each generator to a
/// strictly positive rational.
pub fn eval_phi(f: &SubtractionFreeElem, assign: &[Rational]) -> Result<Rational, SemifieldError> {
    let gens = &f.gens;
    if assign.len() != gens.len() {
        return Err(SemifieldError::AssignmentLength {
            expected: gens.len(),
            got: assign.len(),
        });
    }
    for (v, name) in assign.iter().zip(gens.names()) {
        if !v.is_positive() {
            return Err(SemifieldError::NonPositiveAssignment(name.clone()));
        }
    }
    Ok(f.num.eval(assign) / f.den.eval(assign))
}

/// Evaluation that also admits zero values (used for explicitly requested
/// degenerate `z` images). The denominator must stay positive.
pub fn eval_phi_nonnegative(
    f: &SubtractionFreeElem,
    assign: &[Rational],
) -> Result<Rational, SemifieldError> {
    for (v, name) in assign.iter().zip(f.gens.names()) {
        if v.is_negative() {
            return Err(SemifieldError::NonPositiveAssignment(name.clone()));
        }
    }
    let d = f.den.eval(assign);
    if d.is_zero() {
        return Err(SemifieldError::NonPositiveAssignment("denominator".into()));
    }
    Ok(f.num.eval(assign) / d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational_from_int;

    fn b2_gens() -> Arc<Generators> {
        Arc::new(Generators::with_z_names(
            &[2, 1],
            Some(&[vec!["alpha".to_string()], vec![]]),
        ))
    }

    #[test]
    fn generator_layout() {
        let g = b2_gens();
        assert_eq!(g.len(), 3);
        assert_eq!(g.z_index(0, 1), Some(2));
        assert_eq!(g.z_index(0, 0), None);
        assert_eq!(g.z_index(0, 2), None);
        assert_eq!(g.z_index(1, 1), None);
        assert_eq!(g.names()[2], "alpha");
    }

    #[test]
    fn equality_examples() {
        let g = b2_gens();
        let one = SubtractionFreeElem::one(g.clone());
        let y = SubtractionFreeElem::y(g.clone(), 0);
        let opy = one.add(&y);
        assert!(sf_eq(&opy.div(&opy), &one));
        let sq = opy.mul(&opy);
        let expanded = one
            .add(&y.add(&y))
            .add(&y.mul(&y));
        assert!(sf_eq(&sq, &expanded));
        assert!(!sf_eq(&y, &opy));
    }

    #[test]
    fn tropicalize_examples() {
        let g = b2_gens();
        let one = SubtractionFreeElem::one(g.clone());
        let y1 = SubtractionFreeElem::y(g.clone(), 0);
        let y2 = SubtractionFreeElem::y(g.clone(), 1);
        let alpha = SubtractionFreeElem::z(g.clone(), 0, 1);
        assert_eq!(tropicalize(&y1).exponents, vec![1, 0, 0]);
        let p = one.add(&alpha.mul(&y1)).add(&y1.mul(&y1));
        assert_eq!(tropicalize(&y2.mul(&p)).exponents, vec![0, 1, 0]);
        let q = one.add(&y2).add(&alpha.mul(&y1).mul(&y2)).add(&y1.mul(&y1).mul(&y2));
        assert_eq!(tropicalize(&y1.inv().mul(&q)).exponents, vec![-1, 0, 0]);
    }

    #[test]
    fn eval_examples() {
        let g = b2_gens();
        let one = SubtractionFreeElem::one(g.clone());
        let y1 = SubtractionFreeElem::y(g.clone(), 0);
        let alpha = SubtractionFreeElem::z(g.clone(), 0, 1);
        let ones = vec![rational_from_int(1); 3];
        assert_eq!(eval_phi(&one.add(&y1), &ones).unwrap(), rational_from_int(2));
        assert_eq!(
            eval_phi(&y1.div(&one.add(&y1)), &ones).unwrap(),
            Rational::new(1.into(), 2.into())
        );
        let p = one.add(&alpha.mul(&y1)).add(&y1.mul(&y1));
        assert_eq!(eval_phi(&p, &ones).unwrap(), rational_from_int(3));
        let bad = vec![rational_from_int(1), rational_from_int(0), rational_from_int(1)];
        assert!(matches!(
            eval_phi(&p, &bad),
            Err(SemifieldError::NonPositiveAssignment(_))
        ));
    }

    #[test]
    fn rejects_negative_coefficients() {
        let g = b2_gens();
        let p = &MPoly::one(3) - &MPoly::var(3, 0);
        assert!(SubtractionFreeElem::from_poly(g, p).is_err());
    }

    #[test]
    fn simplify_keeps_value() {
        let g = b2_gens();
        let one = SubtractionFreeElem::one(g.clone());
        let y1 = SubtractionFreeElem::y(g.clone(), 0);
        let opy = one.add(&y1);
        let f = y1.mul(&opy).mul(&opy).div(&opy.mul(&y1.mul(&y1)));
        let s = f.simplified();
        assert!(sf_eq(&s, &f));
        assert_eq!(s.num(), opy.num());
        assert_eq!(s.den(), y1.num());
    }
}
