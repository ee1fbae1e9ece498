//! Rational functions in a formal variable `q` whose numerators may also
//! depend polynomially on extra commuting symbols.
//!
//! The numerator is an [`MPoly`] with `q` as variable 0; the denominator is a
//! monic univariate polynomial in `q`. Values are kept reduced, so equality
//! is structural.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::mpoly::MPoly;
use super::upoly::UPoly;
use super::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct QRat {
    num: MPoly,
    den: UPoly,
}

impl QRat {
    /// `nvars` counts `q` plus the extra symbols.
    pub fn zero(nvars: usize) -> Self {
        QRat {
            num: MPoly::zero(nvars),
            den: UPoly::one(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(MPoly::one(nvars))
    }

    pub fn from_poly(num: MPoly) -> Self {
        QRat {
            num,
            den: UPoly::one(),
        }
    }

    pub fn new(num: MPoly, den: UPoly) -> Self {
        assert!(!den.is_zero(), "QRat with zero denominator");
        let mut r = QRat { num, den };
        r.reduce();
        r
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(nvars: usize, k: i64) -> Self {
        Self::one(nvars).mul_q_pow(k)
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_constant() && self.num.is_one()
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = UPoly::one();
            return;
        }
        let lc = self.den.leading_coeff();
        if !lc.is_one() {
            self.num = self.num.scale(&lc.recip());
            self.den = self.den.monic();
        }
        if self.den.is_constant() {
            return;
        }
        // gcd of the denominator with every q-coefficient polynomial of the numerator
        let mut g = self.den.clone();
        for c in q_coefficients(&self.num).values() {
            g = g.gcd(c);
            if g.is_constant() {
                return;
            }
        }
        let gm = g.to_mpoly(self.nvars(), 0);
        self.num = self.num.div_exact(&gm).expect("common q-factor divides numerator");
        self.den = self.den.div_exact(&g).expect("gcd divides denominator");
    }

    pub fn mul(&self, other: &QRat) -> QRat {
        if self.is_zero() || other.is_zero() {
            return QRat::zero(self.nvars());
        }
        QRat::new(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn add(&self, other: &QRat) -> QRat {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let n = self.nvars();
        let g = self.den.gcd(&other.den);
        let a = other.den.div_exact(&g).unwrap();
        let b = self.den.div_exact(&g).unwrap();
        let num = &(&self.num * &a.to_mpoly(n, 0)) + &(&other.num * &b.to_mpoly(n, 0));
        QRat::new(num, &self.den * &a)
    }

    pub fn neg(&self) -> QRat {
        QRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &QRat) -> QRat {
        self.add(&other.neg())
    }

    /// Divides by a nonzero polynomial in `q` alone.
    pub fn div_upoly(&self, d: &UPoly) -> QRat {
        QRat::new(self.num.clone(), &self.den * d)
    }

    /// Multiplies by `q^k`.
    pub fn mul_q_pow(&self, k: i64) -> QRat {
        if k >= 0 {
            let mut e = vec![0; self.nvars()];
            e[0] = k as u32;
            // a denominator with a factor q may cancel against the shift
            QRat::new(self.num.shift(&e), self.den.clone())
        } else {
            let qk = UPoly::monomial((-k) as usize, Rational::one());
            QRat::new(self.num.clone(), &self.den * &qk)
        }
    }

    pub fn scale(&self, c: &Rational) -> QRat {
        if c.is_zero() {
            return QRat::zero(self.nvars());
        }
        QRat {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Substitutes rationals for `q` and every extra symbol.
    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let d = self.den.eval(&point[0]);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / d)
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let n = self.num.display_with(names);
        if self.den.is_constant() {
            return n;
        }
        let d = self
            .den
            .to_mpoly(self.nvars(), 0)
            .display_with(names);
        format!("({n})/({d})")
    }
}

/// Groups the numerator by monomials in the non-`q` variables; each value is
/// the corresponding polynomial in `q`.
fn q_coefficients(p: &MPoly) -> BTreeMap<Vec<u32>, UPoly> {
    let mut groups: BTreeMap<Vec<u32>, Vec<Rational>> = BTreeMap::new();
    for (e, c) in p.terms() {
        let key = e[1..].to_vec();
        let k = e[0] as usize;
        let v = groups.entry(key).or_default();
        if v.len() <= k {
            v.resize(k + 1, Rational::zero());
        }
        v[k] = c.clone();
    }
    groups.into_iter().map(|(k, v)| (k, UPoly::new(v))).collect()
}

impl fmt::Debug for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut names = vec!["q".to_string()];
        names.extend((1..self.nvars()).map(|i| format!("z{i}")));
        write!(f, "{}", self.display_with(&names))
    }
}
