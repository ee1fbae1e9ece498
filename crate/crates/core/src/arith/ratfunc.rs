//! Rational functions over the rationals.

use std::fmt;

use num_traits::{One, Zero};

use super::gcd::mpoly_gcd;
use super::mpoly::MPoly;
use super::Rational;

/// A quotient `num / den` kept in lowest terms, with `den` primitive and of
/// positive leading coefficient.
#[derive(Clone)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl RatFunc {
    pub fn new(num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        assert_eq!(num.nvars(), den.nvars());
        let g = mpoly_gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Self::from_coprime(num, den)
    }

    /// Skips the gcd: the caller guarantees `num` and `den` are coprime.
    fn from_coprime(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            let n = num.nvars();
            return RatFunc {
                num,
                den: MPoly::one(n),
            };
        }
        let (c, den) = den.normalize();
        RatFunc {
            num: num.scale(&c.recip()),
            den,
        }
    }

    pub fn from_poly(p: MPoly) -> Self {
        let n = p.nvars();
        RatFunc {
            num: p,
            den: MPoly::one(n),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(MPoly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(MPoly::one(nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_poly(MPoly::var(nvars, i))
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_poly(MPoly::constant(nvars, c))
    }

    /// `prod x_i^{e_i}` with signed exponents.
    pub fn laurent_monomial(nvars: usize, exps: &[i64]) -> Self {
        let mut num = vec![0u32; nvars];
        let mut den = vec![0u32; nvars];
        for (i, &e) in exps.iter().enumerate() {
            if e >= 0 {
                num[i] = e as u32;
            } else {
                den[i] = (-e) as u32;
            }
        }
        RatFunc {
            num: MPoly::monomial(num, Rational::one()),
            den: MPoly::monomial(den, Rational::one()),
        }
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// Polynomial value, if the denominator is a constant.
    pub fn as_poly(&self) -> Option<MPoly> {
        let c = self.den.constant_value()?;
        Some(self.num.scale(&c.recip()))
    }

    pub fn inv(&self) -> RatFunc {
        assert!(!self.is_zero(), "inverse of zero");
        Self::from_coprime(self.den.clone(), self.num.clone())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        let g1 = mpoly_gcd(&self.num, &other.den);
        let g2 = mpoly_gcd(&other.num, &self.den);
        let a = self.num.div_exact(&g1).unwrap();
        let d = other.den.div_exact(&g1).unwrap();
        let c = other.num.div_exact(&g2).unwrap();
        let b = self.den.div_exact(&g2).unwrap();
        Self::from_coprime(&a * &c, &b * &d)
    }

    pub fn div(&self, other: &RatFunc) -> RatFunc {
        self.mul(&other.inv())
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let g = mpoly_gcd(&self.den, &other.den);
        let b1 = self.den.div_exact(&g).unwrap();
        let d1 = other.den.div_exact(&g).unwrap();
        let num = &(&self.num * &d1) + &(&other.num * &b1);
        if num.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        let h = mpoly_gcd(&num, &g);
        let num = num.div_exact(&h).unwrap();
        let g = g.div_exact(&h).unwrap();
        Self::from_coprime(num, &(&g * &b1) * &d1)
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: i64) -> RatFunc {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        RatFunc {
            num: base.num.pow(k),
            den: base.den.pow(k),
        }
    }

    /// Equality by cross-multiplication.
    pub fn equals(&self, other: &RatFunc) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / d)
    }

    /// True when the denominator is a single monomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_monomial()
    }

    /// Substitutes `value` for variable `v`.
    pub fn substitute_const(&self, v: usize, value: &Rational) -> Option<RatFunc> {
        let den = self.den.substitute_const(v, value);
        if den.is_zero() {
            return None;
        }
        Some(RatFunc::new(self.num.substitute_const(v, value), den))
    }

    pub fn embed(&self, nvars: usize, map: &[usize]) -> RatFunc {
        RatFunc {
            num: self.num.embed(nvars, map),
            den: self.den.embed(nvars, map),
        }
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let n = self.num.display_with(names);
        if self.den.is_one() {
            return n;
        }
        let wrap = |s: String, p: &MPoly| {
            if p.num_terms() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        format!(
            "{}/{}",
            wrap(n, &self.num),
            wrap(self.den.display_with(names), &self.den)
        )
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn lowest_terms() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let one = MPoly::one(2);
        let f = RatFunc::new(&(&x * &x) - &one, &(&x - &one) * &y);
        assert_eq!(f.num(), &(&x + &one));
        assert_eq!(f.den(), &y);
        assert!(f.den().leading_coeff().is_positive());
    }

    #[test]
    fn field_operations() {
        let x = RatFunc::var(1, 0);
        let one = RatFunc::one(1);
        let a = one.add(&x).inv();
        let b = one.sub(&x).inv();
        // 1/(1+x) + 1/(1-x) = 2/(1-x^2)
        let lhs = a.add(&b);
        let rhs = RatFunc::constant(1, Rational::from_integer(2.into()))
            .div(&one.sub(&x.mul(&x)));
        assert_eq!(lhs, rhs);
        assert!(a.mul(&a.inv()).is_one());
        assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn laurent_monomials() {
        let m = RatFunc::laurent_monomial(2, &[-2, 1]);
        assert!(m.is_laurent());
        assert_eq!(m.mul(&RatFunc::laurent_monomial(2, &[2, 0])), RatFunc::var(2, 1));
    }
}
