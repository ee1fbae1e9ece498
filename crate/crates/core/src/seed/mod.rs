//! Seeds of generalized cluster algebras and their mutations.
//!
//! A seed carries an exchange matrix `B`, cluster variables `x` in the
//! rational function field over `(y, z, x)`, coefficients `y` in the
//! universal semifield `Q+(y, z)` and, for each direction `i`, the tuple of
//! exchange coefficients `z_{i,0..d_i}` with both endpoints equal to 1.
//!
//! Indices are 0-based throughout the library.

pub mod symmetrizer;
pub mod trajectory;

use std::sync::Arc;

use thiserror::Error;

use crate::arith::{MPoly, RatFunc, Rational};
use crate::semifield::{sf_eq, Generators, SubtractionFreeElem};

pub use symmetrizer::{skew_symmetrizer, SymmetrizerData};
pub use trajectory::{check_sigma_period, run_sequence, MutationTrajectory, PeriodReport, SigmaSpec};

pub type IntMatrix = Vec<Vec<i64>>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeedError {
    #[error("exchange matrix is not square")]
    NotSquare,
    #[error("not skew-symmetrizable")]
    NotSkewSymmetrizable,
    #[error("mutation index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("degree list has length {got}, expected {expected}")]
    DegreeCount { expected: usize, got: usize },
    #[error("mutation degrees must be positive")]
    ZeroDegree,
    #[error("permutation search is limited to rank <= 8, got {0}")]
    RankTooLargeForSearch(usize),
    #[error("invalid permutation")]
    InvalidPermutation,
    #[error("too many z values for direction {0}")]
    ZCount(usize),
    #[error("z values for direction {0} must be positive")]
    NonPositiveZ(usize),
}

#[inline]
pub(crate) fn pos(a: i64) -> i64 {
    a.max(0)
}

/// Variable layout for cluster variables: the semifield generators come
/// first, followed by `x_1, ..., x_n`.
pub fn ambient_nvars(gens: &Generators) -> usize {
    gens.len() + gens.rank()
}

pub fn x_slot(gens: &Generators, i: usize) -> usize {
    gens.len() + i
}

pub fn ambient_names(gens: &Generators) -> Vec<String> {
    let mut names = gens.names().to_vec();
    names.extend((1..=gens.rank()).map(|i| format!("x{i}")));
    names
}

#[derive(Clone, Debug)]
pub struct GCASeed {
    gens: Arc<Generators>,
    pub b: IntMatrix,
    pub x: Vec<RatFunc>,
    pub y: Vec<SubtractionFreeElem>,
    /// `z[i][s]` for `s = 0..=d_i`.
    pub z: Vec<Vec<SubtractionFreeElem>>,
}

impl GCASeed {
    /// The initial seed: `x`, `y` and `z` are the free generators.
    pub fn initial(b: IntMatrix, gens: Arc<Generators>) -> Result<Self, SeedError> {
        let n = b.len();
        if b.iter().any(|row| row.len() != n) {
            return Err(SeedError::NotSquare);
        }
        if gens.rank() != n {
            return Err(SeedError::DegreeCount {
                expected: n,
                got: gens.rank(),
            });
        }
        if gens.degrees().contains(&0) {
            return Err(SeedError::ZeroDegree);
        }
        skew_symmetrizer(&b)?;
        let nv = ambient_nvars(&gens);
        let x = (0..n).map(|i| RatFunc::var(nv, x_slot(&gens, i))).collect();
        let y = (0..n).map(|i| SubtractionFreeElem::y(gens.clone(), i)).collect();
        let z = (0..n)
            .map(|i| {
                (0..=gens.degrees()[i])
                    .map(|s| SubtractionFreeElem::z(gens.clone(), i, s))
                    .collect()
            })
            .collect();
        Ok(GCASeed { gens, b, x, y, z })
    }

    /// The initial seed with some interior `z_{i,s}` fixed to positive
    /// constants; `values[i][s-1] = None` keeps the generator.
    pub fn with_z_values(
        b: IntMatrix,
        gens: Arc<Generators>,
        values: &[Vec<Option<Rational>>],
    ) -> Result<Self, SeedError> {
        let mut seed = Self::initial(b, gens.clone())?;
        for (i, row) in values.iter().enumerate().take(seed.rank()) {
            if row.len() + 2 > seed.z[i].len() {
                return Err(SeedError::ZCount(i));
            }
            for (s, v) in row.iter().enumerate() {
                if let Some(c) = v {
                    seed.z[i][s + 1] = SubtractionFreeElem::constant(gens.clone(), c.clone())
                        .map_err(|_| SeedError::NonPositiveZ(i))?;
                }
            }
        }
        Ok(seed)
    }

    pub fn rank(&self) -> usize {
        self.b.len()
    }

    pub fn degrees(&self) -> &[u32] {
        self.gens.degrees()
    }

    pub fn generators(&self) -> &Arc<Generators> {
        &self.gens
    }

    /// `hat y_i = y_i prod_j x_j^{b_ji}`, with the seed's own `x_j`.
    pub fn yhat_vars(&self) -> Vec<RatFunc> {
        (0..self.rank()).map(|i| self.yhat(i)).collect()
    }

    fn yhat(&self, i: usize) -> RatFunc {
        let nv = ambient_nvars(&self.gens);
        let mut acc = self.y[i].embed_ratfunc(nv);
        for j in 0..self.rank() {
            if self.b[j][i] != 0 {
                acc = acc.mul(&self.x[j].pow(self.b[j][i]));
            }
        }
        acc
    }

    /// Mutation in direction `k`.
    pub fn mutate(&self, k: usize) -> Result<GCASeed, SeedError> {
        let n = self.rank();
        if k >= n {
            return Err(SeedError::IndexOutOfRange { index: k, rank: n });
        }
        let dk = self.degrees()[k] as i64;
        let b = &self.b;

        let b_new = mutate_matrix(b, k, dk);

        let p_y = exchange_poly_sf(&self.z[k], &self.y[k]);
        // y_k^{d_k} / P(y_k), reduced once so its powers never carry a common factor
        let ratio = self.y[k].pow(dk).div(&p_y).simplified();
        let y_new: Vec<SubtractionFreeElem> = (0..n)
            .map(|i| {
                let bki = b[k][i];
                if i == k {
                    self.y[k].inv()
                } else if bki == 0 {
                    self.y[i].clone()
                } else if bki > 0 {
                    self.y[i].mul(&ratio.pow(bki)).simplified()
                } else {
                    self.y[i].mul(&p_y.pow(-bki)).simplified()
                }
            })
            .collect();

        let nv = ambient_nvars(&self.gens);
        let z_polys = z_as_ambient_polys(&self.z[k], nv);
        let p_yhat = exchange_poly_ratfunc(&z_polys, &self.yhat(k));
        let mut x_new = self.x.clone();
        let mut xk = self.x[k].inv().mul(&p_yhat);
        for j in 0..n {
            let e = pos(-b[j][k]) * dk;
            if e > 0 {
                xk = xk.mul(&self.x[j].pow(e));
            }
        }
        x_new[k] = xk.div(&p_y.embed_ratfunc(nv));

        let mut z_new = self.z.clone();
        z_new[k].reverse();

        Ok(GCASeed {
            gens: self.gens.clone(),
            b: b_new,
            x: x_new,
            y: y_new,
            z: z_new,
        })
    }

    /// Exact equality of every component.
    pub fn same_as(&self, other: &GCASeed) -> bool {
        self.b == other.b
            && self.x.iter().zip(&other.x).all(|(a, b)| a.equals(b))
            && self.y.iter().zip(&other.y).all(|(a, b)| sf_eq(a, b))
            && self
                .z
                .iter()
                .zip(&other.z)
                .all(|(a, b)| a.iter().zip(b).all(|(p, q)| sf_eq(p, q)))
    }
}

/// Matrix mutation: sign flip in row/column `k`, elsewhere
/// `b_ij + d_k([-b_ik]_+ b_kj + b_ik [b_kj]_+)`.
pub fn mutate_matrix(b: &IntMatrix, k: usize, dk: i64) -> IntMatrix {
    let n = b.len();
    let mut out = b.clone();
    for i in 0..n {
        for j in 0..n {
            out[i][j] = if i == k || j == k {
                -b[i][j]
            } else {
                b[i][j] + dk * (pos(-b[i][k]) * b[k][j] + b[i][k] * pos(b[k][j]))
            };
        }
    }
    out
}

/// `P_{d,z}(v) = sum_s z_s v^s` in the universal semifield.
pub fn exchange_poly_sf(z: &[SubtractionFreeElem], v: &SubtractionFreeElem) -> SubtractionFreeElem {
    let d = z.len() - 1;
    let polys: Option<Vec<MPoly>> = z.iter().map(|c| c.as_poly()).collect();
    match polys {
        Some(zp) => {
            let (num, den) = exchange_poly_parts(&zp, v.num(), v.den());
            SubtractionFreeElem::new(v.generators().clone(), num, den)
                .expect("exchange polynomial of a subtraction-free value is subtraction-free")
                .simplified()
        }
        None => {
            let mut acc = z[d].clone();
            for s in (0..d).rev() {
                acc = acc.mul(v).add(&z[s]);
            }
            acc.simplified()
        }
    }
}

/// Numerator and denominator of `sum_s z_s (N/D)^s = (sum_s z_s N^s D^{d-s}) / D^d`.
pub(crate) fn exchange_poly_parts(z: &[MPoly], num: &MPoly, den: &MPoly) -> (MPoly, MPoly) {
    let d = z.len() - 1;
    let mut npow = vec![MPoly::one(num.nvars())];
    let mut dpow = vec![MPoly::one(num.nvars())];
    for _ in 0..d {
        npow.push(npow.last().unwrap() * num);
        dpow.push(dpow.last().unwrap() * den);
    }
    let mut top = MPoly::zero(num.nvars());
    for (s, zs) in z.iter().enumerate() {
        if zs.is_zero() {
            continue;
        }
        top = &top + &(&(zs * &npow[s]) * &dpow[d - s]);
    }
    (top, dpow[d].clone())
}

/// `P_{d,z}(v)` for a rational function `v`; `z` are polynomials in the same ring.
pub fn exchange_poly_ratfunc(z: &[MPoly], v: &RatFunc) -> RatFunc {
    let (num, den) = exchange_poly_parts(z, v.num(), v.den());
    RatFunc::new(num, den)
}

pub(crate) fn z_as_ambient_polys(z: &[SubtractionFreeElem], nv: usize) -> Vec<MPoly> {
    z.iter()
        .map(|c| {
            let r = c.embed_ratfunc(nv);
            r.as_poly().expect("z entries are polynomials")
        })
        .collect()
}
