//! F-polynomials: recursion, separation formula and periodicity.

use num_traits::One;
use thiserror::Error;

use crate::arith::{MPoly, RatFunc, Rational};
use crate::seed::{
    ambient_nvars, exchange_poly_parts, exchange_poly_ratfunc, pos, x_slot, z_as_ambient_polys,
    MutationTrajectory,
};
use crate::semifield::{sf_eq, SubtractionFreeElem};
use crate::tropical::CMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FPolyError {
    #[error("F_{i}[{t}] is not a polynomial: the recursion does not divide exactly", i = .i + 1, t = .t + 1)]
    NotPolynomial { t: usize, i: usize },
    #[error("F_{i}[{t}] has constant term different from 1", i = .i + 1, t = .t + 1)]
    ConstantTerm { t: usize, i: usize },
    #[error("exchange coefficients of direction {k} are not polynomials", k = .k + 1)]
    NonPolynomialZ { k: usize },
}

/// `f[t][i] = F_i[t+1]` as a polynomial in the semifield generators `(y, z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FPolyTable {
    pub f: Vec<Vec<MPoly>>,
}

impl FPolyTable {
    pub fn get(&self, t: usize, i: usize) -> &MPoly {
        &self.f[t][i]
    }

    pub fn last(&self) -> &[MPoly] {
        self.f.last().unwrap()
    }
}

fn y_monomial(nvars: usize, exps: impl Iterator<Item = (usize, u32)>) -> MPoly {
    let mut e = vec![0u32; nvars];
    for (j, k) in exps {
        e[j] += k;
    }
    MPoly::monomial(e, Rational::one())
}

/// Runs the recursion `F_i[1] = 1`,
/// `F_k[t+1] = F_k[t]^{-1} D^d P_{d, z_k[t]}(N / D)` with
/// `N = prod y_j^{[c_jk]_+} F_j^{[b_jk]_+}` and `D = prod y_j^{[-c_jk]_+} F_j^{[-b_jk]_+}`,
/// which equals the published form since `y^c F^b = N / D`.
pub fn f_polynomials(traj: &MutationTrajectory, cs: &[CMatrix]) -> Result<FPolyTable, FPolyError> {
    let n = traj.rank();
    let nv = traj.initial().generators().len();
    let mut table = vec![vec![MPoly::one(nv); n]];
    for (t, &k) in traj.ks.iter().enumerate() {
        let seed = &traj.seeds[t];
        let cur = &table[t];
        let c = &cs[t].0;
        let b = &seed.b;
        let mut num = y_monomial(nv, (0..n).map(|j| (j, pos(c[j][k]) as u32)));
        let mut den = y_monomial(nv, (0..n).map(|j| (j, pos(-c[j][k]) as u32)));
        for j in 0..n {
            if b[j][k] > 0 {
                num = &num * &cur[j].pow(b[j][k] as u32);
            } else if b[j][k] < 0 {
                den = &den * &cur[j].pow((-b[j][k]) as u32);
            }
        }
        let z: Vec<MPoly> = seed.z[k]
            .iter()
            .map(|e| e.as_poly())
            .collect::<Option<_>>()
            .ok_or(FPolyError::NonPolynomialZ { k })?;
        let (top, _) = exchange_poly_parts(&z, &num, &den);
        let fk = top
            .div_exact(&cur[k])
            .ok_or(FPolyError::NotPolynomial { t: t + 1, i: k })?;
        if fk.constant_term() != Rational::one() {
            return Err(FPolyError::ConstantTerm { t: t + 1, i: k });
        }
        let mut next = cur.clone();
        next[k] = fk;
        table.push(next);
    }
    Ok(FPolyTable { f: table })
}

/// The first `(t, i)` (0-based) where the separation formula fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeparationFailure {
    pub t: usize,
    pub i: usize,
}

/// Checks `y_i[t] = prod_j y_j^{c_ji[t]} F_j[t]^{b_ji[t]}` for every `i, t`.
pub fn check_separation(
    traj: &MutationTrajectory,
    cs: &[CMatrix],
    f: &FPolyTable,
) -> Result<(), SeparationFailure> {
    let n = traj.rank();
    let gens = traj.initial().generators();
    for (t, seed) in traj.seeds.iter().enumerate() {
        let fs: Vec<SubtractionFreeElem> = f.f[t]
            .iter()
            .map(|p| {
                SubtractionFreeElem::from_poly(gens.clone(), p.clone())
                    .expect("F-polynomials have nonnegative coefficients")
            })
            .collect();
        for i in 0..n {
            let mut exps = vec![0i64; gens.len()];
            for (j, e) in exps.iter_mut().enumerate().take(n) {
                *e = cs[t].0[j][i];
            }
            let mut rhs = SubtractionFreeElem::monomial(gens.clone(), &exps);
            for (j, fj) in fs.iter().enumerate() {
                if seed.b[j][i] != 0 {
                    rhs = rhs.mul(&fj.pow(seed.b[j][i]));
                }
            }
            if !sf_eq(&seed.y[i], &rhs) {
                return Err(SeparationFailure { t, i });
            }
        }
    }
    Ok(())
}

/// True iff every `F_i[m+1]` equals 1; for a sigma-periodic trajectory
/// this is `F_{sigma(i)}[m+1] = F_i[1]`.
pub fn check_f_periodicity(f: &FPolyTable) -> bool {
    f.last().iter().all(|p| p.is_one())
}

/// x-variables along the trajectory with every y-variable entering the
/// exchange relation replaced by its tropicalization `y^{c}`. Values live in
/// the ambient ring of the trajectory (generators, then `x_1..x_n`).
pub fn tropical_x_sequence(traj: &MutationTrajectory, cs: &[CMatrix]) -> Vec<Vec<RatFunc>> {
    let n = traj.rank();
    let gens = traj.initial().generators().clone();
    let nv = ambient_nvars(&gens);
    let mut out = vec![traj.initial().x.clone()];
    for (t, &k) in traj.ks.iter().enumerate() {
        let seed = &traj.seeds[t];
        let cur = &out[t];
        let dk = seed.degrees()[k] as i64;
        let c = &cs[t].0;
        let mut yexp = vec![0i64; nv];
        for j in 0..n {
            yexp[j] = c[j][k];
        }
        let mut yhat = RatFunc::laurent_monomial(nv, &yexp);
        for j in 0..n {
            if seed.b[j][k] != 0 {
                yhat = yhat.mul(&cur[j].pow(seed.b[j][k]));
            }
        }
        let z = z_as_ambient_polys(&seed.z[k], nv);
        let mut xk = cur[k].inv().mul(&exchange_poly_ratfunc(&z, &yhat));
        let mut trop_p_inv = vec![0i64; nv];
        for j in 0..n {
            let e = pos(-seed.b[j][k]) * dk;
            if e > 0 {
                xk = xk.mul(&cur[j].pow(e));
            }
            trop_p_inv[j] = dk * pos(-c[j][k]);
        }
        xk = xk.mul(&RatFunc::laurent_monomial(nv, &trop_p_inv));
        let mut next = cur.clone();
        next[k] = xk;
        out.push(next);
    }
    out
}

/// Specializes `x_1 = ... = x_n = 1`, returning a polynomial in `(y, z)`;
/// `None` if the result is not a polynomial.
pub fn specialize_x_to_one(traj: &MutationTrajectory, x: &RatFunc) -> Option<MPoly> {
    let gens = traj.initial().generators();
    let mut r = x.clone();
    for i in 0..traj.rank() {
        r = r.substitute_const(x_slot(gens, i), &Rational::one())?;
    }
    let p = r.as_poly()?;
    let m = gens.len();
    Some(MPoly::from_terms(
        m,
        p.terms().map(|(e, c)| (e[..m].to_vec(), c.clone())),
    ))
}

/// F-polynomials obtained from the tropical-coefficient x-variables by
/// setting `x = 1`; an independent route to the recursion's output.
pub fn f_polynomials_by_specialization(
    traj: &MutationTrajectory,
    cs: &[CMatrix],
) -> Option<FPolyTable> {
    let xs = tropical_x_sequence(traj, cs);
    let f = xs
        .iter()
        .map(|row| row.iter().map(|x| specialize_x_to_one(traj, x)).collect())
        .collect::<Option<Vec<Vec<MPoly>>>>()?;
    Some(FPolyTable { f })
}
