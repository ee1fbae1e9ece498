//! Exact zero tests in the exterior square of the multiplicative group of
//! rational functions.
//!
//! Every factor is expanded over a common coprime basis (polynomials and
//! integer primes), so `f ⊗ g` becomes an integer matrix. The exterior
//! square is `G ⊗ G` modulo all `x ⊗ x`; a class vanishes exactly when the
//! coefficient matrix is symmetric off the diagonal.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{coprime_basis_fractions, ArithError, MPoly};
use crate::fpoly::FPolyTable;
use crate::seed::{exchange_poly_sf, MutationTrajectory, SymmetrizerData};
use crate::semifield::SubtractionFreeElem;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WedgeError {
    #[error("factorization failed: {0}")]
    Factor(#[from] ArithError),
}

/// `sum a_uv (basis_u ⊗ basis_v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorSquareElem {
    pub basis: Vec<MPoly>,
    pub coeffs: Vec<Vec<i64>>,
}

impl TensorSquareElem {
    /// True iff `a_uv = a_vu` for all `u != v`.
    pub fn is_zero_in_wedge(&self) -> bool {
        self.antisymmetric_part().is_empty()
    }

    /// True iff every coefficient vanishes (zero already in `G ⊗ G`).
    pub fn is_zero_tensor(&self) -> bool {
        self.coeffs.iter().flatten().all(|&a| a == 0)
    }

    /// Nonzero `(u, v, a_uv - a_vu)` with `u < v`.
    pub fn antisymmetric_part(&self) -> Vec<(usize, usize, i64)> {
        let n = self.basis.len();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let a = self.coeffs[u][v] - self.coeffs[v][u];
                if a != 0 {
                    out.push((u, v, a));
                }
            }
        }
        out
    }

    /// Human-readable `sum c (f ∧ g)` over the antisymmetric part.
    pub fn display_wedge(&self, names: &[String]) -> String {
        let parts = self.antisymmetric_part();
        if parts.is_empty() {
            return "0".into();
        }
        parts
            .iter()
            .map(|&(u, v, a)| {
                format!(
                    "{a}*({})∧({})",
                    self.basis[u].display_with(names),
                    self.basis[v].display_with(names)
                )
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

pub fn is_zero_in_wedge(e: &TensorSquareElem) -> bool {
    e.is_zero_in_wedge()
}

/// `sum weight * (f ⊗ g)` over a coprime basis of every factor involved.
pub fn wedge_sum(
    terms: &[(i64, SubtractionFreeElem, SubtractionFreeElem)],
) -> Result<TensorSquareElem, WedgeError> {
    let mut fracs: Vec<(MPoly, MPoly)> = Vec::with_capacity(2 * terms.len());
    for (_, f, g) in terms {
        fracs.push((f.num().clone(), f.den().clone()));
        fracs.push((g.num().clone(), g.den().clone()));
    }
    let cb = coprime_basis_fractions(&fracs)?;
    let n = cb.basis.len();
    let mut coeffs = vec![vec![0i64; n]; n];
    for (idx, (w, _, _)) in terms.iter().enumerate() {
        let ef = &cb.exps[2 * idx];
        let eg = &cb.exps[2 * idx + 1];
        for (u, &a) in ef.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (v, &b) in eg.iter().enumerate() {
                coeffs[u][v] += w * a * b;
            }
        }
    }
    Ok(TensorSquareElem {
        basis: cb.basis,
        coeffs,
    })
}

/// The summands `r̃_{k_t} (y_{k_t}[t] ⊗ P(y_{k_t}[t]))` for `t = 1..=m`.
pub fn constancy_terms(
    traj: &MutationTrajectory,
    sym: &SymmetrizerData,
) -> Vec<(i64, SubtractionFreeElem, SubtractionFreeElem)> {
    traj.ks
        .iter()
        .enumerate()
        .map(|(t, &k)| {
            let seed = &traj.seeds[t];
            let y = &seed.y[k];
            let p = exchange_poly_sf(&seed.z[k], y);
            (sym.r_tilde[k], y.clone(), p)
        })
        .collect()
}

/// The constancy sum `sum_t r̃_{k_t} (y_{k_t}[t] ∧ P(y_{k_t}[t]))`.
pub fn constancy_sum(
    traj: &MutationTrajectory,
    sym: &SymmetrizerData,
) -> Result<TensorSquareElem, WedgeError> {
    wedge_sum(&constancy_terms(traj, sym))
}

/// True when the constancy sum vanishes in the exterior square.
pub fn verify_constancy(
    traj: &MutationTrajectory,
    sym: &SymmetrizerData,
) -> Result<bool, WedgeError> {
    Ok(constancy_sum(traj, sym)?.is_zero_in_wedge())
}

fn f_elems(traj: &MutationTrajectory, f: &FPolyTable, t: usize) -> Vec<SubtractionFreeElem> {
    let gens = traj.initial().generators();
    f.f[t]
        .iter()
        .map(|p| {
            SubtractionFreeElem::from_poly(gens.clone(), p.clone())
                .expect("F-polynomials have nonnegative coefficients")
        })
        .collect()
}

/// Terms of `V[t] = sum_i r̃_i (F_i ∧ y_i) + sum_{i<j} b_ij r̃_j (F_i ∧ F_j)`
/// (the second sum is the half-sum over all `i, j`, folded using the
/// antisymmetry of `b_ij r̃_j`), scaled by `sign`.
fn v_terms(
    traj: &MutationTrajectory,
    f: &FPolyTable,
    sym: &SymmetrizerData,
    t: usize,
    sign: i64,
) -> Vec<(i64, SubtractionFreeElem, SubtractionFreeElem)> {
    let seed = &traj.seeds[t];
    let n = traj.rank();
    let fs = f_elems(traj, f, t);
    let mut out = Vec::new();
    for i in 0..n {
        if !fs[i].is_one() {
            out.push((sign * sym.r_tilde[i], fs[i].clone(), seed.y[i].clone()));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let w = seed.b[i][j] * sym.r_tilde[j];
            if w != 0 && !fs[i].is_one() && !fs[j].is_one() {
                out.push((sign * w, fs[i].clone(), fs[j].clone()));
            }
        }
    }
    out
}

pub fn v_element(
    traj: &MutationTrajectory,
    f: &FPolyTable,
    sym: &SymmetrizerData,
    t: usize,
) -> Result<TensorSquareElem, WedgeError> {
    wedge_sum(&v_terms(traj, f, sym, t, 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VSequenceReport {
    pub v_initial_zero: bool,
    pub v_final_zero: bool,
    /// Steps (1-based `t`) where `V[t+1] - V[t] - r̃ (y ∧ P(y))` is nonzero.
    pub step_failures: Vec<usize>,
    /// Agreement between the telescoped differences and the direct
    /// constancy sum: `V[m+1] - V[1] - sum_t r̃ (y ∧ P(y))` vanishes.
    pub telescopes_to_constancy: bool,
}

impl VSequenceReport {
    pub fn ok(&self) -> bool {
        self.v_initial_zero && self.step_failures.is_empty() && self.telescopes_to_constancy
    }
}

/// Computes `V[1]`, `V[m+1]` and checks every per-step difference.
pub fn v_sequence(
    traj: &MutationTrajectory,
    f: &FPolyTable,
    sym: &SymmetrizerData,
) -> Result<VSequenceReport, WedgeError> {
    let m = traj.len();
    let steps = constancy_terms(traj, sym);
    let v_initial_zero = v_element(traj, f, sym, 0)?.is_zero_in_wedge();
    let v_final_zero = v_element(traj, f, sym, m)?.is_zero_in_wedge();
    let mut step_failures = Vec::new();
    for (t, step) in steps.iter().enumerate() {
        let mut terms = v_terms(traj, f, sym, t + 1, 1);
        terms.extend(v_terms(traj, f, sym, t, -1));
        terms.push((-step.0, step.1.clone(), step.2.clone()));
        if !wedge_sum(&terms)?.is_zero_in_wedge() {
            step_failures.push(t + 1);
        }
    }
    let mut total = v_terms(traj, f, sym, m, 1);
    total.extend(v_terms(traj, f, sym, 0, -1));
    total.extend(steps.into_iter().map(|(w, a, b)| (-w, a, b)));
    let telescopes_to_constancy = wedge_sum(&total)?.is_zero_in_wedge();
    Ok(VSequenceReport {
        v_initial_zero,
        v_final_zero,
        step_failures,
        telescopes_to_constancy,
    })
}
