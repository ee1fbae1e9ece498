//! C-matrices, tropical signs and G-matrices along a mutation trajectory.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::seed::{pos, IntMatrix, MutationTrajectory, SymmetrizerData};
use crate::semifield::tropicalize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TropicalError {
    #[error("C-matrix recursion disagrees with tropicalized y_{i} at step {t}", i = .i + 1, t = .t + 1)]
    Mismatch { t: usize, i: usize },
    #[error("c-vector c_{k} at step {t} is not sign-coherent", k = .k + 1, t = .t + 1)]
    NotSignCoherent { t: usize, k: usize },
    #[error("c-vector c_{k} at step {t} is zero", k = .k + 1, t = .t + 1)]
    ZeroVector { t: usize, k: usize },
}

/// `c_ij`; column `j` is the c-vector `c_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CMatrix(pub IntMatrix);

/// `g_ij`; column `j` is the g-vector `g_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GMatrix(pub IntMatrix);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TropicalSign {
    Plus,
    Minus,
}

impl TropicalSign {
    pub fn value(self) -> i64 {
        match self {
            TropicalSign::Plus => 1,
            TropicalSign::Minus => -1,
        }
    }
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

impl CMatrix {
    pub fn identity(n: usize) -> Self {
        CMatrix(identity(n))
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.0.iter().map(|row| row[j]).collect()
    }

    /// One step of the recursion with exchange matrix `b` at `k`.
    pub fn mutate(&self, b: &IntMatrix, k: usize, dk: i64) -> Self {
        let c = &self.0;
        let n = c.len();
        let out = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if j == k {
                            -c[i][k]
                        } else {
                            c[i][j] + dk * (pos(-c[i][k]) * b[k][j] + c[i][k] * pos(b[k][j]))
                        }
                    })
                    .collect()
            })
            .collect();
        CMatrix(out)
    }
}

impl GMatrix {
    pub fn identity(n: usize) -> Self {
        GMatrix(identity(n))
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.0.iter().map(|row| row[j]).collect()
    }

    /// The map `rho_t` acting on g-vectors: `g_k -> -g_k + d_k sum_j [-eps b_jk]_+ g_j`.
    pub fn mutate(&self, b: &IntMatrix, k: usize, dk: i64, eps: TropicalSign) -> Self {
        let g = &self.0;
        let n = g.len();
        let e = eps.value();
        let mut out = g.clone();
        for (l, row) in out.iter_mut().enumerate() {
            row[k] = -g[l][k] + dk * (0..n).map(|j| pos(-e * b[j][k]) * g[l][j]).sum::<i64>();
        }
        GMatrix(out)
    }
}

/// C-matrices `C[1..=m+1]` by recursion, each checked against the
/// tropicalized y-variables of the trajectory.
pub fn c_matrices(traj: &MutationTrajectory) -> Result<Vec<CMatrix>, TropicalError> {
    let n = traj.rank();
    let mut cs = vec![CMatrix::identity(n)];
    for (t, &k) in traj.ks.iter().enumerate() {
        let seed = &traj.seeds[t];
        let dk = seed.degrees()[k] as i64;
        let next = cs[t].mutate(&seed.b, k, dk);
        cs.push(next);
    }
    for (t, (c, seed)) in cs.iter().zip(&traj.seeds).enumerate() {
        for i in 0..n {
            let trop = tropicalize(&seed.y[i]).exponents;
            let col = c.column(i);
            if trop[..n] != col[..] || trop[n..].iter().any(|&e| e != 0) {
                return Err(TropicalError::Mismatch { t, i });
            }
        }
    }
    Ok(cs)
}

/// Sign of a nonzero sign-coherent vector.
pub fn vector_sign(v: &[i64]) -> Option<TropicalSign> {
    let has_pos = v.iter().any(|&a| a > 0);
    let has_neg = v.iter().any(|&a| a < 0);
    match (has_pos, has_neg) {
        (true, false) => Some(TropicalSign::Plus),
        (false, true) => Some(TropicalSign::Minus),
        _ => None,
    }
}

/// Every column of every C-matrix must be nonzero and sign-coherent.
pub fn check_sign_coherence(cs: &[CMatrix]) -> Result<(), TropicalError> {
    for (t, c) in cs.iter().enumerate() {
        for k in 0..c.0.len() {
            let col = c.column(k);
            if col.iter().all(|&a| a == 0) {
                return Err(TropicalError::ZeroVector { t, k });
            }
            if vector_sign(&col).is_none() {
                return Err(TropicalError::NotSignCoherent { t, k });
            }
        }
    }
    Ok(())
}

/// `eps_t`, the sign of `c_{k_t}[t]`, for `t = 1..=m`.
pub fn tropical_signs(
    traj: &MutationTrajectory,
    cs: &[CMatrix],
) -> Result<Vec<TropicalSign>, TropicalError> {
    traj.ks
        .iter()
        .enumerate()
        .map(|(t, &k)| {
            let col = cs[t].column(k);
            if col.iter().all(|&a| a == 0) {
                return Err(TropicalError::ZeroVector { t, k });
            }
            vector_sign(&col).ok_or(TropicalError::NotSignCoherent { t, k })
        })
        .collect()
}

/// G-matrices `G[1..=m+1]` generated by the maps `rho_t`.
pub fn g_matrices(traj: &MutationTrajectory, signs: &[TropicalSign]) -> Vec<GMatrix> {
    let n = traj.rank();
    let mut gs = vec![GMatrix::identity(n)];
    for (t, (&k, &eps)) in traj.ks.iter().zip(signs).enumerate() {
        let seed = &traj.seeds[t];
        let dk = seed.degrees()[k] as i64;
        let next = gs[t].mutate(&seed.b, k, dk, eps);
        gs.push(next);
    }
    gs
}

/// `R^{-1} G^T R C = I`, i.e. `sum_l g_li r_l c_lj = r_i delta_ij`.
pub fn duality_holds(g: &GMatrix, c: &CMatrix, sym: &SymmetrizerData) -> bool {
    let n = c.0.len();
    let r = &sym.r;
    (0..n).all(|i| {
        (0..n).all(|j| {
            let s: i64 = (0..n).map(|l| g.0[l][i] * r[l] * c.0[l][j]).sum();
            s == if i == j { r[i] } else { 0 }
        })
    })
}

/// Steps (0-based) where duality fails.
pub fn duality_failures(gs: &[GMatrix], cs: &[CMatrix], sym: &SymmetrizerData) -> Vec<usize> {
    gs.iter()
        .zip(cs)
        .enumerate()
        .filter(|(_, (g, c))| !duality_holds(g, c, sym))
        .map(|(t, _)| t)
        .collect()
}

/// Everything tropical about a trajectory, computed in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropicalData {
    pub c: Vec<CMatrix>,
    pub signs: Vec<TropicalSign>,
    pub g: Vec<GMatrix>,
}

impl TropicalData {
    pub fn compute(traj: &MutationTrajectory) -> Result<Self, TropicalError> {
        let c = c_matrices(traj)?;
        check_sign_coherence(&c)?;
        let signs = tropical_signs(traj, &c)?;
        let g = g_matrices(traj, &signs);
        Ok(TropicalData { c, signs, g })
    }

    /// `eps_t c_{k_t}[t]`, which is componentwise nonnegative.
    pub fn positive_c_vector(&self, traj: &MutationTrajectory, t: usize) -> Vec<i64> {
        let e = self.signs[t].value();
        self.c[t]
            .column(traj.ks[t])
            .into_iter()
            .map(|a| e * a)
            .collect()
    }
}
