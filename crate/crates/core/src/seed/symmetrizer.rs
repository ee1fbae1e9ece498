//! Minimal skew-symmetrizers of exchange matrices.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{IntMatrix, SeedError};

/// A positive diagonal `R = diag(r)` with `(RB)^T = -RB`, together with
/// `r_lcm = lcm(r)` and `r_tilde[i] = r_lcm / r[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetrizerData {
    pub r: Vec<i64>,
    pub r_lcm: i64,
    pub r_tilde: Vec<i64>,
}

impl SymmetrizerData {
    pub fn from_r(r: Vec<i64>) -> Self {
        let r_lcm = r.iter().fold(1i64, |acc, &x| acc.lcm(&x));
        let r_tilde = r.iter().map(|&x| r_lcm / x).collect();
        SymmetrizerData { r, r_lcm, r_tilde }
    }

    /// Checks `r_i b_ij = -r_j b_ji` for all `i, j`.
    pub fn symmetrizes(&self, b: &IntMatrix) -> bool {
        is_skew_symmetrizer(&self.r, b)
    }
}

pub fn is_skew_symmetrizer(r: &[i64], b: &IntMatrix) -> bool {
    let n = b.len();
    r.len() == n
        && r.iter().all(|&x| x > 0)
        && (0..n).all(|i| (0..n).all(|j| r[i] * b[i][j] == -r[j] * b[j][i]))
}

/// Minimal skew-symmetrizer, computed per connected block of the nonzero
/// pattern by propagating ratios along a spanning tree.
pub fn skew_symmetrizer(b: &IntMatrix) -> Result<SymmetrizerData, SeedError> {
    let n = b.len();
    if b.iter().any(|row| row.len() != n) {
        return Err(SeedError::NotSquare);
    }
    // ratios as (numerator, denominator) pairs, reduced
    let mut ratio: Vec<Option<(i64, i64)>> = vec![None; n];
    let mut r = vec![0i64; n];
    for root in 0..n {
        if ratio[root].is_some() {
            continue;
        }
        ratio[root] = Some((1, 1));
        let mut block = vec![root];
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            let (pi, qi) = ratio[i].unwrap();
            for j in 0..n {
                if b[i][j] == 0 && b[j][i] == 0 {
                    continue;
                }
                if b[i][j] == 0 || b[j][i] == 0 || (b[i][j] > 0) == (b[j][i] > 0) {
                    return Err(SeedError::NotSkewSymmetrizable);
                }
                // r_j = -r_i b_ij / b_ji
                let num = pi * b[i][j].abs();
                let den = qi * b[j][i].abs();
                let g = num.gcd(&den);
                let rj = (num / g, den / g);
                match ratio[j] {
                    None => {
                        ratio[j] = Some(rj);
                        block.push(j);
                        stack.push(j);
                    }
                    Some(existing) => {
                        if existing != rj {
                            return Err(SeedError::NotSkewSymmetrizable);
                        }
                    }
                }
            }
        }
        // scale the block to coprime positive integers
        let den_lcm = block
            .iter()
            .fold(1i64, |acc, &i| acc.lcm(&ratio[i].unwrap().1));
        let ints: Vec<i64> = block
            .iter()
            .map(|&i| {
                let (p, q) = ratio[i].unwrap();
                p * (den_lcm / q)
            })
            .collect();
        let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        for (&i, v) in block.iter().zip(ints) {
            r[i] = v / g;
        }
    }
    if (0..n).any(|i| b[i][i] != 0) {
        return Err(SeedError::NotSkewSymmetrizable);
    }
    debug_assert!(is_skew_symmetrizer(&r, b));
    Ok(SymmetrizerData::from_r(r))
}
