//! Mutation sequences and sigma-periodicity.

use serde::{Deserialize, Serialize};

use super::symmetrizer::{skew_symmetrizer, SymmetrizerData};
use super::{GCASeed, SeedError};
use crate::arith::RatFunc;
use crate::semifield::sf_eq;

/// Seeds `seeds[0..=m]` with `seeds[t+1] = mutate(seeds[t], ks[t])`.
#[derive(Clone, Debug)]
pub struct MutationTrajectory {
    pub seeds: Vec<GCASeed>,
    pub ks: Vec<usize>,
    pub sigma: Option<Vec<usize>>,
}

impl MutationTrajectory {
    pub fn len(&self) -> usize {
        self.ks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ks.is_empty()
    }

    pub fn initial(&self) -> &GCASeed {
        &self.seeds[0]
    }

    pub fn last(&self) -> &GCASeed {
        self.seeds.last().unwrap()
    }

    pub fn rank(&self) -> usize {
        self.seeds[0].rank()
    }

    /// Minimal skew-symmetrizer of the initial exchange matrix; it is
    /// common to every seed of the trajectory.
    pub fn symmetrizer(&self) -> SymmetrizerData {
        skew_symmetrizer(&self.seeds[0].b).expect("initial seed was validated")
    }
}

pub fn run_sequence(seed: &GCASeed, ks: &[usize]) -> Result<MutationTrajectory, SeedError> {
    let n = seed.rank();
    if let Some(&k) = ks.iter().find(|&&k| k >= n) {
        return Err(SeedError::IndexOutOfRange { index: k, rank: n });
    }
    let mut seeds = Vec::with_capacity(ks.len() + 1);
    seeds.push(seed.clone());
    for &k in ks {
        let next = seeds.last().unwrap().mutate(k)?;
        seeds.push(next);
    }
    Ok(MutationTrajectory {
        seeds,
        ks: ks.to_vec(),
        sigma: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SigmaSpec {
    Given(Vec<usize>),
    /// Scan all permutations in lexicographic order; first match wins.
    Search,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodReport {
    /// The permutation checked (given, or found by search). With a failed
    /// search this is the identity, and the flags below refer to it.
    pub sigma: Vec<usize>,
    pub exchange_matrix: bool,
    pub x_vars: bool,
    pub y_vars: bool,
    pub periodic: bool,
    /// `r_{sigma(i)} = r_i`; only meaningful when periodic.
    pub symmetrizer_invariant: bool,
    /// Informational: whether `z_{sigma(i)}[m+1] = z_i` also holds.
    pub z_vars_return: bool,
}

fn check_one(traj: &MutationTrajectory, sigma: &[usize]) -> PeriodReport {
    let first = traj.initial();
    let last = traj.last();
    let n = first.rank();
    let exchange_matrix =
        (0..n).all(|i| (0..n).all(|j| last.b[sigma[i]][sigma[j]] == first.b[i][j]));
    let y_vars = exchange_matrix && (0..n).all(|i| sf_eq(&last.y[sigma[i]], &first.y[i]));
    let x_vars = y_vars && (0..n).all(|i| RatFunc::equals(&last.x[sigma[i]], &first.x[i]));
    let periodic = exchange_matrix && x_vars && y_vars;
    let r = traj.symmetrizer().r;
    let symmetrizer_invariant = (0..n).all(|i| r[sigma[i]] == r[i]);
    let z_vars_return = (0..n).all(|i| {
        last.z[sigma[i]].len() == first.z[i].len()
            && last.z[sigma[i]]
                .iter()
                .zip(&first.z[i])
                .all(|(a, b)| sf_eq(a, b))
    });
    PeriodReport {
        sigma: sigma.to_vec(),
        exchange_matrix,
        x_vars,
        y_vars,
        periodic,
        symmetrizer_invariant,
        z_vars_return,
    }
}

fn is_permutation(sigma: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    sigma.len() == n
        && sigma.iter().all(|&s| {
            if s >= n || seen[s] {
                return false;
            }
            seen[s] = true;
            true
        })
}

/// Advances to the next permutation in lexicographic order.
fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Checks `b_{s(i)s(j)}[m+1] = b_ij`, `x_{s(i)}[m+1] = x_i` and
/// `y_{s(i)}[m+1] = y_i`. The `z` tuples are compared but not required.
pub fn check_sigma_period(
    traj: &MutationTrajectory,
    sigma: &SigmaSpec,
) -> Result<PeriodReport, SeedError> {
    let n = traj.rank();
    match sigma {
        SigmaSpec::Given(s) => {
            if !is_permutation(s, n) {
                return Err(SeedError::InvalidPermutation);
            }
            Ok(check_one(traj, s))
        }
        SigmaSpec::Search => {
            if n > 8 {
                return Err(SeedError::RankTooLargeForSearch(n));
            }
            let mut p: Vec<usize> = (0..n).collect();
            loop {
                let rep = check_one(traj, &p);
                if rep.periodic {
                    return Ok(rep);
                }
                if !next_permutation(&mut p) {
                    break;
                }
            }
            let id: Vec<usize> = (0..n).collect();
            Ok(check_one(traj, &id))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semifield::Generators;
    use std::sync::Arc;

    fn b2() -> GCASeed {
        let gens = Arc::new(Generators::new(&[2, 1]));
        GCASeed::initial(vec![vec![0, -1], vec![1, 0]], gens).unwrap()
    }

    #[test]
    fn permutations_in_lex_order() {
        let mut p = vec![0, 1, 2];
        let mut all = vec![p.clone()];
        while next_permutation(&mut p) {
            all.push(p.clone());
        }
        assert_eq!(all.len(), 6);
        assert_eq!(all[1], vec![0, 2, 1]);
        assert_eq!(all[5], vec![2, 1, 0]);
    }

    #[test]
    fn empty_sequence() {
        let t = run_sequence(&b2(), &[]).unwrap();
        assert_eq!(t.seeds.len(), 1);
        let rep = check_sigma_period(&t, &SigmaSpec::Given(vec![0, 1])).unwrap();
        assert!(rep.periodic);
    }

    #[test]
    fn involution_is_periodic() {
        let t = run_sequence(&b2(), &[0, 0]).unwrap();
        let rep = check_sigma_period(&t, &SigmaSpec::Given(vec![0, 1])).unwrap();
        assert!(rep.periodic);
        assert!(rep.z_vars_return);
    }

    #[test]
    fn bad_index_rejected() {
        assert!(run_sequence(&b2(), &[0, 5]).is_err());
        let t = run_sequence(&b2(), &[0]).unwrap();
        assert_eq!(
            check_sigma_period(&t, &SigmaSpec::Given(vec![0, 0])),
            Err(SeedError::InvalidPermutation)
        );
    }
}
