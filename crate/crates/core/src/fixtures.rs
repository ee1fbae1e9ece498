//! Builtin mutation sequences used as regression fixtures.

use std::sync::Arc;

use crate::seed::{GCASeed, IntMatrix, SeedError};
use crate::semifield::Generators;

/// A seed together with a mutation sequence and, when known, its period.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub degrees: Vec<u32>,
    pub b: IntMatrix,
    /// Names of `z_{i,s}` for `0 < s < d_i`.
    pub z_names: Vec<Vec<String>>,
    /// 0-based mutation indices.
    pub ks: Vec<usize>,
    /// 0-based permutation; `None` means search.
    pub sigma: Option<Vec<usize>>,
    /// Quantum truncation degree used by default.
    pub quantum_n: u32,
}

impl Fixture {
    pub fn seed(&self) -> Result<GCASeed, SeedError> {
        let gens = Arc::new(Generators::with_z_names(&self.degrees, Some(&self.z_names)));
        GCASeed::initial(self.b.clone(), gens)
    }
}

pub const BUILTIN_NAMES: [&str; 5] = ["involution", "a2", "b2", "g2", "b2-truncated"];

fn rank_two() -> IntMatrix {
    vec![vec![0, -1], vec![1, 0]]
}

fn names(v: &[&[&str]]) -> Vec<Vec<String>> {
    v.iter()
        .map(|row| row.iter().map(|s| s.to_string()).collect())
        .collect()
}

/// `mu_1 mu_1` on the B2 seed.
pub fn involution() -> Fixture {
    Fixture {
        name: "involution",
        degrees: vec![2, 1],
        b: rank_two(),
        z_names: names(&[&["alpha"], &[]]),
        ks: vec![0, 0],
        sigma: Some(vec![0, 1]),
        quantum_n: 8,
    }
}

/// Ordinary A2 pentagon: five alternating mutations, period with the transposition.
pub fn a2() -> Fixture {
    Fixture {
        name: "a2",
        degrees: vec![1, 1],
        b: rank_two(),
        z_names: names(&[&[], &[]]),
        ks: vec![0, 1, 0, 1, 0],
        sigma: None,
        quantum_n: 8,
    }
}

/// `d = (2, 1)`, `z_1 = (1, alpha, 1)`: six alternating mutations.
pub fn b2() -> Fixture {
    Fixture {
        name: "b2",
        degrees: vec![2, 1],
        b: rank_two(),
        z_names: names(&[&["alpha"], &[]]),
        ks: vec![0, 1, 0, 1, 0, 1],
        sigma: Some(vec![0, 1]),
        quantum_n: 6,
    }
}

/// `d = (3, 1)`, `z_1 = (1, alpha, beta, 1)`: eight alternating mutations.
pub fn g2() -> Fixture {
    Fixture {
        name: "g2",
        degrees: vec![3, 1],
        b: rank_two(),
        z_names: names(&[&["alpha", "beta"], &[]]),
        ks: vec![0, 1, 0, 1, 0, 1, 0, 1],
        sigma: Some(vec![0, 1]),
        quantum_n: 6,
    }
}

/// The B2 sequence stopped one step short of its period.
pub fn b2_truncated() -> Fixture {
    Fixture {
        name: "b2-truncated",
        ks: vec![0, 1, 0, 1, 0],
        sigma: None,
        ..b2()
    }
}

pub fn builtin(name: &str) -> Option<Fixture> {
    match name {
        "involution" => Some(involution()),
        "a2" => Some(a2()),
        "b2" => Some(b2()),
        "g2" => Some(g2()),
        "b2-truncated" => Some(b2_truncated()),
        _ => None,
    }
}
