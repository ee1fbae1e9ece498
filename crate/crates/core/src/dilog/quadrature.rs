//! Adaptive Gauss–Kronrod (7/15) quadrature with global bisection.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::DilogError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub max_depth: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: 1e-12,
            max_depth: 40,
        }
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// `(kronrod estimate, |kronrod - gauss|)` on `[a, b]`.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

struct Piece {
    a: f64,
    b: f64,
    est: f64,
    err: f64,
    depth: u32,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Integrates `f` over `[a, b]` (`a <= b`) to relative accuracy `rel_tol`.
///
/// Global adaptive scheme: the piece with the largest error estimate is
/// bisected until the summed estimate meets the tolerance. A piece that
/// would need more than `max_depth` bisections is a failure.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<f64, DilogError> {
    if a == b {
        return Ok(0.0);
    }
    let (est, err) = gk15(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a, b, est, err, depth: 0 });
    let mut total = est;
    let mut total_err = err;
    loop {
        let tol = cfg.rel_tol * total.abs();
        // roundoff floor on the summed estimate
        let floor = 50.0 * f64::EPSILON * heap.iter().map(|p| p.est.abs()).sum::<f64>();
        if total_err <= tol.max(floor) {
            return Ok(heap.iter().map(|p| p.est).sum());
        }
        let worst = heap.pop().expect("nonempty");
        if worst.depth >= cfg.max_depth {
            return Err(DilogError::ToleranceNotReached {
                a: worst.a,
                b: worst.b,
                err: total_err,
            });
        }
        let m = 0.5 * (worst.a + worst.b);
        let (el, rl) = gk15(&f, worst.a, m);
        let (er, rr) = gk15(&f, m, worst.b);
        total += el + er - worst.est;
        total_err += rl + rr - worst.err;
        for (lo, hi, e, r) in [(worst.a, m, el, rl), (m, worst.b, er, rr)] {
            heap.push(Piece {
                a: lo,
                b: hi,
                est: e,
                err: r,
                depth: worst.depth + 1,
            });
        }
    }
}
