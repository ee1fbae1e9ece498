//! Numerical dilogarithm identities attached to a sigma-period.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{rogers_hd_tilde, rogers_inf, DilogError, DilogParams, QuadratureConfig};
use crate::arith::Rational;
use crate::seed::{MutationTrajectory, SymmetrizerData};
use crate::semifield::{eval_phi, eval_phi_nonnegative, SubtractionFreeElem};
use crate::tropical::TropicalSign;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentityForm {
    /// `sum r̃ L~_{z}(y) = sum r̃ (1 - eps)/2 L~_{z}(inf)`.
    Gid5,
    /// `sum eps r̃ L~_{z°}(y^eps) = 0`, with `z° = z*` when `eps = -1`.
    Gid6,
}

impl IdentityForm {
    pub fn name(self) -> &'static str {
        match self {
            IdentityForm::Gid5 => "gid5",
            IdentityForm::Gid6 => "gid6",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "gid5" => Some(IdentityForm::Gid5),
            "gid6" => Some(IdentityForm::Gid6),
            _ => None,
        }
    }
}

/// One summand after applying `phi`.
#[derive(Debug, Clone)]
pub struct StepValue {
    pub weight: f64,
    pub eps: TropicalSign,
    pub y: f64,
    pub z: DilogParams,
}

fn evaluate(
    f: &SubtractionFreeElem,
    phi: &[Rational],
    allow_zero: bool,
) -> Result<Rational, DilogError> {
    let r = if allow_zero {
        eval_phi_nonnegative(f, phi)
    } else {
        eval_phi(f, phi)
    };
    r.map_err(|e| DilogError::InvalidParams(e.to_string()))
}

/// Applies `phi` to `y_{k_t}[t]` and `z_{k_t}[t]` along the trajectory.
pub fn step_values(
    traj: &MutationTrajectory,
    signs: &[TropicalSign],
    sym: &SymmetrizerData,
    phi: &[Rational],
    allow_zero: bool,
) -> Result<Vec<StepValue>, DilogError> {
    traj.ks
        .iter()
        .zip(signs)
        .enumerate()
        .map(|(t, (&k, &eps))| {
            let seed = &traj.seeds[t];
            let y = evaluate(&seed.y[k], phi, allow_zero)?;
            let z = seed.z[k]
                .iter()
                .map(|c| evaluate(c, phi, allow_zero))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(StepValue {
                weight: sym.r_tilde[k] as f64,
                eps,
                y: y.to_f64().ok_or(DilogError::Domain(f64::NAN))?,
                z: DilogParams::new(z)?,
            })
        })
        .collect()
}

/// `sum_t r̃_{k_t} L~_{z_{k_t}[t]}(y_{k_t}[t])`.
pub fn gid4_sum(steps: &[StepValue], cfg: &QuadratureConfig) -> Result<f64, DilogError> {
    steps
        .iter()
        .map(|s| Ok(s.weight * rogers_hd_tilde(s.y, &s.z, cfg)?))
        .sum()
}

/// `sum_t r̃_{k_t} (1 - eps_t)/2 L~_{z_{k_t}[t]}(inf)`.
pub fn constant_term(steps: &[StepValue], cfg: &QuadratureConfig) -> Result<f64, DilogError> {
    steps
        .iter()
        .filter(|s| s.eps == TropicalSign::Minus)
        .map(|s| Ok(s.weight * rogers_inf(&s.z, cfg)?))
        .sum()
}

fn gid6_sum(steps: &[StepValue], cfg: &QuadratureConfig) -> Result<f64, DilogError> {
    steps
        .iter()
        .map(|s| {
            let v = match s.eps {
                TropicalSign::Plus => rogers_hd_tilde(s.y, &s.z, cfg)?,
                TropicalSign::Minus => -rogers_hd_tilde(s.y.recip(), &s.z.reverse(), cfg)?,
            };
            Ok(s.weight * v)
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub form: IdentityForm,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Left side minus right side of the chosen form at the point `phi`.
pub fn residual(
    steps: &[StepValue],
    form: IdentityForm,
    cfg: &QuadratureConfig,
) -> Result<f64, DilogError> {
    match form {
        IdentityForm::Gid5 => Ok(gid4_sum(steps, cfg)? - constant_term(steps, cfg)?),
        IdentityForm::Gid6 => gid6_sum(steps, cfg),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn verify_identity(
    traj: &MutationTrajectory,
    signs: &[TropicalSign],
    sym: &SymmetrizerData,
    phi: &[Rational],
    form: IdentityForm,
    tol: f64,
    allow_zero: bool,
    cfg: &QuadratureConfig,
) -> Result<IdentityReport, DilogError> {
    let steps = step_values(traj, signs, sym, phi, allow_zero)?;
    let residual = residual(&steps, form, cfg)?;
    Ok(IdentityReport {
        form,
        residual,
        tol,
        pass: residual.abs() < tol,
    })
}

/// Seeded source of rationals in `[1/4, 4]` with denominator 64.
#[derive(Debug, Clone)]
pub struct PhiSampler {
    rng: ChaCha8Rng,
}

impl PhiSampler {
    pub fn new(seed: u64) -> Self {
        PhiSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rational(&mut self) -> Rational {
        let num: i64 = self.rng.gen_range(16..=256);
        Rational::new(BigInt::from(num), BigInt::from(64))
    }
}

/// True iff every initial `phi(z_i)` satisfies the generic condition.
pub fn z_images_generic(traj: &MutationTrajectory, phi: &[Rational], allow_zero: bool) -> bool {
    traj.initial().z.iter().all(|zi| {
        zi.iter()
            .map(|c| evaluate(c, phi, allow_zero))
            .collect::<Result<Vec<_>, _>>()
            .ok()
            .and_then(|z| DilogParams::new(z).ok())
            .is_some_and(|p| p.check_generic())
    })
}

const MAX_RESAMPLES: usize = 1000;

/// A random assignment of every generator; the `z` part is resampled until
/// the generic condition holds.
pub fn random_phi(
    traj: &MutationTrajectory,
    sampler: &mut PhiSampler,
) -> Result<Vec<Rational>, DilogError> {
    let gens = traj.initial().generators();
    let mut phi: Vec<Rational> = (0..gens.len()).map(|_| sampler.rational()).collect();
    for _ in 0..MAX_RESAMPLES {
        if z_images_generic(traj, &phi, false) {
            return Ok(phi);
        }
        for (slot, v) in phi.iter_mut().enumerate() {
            if gens.is_z_slot(slot) {
                *v = sampler.rational();
            }
        }
    }
    Err(DilogError::NotGeneric("no generic z-images found".into()))
}

/// Keeps the `z` part of `base` and redraws every `y` value.
pub fn resample_y(
    traj: &MutationTrajectory,
    base: &[Rational],
    sampler: &mut PhiSampler,
) -> Vec<Rational> {
    let gens = traj.initial().generators();
    base.iter()
        .enumerate()
        .map(|(slot, v)| {
            if gens.is_z_slot(slot) {
                v.clone()
            } else {
                sampler.rational()
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhiIndependenceReport {
    pub sums: Vec<f64>,
    /// `max - min` over the sums.
    pub spread: f64,
    pub tol: f64,
    pub pass: bool,
}

/// The `gid4` sum at `trials` assignments sharing the `z` part of `base`.
#[allow(clippy::too_many_arguments)]
pub fn phi_independence(
    traj: &MutationTrajectory,
    signs: &[TropicalSign],
    sym: &SymmetrizerData,
    base: &[Rational],
    trials: usize,
    sampler: &mut PhiSampler,
    tol: f64,
    cfg: &QuadratureConfig,
) -> Result<PhiIndependenceReport, DilogError> {
    let mut sums = Vec::with_capacity(trials);
    for _ in 0..trials {
        let phi = resample_y(traj, base, sampler);
        let steps = step_values(traj, signs, sym, &phi, false)?;
        sums.push(gid4_sum(&steps, cfg)?);
    }
    let lo = sums.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = sums.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let spread = if sums.is_empty() { 0.0 } else { hi - lo };
    Ok(PhiIndependenceReport {
        sums,
        spread,
        tol,
        pass: spread < tol,
    })
}

/// All-ones assignment.
pub fn unit_phi(traj: &MutationTrajectory) -> Vec<Rational> {
    let n = traj.initial().generators().len();
    vec![Rational::from_integer(BigInt::from(1)); n]
}

/// True when any generator is mapped to zero.
pub fn has_zero(phi: &[Rational]) -> bool {
    phi.iter().any(|v| v.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::{run_sequence, GCASeed};
    use crate::semifield::Generators;
    use crate::tropical::TropicalData;
    use std::sync::Arc;

    fn b2_period() -> MutationTrajectory {
        let gens = Arc::new(Generators::new(&[2, 1]));
        run_sequence(
            &GCASeed::initial(vec![vec![0, -1], vec![1, 0]], gens).unwrap(),
            &[0, 1, 0, 1, 0, 1],
        )
        .unwrap()
    }

    #[test]
    fn b2_identity_at_unit_point() {
        let t = b2_period();
        let data = TropicalData::compute(&t).unwrap();
        let sym = t.symmetrizer();
        let phi = unit_phi(&t);
        let cfg = QuadratureConfig::default();
        for form in [IdentityForm::Gid5, IdentityForm::Gid6] {
            let rep = verify_identity(&t, &data.signs, &sym, &phi, form, 1e-8, false, &cfg).unwrap();
            assert!(rep.pass, "{rep:?}");
        }
    }

    #[test]
    fn sampler_range_and_determinism() {
        let mut a = PhiSampler::new(7);
        let mut b = PhiSampler::new(7);
        let lo = Rational::new(1.into(), 4.into());
        let hi = Rational::from_integer(4.into());
        for _ in 0..100 {
            let v = a.rational();
            assert!(v >= lo && v <= hi);
            assert_eq!(v, b.rational());
        }
    }
}
