//! The verification battery and its report.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use gencluster::dilog::identity::{residual, step_values};
use gencluster::dilog::{
    phi_independence, random_phi, DilogError, IdentityForm, PhiSampler, QuadratureConfig,
};
use gencluster::fpoly::{check_f_periodicity, check_separation, f_polynomials, FPolyTable};
use gencluster::quantum::verify_quantum_identity;
use gencluster::seed::{check_sigma_period, run_sequence, MutationTrajectory};
use gencluster::tropical::{duality_failures, TropicalData};
use gencluster::wedge::{verify_constancy, v_sequence};
use serde::Serialize;

use crate::config::{ConfigError, Prepared};

pub const PERIOD: &str = "period";
pub const SIGN_COHERENCE: &str = "sign_coherence";
pub const DUALITY: &str = "duality";
pub const SEPARATION: &str = "separation";
pub const F_PERIODICITY: &str = "f_periodicity";
pub const CONSTANCY: &str = "constancy";
pub const V_TELESCOPING: &str = "v_telescoping";
pub const GID5: &str = "gid5";
pub const GID6: &str = "gid6";
pub const PHI_INDEPENDENCE: &str = "phi_independence";
pub const QUANTUM: &str = "quantum";

/// Every check, in execution order.
pub const CHECK_NAMES: [&str; 11] = [
    PERIOD,
    SIGN_COHERENCE,
    DUALITY,
    SEPARATION,
    F_PERIODICITY,
    CONSTANCY,
    V_TELESCOPING,
    GID5,
    GID6,
    PHI_INDEPENDENCE,
    QUANTUM,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    fn from_bool(ok: bool) -> Self {
        CheckResult {
            status: if ok { Status::Pass } else { Status::Fail },
            residual: None,
            detail: None,
        }
    }

    fn fail(detail: impl Into<String>) -> Self {
        CheckResult {
            status: Status::Fail,
            residual: None,
            detail: Some(detail.into()),
        }
    }

    fn skipped(detail: impl Into<String>) -> Self {
        CheckResult {
            status: Status::Skipped,
            residual: None,
            detail: Some(detail.into()),
        }
    }

    fn with_residual(mut self, r: f64) -> Self {
        self.residual = Some(r);
        self
    }

    fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub name: String,
    pub rank: usize,
    pub degrees: Vec<u32>,
    pub steps: usize,
    pub random_seed: u64,
    pub trials: usize,
    pub tolerance: f64,
    /// 1-based permutation checked for periodicity.
    pub sigma: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tropical_signs: Option<Vec<i64>>,
    /// Ordered by check name.
    pub checks: BTreeMap<String, CheckResult>,
    /// Seconds per check; absent unless requested, so that reports stay
    /// byte-identical across runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl Report {
    pub fn failed(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, c)| c.status == Status::Fail)
            .map(|(k, _)| k.as_str())
            .collect()
    }

    /// 0 when nothing failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.failed().is_empty() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn summary(&self) -> String {
        let mut out = format!(
            "{}: rank {}, degrees {:?}, {} steps, sigma {:?}\n",
            self.name, self.rank, self.degrees, self.steps, self.sigma
        );
        for name in CHECK_NAMES {
            let Some(c) = self.checks.get(name) else {
                continue;
            };
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skipped",
            };
            let mut line = format!("  {name:<18}{status:<8}");
            if let Some(r) = c.residual {
                line.push_str(&format!(" residual {r:.3e}"));
            }
            if let Some(d) = &c.detail {
                line.push_str(&format!(" {d}"));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        let failed = self.failed();
        if failed.is_empty() {
            out.push_str("all checks passed\n");
        } else {
            out.push_str(&format!("failed: {}\n", failed.join(", ")));
        }
        out
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub skip: BTreeSet<String>,
    pub timings: bool,
}

struct Runner {
    checks: BTreeMap<String, CheckResult>,
    timings: BTreeMap<String, f64>,
    skip: BTreeSet<String>,
}

impl Runner {
    fn run(&mut self, name: &str, f: impl FnOnce() -> CheckResult) {
        if self.skip.contains(name) {
            self.checks
                .insert(name.to_string(), CheckResult::skipped("skipped on request"));
            return;
        }
        let start = Instant::now();
        let result = f();
        self.timings
            .insert(name.to_string(), start.elapsed().as_secs_f64());
        self.checks.insert(name.to_string(), result);
    }

    fn passed(&self, name: &str) -> bool {
        self.checks
            .get(name)
            .is_some_and(|c| c.status == Status::Pass)
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

/// Max absolute residual of each requested form over `trials` random points.
fn identity_residuals(
    traj: &MutationTrajectory,
    data: &TropicalData,
    p: &Prepared,
    sampler: &mut PhiSampler,
    cfg: &QuadratureConfig,
) -> Result<BTreeMap<IdentityForm, f64>, DilogError> {
    let mut worst: BTreeMap<IdentityForm, f64> = BTreeMap::new();
    for _ in 0..p.options.trials {
        let phi = random_phi(traj, sampler)?;
        let steps = step_values(traj, &data.signs, &p.sym, &phi, false)?;
        for &form in &p.options.forms {
            let r = residual(&steps, form, cfg)?.abs();
            let e = worst.entry(form).or_insert(0.0);
            *e = e.max(r);
        }
    }
    Ok(worst)
}

/// Runs every check on a prepared configuration.
pub fn run(p: &Prepared, opts: &RunOptions) -> Result<Report, ConfigError> {
    let traj = run_sequence(&p.seed, &p.ks).map_err(|e| ConfigError::Invalid {
        location: "ks".into(),
        message: e.to_string(),
    })?;
    let cfg = QuadratureConfig::default();
    let tol = p.options.tolerance;
    let mut r = Runner {
        checks: BTreeMap::new(),
        timings: BTreeMap::new(),
        skip: opts.skip.clone(),
    };

    let period = check_sigma_period(&traj, &p.sigma).map_err(|e| ConfigError::Invalid {
        location: "sigma".into(),
        message: e.to_string(),
    })?;
    r.run(PERIOD, || {
        let res = CheckResult::from_bool(period.periodic && period.symmetrizer_invariant);
        if period.periodic {
            res
        } else {
            let part = if !period.exchange_matrix {
                "exchange matrix does"
            } else if !period.y_vars {
                "y-variables do"
            } else {
                "x-variables do"
            };
            res.with_detail(format!("{part} not return"))
        }
    });

    let data = TropicalData::compute(&traj);
    r.run(SIGN_COHERENCE, || match &data {
        Ok(_) => CheckResult::from_bool(true),
        Err(e) => CheckResult::fail(e.to_string()),
    });
    let data = data.ok();

    r.run(DUALITY, || match &data {
        None => CheckResult::skipped("needs sign coherence"),
        Some(d) => {
            let bad = duality_failures(&d.g, &d.c, &p.sym);
            if bad.is_empty() {
                CheckResult::from_bool(true)
            } else {
                CheckResult::fail(format!("fails at steps {:?}", one_based(&bad)))
            }
        }
    });

    let mut fpolys: Option<FPolyTable> = None;
    r.run(SEPARATION, || match &data {
        None => CheckResult::skipped("needs sign coherence"),
        Some(d) => match f_polynomials(&traj, &d.c) {
            Err(e) => CheckResult::fail(e.to_string()),
            Ok(f) => {
                let res = match check_separation(&traj, &d.c, &f) {
                    Ok(()) => CheckResult::from_bool(true),
                    Err(s) => CheckResult::fail(format!("y_{}[{}]", s.i + 1, s.t + 1)),
                };
                fpolys = Some(f);
                res
            }
        },
    });

    r.run(F_PERIODICITY, || match &fpolys {
        None => CheckResult::skipped("needs F-polynomials"),
        Some(f) => CheckResult::from_bool(check_f_periodicity(f)),
    });

    let sym = &p.sym;
    r.run(CONSTANCY, || match verify_constancy(&traj, sym) {
        Ok(ok) => CheckResult::from_bool(ok),
        Err(e) => CheckResult::fail(e.to_string()),
    });

    r.run(V_TELESCOPING, || match &fpolys {
        None => CheckResult::skipped("needs F-polynomials"),
        Some(f) => match v_sequence(&traj, f, sym) {
            Err(e) => CheckResult::fail(e.to_string()),
            Ok(v) if v.ok() => CheckResult::from_bool(true),
            Ok(v) => CheckResult::fail(format!(
                "initial V zero: {}, failing steps {:?}, telescopes: {}",
                v.v_initial_zero, v.step_failures, v.telescopes_to_constancy
            )),
        },
    });

    let mut sampler = PhiSampler::new(p.options.seed);
    let wants_identity = [GID5, GID6].iter().any(|n| !r.skip.contains(*n));
    let residuals = match (&data, wants_identity) {
        (Some(d), true) => {
            let start = Instant::now();
            let res = identity_residuals(&traj, d, p, &mut sampler, &cfg);
            // both forms share the sampled points; split the time evenly
            let half = start.elapsed().as_secs_f64() / 2.0;
            r.timings.insert(GID5.into(), half);
            r.timings.insert(GID6.into(), half);
            Some(res)
        }
        _ => None,
    };
    for (name, form) in [(GID5, IdentityForm::Gid5), (GID6, IdentityForm::Gid6)] {
        let result = match (&residuals, p.options.forms.contains(&form)) {
            _ if r.skip.contains(name) => CheckResult::skipped("skipped on request"),
            (_, false) => CheckResult::skipped("form not requested"),
            (None, _) => CheckResult::skipped("needs sign coherence"),
            (Some(Err(e)), _) => CheckResult::fail(e.to_string()),
            (Some(Ok(m)), _) => {
                let worst = m[&form];
                CheckResult::from_bool(worst < tol).with_residual(worst)
            }
        };
        r.checks.insert(name.to_string(), result);
    }

    r.run(PHI_INDEPENDENCE, || match &data {
        None => CheckResult::skipped("needs sign coherence"),
        Some(d) => {
            let rep = random_phi(&traj, &mut sampler).and_then(|base| {
                phi_independence(
                    &traj,
                    &d.signs,
                    sym,
                    &base,
                    p.options.trials,
                    &mut sampler,
                    tol,
                    &cfg,
                )
            });
            match rep {
                Ok(rep) => CheckResult::from_bool(rep.pass).with_residual(rep.spread),
                Err(e) => CheckResult::fail(e.to_string()),
            }
        }
    });

    let classical_period = r.passed(PERIOD);
    r.run(QUANTUM, || match &data {
        None => CheckResult::skipped("needs sign coherence"),
        Some(_) if !classical_period => CheckResult::skipped("needs a verified period"),
        Some(d) => {
            let n = p.options.quantum_n;
            match verify_quantum_identity(&traj, d, sym, n, p.options.quantum_rule) {
                Err(e) => CheckResult::fail(e.to_string()),
                Ok(q) if q.is_one => {
                    CheckResult::from_bool(true).with_detail(format!("exact through degree {n}"))
                }
                Ok(q) => CheckResult::fail(format!(
                    "{} nonzero coefficients through degree {n}, lowest {}",
                    q.residual_count,
                    q.first_residual.unwrap_or_default()
                )),
            }
        }
    });

    let timings = opts.timings.then(|| {
        r.timings
            .into_iter()
            .filter(|(k, _)| !r.skip.contains(k))
            .collect()
    });
    Ok(Report {
        name: p.name.clone(),
        rank: traj.rank(),
        degrees: p.seed.degrees().to_vec(),
        steps: traj.len(),
        random_seed: p.options.seed,
        trials: p.options.trials,
        tolerance: tol,
        sigma: one_based(&period.sigma),
        tropical_signs: data.map(|d| d.signs.iter().map(|s| s.value()).collect()),
        checks: r.checks,
        timings,
    })
}
