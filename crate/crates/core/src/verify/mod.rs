//! Seeded property suites.
//!
//! Each check draws `trials` independent witnesses, scores each with a
//! statistic where larger is worse, and passes iff the worst score is within
//! the check's documented bound. Trial `t` draws from its own substream, so
//! the report does not depend on how trials are scheduled, and the worst
//! witness is serialized so it can be replayed with [`replay`].

mod checks;

use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::sampling;

pub use checks::CHECK_IDS;

pub const DEFAULT_TRIALS: usize = 1000;
pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_DIMS: (usize, usize) = (1, 8);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckConfig {
    pub check_id: String,
    pub seed: u64,
    pub trials: usize,
    /// Inclusive range of module dimensions to sample.
    pub dims: (usize, usize),
    pub tol: f64,
}

impl CheckConfig {
    pub fn new(check_id: &str, seed: u64, trials: usize) -> Self {
        CheckConfig {
            check_id: check_id.to_string(),
            seed,
            trials,
            dims: DEFAULT_DIMS,
            tol: DEFAULT_TOL,
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_dims(mut self, lo: usize, hi: usize) -> Self {
        self.dims = (lo, hi);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Parse("trials must be at least 1".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::Parse(format!("tol must be positive, got {}", self.tol)));
        }
        if self.dims.0 == 0 || self.dims.0 > self.dims.1 {
            return Err(Error::Parse(format!("invalid dimension range {:?}", self.dims)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_id: String,
    pub pass: bool,
    pub worst_value: f64,
    /// The check passes iff `worst_value <= bound`.
    pub bound: f64,
    pub worst_witness: Value,
    pub trials_run: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed: Option<f64>,
}

impl CheckReport {
    /// One JSON line. Timing is left out unless asked for, so that output is
    /// byte-identical across runs.
    pub fn to_json_line(&self, with_timing: bool) -> String {
        let mut r = self.clone();
        if !with_timing {
            r.elapsed = None;
        }
        serde_json::to_string(&r).expect("report serializes")
    }
}

/// A property suite with a typed witness.
pub(crate) trait Check: Sync {
    type Witness: Serialize + DeserializeOwned + Send;

    fn id(&self) -> &'static str;

    fn sample(&self, rng: &mut ChaCha8Rng, cfg: &CheckConfig, trial: u64) -> Self::Witness;

    /// Larger is worse.
    fn measure(&self, w: &Self::Witness, cfg: &CheckConfig) -> f64;

    fn bound(&self, cfg: &CheckConfig) -> f64;
}

pub(crate) trait DynCheck: Sync {
    fn id(&self) -> &'static str;
    fn run(&self, cfg: &CheckConfig) -> CheckReport;
    fn replay(&self, witness: &Value, cfg: &CheckConfig) -> Result<f64>;
}

/// NaN scores count as worst.
fn score_key(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

impl<C: Check> DynCheck for C {
    fn id(&self) -> &'static str {
        Check::id(self)
    }

    fn run(&self, cfg: &CheckConfig) -> CheckReport {
        let start = Instant::now();
        let stream = sampling::stream_id(Check::id(self));
        let (worst, _, witness) = (0..cfg.trials as u64)
            .into_par_iter()
            .map(|t| {
                let mut rng = sampling::substream(cfg.seed, stream, t);
                let w = self.sample(&mut rng, cfg, t);
                (score_key(self.measure(&w, cfg)), t, w)
            })
            .reduce_with(|a, b| {
                // larger score wins; ties go to the earlier trial
                if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            })
            .expect("at least one trial");
        let bound = self.bound(cfg);
        CheckReport {
            check_id: Check::id(self).to_string(),
            pass: worst <= bound,
            worst_value: worst,
            bound,
            worst_witness: serde_json::to_value(&witness).expect("witness serializes"),
            trials_run: cfg.trials,
            elapsed: Some(start.elapsed().as_secs_f64()),
        }
    }

    fn replay(&self, witness: &Value, cfg: &CheckConfig) -> Result<f64> {
        let w: C::Witness = serde_json::from_value(witness.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(score_key(self.measure(&w, cfg)))
    }
}

fn find(check_id: &str) -> Result<&'static dyn DynCheck> {
    checks::registry()
        .iter()
        .copied()
        .find(|c| c.id() == check_id)
        .ok_or_else(|| Error::UnknownCheckId(check_id.to_string()))
}

pub fn run_check(cfg: &CheckConfig) -> Result<CheckReport> {
    cfg.validate()?;
    Ok(find(&cfg.check_id)?.run(cfg))
}

/// Re-scores a serialized witness.
pub fn replay(cfg: &CheckConfig, witness: &Value) -> Result<f64> {
    cfg.validate()?;
    find(&cfg.check_id)?.replay(witness, cfg)
}

/// Runs every check in [`CHECK_IDS`] order.
pub fn run_all(seed: u64, trials: usize, tol: f64) -> Result<Vec<CheckReport>> {
    let cfgs: Vec<CheckConfig> = CHECK_IDS
        .iter()
        .map(|id| CheckConfig::new(id, seed, trials).with_tol(tol))
        .collect();
    for c in &cfgs {
        c.validate()?;
    }
    Ok(cfgs.par_iter().map(|c| find(&c.check_id).expect("registered").run(c)).collect())
}

pub fn all_pass(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.pass)
}
