use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{decode, encode, EncodedParameter, TupleSet};
use crate::error::{Error, Result};
use crate::systems::{self, Limits, SystemDescriptor};

/// How random tuple sets are drawn and which system encodes them.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct RoundtripConfig {
    pub system: SystemDescriptor,
    pub limits: Limits,
    pub trials: usize,
    pub seed: u64,
    pub max_m: usize,
    pub max_n: usize,
    pub max_index: u64,
}

impl Default for RoundtripConfig {
    fn default() -> Self {
        RoundtripConfig {
            system: SystemDescriptor::kronecker_default(),
            limits: Limits::default(),
            trials: 200,
            seed: 0,
            max_m: 3,
            max_n: 6,
            max_index: 20,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub code: String,
    pub message: String,
}

impl From<&Error> for ErrorReport {
    fn from(e: &Error) -> Self {
        ErrorReport {
            code: e.code().to_string(),
            message: e.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialReport {
    pub index: usize,
    pub m: usize,
    pub tuples: Vec<Vec<u64>>,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depths: Option<Vec<u64>>,
    /// Final bracket widths, rounded to three significant digits.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bracket_widths: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundtripReport {
    pub trials: usize,
    pub successes: usize,
    pub failures: usize,
    pub results: Vec<TrialReport>,
}

impl RoundtripReport {
    pub fn all_ok(&self) -> bool {
        self.failures == 0
    }
}

/// Draws the `index`-th random tuple set of a run.
pub fn random_tuple_set(cfg: &RoundtripConfig, index: usize) -> TupleSet {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(index as u64));
    let m = rng.gen_range(1..=cfg.max_m.max(1));
    let room = (cfg.max_index.max(1) as u128).saturating_pow(m as u32);
    let n = rng.gen_range(1..=cfg.max_n.max(1)).min(room.min(usize::MAX as u128) as usize);
    let mut tuples: Vec<Vec<u64>> = Vec::with_capacity(n);
    while tuples.len() < n {
        let t: Vec<u64> = (0..m).map(|_| rng.gen_range(1..=cfg.max_index.max(1))).collect();
        if !tuples.contains(&t) {
            tuples.push(t);
        }
    }
    TupleSet::new(m, tuples).expect("distinct tuples of the right arity")
}

fn width_text(p: &EncodedParameter) -> Vec<String> {
    p.brackets
        .iter()
        .map(|(lo, hi)| match hi.sub(lo) {
            Ok(w) => format!("{:.2e}", w.to_f64()),
            Err(_) => "nan".into(),
        })
        .collect()
}

fn trial(cfg: &RoundtripConfig, index: usize) -> TrialReport {
    let set = random_tuple_set(cfg, index);
    let mut report = TrialReport {
        index,
        m: set.m(),
        tuples: set.tuples().to_vec(),
        ok: false,
        depths: None,
        bracket_widths: None,
        error: None,
    };
    let outcome = (|| -> Result<bool> {
        let sys = systems::build(&cfg.system, cfg.limits)?;
        let param = encode(sys.as_ref(), &set)?;
        report.depths = Some(param.depths());
        report.bracket_widths = Some(width_text(&param));
        // through the wire format and back
        let text = serde_json::to_string(&param.to_json())?;
        let reread = EncodedParameter::from_json_with(&serde_json::from_str(&text)?, sys.as_ref())?;
        let back = decode(sys.as_ref(), &reread, set.len())?;
        Ok(back == set)
    })();
    match outcome {
        Ok(ok) => report.ok = ok,
        Err(e) => report.error = Some((&e).into()),
    }
    report
}

/// Encodes and decodes `cfg.trials` random tuple sets. Trials run in
/// parallel; the report is ordered by trial index and does not depend on
/// scheduling.
pub fn roundtrip(cfg: &RoundtripConfig) -> Result<RoundtripReport> {
    cfg.limits.validate()?;
    let results: Vec<TrialReport> = (0..cfg.trials).into_par_iter().map(|i| trial(cfg, i)).collect();
    let successes = results.iter().filter(|r| r.ok).count();
    Ok(RoundtripReport {
        trials: cfg.trials,
        successes,
        failures: cfg.trials - successes,
        results,
    })
}
