//! Encoding finite relations `A ⊆ D^m` into three real parameters and
//! reading them back.

mod cover;
mod decode;
mod encode;
mod roundtrip;

use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::engine::{limit_interval, validate_chain, ApproximationChain, FiniteApproximationJson, Index};
use crate::error::{Error, Result};
use crate::numeric::{LinearForm, LinearFormJson, ParamReal};
use crate::systems::{self, ApproximationSystem, Limits, SystemDescriptor};

pub use cover::{cover_open_set, RationalBox};
pub use decode::{decode, decode_reals};
pub use encode::{condition_iv_witness, encode};
pub use roundtrip::{random_tuple_set, roundtrip, ErrorReport, RoundtripConfig, RoundtripReport, TrialReport};

/// An ordered list of distinct `m`-tuples of domain indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleSet {
    m: usize,
    tuples: Vec<Vec<u64>>,
}

impl TupleSet {
    pub fn new(m: usize, tuples: Vec<Vec<u64>>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput("arity must be at least 1".into()));
        }
        let mut seen = HashSet::with_capacity(tuples.len());
        for t in &tuples {
            if t.len() != m {
                return Err(Error::InvalidInput(format!(
                    "tuple {t:?} does not have arity {m}"
                )));
            }
            if t.contains(&0) {
                return Err(Error::InvalidInput(format!("tuple {t:?} has a zero entry")));
            }
            if !seen.insert(t.as_slice()) {
                return Err(Error::DuplicateTuple(format!("{t:?}")));
            }
        }
        Ok(TupleSet { m, tuples })
    }

    pub fn empty(m: usize) -> Self {
        TupleSet {
            m: m.max(1),
            tuples: Vec::new(),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuples(&self) -> &[Vec<u64>] {
        &self.tuples
    }

    /// Largest entry among the first `k` tuples.
    pub(crate) fn max_entry(&self, k: usize) -> u64 {
        self.tuples[..k.min(self.tuples.len())]
            .iter()
            .flatten()
            .copied()
            .max()
            .unwrap_or(0)
    }

    pub fn to_json(&self) -> TupleSetJson {
        TupleSetJson {
            m: Index(self.m as u64),
            tuples: self
                .tuples
                .iter()
                .map(|t| t.iter().copied().map(Index).collect())
                .collect(),
        }
    }

    pub fn from_json(j: &TupleSetJson) -> Result<Self> {
        Self::new(
            j.m.0 as usize,
            j.tuples.iter().map(|t| t.iter().map(|i| i.0).collect()).collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleSetJson {
    pub m: Index,
    pub tuples: Vec<Vec<Index>>,
}

/// The three chains built by the encoder and their limit brackets.
#[derive(Clone, Debug)]
pub struct EncodedParameter {
    pub system: SystemDescriptor,
    pub m: usize,
    pub n_tuples: usize,
    pub final_depth: u64,
    pub chains: [ApproximationChain; 3],
    /// `(max f(L), min f(R))` of each chain's last entry.
    pub brackets: [(LinearForm, LinearForm); 3],
}

impl EncodedParameter {
    /// The depths `d_0 < d_1 < ...`, which are also the left points of
    /// the first chain.
    pub fn depths(&self) -> Vec<u64> {
        self.chains[0].entries.iter().map(|a| a.d).collect()
    }

    /// Each `c_i` as an open bracket.
    pub fn params(&self) -> Result<[ParamReal; 3]> {
        let p = |i: usize| ParamReal::between(self.brackets[i].0.clone(), self.brackets[i].1.clone());
        Ok([p(0)?, p(1)?, p(2)?])
    }

    pub fn to_json(&self) -> EncodedParameterJson {
        EncodedParameterJson {
            system: self.system.clone(),
            m: Index(self.m as u64),
            n_tuples: Index(self.n_tuples as u64),
            final_depth: Index(self.final_depth),
            chains: self.chains.iter().map(|c| c.to_json()).collect(),
            brackets: self
                .brackets
                .iter()
                .map(|(lo, hi)| BracketJson {
                    lo: lo.to_json(),
                    hi: hi.to_json(),
                })
                .collect(),
        }
    }

    /// Builds the named system and checks the chains against it. Any
    /// inconsistency is reported as a parse error.
    pub fn from_json(
        j: &EncodedParameterJson,
        limits: Limits,
    ) -> Result<(Arc<dyn ApproximationSystem>, EncodedParameter)> {
        let sys = systems::build(&j.system, limits)?;
        let param = Self::from_json_with(j, sys.as_ref())?;
        Ok((sys, param))
    }

    pub fn from_json_with(j: &EncodedParameterJson, sys: &dyn ApproximationSystem) -> Result<Self> {
        let bad = |msg: String| Error::Parse(format!("encoded parameter: {msg}"));
        if j.system != sys.descriptor() {
            return Err(bad("system does not match".into()));
        }
        if j.chains.len() != 3 || j.brackets.len() != 3 {
            return Err(bad("expected three chains and three brackets".into()));
        }
        let m = j.m.0 as usize;
        let n_tuples = j.n_tuples.0 as usize;
        let steps = m
            .checked_mul(n_tuples)
            .and_then(|s| s.checked_add(1))
            .ok_or_else(|| bad("size overflow".into()))?;
        let mut chains: Vec<ApproximationChain> = Vec::with_capacity(3);
        for c in &j.chains {
            let chain = ApproximationChain::from_json(c)?;
            if chain.len() != steps {
                return Err(bad(format!("chain has {} entries, expected {steps}", chain.len())));
            }
            validate_chain(sys, &chain).map_err(|e| match e {
                Error::InvalidChain(msg) => bad(msg),
                other => other,
            })?;
            chains.push(chain);
        }
        let depths: Vec<u64> = chains[0].entries.iter().map(|a| a.d).collect();
        for c in &chains[1..] {
            if c.entries.iter().map(|a| a.d).ne(depths.iter().copied()) {
                return Err(bad("chains disagree on depths".into()));
            }
        }
        if chains[0].last().map(|a| a.l.as_slice()) != Some(depths.as_slice()) {
            return Err(bad("first chain's left points are not the depths".into()));
        }
        if depths.last() != Some(&j.final_depth.0) {
            return Err(bad("final depth does not match the chains".into()));
        }
        let basis = sys.basis();
        let mut brackets = Vec::with_capacity(3);
        for (b, chain) in j.brackets.iter().zip(&chains) {
            let lo = LinearForm::from_json(&b.lo, basis)?;
            let hi = LinearForm::from_json(&b.hi, basis)?;
            let (elo, ehi) = limit_interval(sys, chain)?;
            if lo != elo || hi != ehi {
                return Err(bad("bracket does not match its chain".into()));
            }
            brackets.push((lo, hi));
        }
        let chains: [ApproximationChain; 3] = chains.try_into().expect("three chains");
        let brackets: [(LinearForm, LinearForm); 3] = brackets.try_into().expect("three brackets");
        Ok(EncodedParameter {
            system: j.system.clone(),
            m,
            n_tuples,
            final_depth: j.final_depth.0,
            chains,
            brackets,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EncodedParameterJson {
    pub system: SystemDescriptor,
    pub m: Index,
    pub n_tuples: Index,
    pub final_depth: Index,
    pub chains: Vec<Vec<FiniteApproximationJson>>,
    pub brackets: Vec<BracketJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketJson {
    pub lo: LinearFormJson,
    pub hi: LinearFormJson,
}
