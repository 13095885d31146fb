use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// A candidate `(L, R)` up to `d`. Construction only checks shape; whether
/// it is a finite approximation depends on the system.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteApproximation {
    pub l: Vec<u64>,
    pub r: Vec<u64>,
    pub d: u64,
}

impl FiniteApproximation {
    /// `L`, `R` strictly increasing inside `1..=d` and disjoint.
    pub fn new(l: Vec<u64>, r: Vec<u64>, d: u64) -> Result<Self> {
        for (name, s) in [("L", &l), ("R", &r)] {
            if s.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidInput(format!("{name} is not strictly increasing")));
            }
            if s.iter().any(|&x| x == 0 || x > d) {
                return Err(Error::InvalidInput(format!("{name} leaves 1..={d}")));
            }
        }
        if l.iter().any(|x| r.binary_search(x).is_ok()) {
            return Err(Error::InvalidInput("L and R overlap".into()));
        }
        Ok(FiniteApproximation { l, r, d })
    }

    /// The empty pair up to `0`, where the encoder's chains start.
    pub fn empty() -> Self {
        FiniteApproximation {
            l: Vec::new(),
            r: Vec::new(),
            d: 0,
        }
    }

    /// Whether `self` cut at `prev.d` gives back `prev`.
    pub fn extends(&self, prev: &FiniteApproximation) -> bool {
        let cut = |s: &[u64]| -> Vec<u64> { s.iter().copied().take_while(|&x| x <= prev.d).collect() };
        self.d >= prev.d && cut(&self.l) == prev.l && cut(&self.r) == prev.r
    }

    pub fn to_json(&self) -> FiniteApproximationJson {
        FiniteApproximationJson {
            l: self.l.iter().copied().map(Index).collect(),
            r: self.r.iter().copied().map(Index).collect(),
            d: Index(self.d),
        }
    }

    pub fn from_json(j: &FiniteApproximationJson) -> Result<Self> {
        let unwrap = |v: &[Index]| v.iter().map(|i| i.0).collect();
        Self::new(unwrap(&j.l), unwrap(&j.r), j.d.0)
            .map_err(|e| Error::Parse(format!("bad finite approximation: {e}")))
    }
}

impl fmt::Display for FiniteApproximation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?}, {})", self.l, self.r, self.d)
    }
}

/// Nested finite approximations with increasing depth.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ApproximationChain {
    pub entries: Vec<FiniteApproximation>,
}

impl ApproximationChain {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, a: FiniteApproximation) {
        self.entries.push(a);
    }

    pub fn last(&self) -> Option<&FiniteApproximation> {
        self.entries.last()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_json(&self) -> Vec<FiniteApproximationJson> {
        self.entries.iter().map(|a| a.to_json()).collect()
    }

    pub fn from_json(j: &[FiniteApproximationJson]) -> Result<Self> {
        Ok(ApproximationChain {
            entries: j.iter().map(FiniteApproximation::from_json).collect::<Result<_>>()?,
        })
    }
}

/// Wire form: `{"L": [...], "R": [...], "d": n}` with indices written as
/// decimal strings; plain JSON numbers are accepted on input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteApproximationJson {
    #[serde(rename = "L")]
    pub l: Vec<Index>,
    #[serde(rename = "R")]
    pub r: Vec<Index>,
    pub d: Index,
}

/// A domain index that serializes as a decimal string.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Index(pub u64);

impl Serialize for Index {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Index {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Index;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a nonnegative integer or its decimal string")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Index, E> {
                Ok(Index(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Index, E> {
                u64::try_from(v).map(Index).map_err(|_| E::custom("negative index"))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Index, E> {
                if v.is_empty() || !v.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(E::custom(format!("bad index {v:?}")));
                }
                v.parse().map(Index).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}
