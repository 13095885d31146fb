use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Result;
use crate::numeric::rational::{format_rational, int, parse_rational};
use crate::numeric::{Rational, Symbol};

/// Names a system and its parameters; round-trips through JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SystemDescriptor {
    Kronecker {
        alpha: ConstantDescriptor,
        beta: ConstantDescriptor,
    },
    Sine {
        #[serde(default = "default_hint")]
        max_index_hint: u64,
    },
    Field {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        f_table: Option<Vec<RationalText>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        formula: Option<String>,
    },
}

fn default_hint() -> u64 {
    1000
}

impl SystemDescriptor {
    /// Kronecker system with `alpha = sqrt 2`, `beta = sqrt 3`.
    pub fn kronecker_default() -> Self {
        SystemDescriptor::Kronecker {
            alpha: ConstantDescriptor::sqrt(2),
            beta: ConstantDescriptor::sqrt(3),
        }
    }

    pub fn sine() -> Self {
        SystemDescriptor::Sine {
            max_index_hint: default_hint(),
        }
    }

    pub fn field_table(table: &[Rational]) -> Self {
        SystemDescriptor::Field {
            f_table: Some(table.iter().cloned().map(RationalText).collect()),
            formula: None,
        }
    }

    pub fn field_formula(name: &str) -> Self {
        SystemDescriptor::Field {
            f_table: None,
            formula: Some(name.to_string()),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SystemDescriptor::Kronecker { .. } => "kronecker",
            SystemDescriptor::Sine { .. } => "sine",
            SystemDescriptor::Field { .. } => "field",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ConstantDescriptor {
    Sqrt {
        radicand: RationalText,
    },
    Pi {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        multiple: Option<RationalText>,
    },
}

impl ConstantDescriptor {
    pub fn sqrt(n: i64) -> Self {
        ConstantDescriptor::Sqrt {
            radicand: RationalText(int(n)),
        }
    }

    pub fn symbol(&self) -> Symbol {
        match self {
            ConstantDescriptor::Sqrt { radicand } => Symbol::Sqrt(radicand.0.clone()),
            ConstantDescriptor::Pi { multiple } => Symbol::Pi(
                multiple
                    .as_ref()
                    .map_or_else(Rational::one, |m| m.0.clone()),
            ),
        }
    }
}

/// A rational written as a JSON integer when it is one, else as `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalText(pub Rational);

impl Serialize for RationalText {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.denom().is_one() {
            if let Some(n) = self.0.numer().to_i64() {
                return s.serialize_i64(n);
            }
        }
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for RationalText {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(RationalText(Rational::from_integer(BigInt::from(n)))),
            Raw::Text(t) => parse(&t).map(RationalText).map_err(serde::de::Error::custom),
        }
    }
}

fn parse(t: &str) -> Result<Rational> {
    parse_rational(t)
}
