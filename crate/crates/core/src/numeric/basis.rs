//! Irrational bases: an ordered, append-only list of real constants that are
//! linearly independent over the rationals, position 0 being the unit.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::approx::SymbolApprox;
use super::fixed::{pi_enclosure, sin_int_enclosure, sqrt_enclosure};
use super::interval::RationalInterval;
use super::rational::{format_rational, is_rational_square, parse_rational, Rational};
use crate::error::{Error, Result};

/// Default ceiling for sign refinement, in bits.
pub const DEFAULT_PRECISION_CAP: u32 = 1 << 16;

/// First rung of the refinement ladder; each further rung doubles it.
pub const LADDER_START: u32 = 16;

/// Source of enclosures for a user-supplied constant: given `bits`, returns
/// an interval of width at most `2^-bits` containing the constant.
pub type DigitSource = Arc<dyn Fn(u32) -> RationalInterval + Send + Sync>;

#[derive(Clone)]
pub struct DigitStream {
    pub name: String,
    pub source: DigitSource,
    /// Must be set by the caller: independence of a stream from the rest of
    /// the basis cannot be verified.
    pub asserted_independent: bool,
}

impl fmt::Debug for DigitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DigitStream")
            .field("name", &self.name)
            .field("asserted_independent", &self.asserted_independent)
            .finish()
    }
}

#[derive(Clone, Debug)]
pub enum Symbol {
    One,
    /// Square root of a positive rational that is not a rational square.
    Sqrt(Rational),
    /// `sin(k)` for a positive integer `k`.
    Sin(u64),
    /// A nonzero rational multiple of pi.
    Pi(Rational),
    Stream(DigitStream),
}

impl Symbol {
    /// Stable textual name used in JSON: `1`, `sqrt:2`, `sin:5`, `pi`,
    /// `pi:1/2`, `stream:<name>`.
    pub fn name(&self) -> String {
        match self {
            Symbol::One => "1".into(),
            Symbol::Sqrt(r) => format!("sqrt:{}", format_rational(r)),
            Symbol::Sin(k) => format!("sin:{k}"),
            Symbol::Pi(q) if q.is_one() => "pi".into(),
            Symbol::Pi(q) => format!("pi:{}", format_rational(q)),
            Symbol::Stream(s) => format!("stream:{}", s.name),
        }
    }

    /// Parses every name except streams, which need a digit source.
    pub fn parse(name: &str) -> Result<Symbol> {
        let name = name.trim();
        if name == "1" {
            return Ok(Symbol::One);
        }
        if name == "pi" {
            return Ok(Symbol::Pi(Rational::one()));
        }
        let (kind, arg) = name
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("unknown basis symbol {name:?}")))?;
        match kind {
            "sqrt" => Ok(Symbol::Sqrt(parse_rational(arg)?)),
            "sin" => {
                let k: u64 = arg
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad sine index in {name:?}")))?;
                Ok(Symbol::Sin(k))
            }
            "pi" => Ok(Symbol::Pi(parse_rational(arg)?)),
            "stream" => Err(Error::Parse(format!(
                "stream symbol {name:?} must be registered with its digit source"
            ))),
            _ => Err(Error::Parse(format!("unknown basis symbol {name:?}"))),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Symbol::One => Ok(()),
            Symbol::Sqrt(r) => {
                if !r.is_positive() {
                    Err(Error::InvalidBasis(format!("sqrt of non-positive {r}")))
                } else if is_rational_square(r) {
                    Err(Error::InvalidBasis(format!("sqrt:{r} is rational")))
                } else {
                    Ok(())
                }
            }
            Symbol::Sin(k) if *k == 0 => Err(Error::InvalidBasis("sin:0 is zero".into())),
            Symbol::Sin(_) => Ok(()),
            Symbol::Pi(q) if q.is_zero() => Err(Error::InvalidBasis("pi:0 is zero".into())),
            Symbol::Pi(_) => Ok(()),
            Symbol::Stream(s) if !s.asserted_independent => Err(Error::InvalidBasis(format!(
                "stream {:?} needs an explicit independence assertion",
                s.name
            ))),
            Symbol::Stream(_) => Ok(()),
        }
    }

    /// Rejects additions whose independence from `existing` is false or
    /// not known.
    fn compatible_with(&self, existing: &Symbol) -> Result<()> {
        match (self, existing) {
            (Symbol::Sqrt(a), Symbol::Sqrt(b)) => {
                if is_rational_square(&(a * b)) {
                    Err(Error::InvalidBasis(format!(
                        "sqrt:{a} is a rational multiple of sqrt:{b}"
                    )))
                } else {
                    Ok(())
                }
            }
            (Symbol::Pi(_), Symbol::Pi(_)) => Err(Error::InvalidBasis(
                "two multiples of pi are dependent".into(),
            )),
            (Symbol::Pi(_), Symbol::Sin(_)) | (Symbol::Sin(_), Symbol::Pi(_)) => {
                Err(Error::InvalidBasis(
                    "independence of pi from sin(k) is not known; use a stream with an assertion"
                        .into(),
                ))
            }
            _ => Ok(()),
        }
    }

    /// Raw enclosure of width at most `2^-bits`.
    fn enclosure(&self, bits: u32) -> RationalInterval {
        match self {
            Symbol::One => RationalInterval::point(Rational::one()),
            Symbol::Sqrt(r) => sqrt_enclosure(r, bits),
            Symbol::Sin(k) => sin_int_enclosure(&BigInt::from(*k), bits),
            Symbol::Pi(q) => {
                let extra = super::rational::ceil_log2_abs(q);
                pi_enclosure(bits + extra).scale(q)
            }
            Symbol::Stream(s) => (s.source)(bits),
        }
    }
}

/// A basis symbol together with its cached refinement ladder.
pub struct SymbolEntry {
    pub symbol: Symbol,
    pub approx: SymbolApprox,
    // rung j holds the intersection of the raw enclosures at
    // LADDER_START * 2^i for i <= j, so rungs are nested
    ladder: Mutex<Vec<RationalInterval>>,
}

impl SymbolEntry {
    fn new(symbol: Symbol) -> Self {
        let e = SymbolEntry {
            symbol,
            approx: SymbolApprox::ONE,
            ladder: Mutex::new(Vec::new()),
        };
        let iv = e.enclosure(128);
        SymbolEntry {
            approx: SymbolApprox::from_enclosure(&iv.lo, &iv.hi),
            ..e
        }
    }

    /// Nested enclosure of width at most `2^-bits`: for `p <= q`,
    /// `enclosure(q)` is contained in `enclosure(p)`.
    pub fn enclosure(&self, bits: u32) -> RationalInterval {
        if let Symbol::One = self.symbol {
            return RationalInterval::point(Rational::one());
        }
        let mut rung = 0usize;
        let mut level = LADDER_START;
        while level < bits {
            level = level.saturating_mul(2);
            rung += 1;
        }
        let mut ladder = self.ladder.lock().expect("ladder lock poisoned");
        while ladder.len() <= rung {
            let j = ladder.len();
            let raw = self.symbol.enclosure(LADDER_START << j);
            let next = match ladder.last() {
                Some(prev) => prev.intersect(&raw).unwrap_or(raw),
                None => raw,
            };
            ladder.push(next);
        }
        ladder[rung].clone()
    }
}

impl fmt::Debug for SymbolEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol.name())
    }
}

/// Ordered list of independent real constants; append-only and shareable.
pub struct IrrationalBasis {
    entries: RwLock<Vec<Arc<SymbolEntry>>>,
    by_name: RwLock<HashMap<String, u32>>,
    precision_cap: u32,
    growable: bool,
}

impl fmt::Debug for IrrationalBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}

impl IrrationalBasis {
    /// A basis holding only the unit.
    pub fn unit() -> Arc<Self> {
        Self::with_cap(DEFAULT_PRECISION_CAP)
    }

    pub fn with_cap(precision_cap: u32) -> Arc<Self> {
        Self::build(precision_cap, false)
    }

    /// A basis that accepts new symbols while decoding JSON. Forms over it
    /// serialize only the symbols they use.
    pub fn growable(precision_cap: u32) -> Arc<Self> {
        Self::build(precision_cap, true)
    }

    fn build(precision_cap: u32, growable: bool) -> Arc<Self> {
        let one = Arc::new(SymbolEntry::new(Symbol::One));
        let mut by_name = HashMap::new();
        by_name.insert("1".to_string(), 0);
        Arc::new(IrrationalBasis {
            entries: RwLock::new(vec![one]),
            by_name: RwLock::new(by_name),
            precision_cap: precision_cap.max(LADDER_START),
            growable,
        })
    }

    /// Builds a basis from symbol names; the first name must be `1`.
    pub fn from_names(names: &[&str], precision_cap: u32) -> Result<Arc<Self>> {
        let basis = Self::with_cap(precision_cap);
        match names.first() {
            Some(&"1") => {}
            _ => return Err(Error::InvalidBasis("position 0 must be the unit 1".into())),
        }
        for name in &names[1..] {
            let sym = Symbol::parse(name)?;
            if basis.lookup(&sym.name()).is_some() {
                return Err(Error::InvalidBasis(format!("duplicate symbol {name}")));
            }
            basis.intern(sym)?;
        }
        Ok(basis)
    }

    pub fn is_growable(&self) -> bool {
        self.growable
    }

    pub fn precision_cap(&self) -> u32 {
        self.precision_cap
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("basis lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn names(&self) -> Vec<String> {
        self.entries
            .read()
            .expect("basis lock poisoned")
            .iter()
            .map(|e| e.symbol.name())
            .collect()
    }

    pub fn lookup(&self, name: &str) -> Option<u32> {
        self.by_name
            .read()
            .expect("basis lock poisoned")
            .get(name)
            .copied()
    }

    pub fn entry(&self, idx: u32) -> Arc<SymbolEntry> {
        self.entries.read().expect("basis lock poisoned")[idx as usize].clone()
    }

    pub fn symbol_approx(&self, idx: u32) -> SymbolApprox {
        self.entries.read().expect("basis lock poisoned")[idx as usize].approx
    }

    /// Index of `symbol`, appending it when new. Fails when the addition
    /// would break (or cannot be shown to keep) linear independence.
    pub fn intern(&self, symbol: Symbol) -> Result<u32> {
        let name = symbol.name();
        if let Some(i) = self.lookup(&name) {
            return Ok(i);
        }
        if let Symbol::One = symbol {
            return Ok(0);
        }
        symbol.validate()?;
        {
            let entries = self.entries.read().expect("basis lock poisoned");
            for e in entries.iter() {
                symbol.compatible_with(&e.symbol)?;
            }
        }
        // expensive part outside the write lock
        let entry = Arc::new(SymbolEntry::new(symbol));
        let mut entries = self.entries.write().expect("basis lock poisoned");
        let mut by_name = self.by_name.write().expect("basis lock poisoned");
        if let Some(&i) = by_name.get(&name) {
            return Ok(i);
        }
        let idx = entries.len() as u32;
        entries.push(entry);
        by_name.insert(name, idx);
        Ok(idx)
    }

    pub fn intern_name(&self, name: &str) -> Result<u32> {
        if let Some(i) = self.lookup(name) {
            return Ok(i);
        }
        self.intern(Symbol::parse(name)?)
    }
}
