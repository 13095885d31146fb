use std::cmp::Ordering;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::approx::Approx;
use super::basis::IrrationalBasis;
use super::form::{LinearForm, LinearFormJson};
use crate::error::{Error, Result};

/// The `c` argument of best approximations and of `g`: either an exact
/// value or an open bracket `(lo, hi)` on which the caller promises that
/// every comparison the computation needs comes out the same.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamReal {
    Exact(LinearForm),
    Between(LinearForm, LinearForm),
}

impl ParamReal {
    pub fn between(lo: LinearForm, hi: LinearForm) -> Result<Self> {
        if lo.compare(&hi)? != Ordering::Less {
            return Err(Error::InvalidInput(format!(
                "bracket ({lo}, {hi}) is empty"
            )));
        }
        Ok(ParamReal::Between(lo, hi))
    }

    pub fn basis(&self) -> &Arc<IrrationalBasis> {
        match self {
            ParamReal::Exact(x) => x.basis(),
            ParamReal::Between(lo, _) => lo.basis(),
        }
    }

    /// Where `x` lies relative to `c`: `Less` means `x < c`. A bracket
    /// resolves `x` only when `x` is outside the open bracket.
    pub fn locate(&self, x: &LinearForm) -> Result<Ordering> {
        match self {
            ParamReal::Exact(c) => x.compare(c),
            ParamReal::Between(lo, hi) => {
                if x.compare(lo)? != Ordering::Greater {
                    Ok(Ordering::Less)
                } else if x.compare(hi)? != Ordering::Less {
                    Ok(Ordering::Greater)
                } else {
                    Err(self.unresolved(x))
                }
            }
        }
    }

    /// `locate` on enclosures only; `None` when they do not decide.
    pub fn locate_approx(&self, x: &Approx) -> Option<Ordering> {
        match self {
            ParamReal::Exact(c) => x.try_cmp(&c.approx()),
            ParamReal::Between(lo, hi) => {
                if x.try_cmp(&lo.approx()) == Some(Ordering::Less) {
                    Some(Ordering::Less)
                } else if x.try_cmp(&hi.approx()) == Some(Ordering::Greater) {
                    Some(Ordering::Greater)
                } else {
                    None
                }
            }
        }
    }

    pub(crate) fn unresolved(&self, x: &LinearForm) -> Error {
        Error::PrecisionCapExceeded {
            cap: self.basis().precision_cap(),
            context: format!("comparing {x} with a parameter bracket that straddles it"),
        }
    }

    pub fn to_json(&self) -> ParamRealJson {
        match self {
            ParamReal::Exact(x) => ParamRealJson::Exact { exact: x.to_json() },
            ParamReal::Between(lo, hi) => ParamRealJson::Between {
                lo: lo.to_json(),
                hi: hi.to_json(),
            },
        }
    }

    pub fn from_json(j: &ParamRealJson, basis: &Arc<IrrationalBasis>) -> Result<Self> {
        match j {
            ParamRealJson::Exact { exact } => {
                Ok(ParamReal::Exact(LinearForm::from_json(exact, basis)?))
            }
            ParamRealJson::Between { lo, hi } => ParamReal::between(
                LinearForm::from_json(lo, basis)?,
                LinearForm::from_json(hi, basis)?,
            ),
        }
    }
}

/// `{"exact": form}` or `{"lo": form, "hi": form}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum ParamRealJson {
    Exact { exact: LinearFormJson },
    Between { lo: LinearFormJson, hi: LinearFormJson },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::ratio;

    #[test]
    fn bracket_resolves_outside_points_only() {
        let b = IrrationalBasis::from_names(&["1", "sqrt:2"], 256).unwrap();
        let lo = LinearForm::rational(&b, ratio(1, 3));
        let hi = LinearForm::rational(&b, ratio(1, 2));
        let c = ParamReal::between(lo.clone(), hi.clone()).unwrap();
        assert_eq!(c.locate(&lo).unwrap(), Ordering::Less);
        assert_eq!(c.locate(&hi).unwrap(), Ordering::Greater);
        let inside = LinearForm::rational(&b, ratio(2, 5));
        assert!(c.locate(&inside).unwrap_err().is_cap());
        assert!(ParamReal::between(hi, lo).is_err());
    }
}
