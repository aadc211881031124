//! JSON wire format and canonical text rendering.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{exp_string, QSeries, YPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireCoeff {
    pub upow: i64,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireTerm {
    pub exp_num: i64,
    pub poly: Vec<WireCoeff>,
}

/// `{base_den, trunc_num, terms: [{exp_num, poly: [{upow, num, den}]}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesWire {
    pub base_den: i64,
    pub trunc_num: i64,
    pub terms: Vec<WireTerm>,
}

pub(crate) fn parse_bigint(s: &str) -> Result<BigInt> {
    s.parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("bad integer {s:?}")))
}

/// Parses `"n"` or `"n/d"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_bigint(s)?)),
        Some((n, d)) => {
            let d = parse_bigint(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(parse_bigint(n)?, d))
        }
    }
}

pub fn rational_string(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl QSeries {
    pub fn to_wire(&self) -> SeriesWire {
        SeriesWire {
            base_den: self.den,
            trunc_num: self.trunc,
            terms: self
                .terms
                .iter()
                .map(|(n, p)| WireTerm {
                    exp_num: *n,
                    poly: p
                        .terms()
                        .iter()
                        .map(|(m, c)| WireCoeff {
                            upow: *m,
                            num: c.numer().to_string(),
                            den: c.denom().to_string(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    /// Rebuilds a series, rejecting anything that is not in canonical form so
    /// that a round trip is bit-exact.
    pub fn from_wire(w: &SeriesWire) -> Result<QSeries> {
        if w.base_den <= 0 {
            return Err(Error::Parse("base_den must be positive".into()));
        }
        let mut terms = Vec::with_capacity(w.terms.len());
        for t in &w.terms {
            let mut cs = Vec::with_capacity(t.poly.len());
            for c in &t.poly {
                let den = parse_bigint(&c.den)?;
                if !den.is_positive() {
                    return Err(Error::Parse("coefficient denominator must be positive".into()));
                }
                cs.push((c.upow, BigRational::new(parse_bigint(&c.num)?, den)));
            }
            terms.push((t.exp_num, YPoly::from_terms(cs)));
        }
        let s = QSeries::from_grid(w.base_den, w.trunc_num, terms);
        if s.to_wire() != *w {
            return Err(Error::Parse("series record is not in canonical form".into()));
        }
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_wire()).expect("series serializes")
    }

    pub fn from_json(s: &str) -> Result<QSeries> {
        let w: SeriesWire =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        QSeries::from_wire(&w)
    }
}

/// `(poly)*q^e + ... + O(q^T)` in ascending order.
impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, p) in self.terms() {
            if p.len() == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "({p})")?;
            }
            if !e.is_zero() {
                write!(f, "*q^{}", exp_string(e))?;
            }
            write!(f, " + ")?;
        }
        write!(f, "O(q^{})", exp_string(self.trunc()))
    }
}
