//! JSON and CSV forms of exact series and six-component vectors.

use std::str::FromStr;

use mocktheta_core::qexact::{FracPowerSeries, EXP_DEN};
use mocktheta_core::tenth::{Family, FormVector};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported exponent denominator {0}")]
    Denominator(i64),
    #[error("bad coefficient {0:?}")]
    Coefficient(String),
    #[error("unknown family {0:?}")]
    Family(String),
}

/// `{"den": 80, "terms": [[num_exponent, "p/q"], …], "order_num": n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub den: i64,
    pub terms: Vec<(i64, String)>,
    pub order_num: i64,
}

impl From<&FracPowerSeries> for SeriesJson {
    fn from(s: &FracPowerSeries) -> Self {
        SeriesJson {
            den: EXP_DEN,
            terms: s.terms().map(|(e, c)| (e, c.to_string())).collect(),
            order_num: s.order_num(),
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational, FormatError> {
    let bad = || FormatError::Coefficient(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let q = BigInt::from_str(q).map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(BigInt::from_str(p).map_err(|_| bad())?, q))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

impl SeriesJson {
    pub fn to_series(&self) -> Result<FracPowerSeries, FormatError> {
        if self.den != EXP_DEN {
            return Err(FormatError::Denominator(self.den));
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| Ok((*e, parse_rational(c)?)))
            .collect::<Result<Vec<_>, FormatError>>()?;
        Ok(FracPowerSeries::from_terms(terms, self.order_num))
    }
}

pub fn series_to_json(s: &FracPowerSeries) -> String {
    serde_json::to_string(&SeriesJson::from(s)).expect("series serializes")
}

pub fn series_from_json(text: &str) -> Result<FracPowerSeries, FormatError> {
    serde_json::from_str::<SeriesJson>(text)?.to_series()
}

/// `exponent,coefficient` rows with the exponent as a reduced fraction.
pub fn series_to_csv(s: &FracPowerSeries) -> String {
    let mut out = String::from("exponent,coefficient\n");
    for (e, c) in s.terms() {
        let g = num_integer::gcd(e, EXP_DEN);
        let (n, d) = (e / g, EXP_DEN / g);
        let exp = if d == 1 { n.to_string() } else { format!("{n}/{d}") };
        out += &format!("{exp},{c}\n");
    }
    out
}

/// `{"family": "F1", "tau": [re, im], "entries": [[re, im] ×6], "err": e}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormVectorJson {
    pub family: String,
    pub tau: [f64; 2],
    pub entries: Vec<[f64; 2]>,
    pub err: f64,
}

impl From<&FormVector> for FormVectorJson {
    fn from(v: &FormVector) -> Self {
        FormVectorJson {
            family: v.family.name().to_string(),
            tau: [v.tau.re, v.tau.im],
            entries: v.entries.iter().map(|z| [z.re, z.im]).collect(),
            err: v.err,
        }
    }
}

impl FormVectorJson {
    pub fn to_vector(&self) -> Result<FormVector, FormatError> {
        let family = match self.family.as_str() {
            "F1" => Family::F1,
            "F2" => Family::F2,
            other => return Err(FormatError::Family(other.to_string())),
        };
        if self.entries.len() != 6 {
            return Err(FormatError::Coefficient(format!("{} entries", self.entries.len())));
        }
        let mut entries = [Complex64::new(0.0, 0.0); 6];
        for (e, [re, im]) in entries.iter_mut().zip(&self.entries) {
            *e = Complex64::new(*re, *im);
        }
        Ok(FormVector { family, tau: Complex64::new(self.tau[0], self.tau[1]), entries, err: self.err })
    }
}

pub fn vector_to_json(v: &FormVector) -> String {
    serde_json::to_string(&FormVectorJson::from(v)).expect("vector serializes")
}

pub fn vector_from_json(text: &str) -> Result<FormVector, FormatError> {
    serde_json::from_str::<FormVectorJson>(text)?.to_vector()
}
