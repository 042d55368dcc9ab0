use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exact::{ExactReal, Rat};

/// A number as written by a user.
///
/// Text form: `p/q` (or `p`), `sqrt:p/q`, `fracsqrt:s`.
/// JSON form: `{"num": .., "den": ..}`, `{"sqrt_of": {"num": .., "den": ..}}`,
/// or `{"sqrt_of": s}` for the fractional part of `sqrt(s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NumberSpec {
    Rational(Rat),
    SqrtOf(Rat),
    FracSqrt(u64),
}

impl NumberSpec {
    pub fn to_real(&self) -> Result<ExactReal> {
        match self {
            NumberSpec::Rational(r) => Ok(ExactReal::from(r.clone())),
            NumberSpec::SqrtOf(r) => ExactReal::sqrt_of_rat(r.clone()),
            NumberSpec::FracSqrt(s) => ExactReal::frac_sqrt(&BigUint::from(*s)),
        }
    }
}

impl FromStr for NumberSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |e: String| Error::InvalidArgument(format!("number `{s}`: {e}"));
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("sqrt:") {
            return rest.parse().map(NumberSpec::SqrtOf).map_err(bad);
        }
        if let Some(rest) = s.strip_prefix("fracsqrt:") {
            return rest
                .trim()
                .parse()
                .map(NumberSpec::FracSqrt)
                .map_err(|e| bad(format!("{e}")));
        }
        s.parse().map(NumberSpec::Rational).map_err(bad)
    }
}

impl fmt::Display for NumberSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumberSpec::Rational(r) => write!(f, "{r}"),
            NumberSpec::SqrtOf(r) => write!(f, "sqrt:{r}"),
            NumberSpec::FracSqrt(s) => write!(f, "fracsqrt:{s}"),
        }
    }
}

fn rat_from_value(v: &Value) -> std::result::Result<Rat, String> {
    let part = |key: &str| -> std::result::Result<String, String> {
        match v.get(key) {
            Some(Value::String(s)) => Ok(s.clone()),
            Some(Value::Number(n)) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
            _ => Err(format!("expected integer or string field `{key}`")),
        }
    };
    format!("{}/{}", part("num")?, part("den")?).parse()
}

impl<'de> Deserialize<'de> for NumberSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(deserializer)?;
        match v.get("sqrt_of") {
            Some(Value::Number(n)) => n
                .as_u64()
                .map(NumberSpec::FracSqrt)
                .ok_or_else(|| D::Error::custom("sqrt_of must be a nonnegative integer")),
            Some(inner @ Value::Object(_)) => rat_from_value(inner)
                .map(NumberSpec::SqrtOf)
                .map_err(D::Error::custom),
            Some(_) => Err(D::Error::custom("sqrt_of must be an integer or {num, den}")),
            None => rat_from_value(&v)
                .map(NumberSpec::Rational)
                .map_err(D::Error::custom),
        }
    }
}

impl Serialize for NumberSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            NumberSpec::Rational(r) => r.serialize(serializer),
            NumberSpec::SqrtOf(r) => json!({ "sqrt_of": r }).serialize(serializer),
            NumberSpec::FracSqrt(s) => json!({ "sqrt_of": s }).serialize(serializer),
        }
    }
}

/// An experiment request, read from JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Request {
    Sweep {
        nu: NumberSpec,
        r_values: Vec<usize>,
        n_grid: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        out_dir: Option<PathBuf>,
    },
    Proposition {
        eta: NumberSpec,
        flips: Vec<usize>,
        n_grid: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        out_dir: Option<PathBuf>,
    },
    Normality {
        s_values: Vec<u64>,
        n_grid: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        out_dir: Option<PathBuf>,
    },
}

impl Request {
    pub fn from_json(text: &str) -> Result<Request> {
        serde_json::from_str(text).map_err(|e| Error::InvalidRequest(e.to_string()))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Request::Sweep { .. } => "sweep",
            Request::Proposition { .. } => "proposition",
            Request::Normality { .. } => "normality",
        }
    }

    pub fn out_dir(&self) -> Option<&PathBuf> {
        match self {
            Request::Sweep { out_dir, .. }
            | Request::Proposition { out_dir, .. }
            | Request::Normality { out_dir, .. } => out_dir.as_ref(),
        }
    }

    /// The request without its output location, serialized with a fixed
    /// field order. Two requests computing the same thing share this string.
    pub fn canonical(&self) -> String {
        let mut stripped = self.clone();
        match &mut stripped {
            Request::Sweep { out_dir, .. }
            | Request::Proposition { out_dir, .. }
            | Request::Normality { out_dir, .. } => *out_dir = None,
        }
        serde_json::to_string(&stripped).expect("request serializes")
    }

    /// SHA-256 over the tool version and the canonical request.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(env!("CARGO_PKG_VERSION").as_bytes());
        h.update(b"\n");
        h.update(self.canonical().as_bytes());
        hex::encode(h.finalize())
    }
}
