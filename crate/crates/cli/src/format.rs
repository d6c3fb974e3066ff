//! Instance file format and numeric output.
//!
//! Instances are JSON Lines: one object per line with the fields `a1`, `a2`,
//! `b1`, `b2` (3 components for a pure quaternion, 4 for `[w, x, y, z]`)
//! and optional metadata `label`, `seed`, `kind`, `rng`, `truth`, `index`.
//! Blank lines and lines starting with `#` are skipped.

use std::fmt;

use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;
use wahba_core::Quaternion;

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub field: Option<&'static str>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field {
            Some(field) => write!(f, "line {}, field `{}`: {}", self.line, field, self.message),
            None => write!(f, "line {}: {}", self.line, self.message),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRecord {
    a1: Vec<f64>,
    a2: Vec<f64>,
    b1: Vec<f64>,
    b2: Vec<f64>,
    label: Option<String>,
    seed: Option<u64>,
    kind: Option<String>,
    rng: Option<String>,
    truth: Option<Vec<f64>>,
    index: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InstanceRecord {
    /// 1-based line number in the source.
    pub line: usize,
    pub a1: Quaternion,
    pub a2: Quaternion,
    pub b1: Quaternion,
    pub b2: Quaternion,
    pub label: Option<String>,
    pub seed: Option<u64>,
    pub kind: Option<String>,
}

fn to_quaternion(v: &[f64], line: usize, field: &'static str) -> Result<Quaternion, ParseError> {
    match *v {
        [x, y, z] => Ok(Quaternion::pure([x, y, z])),
        [w, x, y, z] => Ok(Quaternion::new(w, x, y, z)),
        _ => Err(ParseError {
            line,
            field: Some(field),
            message: format!("expected 3 or 4 components, got {}", v.len()),
        }),
    }
}

pub fn parse_instances(text: &str) -> Result<Vec<InstanceRecord>, ParseError> {
    let mut out = Vec::new();
    for (i, raw_line) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw_line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let rec: RawRecord = serde_json::from_str(trimmed).map_err(|e| ParseError {
            line,
            field: None,
            message: e.to_string(),
        })?;
        if let Some(t) = &rec.truth {
            to_quaternion(t, line, "truth")?;
        }
        out.push(InstanceRecord {
            line,
            a1: to_quaternion(&rec.a1, line, "a1")?,
            a2: to_quaternion(&rec.a2, line, "a2")?,
            b1: to_quaternion(&rec.b1, line, "b1")?,
            b2: to_quaternion(&rec.b2, line, "b2")?,
            label: rec.label,
            seed: rec.seed,
            kind: rec.kind,
        });
        let _ = (rec.rng, rec.index);
    }
    Ok(out)
}

/// Parses `w,x,y,z` or `x,y,z`.
pub fn parse_quaternion_arg(s: &str) -> Result<Quaternion, String> {
    let parts: Result<Vec<f64>, _> = s.split(',').map(|p| p.trim().parse::<f64>()).collect();
    let parts = parts.map_err(|e| format!("invalid number in `{s}`: {e}"))?;
    if parts.iter().any(|x| !x.is_finite()) {
        return Err(format!("non-finite component in `{s}`"));
    }
    to_quaternion(&parts, 0, "q").map_err(|e| e.message)
}

/// `f64` rendered with 17 significant digits, which round-trips exactly.
pub fn fmt17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_owned()
    }
}

/// Serializes as a JSON number with 17 significant digits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct F17(pub f64);

impl Serialize for F17 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let raw = RawValue::from_string(fmt17(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

pub fn q4(q: Quaternion) -> [F17; 4] {
    q.to_array().map(F17)
}

/// Pure quaternions as 3-vectors, everything else as 4-vectors.
pub fn q_obs(q: Quaternion) -> Vec<F17> {
    if q.w == 0.0 {
        q.vector().map(F17).to_vec()
    } else {
        q4(q).to_vec()
    }
}

pub fn text_quat(q: Quaternion) -> String {
    let c = q.to_array().map(fmt17);
    format!("[{}, {}, {}, {}]", c[0], c[1], c[2], c[3])
}
