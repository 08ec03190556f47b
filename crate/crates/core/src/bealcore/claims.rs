//! Claim file reader.
//!
//! One claim per line as whitespace- or comma-separated `key=value` fields:
//!
//! ```text
//! # the signed-zero claim
//! A=1 B=+0 C=1 x=3 y=4 z=5 policy=signed-zero
//! A=3, B=6, C=3, x=3, y=3, z=5
//! ```
//!
//! Blank lines and lines starting with `#` are skipped. `policy` is optional.

use thiserror::Error;

use super::{BealClaim, IntValue, PositiveIntegerPolicy};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: field {field}: {message}")]
pub struct ClaimParseError {
    pub line: usize,
    pub field: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimRecord {
    /// 1-based source line.
    pub line: usize,
    pub claim: BealClaim,
    pub policy: Option<PositiveIntegerPolicy>,
}

const FIELDS: [&str; 7] = ["A", "B", "C", "x", "y", "z", "policy"];

pub fn parse_claims(text: &str) -> Result<Vec<ClaimRecord>, ClaimParseError> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(line, l)| parse_record(line, l))
        .collect()
}

fn parse_record(line: usize, text: &str) -> Result<ClaimRecord, ClaimParseError> {
    let err = |field: &str, message: String| ClaimParseError {
        line,
        field: field.to_string(),
        message,
    };
    let mut values: [Option<&str>; 7] = [None; 7];
    for item in text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
    {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| err(item, "expected key=value".to_string()))?;
        let slot = FIELDS
            .iter()
            .position(|f| *f == key)
            .ok_or_else(|| err(key, "unknown field".to_string()))?;
        if values[slot].replace(value).is_some() {
            return Err(err(key, "given more than once".to_string()));
        }
    }

    let required = |i: usize| values[i].ok_or_else(|| err(FIELDS[i], "missing".to_string()));
    let base = |i: usize| -> Result<IntValue, ClaimParseError> {
        required(i)?
            .parse()
            .map_err(|e: super::BealError| err(FIELDS[i], e.to_string()))
    };
    let exponent = |i: usize| -> Result<u32, ClaimParseError> {
        let s = required(i)?;
        match s.parse::<u32>() {
            Ok(0) => Err(err(FIELDS[i], "exponent must be at least 1".to_string())),
            Ok(n) if s.bytes().all(|b| b.is_ascii_digit()) => Ok(n),
            _ => Err(err(FIELDS[i], format!("invalid exponent {s:?}"))),
        }
    };

    let (a, b, c) = (base(0)?, base(1)?, base(2)?);
    let (x, y, z) = (exponent(3)?, exponent(4)?, exponent(5)?);
    let policy = values[6]
        .map(|p| {
            p.parse()
                .map_err(|e: super::BealError| err("policy", e.to_string()))
        })
        .transpose()?;
    let claim = BealClaim::new(a, b, c, x, y, z).expect("exponents checked above");
    Ok(ClaimRecord {
        line,
        claim,
        policy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_records() {
        let text = "# header\n\nA=1 B=+0 C=1 x=3 y=4 z=5 policy=signed-zero\nA=3, B=6, C=3, x=3, y=3, z=5\n";
        let records = parse_claims(text).unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(records[0].line, 3);
        assert_eq!(records[0].claim.b, "+0".parse().unwrap());
        assert_eq!(
            records[0].policy,
            Some(PositiveIntegerPolicy::SignedZeroInclusive)
        );
        assert_eq!(records[1].line, 4);
        assert_eq!(records[1].policy, None);
        assert_eq!(records[1].claim.z, 5);
    }

    #[test]
    fn errors_name_line_and_field() {
        let e = parse_claims("A=1 B=2 C=3 x=3 y=3\n").unwrap_err();
        assert_eq!((e.line, e.field.as_str()), (1, "z"));
        assert_eq!(e.to_string(), "line 1: field z: missing");

        let e = parse_claims("\nA=1 B=-2 C=3 x=3 y=3 z=3\n").unwrap_err();
        assert_eq!((e.line, e.field.as_str()), (2, "B"));

        let e = parse_claims("A=1 B=2 C=3 x=3 y=+3 z=3").unwrap_err();
        assert_eq!(e.field, "y");
        let e = parse_claims("A=1 B=2 C=3 x=0 y=3 z=3").unwrap_err();
        assert_eq!(e.field, "x");
        let e = parse_claims("A=1 B=2 C=3 x=3 y=3 z=3 w=1").unwrap_err();
        assert_eq!(
            (e.field.as_str(), e.message.as_str()),
            ("w", "unknown field")
        );
        let e = parse_claims("A=1 A=2").unwrap_err();
        assert_eq!(e.message, "given more than once");
        let e = parse_claims("A=1 B=2 C=3 x=3 y=3 z=3 policy=maybe").unwrap_err();
        assert_eq!(e.field, "policy");
        let e = parse_claims("A=1 B 2").unwrap_err();
        assert_eq!(e.field, "B");
    }
}
