//! Signed-zero extended value domain.
//!
//! An [`SzValue`] is one of: a nonzero finite binary64 number, a signed
//! zero, a signed infinity, or the single canonical NaN. Every operation in
//! this module is written as an explicit case analysis over those classes;
//! only finite-by-finite arithmetic is delegated to the host `f64`, which
//! keeps rounding and overflow identical to hardware.
//!
//! Rounding mode only influences the sign of an exact cancellation
//! (`x - x`). All other results are computed as round-to-nearest.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Bit pattern of the canonical quiet NaN.
pub const CANONICAL_NAN_BITS: u64 = 0x7ff8_0000_0000_0000;

pub const SIGN_MASK: u64 = 0x8000_0000_0000_0000;
const EXPONENT_MASK: u64 = 0x7ff0_0000_0000_0000;
const MANTISSA_MASK: u64 = 0x000f_ffff_ffff_ffff;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SzError {
    #[error("subnormal bit pattern {0:016x} is outside the modeled domain")]
    Subnormal(u64),
    #[error("cannot parse {0:?} as a signed-zero value")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    /// Sign of a product or quotient.
    pub fn xor(self, other: Sign) -> Sign {
        if self == other {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }

    fn of_f64(v: f64) -> Sign {
        if v.is_sign_negative() {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "positive",
            Sign::Negative => "negative",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RoundingMode {
    #[default]
    ToNearest,
    TowardNegative,
}

impl RoundingMode {
    /// Sign given to an exact zero sum of operands with opposite signs.
    pub fn cancellation_sign(self) -> Sign {
        match self {
            RoundingMode::ToNearest => Sign::Positive,
            RoundingMode::TowardNegative => Sign::Negative,
        }
    }
}

impl fmt::Display for RoundingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RoundingMode::ToNearest => "to-nearest",
            RoundingMode::TowardNegative => "toward-negative",
        })
    }
}

impl FromStr for RoundingMode {
    type Err = SzError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "to-nearest" | "nearest" => Ok(RoundingMode::ToNearest),
            "toward-negative" | "down" => Ok(RoundingMode::TowardNegative),
            _ => Err(SzError::Parse(s.to_string())),
        }
    }
}

/// Strictly positive, finite binary64 magnitude.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Magnitude(f64);

impl Magnitude {
    pub fn new(v: f64) -> Option<Magnitude> {
        (v.is_finite() && v > 0.0).then_some(Magnitude(v))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValueClass {
    Finite,
    Zero,
    Infinity,
    NaN,
}

#[derive(Debug, Clone, Copy)]
pub enum SzValue {
    Finite { sign: Sign, magnitude: Magnitude },
    Zero(Sign),
    Infinity(Sign),
    NaN,
}

impl SzValue {
    pub const POS_ZERO: SzValue = SzValue::Zero(Sign::Positive);
    pub const NEG_ZERO: SzValue = SzValue::Zero(Sign::Negative);
    pub const POS_INF: SzValue = SzValue::Infinity(Sign::Positive);
    pub const NEG_INF: SzValue = SzValue::Infinity(Sign::Negative);
    pub const ONE: SzValue = SzValue::Finite {
        sign: Sign::Positive,
        magnitude: Magnitude(1.0),
    };

    /// Bridge from a host double. Any NaN becomes the canonical NaN.
    ///
    /// Subnormal doubles are accepted here because finite arithmetic can
    /// produce them; [`decode_bits`] and parsing reject them as inputs.
    pub fn from_f64(v: f64) -> SzValue {
        if v.is_nan() {
            SzValue::NaN
        } else if v.is_infinite() {
            SzValue::Infinity(Sign::of_f64(v))
        } else if v == 0.0 {
            SzValue::Zero(Sign::of_f64(v))
        } else {
            SzValue::Finite {
                sign: Sign::of_f64(v),
                magnitude: Magnitude(v.abs()),
            }
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            SzValue::Finite { sign, magnitude } => apply_sign(magnitude.0, sign),
            SzValue::Zero(sign) => apply_sign(0.0, sign),
            SzValue::Infinity(sign) => apply_sign(f64::INFINITY, sign),
            SzValue::NaN => f64::from_bits(CANONICAL_NAN_BITS),
        }
    }

    pub fn class(self) -> ValueClass {
        match self {
            SzValue::Finite { .. } => ValueClass::Finite,
            SzValue::Zero(_) => ValueClass::Zero,
            SzValue::Infinity(_) => ValueClass::Infinity,
            SzValue::NaN => ValueClass::NaN,
        }
    }

    pub fn is_nan(self) -> bool {
        matches!(self, SzValue::NaN)
    }

    pub fn is_zero(self) -> bool {
        matches!(self, SzValue::Zero(_))
    }

    /// Stored sign. NaN reports positive, matching its canonical pattern.
    pub fn sign(self) -> Sign {
        match self {
            SzValue::Finite { sign, .. } | SzValue::Zero(sign) | SzValue::Infinity(sign) => sign,
            SzValue::NaN => Sign::Positive,
        }
    }

    fn with_sign(self, sign: Sign) -> SzValue {
        match self {
            SzValue::Finite { magnitude, .. } => SzValue::Finite { sign, magnitude },
            SzValue::Zero(_) => SzValue::Zero(sign),
            SzValue::Infinity(_) => SzValue::Infinity(sign),
            SzValue::NaN => SzValue::NaN,
        }
    }
}

fn apply_sign(v: f64, sign: Sign) -> f64 {
    if sign.is_negative() {
        -v
    } else {
        v
    }
}

/// Host result for finite-by-finite arithmetic.
fn finite_op(a: Magnitude, sa: Sign, b: Magnitude, sb: Sign, op: fn(f64, f64) -> f64) -> SzValue {
    SzValue::from_f64(op(apply_sign(a.0, sa), apply_sign(b.0, sb)))
}

pub fn add(a: SzValue, b: SzValue, rm: RoundingMode) -> SzValue {
    use SzValue::*;
    match (a, b) {
        (NaN, _) | (_, NaN) => NaN,
        (Infinity(sa), Infinity(sb)) => {
            if sa == sb {
                Infinity(sa)
            } else {
                NaN
            }
        }
        (Infinity(s), _) | (_, Infinity(s)) => Infinity(s),
        (Zero(sa), Zero(sb)) => {
            if sa == sb {
                Zero(sa)
            } else {
                Zero(rm.cancellation_sign())
            }
        }
        // x + (±0) = x
        (Zero(_), x) | (x, Zero(_)) => x,
        (
            Finite {
                sign: sa,
                magnitude: ma,
            },
            Finite {
                sign: sb,
                magnitude: mb,
            },
        ) => match finite_op(ma, sa, mb, sb, |x, y| x + y) {
            // With gradual underflow a zero sum is always an exact cancellation.
            Zero(_) => Zero(rm.cancellation_sign()),
            other => other,
        },
    }
}

pub fn sub(a: SzValue, b: SzValue, rm: RoundingMode) -> SzValue {
    add(a, neg(b), rm)
}

pub fn mul(a: SzValue, b: SzValue) -> SzValue {
    use SzValue::*;
    match (a, b) {
        (NaN, _) | (_, NaN) => NaN,
        (Zero(_), Infinity(_)) | (Infinity(_), Zero(_)) => NaN,
        (Infinity(sa), x) | (x, Infinity(sa)) => Infinity(sa.xor(x.sign())),
        (Zero(sa), x) | (x, Zero(sa)) => Zero(sa.xor(x.sign())),
        (
            Finite {
                sign: sa,
                magnitude: ma,
            },
            Finite {
                sign: sb,
                magnitude: mb,
            },
        ) => finite_op(ma, sa, mb, sb, |x, y| x * y),
    }
}

pub fn div(a: SzValue, b: SzValue) -> SzValue {
    use SzValue::*;
    match (a, b) {
        (NaN, _) | (_, NaN) => NaN,
        (Zero(_), Zero(_)) | (Infinity(_), Infinity(_)) => NaN,
        (Infinity(sa), x) => Infinity(sa.xor(x.sign())),
        (x, Infinity(sb)) => Zero(x.sign().xor(sb)),
        (Zero(sa), x) => Zero(sa.xor(x.sign())),
        (x, Zero(sb)) => Infinity(x.sign().xor(sb)),
        (
            Finite {
                sign: sa,
                magnitude: ma,
            },
            Finite {
                sign: sb,
                magnitude: mb,
            },
        ) => finite_op(ma, sa, mb, sb, |x, y| x / y),
    }
}

pub fn sqrt(a: SzValue) -> SzValue {
    match a {
        SzValue::NaN => SzValue::NaN,
        SzValue::Zero(s) => SzValue::Zero(s),
        SzValue::Infinity(Sign::Positive) => SzValue::POS_INF,
        SzValue::Infinity(Sign::Negative) => SzValue::NaN,
        SzValue::Finite {
            sign: Sign::Negative,
            ..
        } => SzValue::NaN,
        SzValue::Finite {
            sign: Sign::Positive,
            magnitude,
        } => SzValue::from_f64(magnitude.0.sqrt()),
    }
}

pub fn neg(a: SzValue) -> SzValue {
    a.with_sign(a.sign().flip())
}

pub fn reciprocal(a: SzValue) -> SzValue {
    div(SzValue::ONE, a)
}

/// Magnitude and class of `magnitude_source`, sign of `sign_source`.
/// A NaN magnitude source stays the canonical NaN.
pub fn copysign(magnitude_source: SzValue, sign_source: SzValue) -> SzValue {
    magnitude_source.with_sign(sign_source.sign())
}

pub fn sign_bit(a: SzValue) -> Sign {
    a.sign()
}

/// IEEE numeric equality: `+0 == -0`, NaN equals nothing.
pub fn numeric_eq(a: SzValue, b: SzValue) -> bool {
    use SzValue::*;
    match (a, b) {
        (NaN, _) | (_, NaN) => false,
        (Zero(_), Zero(_)) => true,
        _ => same_repr(a, b),
    }
}

/// Bit-pattern identity. There is one NaN, so NaN is the same as NaN.
pub fn same_repr(a: SzValue, b: SzValue) -> bool {
    encode_bits(a) == encode_bits(b)
}

pub fn encode_bits(a: SzValue) -> u64 {
    match a {
        SzValue::NaN => CANONICAL_NAN_BITS,
        other => other.to_f64().to_bits(),
    }
}

pub fn decode_bits(bits: u64) -> Result<SzValue, SzError> {
    if bits & EXPONENT_MASK == 0 && bits & MANTISSA_MASK != 0 {
        return Err(SzError::Subnormal(bits));
    }
    Ok(SzValue::from_f64(f64::from_bits(bits)))
}

/// Whether a model result matches what the host produced. NaN results are
/// compared by class only since NaN sign and payload are not modeled.
pub fn matches_host(model: SzValue, host: f64) -> bool {
    if host.is_nan() {
        model.is_nan()
    } else {
        encode_bits(model) == host.to_bits()
    }
}

/// Host rendering of a double in the same spelling as [`SzValue`].
pub fn render_host(v: f64) -> String {
    SzValue::from_f64(v).to_string()
}

impl PartialEq for SzValue {
    /// Representation equality; use [`numeric_eq`] for IEEE comparison.
    fn eq(&self, other: &Self) -> bool {
        same_repr(*self, *other)
    }
}

impl Eq for SzValue {}

impl fmt::Display for SzValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SzValue::Zero(Sign::Positive) => f.write_str("+0"),
            SzValue::Zero(Sign::Negative) => f.write_str("-0"),
            SzValue::Infinity(Sign::Positive) => f.write_str("+inf"),
            SzValue::Infinity(Sign::Negative) => f.write_str("-inf"),
            SzValue::NaN => f.write_str("nan"),
            SzValue::Finite { .. } => write!(f, "{}", self.to_f64()),
        }
    }
}

impl FromStr for SzValue {
    type Err = SzError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let lower = t.to_ascii_lowercase();
        let unsigned = lower.trim_start_matches(['+', '-']);
        // Only plain decimals and the special words; no hex floats etc.
        let plain = !unsigned.is_empty()
            && lower.len() - unsigned.len() <= 1
            && (matches!(unsigned, "inf" | "infinity" | "nan")
                || unsigned
                    .chars()
                    .all(|c| c.is_ascii_digit() || matches!(c, '.' | 'e' | '+' | '-')));
        if !plain {
            return Err(SzError::Parse(s.to_string()));
        }
        let v: f64 = lower.parse().map_err(|_| SzError::Parse(s.to_string()))?;
        decode_bits(v.to_bits()).map_err(|_| SzError::Parse(s.to_string()))
    }
}

impl Serialize for SzValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SzValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
