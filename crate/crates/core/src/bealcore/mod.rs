//! Exact adjudication of claimed solutions to `A^x + B^y = C^z`.
//!
//! Bases are naturals that may additionally carry a zero sign (`+0`, `-0`),
//! so that a claim like `1^3 + (+0)^4 = 1^5` can be stated and judged. Which
//! bases count as "positive integers" is decided by a
//! [`PositiveIntegerPolicy`]; the arithmetic itself never depends on it.

mod claims;
mod factor;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::szval::Sign;

pub use claims::{parse_claims, ClaimParseError, ClaimRecord};
pub use factor::{all_zero, common_prime_factor, factorize, factorize_u64};

/// Largest power, in decimal digits, that [`pow_exact`] will compute.
pub const MAX_POWER_DIGITS: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BealError {
    #[error("exponents must be at least 1")]
    ZeroExponent,
    #[error("cannot factorize zero")]
    FactorizeZero,
    #[error("{base}^{exponent} would exceed {MAX_POWER_DIGITS} decimal digits")]
    PowerTooLarge { base: String, exponent: u32 },
    #[error("invalid base {0:?}: expected a natural number, +0 or -0")]
    InvalidBase(String),
    #[error("unknown policy {0:?} (expected strict, zero-inclusive or signed-zero)")]
    UnknownPolicy(String),
}

/// A natural number, where zero may carry a sign.
///
/// `zero_sign` is only ever set on a zero magnitude. A zero without a sign is
/// the plain integer `0`, which is distinct from both `+0` and `-0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntValue {
    magnitude: BigUint,
    zero_sign: Option<Sign>,
}

impl IntValue {
    pub fn new(magnitude: BigUint) -> IntValue {
        IntValue {
            magnitude,
            zero_sign: None,
        }
    }

    pub fn signed_zero(sign: Sign) -> IntValue {
        IntValue {
            magnitude: BigUint::zero(),
            zero_sign: Some(sign),
        }
    }

    pub fn unsigned_zero() -> IntValue {
        IntValue::new(BigUint::zero())
    }

    pub fn magnitude(&self) -> &BigUint {
        &self.magnitude
    }

    pub fn zero_sign(&self) -> Option<Sign> {
        self.zero_sign
    }

    pub fn is_zero(&self) -> bool {
        self.magnitude.is_zero()
    }
}

impl From<u64> for IntValue {
    fn from(n: u64) -> IntValue {
        IntValue::new(BigUint::from(n))
    }
}

impl fmt::Display for IntValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.zero_sign {
            Some(Sign::Positive) => f.write_str("+0"),
            Some(Sign::Negative) => f.write_str("-0"),
            None => write!(f, "{}", self.magnitude),
        }
    }
}

impl FromStr for IntValue {
    type Err = BealError;

    /// Accepts decimal naturals with an optional `+`, plus `+0` and `-0`.
    /// A sign in front of a zero is kept; `-` in front of anything else is an
    /// error because negative bases are not representable.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let invalid = || BealError::InvalidBase(s.to_string());
        let (sign, digits) = match s.as_bytes().first() {
            Some(b'+') => (Some(Sign::Positive), &s[1..]),
            Some(b'-') => (Some(Sign::Negative), &s[1..]),
            _ => (None, s),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(invalid());
        }
        let magnitude = BigUint::parse_bytes(digits.as_bytes(), 10).ok_or_else(invalid)?;
        match (sign, magnitude.is_zero()) {
            (Some(sign), true) => Ok(IntValue::signed_zero(sign)),
            (Some(Sign::Negative), false) => Err(invalid()),
            _ => Ok(IntValue::new(magnitude)),
        }
    }
}

impl Serialize for IntValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for IntValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// `10^MAX_POWER_DIGITS`, the smallest value with too many digits.
fn digit_limit() -> &'static BigUint {
    static LIMIT: OnceLock<BigUint> = OnceLock::new();
    LIMIT.get_or_init(|| BigUint::from(10u32).pow(MAX_POWER_DIGITS as u32))
}

/// `base^exp` computed exactly.
///
/// A zero base stays zero; its sign follows the multiplication sign rule, so
/// `(-0)^n` is `-0` for odd `n` and `+0` for even `n`, and an unsigned zero
/// stays unsigned.
pub fn pow_exact(base: &IntValue, exp: u32) -> Result<IntValue, BealError> {
    if exp == 0 {
        return Err(BealError::ZeroExponent);
    }
    if base.is_zero() {
        let zero_sign = base.zero_sign.map(|s| match s {
            Sign::Negative if exp % 2 == 1 => Sign::Negative,
            _ => Sign::Positive,
        });
        return Ok(IntValue {
            magnitude: BigUint::zero(),
            zero_sign,
        });
    }
    let too_large = || BealError::PowerTooLarge {
        base: base.to_string(),
        exponent: exp,
    };
    // magnitude >= 2^(bits-1), so this many digits is a lower bound.
    let min_digits = (base.magnitude.bits() - 1) as f64 * exp as f64 * std::f64::consts::LOG10_2;
    if min_digits >= MAX_POWER_DIGITS as f64 {
        return Err(too_large());
    }
    let value = base.magnitude.pow(exp);
    // value < 2^bits, and 2^bits < 10^MAX_POWER_DIGITS well below the boundary;
    // only near it is the exact (and expensive) limit needed.
    let safe_bits = (MAX_POWER_DIGITS as f64 / std::f64::consts::LOG10_2) as u64 - 64;
    if value.bits() > safe_bits && &value >= digit_limit() {
        return Err(too_large());
    }
    Ok(IntValue::new(value))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PositiveIntegerPolicy {
    /// Only naturals `>= 1`.
    #[default]
    Strict,
    /// Naturals `>= 0`, whatever the zero's sign.
    ZeroInclusive,
    /// Naturals `>= 1` and `+0`. Neither `-0` nor unsigned `0` qualifies.
    #[serde(rename = "signed-zero")]
    SignedZeroInclusive,
}

impl PositiveIntegerPolicy {
    pub const ALL: [PositiveIntegerPolicy; 3] = [
        PositiveIntegerPolicy::Strict,
        PositiveIntegerPolicy::ZeroInclusive,
        PositiveIntegerPolicy::SignedZeroInclusive,
    ];

    pub fn admits(self, v: &IntValue) -> bool {
        if !v.is_zero() {
            return true;
        }
        match self {
            PositiveIntegerPolicy::Strict => false,
            PositiveIntegerPolicy::ZeroInclusive => true,
            PositiveIntegerPolicy::SignedZeroInclusive => v.zero_sign == Some(Sign::Positive),
        }
    }
}

impl fmt::Display for PositiveIntegerPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PositiveIntegerPolicy::Strict => "strict",
            PositiveIntegerPolicy::ZeroInclusive => "zero-inclusive",
            PositiveIntegerPolicy::SignedZeroInclusive => "signed-zero",
        })
    }
}

impl FromStr for PositiveIntegerPolicy {
    type Err = BealError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(PositiveIntegerPolicy::Strict),
            "zero-inclusive" => Ok(PositiveIntegerPolicy::ZeroInclusive),
            "signed-zero" | "signed-zero-inclusive" => {
                Ok(PositiveIntegerPolicy::SignedZeroInclusive)
            }
            _ => Err(BealError::UnknownPolicy(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BealClaim {
    #[serde(rename = "A")]
    pub a: IntValue,
    #[serde(rename = "B")]
    pub b: IntValue,
    #[serde(rename = "C")]
    pub c: IntValue,
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl BealClaim {
    pub fn new(
        a: IntValue,
        b: IntValue,
        c: IntValue,
        x: u32,
        y: u32,
        z: u32,
    ) -> Result<BealClaim, BealError> {
        if x == 0 || y == 0 || z == 0 {
            return Err(BealError::ZeroExponent);
        }
        Ok(BealClaim { a, b, c, x, y, z })
    }

    pub fn bases(&self) -> [&IntValue; 3] {
        [&self.a, &self.b, &self.c]
    }
}

impl fmt::Display for BealClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}^{} + {}^{} = {}^{}",
            self.a, self.x, self.b, self.y, self.c, self.z
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    Invalid,
    ConjectureConsistent,
    CounterexampleCandidate,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Invalid => "Invalid",
            Classification::ConjectureConsistent => "ConjectureConsistent",
            Classification::CounterexampleCandidate => "CounterexampleCandidate",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseAdmissibility {
    #[serde(rename = "A")]
    pub a: bool,
    #[serde(rename = "B")]
    pub b: bool,
    #[serde(rename = "C")]
    pub c: bool,
}

impl BaseAdmissibility {
    pub fn all(&self) -> bool {
        self.a && self.b && self.c
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub equation_holds: bool,
    pub exponents_valid: bool,
    pub bases_admissible: bool,
    pub base_admissibility: BaseAdmissibility,
    #[serde(with = "decimal_opt")]
    pub common_prime_factor: Option<BigUint>,
    /// Set when every base is zero: every prime divides all three, so no
    /// single common prime is reported.
    pub all_bases_zero: bool,
    pub classification: Classification,
}

impl VerdictReport {
    /// One-line human summary, e.g. `Invalid: B=+0 not admissible`.
    pub fn summary(&self, claim: &BealClaim) -> String {
        match self.classification {
            Classification::ConjectureConsistent => format!(
                "ConjectureConsistent, common prime {}",
                self.common_prime_factor
                    .as_ref()
                    .expect("consistent implies a prime")
            ),
            Classification::CounterexampleCandidate => {
                let mut s =
                    "CounterexampleCandidate: equation holds, no common prime factor".to_string();
                if self.all_bases_zero {
                    s.push_str(" (all bases zero)");
                }
                s
            }
            Classification::Invalid => {
                let mut reasons = Vec::new();
                if !self.exponents_valid {
                    reasons.push(format!(
                        "exponents x={} y={} z={} not all greater than 2",
                        claim.x, claim.y, claim.z
                    ));
                }
                let flags = self.base_admissibility;
                for (name, ok, v) in [
                    ("A", flags.a, &claim.a),
                    ("B", flags.b, &claim.b),
                    ("C", flags.c, &claim.c),
                ] {
                    if !ok {
                        reasons.push(format!("{name}={v} not admissible"));
                    }
                }
                if !self.equation_holds {
                    reasons.push("equation does not hold".to_string());
                }
                format!("Invalid: {}", reasons.join("; "))
            }
        }
    }
}

mod decimal_opt {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(n) => s.collect_str(n),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| {
                BigUint::parse_bytes(s.as_bytes(), 10)
                    .ok_or_else(|| serde::de::Error::custom(format!("not a natural: {s:?}")))
            })
            .transpose()
    }
}

/// Judges a claim. Every check is evaluated and reported even when an
/// earlier one already fails; only the power-size guard aborts.
pub fn adjudicate(
    claim: &BealClaim,
    policy: PositiveIntegerPolicy,
) -> Result<VerdictReport, BealError> {
    let exponents_valid = [claim.x, claim.y, claim.z].iter().all(|&e| e > 2);
    let base_admissibility = BaseAdmissibility {
        a: policy.admits(&claim.a),
        b: policy.admits(&claim.b),
        c: policy.admits(&claim.c),
    };
    let bases_admissible = base_admissibility.all();

    let lhs = pow_exact(&claim.a, claim.x)?.magnitude + pow_exact(&claim.b, claim.y)?.magnitude;
    let rhs = pow_exact(&claim.c, claim.z)?.magnitude;
    let equation_holds = lhs == rhs;

    let common_prime_factor = common_prime_factor(&claim.a, &claim.b, &claim.c);
    let all_bases_zero = all_zero(&claim.a, &claim.b, &claim.c);

    let classification = if !(equation_holds && exponents_valid && bases_admissible) {
        Classification::Invalid
    } else if common_prime_factor.is_some() {
        Classification::ConjectureConsistent
    } else {
        Classification::CounterexampleCandidate
    };

    Ok(VerdictReport {
        equation_holds,
        exponents_valid,
        bases_admissible,
        base_admissibility,
        common_prime_factor,
        all_bases_zero,
        classification,
    })
}

/// True when `n` is prime; plain trial division.
pub fn is_prime(n: &BigUint) -> bool {
    n > &BigUint::one() && factorize(n).map(|f| f.len() == 1).unwrap_or(false)
}
