//! Trial-division factorization and common prime factors.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{BealError, IntValue};

/// Prime factors of `n` with multiplicity, ascending. `factorize(1)` is empty.
pub fn factorize(n: &BigUint) -> Result<Vec<BigUint>, BealError> {
    if n.is_zero() {
        return Err(BealError::FactorizeZero);
    }
    if let Some(small) = n.to_u64() {
        return Ok(factorize_u64(small)
            .into_iter()
            .map(BigUint::from)
            .collect());
    }
    let mut out = Vec::new();
    let mut rest = n.clone();
    let mut d = BigUint::from(2u32);
    while &d * &d <= rest {
        while (&rest % &d).is_zero() {
            rest /= &d;
            out.push(d.clone());
        }
        d += if d == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    if !rest.is_one() {
        out.push(rest);
    }
    Ok(out)
}

pub fn factorize_u64(mut n: u64) -> Vec<u64> {
    assert!(n != 0, "factorize_u64(0)");
    let mut out = Vec::new();
    while n.is_multiple_of(2) {
        out.push(2);
        n /= 2;
    }
    let mut d = 3u64;
    while d <= n / d {
        while n.is_multiple_of(d) {
            out.push(d);
            n /= d;
        }
        d += 2;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest prime dividing every base. Zero magnitudes are divisible by every
/// prime and so never constrain the answer; if all three are zero there is
/// no single answer and `None` is returned (see [`all_zero`]).
pub fn common_prime_factor(a: &IntValue, b: &IntValue, c: &IntValue) -> Option<BigUint> {
    let g = [a, b, c]
        .into_iter()
        .map(IntValue::magnitude)
        .filter(|m| !m.is_zero())
        .fold(BigUint::zero(), |g, m| g.gcd(m));
    if g.is_zero() || g.is_one() {
        return None;
    }
    factorize(&g).ok()?.into_iter().next()
}

pub fn all_zero(a: &IntValue, b: &IntValue, c: &IntValue) -> bool {
    a.is_zero() && b.is_zero() && c.is_zero()
}
