use num_bigint::BigUint;
use proptest::prelude::*;
use szbeal_core::bealcore::{
    adjudicate, common_prime_factor, factorize, is_prime, pow_exact, BealClaim, Classification,
    IntValue, PositiveIntegerPolicy,
};
use szbeal_core::szval::{self, Sign, SzValue};

fn repeated_product(base: u64, exp: u32) -> BigUint {
    (0..exp).fold(BigUint::from(1u32), |acc, _| acc * base)
}

#[test]
fn pow_matches_repeated_multiplication() {
    for base in 1..=10u64 {
        for exp in 1..=10u32 {
            let got = pow_exact(&IntValue::from(base), exp).unwrap();
            assert_eq!(
                got.magnitude(),
                &repeated_product(base, exp),
                "{base}^{exp}"
            );
        }
    }
}

#[test]
fn zero_powers_follow_the_float_sign_rule() {
    for sign in [Sign::Positive, Sign::Negative] {
        let z = SzValue::Zero(sign);
        let mut folded = z;
        for exp in 1..=9u32 {
            if exp > 1 {
                folded = szval::mul(folded, z);
            }
            let p = pow_exact(&IntValue::signed_zero(sign), exp).unwrap();
            assert!(p.is_zero());
            assert_eq!(
                p.zero_sign(),
                Some(szval::sign_bit(folded)),
                "({sign})0^{exp}"
            );
        }
    }
}

fn naive_factor(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        while n.is_multiple_of(d) {
            out.push(d);
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[test]
fn factorize_matches_naive_oracle_up_to_1e5() {
    for n in 1..=100_000u64 {
        let got: Vec<u64> = factorize(&BigUint::from(n))
            .unwrap()
            .iter()
            .map(|p| u64::try_from(p).unwrap())
            .collect();
        assert_eq!(got, naive_factor(n), "{n}");
    }
}

fn base() -> impl Strategy<Value = IntValue> {
    prop_oneof![
        4 => (1u64..200).prop_map(IntValue::from),
        1 => prop::sample::select(vec!["+0", "-0", "0"]).prop_map(|s| s.parse().unwrap()),
    ]
}

fn claim() -> impl Strategy<Value = BealClaim> {
    (base(), base(), base(), 1u32..7, 1u32..7, 1u32..7)
        .prop_map(|(a, b, c, x, y, z)| BealClaim::new(a, b, c, x, y, z).unwrap())
}

proptest! {
    #[test]
    fn factorization_is_sorted_prime_and_complete(n in 1u64..u64::from(u32::MAX)) {
        let f = factorize(&BigUint::from(n)).unwrap();
        prop_assert!(f.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(f.iter().all(is_prime));
        prop_assert_eq!(f.iter().product::<BigUint>(), BigUint::from(n));
    }

    #[test]
    fn policy_admissibility_is_monotone(c in claim()) {
        use PositiveIntegerPolicy::*;
        let ok = |p: PositiveIntegerPolicy| c.bases().iter().all(|b| p.admits(b));
        if ok(Strict) {
            prop_assert!(ok(SignedZeroInclusive) && ok(ZeroInclusive));
        }
        if ok(SignedZeroInclusive) {
            prop_assert!(ok(ZeroInclusive));
        }
    }

    #[test]
    fn arithmetic_is_policy_independent(c in claim()) {
        let reports: Vec<_> = PositiveIntegerPolicy::ALL
            .iter()
            .map(|p| adjudicate(&c, *p).unwrap())
            .collect();
        for r in &reports[1..] {
            prop_assert_eq!(r.equation_holds, reports[0].equation_holds);
            prop_assert_eq!(&r.common_prime_factor, &reports[0].common_prime_factor);
            prop_assert_eq!(r.exponents_valid, reports[0].exponents_valid);
        }
    }

    #[test]
    fn classification_invariants(c in claim(), p in prop::sample::select(PositiveIntegerPolicy::ALL.to_vec())) {
        let r = adjudicate(&c, p).unwrap();
        prop_assert_eq!(&r, &adjudicate(&c, p).unwrap());
        let all_pass = r.equation_holds && r.exponents_valid && r.bases_admissible;
        prop_assert_eq!(
            r.classification == Classification::CounterexampleCandidate,
            all_pass && r.common_prime_factor.is_none()
        );
        prop_assert_eq!(
            r.classification == Classification::ConjectureConsistent,
            all_pass && r.common_prime_factor.is_some()
        );
        prop_assert_eq!(r.bases_admissible, r.base_admissibility.all());
    }

    #[test]
    fn equation_check_matches_direct_arithmetic(c in claim()) {
        let r = adjudicate(&c, PositiveIntegerPolicy::ZeroInclusive).unwrap();
        let m = |v: &IntValue| u64::try_from(v.magnitude()).unwrap();
        let lhs = repeated_product(m(&c.a), c.x) + repeated_product(m(&c.b), c.y);
        prop_assert_eq!(r.equation_holds, lhs == repeated_product(m(&c.c), c.z));
    }

    #[test]
    fn common_prime_divides_every_nonzero_base(a in base(), b in base(), c in base()) {
        let nonzero: Vec<u64> = [&a, &b, &c]
            .iter()
            .map(|v| u64::try_from(v.magnitude()).unwrap())
            .filter(|&m| m != 0)
            .collect();
        // smallest shared prime by direct search
        let expected = (2..=200u64)
            .filter(|&p| naive_factor(p).len() == 1)
            .find(|&p| !nonzero.is_empty() && nonzero.iter().all(|m| m % p == 0));
        let got = common_prime_factor(&a, &b, &c).map(|p| u64::try_from(p).unwrap());
        prop_assert_eq!(got, expected);
    }
}
