//! Acceptance suite: one PASS/FAIL line per criterion, with a wall-clock limit
//! on each. Exits non-zero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use szbeal_core::bealcore::{
    adjudicate, factorize, factorize_u64, pow_exact, BealClaim, Classification, IntValue,
    PositiveIntegerPolicy,
};
use szbeal_core::rewrite::{check_rewrite, default_domain, eval_expr, parse_rule, Env, Verdict};
use szbeal_core::search::{search_solutions, SearchBounds};
use szbeal_core::semantics::evaluate_table;
use szbeal_core::szval::{self, RoundingMode, SzValue};

const RNE: RoundingMode = RoundingMode::ToNearest;

type Check = fn() -> Result<String, String>;

struct Criterion {
    name: &'static str,
    limit: Duration,
    check: Check,
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn v(s: &str) -> SzValue {
    s.parse().unwrap()
}

fn rule_table() -> Result<String, String> {
    // The named identities, asserted one by one.
    let x = SzValue::from_f64(3.0);
    let cases: [(&str, SzValue, SzValue); 18] = [
        ("x - x", szval::sub(x, x, RNE), v("+0")),
        ("x + (-x)", szval::add(x, szval::neg(x), RNE), v("+0")),
        ("(-0) + (-0)", szval::add(v("-0"), v("-0"), RNE), v("-0")),
        ("(+0) + (-0)", szval::add(v("+0"), v("-0"), RNE), v("+0")),
        ("(-0) - (+0)", szval::sub(v("-0"), v("+0"), RNE), v("-0")),
        ("(-0) * (-0)", szval::mul(v("-0"), v("-0")), v("+0")),
        ("sqrt(-0)", szval::sqrt(v("-0")), v("-0")),
        ("(-0) / |x|", szval::div(v("-0"), x), v("-0")),
        ("|x| / (-0)", szval::div(x, v("-0")), v("-inf")),
        ("(-0) / (-inf)", szval::div(v("-0"), v("-inf")), v("+0")),
        ("(+0) * (+inf)", szval::mul(v("+0"), v("+inf")), v("nan")),
        ("(-0) * (-inf)", szval::mul(v("-0"), v("-inf")), v("nan")),
        ("(+0) / (+0)", szval::div(v("+0"), v("+0")), v("nan")),
        ("(-0) / (+0)", szval::div(v("-0"), v("+0")), v("nan")),
        ("1 / (+0)", szval::reciprocal(v("+0")), v("+inf")),
        ("1 / (-0)", szval::reciprocal(v("-0")), v("-inf")),
        ("1 / (+inf)", szval::reciprocal(v("+inf")), v("+0")),
        ("1 / (-inf)", szval::reciprocal(v("-inf")), v("-0")),
    ];
    for (label, got, want) in cases {
        ensure(szval::same_repr(got, want), || {
            format!("{label} = {got}, expected {want}")
        })?;
    }
    let rows = evaluate_table(RNE);
    for row in &rows {
        ensure(row.matches_expected(RNE), || {
            format!("table row {} = {}", row.rule.label, row.model)
        })?;
        ensure(row.host_agrees() != Some(false), || {
            format!("table row {}: host disagrees", row.rule.label)
        })?;
    }
    Ok(format!(
        "{} identities, {} table rows",
        cases.len(),
        rows.len()
    ))
}

fn random_normal(rng: &mut impl Rng) -> f64 {
    loop {
        let bits: u64 = rng.gen();
        let exp = (bits >> 52) & 0x7ff;
        if exp != 0 && exp != 0x7ff {
            return f64::from_bits(bits);
        }
    }
}

fn differential_pair(a: f64, b: f64, bad: &mut Vec<String>) {
    let (ma, mb) = (SzValue::from_f64(a), SzValue::from_f64(b));
    let binary: [(&str, SzValue, f64); 4] = [
        ("add", szval::add(ma, mb, RNE), a + b),
        ("sub", szval::sub(ma, mb, RNE), a - b),
        ("mul", szval::mul(ma, mb), a * b),
        ("div", szval::div(ma, mb), a / b),
    ];
    for (name, m, h) in binary {
        if !szval::matches_host(m, h) {
            bad.push(format!("{name}({a:e}, {b:e}): model {m}, host {h:e}"));
        }
    }
    // A NaN sign source carries no modeled sign.
    if !b.is_nan() && !szval::matches_host(szval::copysign(ma, mb), a.copysign(b)) {
        bad.push(format!("copysign({a:e}, {b:e})"));
    }
}

fn differential_unary(a: f64, bad: &mut Vec<String>) {
    let ma = SzValue::from_f64(a);
    if !szval::matches_host(szval::sqrt(ma), a.sqrt()) {
        bad.push(format!("sqrt({a:e})"));
    }
    if !szval::matches_host(szval::neg(ma), -a) {
        bad.push(format!("neg({a:e})"));
    }
}

fn differential() -> Result<String, String> {
    let special = [
        0.0,
        -0.0,
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::NAN,
        1.0,
        -1.0,
        2.5,
        -2.5,
    ];
    let mut bad = Vec::new();
    let mut pairs = 0;
    for &a in &special {
        differential_unary(a, &mut bad);
        for &b in &special {
            differential_pair(a, b, &mut bad);
            pairs += 1;
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5eed_0000_0001);
    let random = 20_000;
    for _ in 0..random {
        let (a, b) = (random_normal(&mut rng), random_normal(&mut rng));
        differential_pair(a, b, &mut bad);
        differential_unary(a, &mut bad);
    }
    ensure(bad.is_empty(), || {
        format!("{} disagreements, first: {}", bad.len(), bad[0])
    })?;
    Ok(format!(
        "{pairs} special pairs, {random} random pairs, 0 disagreements"
    ))
}

fn rewrite_verdicts() -> Result<String, String> {
    let domain = default_domain();
    type WitnessCheck<'a> = &'a dyn Fn(&[(String, SzValue)]) -> bool;
    let mut failures = Vec::new();
    let mut check = |src: &str, expect_illegal: bool, witness_ok: WitnessCheck| {
        let rule = parse_rule(src).unwrap();
        let verdict = check_rewrite(&rule, &domain, RNE).unwrap();
        match (&verdict, expect_illegal) {
            (Verdict::Legal, false) => {}
            (Verdict::Illegal(c), true) => {
                let env: Env = c.witness.iter().cloned().collect();
                let l = eval_expr(rule.lhs(), &env, RNE).unwrap();
                let r = eval_expr(rule.rhs(), &env, RNE).unwrap();
                if szval::same_repr(l, r) || !witness_ok(&c.witness) {
                    failures.push(format!("{src}: bad witness ({verdict})"));
                }
            }
            _ => failures.push(format!(
                "{src}: got {verdict}, expected {}",
                if expect_illegal { "Illegal" } else { "Legal" }
            )),
        }
    };
    let x_eq_y = |w: &[(String, SzValue)]| w.len() == 2 && szval::same_repr(w[0].1, w[1].1);
    check("-(x-y) => y-x", true, &x_eq_y);
    check("(-x)-(-y) => y-x", true, &x_eq_y);
    check("x+(+0) => x", true, &|w| {
        w.len() == 1 && w[0].1 == SzValue::NEG_ZERO
    });
    check("-(-x) => x", false, &|_| true);
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok("4 rules, witnesses replay".into())
}

fn finishing_blow() -> Result<String, String> {
    let claim = BealClaim::new(1u64.into(), v_int("+0"), 1u64.into(), 3, 4, 5).unwrap();
    let signed = adjudicate(&claim, PositiveIntegerPolicy::SignedZeroInclusive).unwrap();
    ensure(signed.equation_holds, || "equation does not hold".into())?;
    ensure(signed.common_prime_factor.is_none(), || {
        "unexpected common prime".into()
    })?;
    ensure(
        signed.classification == Classification::CounterexampleCandidate,
        || format!("signed-zero: {}", signed.summary(&claim)),
    )?;
    let strict = adjudicate(&claim, PositiveIntegerPolicy::Strict).unwrap();
    ensure(strict.classification == Classification::Invalid, || {
        format!("strict: {}", strict.summary(&claim))
    })?;
    for _ in 0..10 {
        ensure(
            adjudicate(&claim, PositiveIntegerPolicy::SignedZeroInclusive).unwrap() == signed,
            || "non-deterministic report".into(),
        )?;
    }
    Ok(format!(
        "signed-zero: {}; strict: {}",
        signed.summary(&claim),
        strict.summary(&claim)
    ))
}

fn v_int(s: &str) -> IntValue {
    s.parse().unwrap()
}

fn search() -> Result<String, String> {
    let result = search_solutions(&SearchBounds::new(100, 7).unwrap()).unwrap();
    ensure(result.violations.is_empty(), || {
        format!("{} violations", result.violations.len())
    })?;
    for known in [(2, 2, 2, 3, 3, 4), (3, 6, 3, 3, 3, 5), (7, 7, 14, 3, 4, 3)] {
        ensure(result.solutions.iter().any(|s| s.key() == known), || {
            format!("missing {known:?}")
        })?;
    }
    for s in &result.solutions {
        let r = adjudicate(&s.claim(), PositiveIntegerPolicy::Strict).unwrap();
        ensure(
            r.classification == Classification::ConjectureConsistent,
            || format!("{s} re-verifies as {:?}", r.classification),
        )?;
    }
    Ok(format!(
        "{} solutions, 0 violations, all re-verified",
        result.solutions.len()
    ))
}

fn oracles() -> Result<String, String> {
    for base in 1..=10u64 {
        for exp in 1..=10u32 {
            let oracle = (0..exp).fold(BigUint::from(1u32), |acc, _| acc * base);
            let got = pow_exact(&IntValue::from(base), exp).unwrap();
            ensure(got.magnitude() == &oracle, || format!("{base}^{exp}"))?;
        }
    }
    for n in 1..=100_000u64 {
        let f = factorize(&BigUint::from(n)).unwrap();
        ensure(f.iter().product::<BigUint>() == BigUint::from(n), || {
            format!("factorize({n}) product")
        })?;
        let got: Vec<u64> = f.iter().map(|p| u64::try_from(p).unwrap()).collect();
        ensure(got == naive_factor(n) && factorize_u64(n) == got, || {
            format!("factorize({n})")
        })?;
    }
    Ok("100 powers, 100000 factorizations".into())
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

fn main() {
    let criteria = [
        Criterion {
            name: "rule-table conformance",
            limit: Duration::from_secs(1),
            check: rule_table,
        },
        Criterion {
            name: "differential conformance",
            limit: Duration::from_secs(10),
            check: differential,
        },
        Criterion {
            name: "rewrite verdicts",
            limit: Duration::from_secs(10),
            check: rewrite_verdicts,
        },
        Criterion {
            name: "signed-zero counterexample fixture",
            limit: Duration::from_secs(1),
            check: finishing_blow,
        },
        Criterion {
            name: "conjecture-consistency search N=100 K=7",
            limit: Duration::from_secs(60),
            check: search,
        },
        Criterion {
            name: "pow/factorize oracle equivalence",
            limit: Duration::from_secs(30),
            check: oracles,
        },
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(c.check))
            .unwrap_or_else(|e| Err(format!("panicked: {}", panic_message(&e))));
        let elapsed = start.elapsed();
        let timing = format!(
            "{:.3}s / limit {}s",
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
        let outcome = outcome.and_then(|d| {
            if elapsed <= c.limit {
                Ok(d)
            } else {
                Err(format!("over time limit: {d}"))
            }
        });
        match outcome {
            Ok(detail) => println!("[{}] PASS {} ({timing}): {detail}", i + 1, c.name),
            Err(detail) => {
                failed += 1;
                println!("[{}] FAIL {} ({timing}): {detail}", i + 1, c.name);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

fn panic_message(e: &Box<dyn std::any::Any + Send>) -> String {
    e.downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| e.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "unknown".into())
}
