//! Domain-exhaustive legality checking for floating-point rewrites.
//!
//! A rule `lhs => rhs` is checked by evaluating both sides under every
//! assignment of domain values to the rule's variables. Two results are
//! considered equal only when their bit patterns are identical, so a rewrite
//! that turns `-0` into `+0` is rejected even though the two compare equal.

mod parse;

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::szval::{self, RoundingMode, SzValue};

pub use parse::{parse_expr, parse_rule, ParseError};

/// Upper bound on the number of assignments [`check_rewrite`] will enumerate.
pub const MAX_ASSIGNMENTS: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("variable `{0}` is not bound")]
    Unbound(String),
    #[error("variable `{0}` is used but not declared")]
    Undeclared(String),
    #[error("variable `{0}` is declared twice")]
    DuplicateVariable(String),
    #[error("the value domain is empty")]
    EmptyDomain,
    #[error("refusing to enumerate {domain}^{variables} assignments (limit {MAX_ASSIGNMENTS})")]
    TooManyAssignments { domain: usize, variables: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Variable(String),
    Constant(SzValue),
    Negate(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Subtract(Box<Expr>, Box<Expr>),
    Multiply(Box<Expr>, Box<Expr>),
    Divide(Box<Expr>, Box<Expr>),
    Sqrt(Box<Expr>),
}

impl Expr {
    pub fn var(name: &str) -> Expr {
        Expr::Variable(name.to_string())
    }

    pub fn constant(v: SzValue) -> Expr {
        Expr::Constant(v)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Expr {
        Expr::Negate(Box::new(self))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, rhs: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(rhs))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, rhs: Expr) -> Expr {
        Expr::Subtract(Box::new(self), Box::new(rhs))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, rhs: Expr) -> Expr {
        Expr::Multiply(Box::new(self), Box::new(rhs))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(self, rhs: Expr) -> Expr {
        Expr::Divide(Box::new(self), Box::new(rhs))
    }

    pub fn sqrt(self) -> Expr {
        Expr::Sqrt(Box::new(self))
    }

    /// Free variables in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut Vec<String>) {
        match self {
            Expr::Variable(name) => {
                if !out.contains(name) {
                    out.push(name.clone());
                }
            }
            Expr::Constant(_) => {}
            Expr::Negate(e) | Expr::Sqrt(e) => e.collect_variables(out),
            Expr::Add(a, b) | Expr::Subtract(a, b) | Expr::Multiply(a, b) | Expr::Divide(a, b) => {
                a.collect_variables(out);
                b.collect_variables(out);
            }
        }
    }

    fn eval_with<F>(&self, lookup: &F, rm: RoundingMode) -> Result<SzValue, RewriteError>
    where
        F: Fn(&str) -> Option<SzValue>,
    {
        Ok(match self {
            Expr::Variable(name) => {
                lookup(name).ok_or_else(|| RewriteError::Unbound(name.clone()))?
            }
            Expr::Constant(v) => *v,
            Expr::Negate(e) => szval::neg(e.eval_with(lookup, rm)?),
            Expr::Sqrt(e) => szval::sqrt(e.eval_with(lookup, rm)?),
            Expr::Add(a, b) => szval::add(a.eval_with(lookup, rm)?, b.eval_with(lookup, rm)?, rm),
            Expr::Subtract(a, b) => {
                szval::sub(a.eval_with(lookup, rm)?, b.eval_with(lookup, rm)?, rm)
            }
            Expr::Multiply(a, b) => szval::mul(a.eval_with(lookup, rm)?, b.eval_with(lookup, rm)?),
            Expr::Divide(a, b) => szval::div(a.eval_with(lookup, rm)?, b.eval_with(lookup, rm)?),
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Variable(name) => f.write_str(name),
            Expr::Constant(v) if v.sign().is_negative() || v.is_zero() => write!(f, "({v})"),
            Expr::Constant(v) => write!(f, "{v}"),
            Expr::Negate(e) => write!(f, "-({e})"),
            Expr::Sqrt(e) => write!(f, "sqrt({e})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Subtract(a, b) => write!(f, "({a} - {b})"),
            Expr::Multiply(a, b) => write!(f, "({a} * {b})"),
            Expr::Divide(a, b) => write!(f, "({a} / {b})"),
        }
    }
}

/// Variable bindings used by [`eval_expr`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Env(Vec<(String, SzValue)>);

impl Env {
    pub fn new() -> Env {
        Env::default()
    }

    pub fn bind(mut self, name: &str, value: SzValue) -> Env {
        self.0.retain(|(n, _)| n != name);
        self.0.push((name.to_string(), value));
        self
    }

    pub fn get(&self, name: &str) -> Option<SzValue> {
        self.0.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    pub fn bindings(&self) -> &[(String, SzValue)] {
        &self.0
    }
}

impl FromIterator<(String, SzValue)> for Env {
    fn from_iter<T: IntoIterator<Item = (String, SzValue)>>(iter: T) -> Self {
        iter.into_iter()
            .fold(Env::new(), |env, (name, value)| env.bind(&name, value))
    }
}

pub fn eval_expr(expr: &Expr, env: &Env, rm: RoundingMode) -> Result<SzValue, RewriteError> {
    expr.eval_with(&|name| env.get(name), rm)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RewriteRule {
    lhs: Expr,
    rhs: Expr,
    variables: Vec<String>,
}

impl RewriteRule {
    /// Builds a rule over an explicit ordered variable list. Every variable
    /// used on either side must be declared; unused declarations are allowed.
    pub fn new(lhs: Expr, rhs: Expr, variables: Vec<String>) -> Result<Self, RewriteError> {
        for (i, name) in variables.iter().enumerate() {
            if variables[..i].contains(name) {
                return Err(RewriteError::DuplicateVariable(name.clone()));
            }
        }
        for name in lhs.variables().into_iter().chain(rhs.variables()) {
            if !variables.contains(&name) {
                return Err(RewriteError::Undeclared(name));
            }
        }
        Ok(RewriteRule {
            lhs,
            rhs,
            variables,
        })
    }

    /// Variables in order of first occurrence, left side first.
    pub fn inferred(lhs: Expr, rhs: Expr) -> RewriteRule {
        let mut variables = lhs.variables();
        for name in rhs.variables() {
            if !variables.contains(&name) {
                variables.push(name);
            }
        }
        RewriteRule {
            lhs,
            rhs,
            variables,
        }
    }

    pub fn lhs(&self) -> &Expr {
        &self.lhs
    }

    pub fn rhs(&self) -> &Expr {
        &self.rhs
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} => {}", self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub witness: Vec<(String, SzValue)>,
    pub lhs_value: SzValue,
    pub rhs_value: SzValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum Verdict {
    Legal,
    Illegal(Counterexample),
}

impl Verdict {
    pub fn is_legal(&self) -> bool {
        matches!(self, Verdict::Legal)
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            Verdict::Legal => None,
            Verdict::Illegal(c) => Some(c),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Legal => f.write_str("Legal"),
            Verdict::Illegal(c) => {
                f.write_str("Illegal; witness")?;
                for (name, value) in &c.witness {
                    write!(f, " {name}={value}")?;
                }
                write!(f, "; lhs={} rhs={}", c.lhs_value, c.rhs_value)
            }
        }
    }
}

/// Finite, nonzero values first so that the first witness found for a
/// sign-of-zero rewrite is an ordinary number like `x = 1`.
pub fn default_domain() -> Vec<SzValue> {
    [1.0, -1.0, 2.5, -2.5]
        .into_iter()
        .map(SzValue::from_f64)
        .chain([
            SzValue::POS_ZERO,
            SzValue::NEG_ZERO,
            SzValue::POS_INF,
            SzValue::NEG_INF,
            SzValue::NaN,
        ])
        .collect()
}

fn assignment_count(domain: usize, variables: usize) -> Option<u64> {
    (domain as u64)
        .checked_pow(u32::try_from(variables).ok()?)
        .filter(|&n| n <= MAX_ASSIGNMENTS)
}

/// Decodes assignment `index` with the first variable as the most
/// significant digit, so ascending indices are lexicographic order.
fn assignment(index: u64, domain: &[SzValue], arity: usize) -> Vec<SzValue> {
    let base = domain.len() as u64;
    let mut values = vec![domain[0]; arity];
    let mut rest = index;
    for slot in values.iter_mut().rev() {
        *slot = domain[(rest % base) as usize];
        rest /= base;
    }
    values
}

/// Enumerates every assignment and returns the lexicographically first one
/// whose two sides differ in representation. NaN equals NaN.
pub fn check_rewrite(
    rule: &RewriteRule,
    domain: &[SzValue],
    rm: RoundingMode,
) -> Result<Verdict, RewriteError> {
    if domain.is_empty() {
        return Err(RewriteError::EmptyDomain);
    }
    let arity = rule.variables.len();
    let total = assignment_count(domain.len(), arity).ok_or(RewriteError::TooManyAssignments {
        domain: domain.len(),
        variables: arity,
    })?;

    let probe = |index: u64| -> Result<Option<Counterexample>, RewriteError> {
        let values = assignment(index, domain, arity);
        let lookup = |name: &str| {
            rule.variables
                .iter()
                .position(|v| v == name)
                .map(|i| values[i])
        };
        let lhs_value = rule.lhs.eval_with(&lookup, rm)?;
        let rhs_value = rule.rhs.eval_with(&lookup, rm)?;
        Ok(
            (!szval::same_repr(lhs_value, rhs_value)).then(|| Counterexample {
                witness: rule.variables.iter().cloned().zip(values).collect(),
                lhs_value,
                rhs_value,
            }),
        )
    };

    // find_map_first keeps the lowest index regardless of how rayon splits.
    let found = (0..total)
        .into_par_iter()
        .map(probe)
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    match found {
        None => Ok(Verdict::Legal),
        Some(Ok(Some(c))) => Ok(Verdict::Illegal(c)),
        Some(Err(e)) => Err(e),
        Some(Ok(None)) => unreachable!(),
    }
}

/// Parses `LHS => RHS` and checks it over `domain`.
pub fn check_rule_str(
    rule: &str,
    domain: &[SzValue],
    rm: RoundingMode,
) -> Result<(RewriteRule, Verdict), RewriteError> {
    let rule = parse_rule(rule)?;
    let verdict = check_rewrite(&rule, domain, rm)?;
    Ok((rule, verdict))
}
