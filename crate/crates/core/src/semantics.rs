//! The signed-zero rule table: each row is a concrete instance of one of the
//! tabulated IEEE 754 zero rules, with its expected result per rounding mode.

use crate::szval::{self, RoundingMode, SzValue};

/// A single operation applied to concrete operands.
#[derive(Debug, Clone, Copy)]
pub enum RuleOp {
    Add(SzValue, SzValue),
    Sub(SzValue, SzValue),
    Mul(SzValue, SzValue),
    Div(SzValue, SzValue),
    Sqrt(SzValue),
}

impl RuleOp {
    pub fn eval(self, rm: RoundingMode) -> SzValue {
        match self {
            RuleOp::Add(a, b) => szval::add(a, b, rm),
            RuleOp::Sub(a, b) => szval::sub(a, b, rm),
            RuleOp::Mul(a, b) => szval::mul(a, b),
            RuleOp::Div(a, b) => szval::div(a, b),
            RuleOp::Sqrt(a) => szval::sqrt(a),
        }
    }

    /// The same operation on host doubles (round-to-nearest only).
    pub fn eval_host(self) -> f64 {
        match self {
            RuleOp::Add(a, b) => a.to_f64() + b.to_f64(),
            RuleOp::Sub(a, b) => a.to_f64() - b.to_f64(),
            RuleOp::Mul(a, b) => a.to_f64() * b.to_f64(),
            RuleOp::Div(a, b) => a.to_f64() / b.to_f64(),
            RuleOp::Sqrt(a) => a.to_f64().sqrt(),
        }
    }

    /// Additive results depend on the rounding mode, and the host can only
    /// be queried in round-to-nearest.
    pub fn host_checkable(self, rm: RoundingMode) -> bool {
        rm == RoundingMode::ToNearest || !matches!(self, RuleOp::Add(..) | RuleOp::Sub(..))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SemanticsRule {
    pub label: &'static str,
    pub op: RuleOp,
    pub expected_nearest: SzValue,
    pub expected_toward_negative: SzValue,
}

impl SemanticsRule {
    pub fn expected(&self, rm: RoundingMode) -> SzValue {
        match rm {
            RoundingMode::ToNearest => self.expected_nearest,
            RoundingMode::TowardNegative => self.expected_toward_negative,
        }
    }
}

/// Sample `x` used by rows written in terms of a variable.
pub const SAMPLE_X: f64 = 3.0;

#[derive(Debug, Clone)]
pub struct RuleRow {
    pub rule: SemanticsRule,
    pub model: SzValue,
    /// `None` when the host cannot run the row in the requested mode.
    pub host: Option<f64>,
}

impl RuleRow {
    pub fn matches_expected(&self, rm: RoundingMode) -> bool {
        self.model == self.rule.expected(rm)
    }

    pub fn host_agrees(&self) -> Option<bool> {
        self.host.map(|h| szval::matches_host(self.model, h))
    }
}

pub fn rule_table() -> Vec<SemanticsRule> {
    use RuleOp::*;
    let x = SzValue::from_f64(SAMPLE_X);
    let neg_x = szval::neg(x);
    let (pz, nz, pi, ni) = (
        SzValue::POS_ZERO,
        SzValue::NEG_ZERO,
        SzValue::POS_INF,
        SzValue::NEG_INF,
    );
    let nan = SzValue::NaN;
    let row = |label, op, expected| SemanticsRule {
        label,
        op,
        expected_nearest: expected,
        expected_toward_negative: expected,
    };
    vec![
        row("(-0) / |x|", Div(nz, x), nz),
        row("(-0) * (-0)", Mul(nz, nz), pz),
        row("x + (+0)", Add(x, pz), x),
        row("x + (-0)", Add(x, nz), x),
        row("(-0) + (-0)", Add(nz, nz), nz),
        row("(-0) - (+0)", Sub(nz, pz), nz),
        row("(+0) + (+0)", Add(pz, pz), pz),
        row("(+0) - (-0)", Sub(pz, nz), pz),
        SemanticsRule {
            label: "x - x",
            op: Sub(x, x),
            expected_nearest: pz,
            expected_toward_negative: nz,
        },
        SemanticsRule {
            label: "x + (-x)",
            op: Add(x, neg_x),
            expected_nearest: pz,
            expected_toward_negative: nz,
        },
        row("sqrt(-0)", Sqrt(nz), nz),
        row("(-0) / (-inf)", Div(nz, ni), pz),
        row("|x| / (-0)", Div(x, nz), ni),
        row("(+0) * (+inf)", Mul(pz, pi), nan),
        row("(+0) * (-inf)", Mul(pz, ni), nan),
        row("(-0) * (+inf)", Mul(nz, pi), nan),
        row("(-0) * (-inf)", Mul(nz, ni), nan),
        row("(+0) / (+0)", Div(pz, pz), nan),
        row("(+0) / (-0)", Div(pz, nz), nan),
        row("(-0) / (+0)", Div(nz, pz), nan),
        row("(-0) / (-0)", Div(nz, nz), nan),
        row("1 / (+0)", Div(SzValue::ONE, pz), pi),
        row("1 / (-0)", Div(SzValue::ONE, nz), ni),
    ]
}

pub fn evaluate_table(rm: RoundingMode) -> Vec<RuleRow> {
    rule_table()
        .into_iter()
        .map(|rule| RuleRow {
            model: rule.op.eval(rm),
            host: rule.op.host_checkable(rm).then(|| rule.op.eval_host()),
            rule,
        })
        .collect()
}
