//! Signed-zero floating-point semantics and exact Beal-equation adjudication.
//!
//! - [`szval`]: the `{finite, ±0, ±inf, NaN}` value domain and its arithmetic.
//! - [`semantics`]: the signed-zero rule table evaluated against the model
//!   and the host.
//! - [`rewrite`]: domain-exhaustive legality checks for expression rewrites.
//! - [`bealcore`]: exact adjudication of `A^x + B^y = C^z` claims under
//!   configurable notions of "positive integer".
//! - [`search`]: bounded exhaustive search for solutions.

pub mod bealcore;
pub mod rewrite;
pub mod search;
pub mod semantics;
pub mod szval;

pub use bealcore::{
    adjudicate, BealClaim, BealError, Classification, IntValue, PositiveIntegerPolicy,
    VerdictReport,
};
pub use rewrite::{check_rewrite, default_domain, eval_expr, Env, Expr, RewriteRule, Verdict};
pub use search::{search_solutions, SearchBounds, SearchResult, Solution};
pub use szval::{RoundingMode, Sign, SzValue};
