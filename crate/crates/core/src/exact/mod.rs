//! Exact scalars, truncated polynomials and operators on them.

mod op;
mod poly;
mod rational;

pub use op::{exp_lowering, exp_raising_formal, Functional, LinearOp};
pub use poly::{Poly, Truncated};
pub use rational::{
    binomial, factorial, format_rational, int, parse_rational, parse_rational_list, ratio,
    serde_str, to_f64, Rational,
};

/// Default degree cap for exact computations.
pub const DEFAULT_DEGREE: usize = 32;
