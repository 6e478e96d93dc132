use thiserror::Error;

use crate::distributions::{Treatment, Violation};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{field} = {value} is not a probability in [0, 1]")]
    InvalidProbability { field: &'static str, value: f64 },

    #[error("observational cells sum to {sum}, expected 1")]
    MassNotConserved { sum: f64 },

    #[error("study has no subjects")]
    EmptyStudy,

    #[error("the {0} arm has zero subjects")]
    ZeroArm(Treatment),

    #[error("empty interval: lo = {lo} > hi = {hi}")]
    EmptyInterval { lo: f64, hi: f64 },

    #[error("missing data: {}", .0.join(", "))]
    MissingData(Vec<String>),

    #[error("experimental and observational data are incompatible: {}", render_violations(.0))]
    Incompatible(Vec<Violation>),

    #[error("denominator {0} is zero")]
    ZeroDenominator(&'static str),

    #[error(
        "monotonicity refuted by data: need P(y_x) = {p_y_do_x} >= P(y) = {p_y} >= P(y_x') = {p_y_do_xp}"
    )]
    MonotonicityRefuted {
        p_y_do_x: f64,
        p_y: f64,
        p_y_do_xp: f64,
    },

    #[error("stratum {0} has positive mass but no subjects in the treatment arm")]
    EmptyStratum(&'static str),

    #[error("epsilon must be positive and finite, got {0}")]
    InvalidEpsilon(f64),

    #[error("tolerance must be finite and non-negative, got {0}")]
    InvalidTolerance(f64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("no grid value of c in (0, {c_max}] satisfies the confounded-effect condition")]
    NoFeasibleC { c_max: f64 },

    #[error("no model is consistent with the supplied data")]
    Infeasible,

    #[error("unsupported: {0}")]
    Unsupported(String),
}

fn render_violations(v: &[Violation]) -> String {
    v.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}
