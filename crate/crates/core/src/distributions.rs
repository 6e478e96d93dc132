//! Data types for binary treatment/outcome studies: experimental and
//! observational distributions, raw study counts, closed intervals and the
//! ε-identification record every engine emits.
//!
//! Every field of the two distributions is individually optional; operations
//! state which cells they need and report the rest as missing.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::tolerance::{leq, tolerance};

fn check_probability(field: &'static str, value: Option<f64>) -> Result<()> {
    match value {
        Some(v) if !(0.0..=1.0).contains(&v) || v.is_nan() => {
            Err(Error::InvalidProbability { field, value: v })
        }
        _ => Ok(()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Treatment {
    /// `x`
    Treated,
    /// `x'`
    Untreated,
}

impl Treatment {
    pub fn other(self) -> Self {
        match self {
            Treatment::Treated => Treatment::Untreated,
            Treatment::Untreated => Treatment::Treated,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Treatment::Treated => "x",
            Treatment::Untreated => "x'",
        }
    }
}

impl fmt::Display for Treatment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Treatment::Treated => "treated",
            Treatment::Untreated => "untreated",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    /// `y`
    Positive,
    /// `y'`
    Negative,
}

impl Outcome {
    pub fn other(self) -> Self {
        match self {
            Outcome::Positive => Outcome::Negative,
            Outcome::Negative => Outcome::Positive,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Outcome::Positive => "y",
            Outcome::Negative => "y'",
        }
    }
}

/// One of the four causal effects `P(y_x)`, `P(y'_x)`, `P(y_{x'})`, `P(y'_{x'})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EffectVariant {
    pub treatment: Treatment,
    pub outcome: Outcome,
}

impl EffectVariant {
    pub const Y_X: Self = Self::new(Treatment::Treated, Outcome::Positive);
    pub const YP_X: Self = Self::new(Treatment::Treated, Outcome::Negative);
    pub const Y_XP: Self = Self::new(Treatment::Untreated, Outcome::Positive);
    pub const YP_XP: Self = Self::new(Treatment::Untreated, Outcome::Negative);

    pub const ALL: [Self; 4] = [Self::Y_X, Self::YP_X, Self::Y_XP, Self::YP_XP];

    pub const fn new(treatment: Treatment, outcome: Outcome) -> Self {
        Self { treatment, outcome }
    }

    /// Label of the joint cell `P(t, o)` matching this effect.
    pub fn cell_label(self) -> String {
        format!("P({},{})", self.treatment.symbol(), self.outcome.symbol())
    }
}

impl fmt::Display for EffectVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({}_{})", self.outcome.symbol(), self.treatment.symbol())
    }
}

impl Serialize for EffectVariant {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Causal-effect probabilities `P(y_x)` and `P(y_{x'})`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct ExperimentalDistribution {
    p_y_do_x: Option<f64>,
    p_y_do_xp: Option<f64>,
}

impl ExperimentalDistribution {
    pub fn new(p_y_do_x: Option<f64>, p_y_do_xp: Option<f64>) -> Result<Self> {
        check_probability("p_y_do_x", p_y_do_x)?;
        check_probability("p_y_do_xp", p_y_do_xp)?;
        Ok(Self {
            p_y_do_x,
            p_y_do_xp,
        })
    }

    /// Both arms known.
    pub fn full(p_y_do_x: f64, p_y_do_xp: f64) -> Result<Self> {
        Self::new(Some(p_y_do_x), Some(p_y_do_xp))
    }

    pub fn p_y_do_x(&self) -> Option<f64> {
        self.p_y_do_x
    }

    pub fn p_y_do_xp(&self) -> Option<f64> {
        self.p_y_do_xp
    }

    pub fn effect(&self, variant: EffectVariant) -> Option<f64> {
        let p = match variant.treatment {
            Treatment::Treated => self.p_y_do_x,
            Treatment::Untreated => self.p_y_do_xp,
        }?;
        Some(match variant.outcome {
            Outcome::Positive => p,
            Outcome::Negative => 1.0 - p,
        })
    }

    pub fn is_full(&self) -> bool {
        self.p_y_do_x.is_some() && self.p_y_do_xp.is_some()
    }
}

/// Joint `P(X, Y)` over binary treatment and outcome, cell by cell.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct ObservationalDistribution {
    p_xy: Option<f64>,
    p_xyp: Option<f64>,
    p_xpy: Option<f64>,
    p_xpyp: Option<f64>,
}

impl ObservationalDistribution {
    pub fn new(
        p_xy: Option<f64>,
        p_xyp: Option<f64>,
        p_xpy: Option<f64>,
        p_xpyp: Option<f64>,
    ) -> Result<Self> {
        check_probability("p_xy", p_xy)?;
        check_probability("p_xyp", p_xyp)?;
        check_probability("p_xpy", p_xpy)?;
        check_probability("p_xpyp", p_xpyp)?;
        if let (Some(a), Some(b), Some(c), Some(d)) = (p_xy, p_xyp, p_xpy, p_xpyp) {
            let sum = a + b + c + d;
            if (sum - 1.0).abs() > tolerance() {
                return Err(Error::MassNotConserved { sum });
            }
        }
        Ok(Self {
            p_xy,
            p_xyp,
            p_xpy,
            p_xpyp,
        })
    }

    /// All four cells `P(x,y), P(x,y'), P(x',y), P(x',y')`.
    pub fn full(p_xy: f64, p_xyp: f64, p_xpy: f64, p_xpyp: f64) -> Result<Self> {
        Self::new(Some(p_xy), Some(p_xyp), Some(p_xpy), Some(p_xpyp))
    }

    pub fn cell(&self, treatment: Treatment, outcome: Outcome) -> Option<f64> {
        match (treatment, outcome) {
            (Treatment::Treated, Outcome::Positive) => self.p_xy,
            (Treatment::Treated, Outcome::Negative) => self.p_xyp,
            (Treatment::Untreated, Outcome::Positive) => self.p_xpy,
            (Treatment::Untreated, Outcome::Negative) => self.p_xpyp,
        }
    }

    pub fn p_xy(&self) -> Option<f64> {
        self.p_xy
    }

    pub fn p_xyp(&self) -> Option<f64> {
        self.p_xyp
    }

    pub fn p_xpy(&self) -> Option<f64> {
        self.p_xpy
    }

    pub fn p_xpyp(&self) -> Option<f64> {
        self.p_xpyp
    }

    /// `P(t)`, available when both cells of the arm are present.
    pub fn treatment_marginal(&self, t: Treatment) -> Option<f64> {
        Some(self.cell(t, Outcome::Positive)? + self.cell(t, Outcome::Negative)?)
    }

    /// `P(o)`, available when both cells with this outcome are present.
    pub fn outcome_marginal(&self, o: Outcome) -> Option<f64> {
        Some(self.cell(Treatment::Treated, o)? + self.cell(Treatment::Untreated, o)?)
    }

    pub fn p_x(&self) -> Option<f64> {
        self.treatment_marginal(Treatment::Treated)
    }

    pub fn p_y(&self) -> Option<f64> {
        self.outcome_marginal(Outcome::Positive)
    }

    /// `P(y|x)`; `None` when cells are missing or `P(x) = 0`.
    pub fn p_y_given_x(&self) -> Option<f64> {
        let px = self.p_x()?;
        (px > 0.0).then(|| self.p_xy.unwrap_or(0.0) / px)
    }

    pub fn is_full(&self) -> bool {
        self.p_xy.is_some() && self.p_xyp.is_some() && self.p_xpy.is_some() && self.p_xpyp.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StudyKind {
    Experimental,
    Observational,
}

/// Raw 2×2 counts from a study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StudyCounts {
    pub n_treated_recovered: u64,
    pub n_treated_not: u64,
    pub n_untreated_recovered: u64,
    pub n_untreated_not: u64,
    pub kind: StudyKind,
}

impl StudyCounts {
    pub fn new(
        n_treated_recovered: u64,
        n_treated_not: u64,
        n_untreated_recovered: u64,
        n_untreated_not: u64,
        kind: StudyKind,
    ) -> Self {
        Self {
            n_treated_recovered,
            n_treated_not,
            n_untreated_recovered,
            n_untreated_not,
            kind,
        }
    }

    pub fn total(&self) -> u64 {
        self.n_treated_recovered + self.n_treated_not + self.n_untreated_recovered + self.n_untreated_not
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Distribution {
    Experimental(ExperimentalDistribution),
    Observational(ObservationalDistribution),
}

/// Turn study counts into probabilities: per-arm recovery rates for an
/// experiment, cell frequencies for an observational study.
pub fn from_counts(counts: &StudyCounts) -> Result<Distribution> {
    let total = counts.total();
    if total == 0 {
        return Err(Error::EmptyStudy);
    }
    match counts.kind {
        StudyKind::Experimental => {
            let treated = counts.n_treated_recovered + counts.n_treated_not;
            let untreated = counts.n_untreated_recovered + counts.n_untreated_not;
            if treated == 0 {
                return Err(Error::ZeroArm(Treatment::Treated));
            }
            if untreated == 0 {
                return Err(Error::ZeroArm(Treatment::Untreated));
            }
            Ok(Distribution::Experimental(ExperimentalDistribution::full(
                counts.n_treated_recovered as f64 / treated as f64,
                counts.n_untreated_recovered as f64 / untreated as f64,
            )?))
        }
        StudyKind::Observational => {
            let n = total as f64;
            Ok(Distribution::Observational(ObservationalDistribution::full(
                counts.n_treated_recovered as f64 / n,
                counts.n_treated_not as f64 / n,
                counts.n_untreated_recovered as f64 / n,
                counts.n_untreated_not as f64 / n,
            )?))
        }
    }
}

/// Closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub const UNIT: Interval = Interval { lo: 0.0, hi: 1.0 };

    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(Error::EmptyInterval { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn point(v: f64) -> Self {
        Self { lo: v, hi: v }
    }

    /// Build an interval whose endpoints may be crossed by rounding; a
    /// crossing within the global tolerance collapses to the midpoint.
    pub fn new_snapped(lo: f64, hi: f64) -> Result<Self> {
        if lo > hi && lo - hi <= tolerance() {
            let mid = 0.5 * (lo + hi);
            return Ok(Self::point(mid));
        }
        Self::new(lo, hi)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, v: f64) -> bool {
        leq(self.lo, v) && leq(v, self.hi)
    }

    /// `other ⊆ self` up to the global tolerance.
    pub fn contains_interval(&self, other: &Interval) -> bool {
        leq(self.lo, other.lo) && leq(other.hi, self.hi)
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn clamp_unit(&self) -> Interval {
        let lo = self.lo.clamp(0.0, 1.0);
        let hi = self.hi.clamp(0.0, 1.0);
        Interval { lo, hi: hi.max(lo) }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Which side of `P(t,o) ≤ P(o_t) ≤ 1 − P(t,¬o)` failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundSide {
    Lower,
    Upper,
}

/// One failed consistency inequality between experimental and observational data.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub variant: EffectVariant,
    pub side: BoundSide,
    /// Value of the causal effect.
    pub effect: f64,
    /// Value of the bound it crossed.
    pub bound: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.variant.treatment;
        let o = self.variant.outcome;
        match self.side {
            BoundSide::Lower => write!(
                f,
                "{} = {} <= {} = {} fails",
                self.variant.cell_label(),
                self.bound,
                self.variant,
                self.effect
            ),
            BoundSide::Upper => write!(
                f,
                "{} = {} <= 1 - {} = {} fails",
                self.variant,
                self.effect,
                EffectVariant::new(t, o.other()).cell_label(),
                self.bound
            ),
        }
    }
}

/// Outcome of [`check_compatibility`].
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Compatibility {
    pub violations: Vec<Violation>,
    /// Effect variants whose check was skipped for lack of data.
    pub not_evaluated: Vec<String>,
}

impl Compatibility {
    pub fn is_compatible(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.violations.is_empty() {
            Ok(())
        } else {
            Err(Error::Incompatible(self.violations))
        }
    }
}

/// Check `P(t,o) ≤ P(o_t) ≤ 1 − P(t,o')` for all four effect variants.
pub fn check_compatibility(
    exp: &ExperimentalDistribution,
    obs: &ObservationalDistribution,
) -> Compatibility {
    let mut out = Compatibility::default();
    for variant in EffectVariant::ALL {
        let Some(effect) = exp.effect(variant) else {
            out.not_evaluated.push(format!("{variant}: effect unknown"));
            continue;
        };
        let t = variant.treatment;
        let mut evaluated = false;
        if let Some(lower) = obs.cell(t, variant.outcome) {
            evaluated = true;
            if !leq(lower, effect) {
                out.violations.push(Violation {
                    variant,
                    side: BoundSide::Lower,
                    effect,
                    bound: lower,
                });
            }
        }
        if let Some(other) = obs.cell(t, variant.outcome.other()) {
            evaluated = true;
            let upper = 1.0 - other;
            if !leq(effect, upper) {
                out.violations.push(Violation {
                    variant,
                    side: BoundSide::Upper,
                    effect,
                    bound: upper,
                });
            }
        }
        if !evaluated {
            out.not_evaluated.push(format!("{variant}: observational cells unknown"));
        }
    }
    out
}

/// Target of an ε-identification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    CausalEffect(EffectVariant),
    Pns,
    Pn,
    Ps,
    Benefit,
}

impl Quantity {
    /// Probability-valued quantities live in `[0, 1]`.
    pub fn is_probability(&self) -> bool {
        !matches!(self, Quantity::Benefit)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::CausalEffect(v) => write!(f, "{v}"),
            Quantity::Pns => f.write_str("PNS"),
            Quantity::Pn => f.write_str("PN"),
            Quantity::Ps => f.write_str("PS"),
            Quantity::Benefit => f.write_str("benefit"),
        }
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The premise that justified an identification.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Condition {
    /// Catalog id, e.g. `PNS-16`.
    pub tag: String,
    /// Human-readable premise, e.g. `P(y) ≤ 2ε`.
    pub premise: String,
    /// Human-readable center formula, e.g. `P(y_x) − ε`.
    pub center: String,
    /// Evaluated left-hand side of the premise (its supremum under interval data).
    pub lhs: f64,
    /// Evaluated right-hand side.
    pub rhs: f64,
}

/// `Q ≈_ε q`: every model consistent with the data puts `Q` in `[q − ε, q + ε]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EpsIdentification {
    pub quantity: Quantity,
    pub q: f64,
    pub eps: f64,
    pub condition: Condition,
    pub certified: Interval,
}

impl EpsIdentification {
    pub fn new(quantity: Quantity, q: f64, eps: f64, condition: Condition) -> Result<Self> {
        if !eps.is_finite() || eps < 0.0 {
            return Err(Error::InvalidEpsilon(eps));
        }
        if !q.is_finite() {
            return Err(Error::InvalidInput(format!("center {q} is not finite")));
        }
        let certified = Interval::new(q - eps, q + eps)?;
        Ok(Self {
            quantity,
            q,
            eps,
            condition,
            certified,
        })
    }

    /// Certified interval intersected with `[0, 1]` for probability quantities.
    pub fn clamped(&self) -> Option<Interval> {
        if self.quantity.is_probability() {
            self.certified.intersect(&Interval::UNIT)
        } else {
            Some(self.certified)
        }
    }
}
