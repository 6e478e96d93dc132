//! Closed-form tight bounds on causal effects and on PNS, PN, PS; point
//! identification under monotonicity; back-door adjustment over a single
//! binary covariate.

use serde::Serialize;

use crate::distributions::{
    check_compatibility, EffectVariant, ExperimentalDistribution, Interval,
    ObservationalDistribution, Outcome, Treatment,
};
use crate::error::{Error, Result};
use crate::tolerance::{leq, tolerance};

/// A bound after clamping to `[0, 1]`, with the raw formula values kept.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TightBound {
    pub interval: Interval,
    pub raw_lo: f64,
    pub raw_hi: f64,
}

impl TightBound {
    fn from_raw(raw_lo: f64, raw_hi: f64) -> Result<Self> {
        let lo = raw_lo.clamp(0.0, 1.0);
        let hi = raw_hi.clamp(0.0, 1.0);
        Ok(Self {
            interval: Interval::new_snapped(lo, hi)?,
            raw_lo,
            raw_hi,
        })
    }

    pub fn was_clamped(&self) -> bool {
        self.raw_lo != self.interval.lo() || self.raw_hi != self.interval.hi()
    }
}

/// Collect required values, failing with every missing name at once.
fn require<const N: usize>(items: [(&str, Option<f64>); N]) -> Result<[f64; N]> {
    let missing: Vec<String> = items
        .iter()
        .filter(|(_, v)| v.is_none())
        .map(|(name, _)| name.to_string())
        .collect();
    if !missing.is_empty() {
        return Err(Error::MissingData(missing));
    }
    Ok(items.map(|(_, v)| v.unwrap()))
}

fn ensure_compatible(exp: &ExperimentalDistribution, obs: &ObservationalDistribution) -> Result<()> {
    check_compatibility(exp, obs).into_result()
}

/// `P(t,o) ≤ P(o_t) ≤ 1 − P(t,o')`.
pub fn causal_effect_bounds(
    obs: &ObservationalDistribution,
    variant: EffectVariant,
) -> Result<Interval> {
    let t = variant.treatment;
    let o = variant.outcome;
    let [same, other] = require([
        (&variant.cell_label(), obs.cell(t, o)),
        (
            &EffectVariant::new(t, o.other()).cell_label(),
            obs.cell(t, o.other()),
        ),
    ])?;
    Interval::new_snapped(same, 1.0 - other)
}

/// Tight bounds on `PNS = P(y_x, y'_{x'})` from combined data.
pub fn pns_bounds(exp: &ExperimentalDistribution, obs: &ObservationalDistribution) -> Result<TightBound> {
    let [y_x, y_xp, xy, xyp, xpy, xpyp] = require([
        ("P(y_x)", exp.p_y_do_x()),
        ("P(y_x')", exp.p_y_do_xp()),
        ("P(x,y)", obs.p_xy()),
        ("P(x,y')", obs.p_xyp()),
        ("P(x',y)", obs.p_xpy()),
        ("P(x',y')", obs.p_xpyp()),
    ])?;
    ensure_compatible(exp, obs)?;
    let y = xy + xpy;

    let lo = 0.0_f64.max(y_x - y_xp).max(y - y_xp).max(y_x - y);
    let hi = y_x
        .min(1.0 - y_xp)
        .min(xy + xpyp)
        .min(y_x - y_xp + xyp + xpy);
    TightBound::from_raw(lo, hi)
}

/// Tight bounds on `PN = P(y'_{x'} | x, y)`.
pub fn pn_bounds(exp: &ExperimentalDistribution, obs: &ObservationalDistribution) -> Result<TightBound> {
    let [y_xp, xy, xpy, xpyp] = require([
        ("P(y_x')", exp.p_y_do_xp()),
        ("P(x,y)", obs.p_xy()),
        ("P(x',y)", obs.p_xpy()),
        ("P(x',y')", obs.p_xpyp()),
    ])?;
    if xy <= 0.0 {
        return Err(Error::ZeroDenominator("P(x,y)"));
    }
    ensure_compatible(exp, obs)?;
    let y = xy + xpy;
    let lo = 0.0_f64.max((y - y_xp) / xy);
    let hi = 1.0_f64.min(((1.0 - y_xp) - xpyp) / xy);
    TightBound::from_raw(lo, hi)
}

/// Tight bounds on `PS = P(y_x | x', y')`.
pub fn ps_bounds(exp: &ExperimentalDistribution, obs: &ObservationalDistribution) -> Result<TightBound> {
    let [y_x, xy, xyp, xpyp] = require([
        ("P(y_x)", exp.p_y_do_x()),
        ("P(x,y)", obs.p_xy()),
        ("P(x,y')", obs.p_xyp()),
        ("P(x',y')", obs.p_xpyp()),
    ])?;
    if xpyp <= 0.0 {
        return Err(Error::ZeroDenominator("P(x',y')"));
    }
    ensure_compatible(exp, obs)?;
    let y_prime = xyp + xpyp;
    let lo = 0.0_f64.max((y_prime - (1.0 - y_x)) / xpyp);
    let hi = 1.0_f64.min((y_x - xy) / xpyp);
    TightBound::from_raw(lo, hi)
}

/// PNS, PN and PS when `Y` is monotonic in `X`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonotoneIdentification {
    pub pns: f64,
    pub pn: f64,
    pub ps: f64,
}

/// Point identification under an asserted monotonicity assumption. The
/// assumption is refuted when the data violate `P(y_x) ≥ P(y) ≥ P(y_{x'})`.
pub fn identify_monotone(
    exp: &ExperimentalDistribution,
    obs: &ObservationalDistribution,
) -> Result<MonotoneIdentification> {
    let [y_x, y_xp, xy, xpy, xpyp] = require([
        ("P(y_x)", exp.p_y_do_x()),
        ("P(y_x')", exp.p_y_do_xp()),
        ("P(x,y)", obs.p_xy()),
        ("P(x',y)", obs.p_xpy()),
        ("P(x',y')", obs.p_xpyp()),
    ])?;
    let y = xy + xpy;
    if !(leq(y_xp, y_x) && leq(y, y_x) && leq(y_xp, y)) {
        return Err(Error::MonotonicityRefuted {
            p_y_do_x: y_x,
            p_y: y,
            p_y_do_xp: y_xp,
        });
    }
    ensure_compatible(exp, obs)?;
    if xy <= 0.0 {
        return Err(Error::ZeroDenominator("P(x,y)"));
    }
    if xpyp <= 0.0 {
        return Err(Error::ZeroDenominator("P(x',y')"));
    }
    Ok(MonotoneIdentification {
        pns: y_x - y_xp,
        pn: (y - y_xp) / xy,
        ps: (y_x - y) / xpyp,
    })
}

/// Value of a binary covariate `U`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stratum {
    U,
    NotU,
}

impl Stratum {
    pub const ALL: [Stratum; 2] = [Stratum::U, Stratum::NotU];

    fn index(self) -> usize {
        match self {
            Stratum::U => 0,
            Stratum::NotU => 1,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Stratum::U => "u",
            Stratum::NotU => "u'",
        }
    }
}

fn t_index(t: Treatment) -> usize {
    match t {
        Treatment::Treated => 0,
        Treatment::Untreated => 1,
    }
}

fn o_index(o: Outcome) -> usize {
    match o {
        Outcome::Positive => 0,
        Outcome::Negative => 1,
    }
}

/// Joint `P(X, Y, U)` over three binary variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovariateJoint {
    // [x][y][u]
    cells: [[[f64; 2]; 2]; 2],
}

impl CovariateJoint {
    pub fn new(cells: [[[f64; 2]; 2]; 2]) -> Result<Self> {
        let flat = cells.iter().flatten().flatten();
        let mut sum = 0.0;
        for &c in flat {
            if !(0.0..=1.0).contains(&c) {
                return Err(Error::InvalidProbability {
                    field: "P(x,y,u)",
                    value: c,
                });
            }
            sum += c;
        }
        if (sum - 1.0).abs() > tolerance() {
            return Err(Error::MassNotConserved { sum });
        }
        Ok(Self { cells })
    }

    pub fn cell(&self, t: Treatment, o: Outcome, u: Stratum) -> f64 {
        self.cells[t_index(t)][o_index(o)][u.index()]
    }

    pub fn p_u(&self, u: Stratum) -> f64 {
        self.cells
            .iter()
            .flat_map(|by_y| by_y.iter())
            .map(|by_u| by_u[u.index()])
            .sum()
    }

    /// The joint with the roles of `u` and `u'` exchanged.
    pub fn relabel_u(&self) -> Self {
        let mut cells = self.cells;
        for by_y in &mut cells {
            for by_u in by_y {
                by_u.swap(0, 1);
            }
        }
        Self { cells }
    }
}

/// `P(o_t) = Σ_u P(o | t, u) P(u)`.
pub fn adjust_over_covariate(joint: &CovariateJoint, treatment: Treatment, outcome: Outcome) -> Result<f64> {
    let mut total = 0.0;
    for u in Stratum::ALL {
        let p_u = joint.p_u(u);
        if p_u <= 0.0 {
            continue;
        }
        let p_tu = joint.cell(treatment, Outcome::Positive, u) + joint.cell(treatment, Outcome::Negative, u);
        if p_tu <= 0.0 {
            return Err(Error::EmptyStratum(u.label()));
        }
        total += joint.cell(treatment, outcome, u) / p_tu * p_u;
    }
    Ok(total)
}
