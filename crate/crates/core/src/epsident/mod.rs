//! ε-identification engine.
//!
//! * [`eps_identify`] scans the condition catalog of PNS, PN or PS against
//!   whatever evidence is available and reports every condition that fires.
//! * [`eps_identify_effect`] and [`eps_identify_effect_confounded`] cover the
//!   causal effect, from a joint cell plus a marginal bound and from `P(y|x)`
//!   under a rare binary confounder respectively.
//! * [`minimal_epsilon`] gives the smallest ε at which a quantity is
//!   ε-identified from full data: half the width of its tight bounds.

pub mod catalog;

use serde::Serialize;

use crate::bounds::{causal_effect_bounds, pn_bounds, pns_bounds, ps_bounds, TightBound};
use crate::distributions::{
    check_compatibility, Condition, EffectVariant, EpsIdentification, ExperimentalDistribution,
    Interval, ObservationalDistribution, Quantity, Treatment,
};
use crate::error::{Error, Result};
use crate::evidence::{Atom, Evidence, LinearExpr};
use crate::tolerance::{leq, tolerance};

pub use catalog::{catalog, ArgumentTable, BoundArgument, CatalogEntry, Side};

fn check_eps(eps: f64) -> Result<()> {
    if eps.is_finite() && eps > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidEpsilon(eps))
    }
}

fn check_unit(field: &'static str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::InvalidProbability { field, value: v })
    }
}

/// A catalog condition that could not be evaluated.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NotEvaluated {
    pub tag: &'static str,
    pub missing: Vec<Atom>,
    pub reason: &'static str,
}

/// Result of scanning one quantity's catalog.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EpsReport {
    pub quantity: Quantity,
    pub eps: f64,
    pub fired: Vec<EpsIdentification>,
    pub tightest: Option<EpsIdentification>,
    pub not_evaluated: Vec<NotEvaluated>,
    /// Tight bounds, when the data suffice to compute them.
    pub tight_bounds: Option<TightBound>,
}

impl EpsReport {
    pub fn fired_tags(&self) -> Vec<&str> {
        self.fired.iter().map(|f| f.condition.tag.as_str()).collect()
    }
}

fn tight_bounds_for(quantity: Quantity, evidence: &Evidence) -> Option<TightBound> {
    let exp = evidence.experimental();
    let obs = evidence.observational()?;
    match quantity {
        Quantity::Pns => pns_bounds(&exp, &obs).ok(),
        Quantity::Pn => pn_bounds(&exp, &obs).ok(),
        Quantity::Ps => ps_bounds(&exp, &obs).ok(),
        _ => None,
    }
}

/// Refuse evidence whose experimental and observational parts contradict each other.
fn ensure_consistent(evidence: &Evidence) -> Result<()> {
    evidence.check_consistency()?;
    if let Some(obs) = evidence.observational() {
        check_compatibility(&evidence.experimental(), &obs).into_result()?;
    }
    Ok(())
}

/// Scan the catalog of `quantity` (PNS, PN or PS) at radius `eps`.
///
/// A condition is evaluated when every atom left in its premise after
/// cancellation is known (exactly or as an interval); it fires when the
/// premise holds for every value in those intervals. A fired condition also
/// needs the atoms of its center to be known exactly.
pub fn eps_identify(quantity: Quantity, evidence: &Evidence, eps: f64) -> Result<EpsReport> {
    check_eps(eps)?;
    let table = ArgumentTable::for_quantity(quantity)
        .ok_or_else(|| Error::Unsupported(format!("no condition catalog for {quantity}")))?;
    ensure_consistent(evidence)?;

    let den = table.denominator_expr();
    if let Some(d) = table.denominator {
        if evidence.exact(d) == Some(0.0) {
            return Err(Error::ZeroDenominator(d.label()));
        }
    }

    let mut fired = Vec::new();
    let mut not_evaluated = Vec::new();
    for entry in catalog(quantity) {
        let gap = entry.gap(&table);
        let premise = gap - den * (2.0 * eps);
        let missing = evidence.missing(&premise);
        if !missing.is_empty() {
            not_evaluated.push(NotEvaluated {
                tag: entry.tag,
                missing,
                reason: "premise needs data that is not available",
            });
            continue;
        }
        let sup = evidence.range(&premise).expect("all atoms known").hi();
        if !leq(sup, 0.0) {
            continue;
        }
        let anchor = entry.anchor_numerator(&table);
        let (Some(num), Some(d)) = (evidence.value(&anchor), evidence.value(&den)) else {
            let mut missing = evidence.missing_exact(&anchor);
            missing.extend(evidence.missing_exact(&den));
            not_evaluated.push(NotEvaluated {
                tag: entry.tag,
                missing,
                reason: "premise holds but the center needs exact values",
            });
            continue;
        };
        let q = match entry.anchor {
            Side::Lower => num / d + eps,
            Side::Upper => num / d - eps,
        };
        let lhs = evidence.range(&gap).expect("all atoms known").hi();
        let rhs = 2.0 * eps * evidence.range(&den).expect("all atoms known").lo();
        let condition = Condition {
            tag: entry.tag.to_string(),
            premise: entry.premise.to_string(),
            center: entry.center.to_string(),
            lhs,
            rhs,
        };
        fired.push(EpsIdentification::new(quantity, q, eps, condition)?);
    }

    let tight_bounds = tight_bounds_for(quantity, evidence);
    let tightest = select_tightest(&fired, tight_bounds.map(|b| b.interval));
    Ok(EpsReport {
        quantity,
        eps,
        fired,
        tightest,
        not_evaluated,
        tight_bounds,
    })
}

/// Narrowest certified interval after intersecting with the tight bounds and
/// `[0, 1]`; ties go to the earlier catalog entry.
fn select_tightest(fired: &[EpsIdentification], tight: Option<Interval>) -> Option<EpsIdentification> {
    let width = |id: &EpsIdentification| {
        let mut i = id.clamped();
        if let (Some(cur), Some(t)) = (i, tight) {
            i = cur.intersect(&t);
        }
        i.map_or(f64::INFINITY, |i| i.width())
    };
    let mut best: Option<(&EpsIdentification, f64)> = None;
    for id in fired {
        let w = width(id);
        match best {
            Some((_, bw)) if w >= bw - tolerance() => {}
            _ => best = Some((id, w)),
        }
    }
    best.map(|(id, _)| id.clone())
}

pub fn eps_identify_pns(
    exp: Option<&ExperimentalDistribution>,
    obs: Option<&ObservationalDistribution>,
    eps: f64,
) -> Result<EpsReport> {
    eps_identify(Quantity::Pns, &Evidence::from_data(exp, obs), eps)
}

pub fn eps_identify_pn(
    exp: Option<&ExperimentalDistribution>,
    obs: Option<&ObservationalDistribution>,
    eps: f64,
) -> Result<EpsReport> {
    eps_identify(Quantity::Pn, &Evidence::from_data(exp, obs), eps)
}

pub fn eps_identify_ps(
    exp: Option<&ExperimentalDistribution>,
    obs: Option<&ObservationalDistribution>,
    eps: f64,
) -> Result<EpsReport> {
    eps_identify(Quantity::Ps, &Evidence::from_data(exp, obs), eps)
}

/// A condition that was evaluated and failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NotIdentified {
    pub premise: String,
    pub lhs: f64,
    pub rhs: f64,
}

impl NotIdentified {
    /// How far the premise is from holding.
    pub fn margin(&self) -> f64 {
        self.lhs - self.rhs
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum EffectVerdict {
    Identified(EpsIdentification),
    NotIdentified(NotIdentified),
}

impl EffectVerdict {
    pub fn identified(&self) -> Option<&EpsIdentification> {
        match self {
            EffectVerdict::Identified(id) => Some(id),
            EffectVerdict::NotIdentified(_) => None,
        }
    }
}

fn effect_tag(variant: EffectVariant) -> &'static str {
    match (variant.treatment, variant.outcome) {
        (Treatment::Treated, crate::Outcome::Positive) => "EFFECT-1",
        (Treatment::Treated, crate::Outcome::Negative) => "EFFECT-2",
        (Treatment::Untreated, crate::Outcome::Positive) => "EFFECT-3",
        (Treatment::Untreated, crate::Outcome::Negative) => "EFFECT-4",
    }
}

/// `P(o_t) ≈_ε P(t,o) + ε` whenever `P(¬t) ≤ 2ε`.
///
/// `p_cell` is the joint cell `P(t,o)` and `other_marginal_ub` an upper
/// bound on the probability of the other treatment arm.
pub fn eps_identify_effect(
    p_cell: f64,
    other_marginal_ub: f64,
    eps: f64,
    variant: EffectVariant,
) -> Result<EffectVerdict> {
    check_eps(eps)?;
    check_unit("P(t,o)", p_cell)?;
    check_unit("P(t')", other_marginal_ub)?;
    let other = match variant.treatment {
        Treatment::Treated => "P(x')",
        Treatment::Untreated => "P(x)",
    };
    let premise = format!("{other} <= 2eps");
    let rhs = 2.0 * eps;
    if !leq(other_marginal_ub, rhs) {
        return Ok(EffectVerdict::NotIdentified(NotIdentified {
            premise,
            lhs: other_marginal_ub,
            rhs,
        }));
    }
    let condition = Condition {
        tag: effect_tag(variant).to_string(),
        premise,
        center: format!("{} + eps", variant.cell_label()),
        lhs: other_marginal_ub,
        rhs,
    };
    Ok(EffectVerdict::Identified(EpsIdentification::new(
        Quantity::CausalEffect(variant),
        p_cell + eps,
        eps,
        condition,
    )?))
}

/// [`eps_identify_effect`] reading the cell and the marginal bound from evidence.
pub fn eps_identify_effect_from(
    evidence: &Evidence,
    variant: EffectVariant,
    eps: f64,
) -> Result<EffectVerdict> {
    let cell = match (variant.treatment, variant.outcome) {
        (Treatment::Treated, crate::Outcome::Positive) => Atom::XY,
        (Treatment::Treated, crate::Outcome::Negative) => Atom::XYp,
        (Treatment::Untreated, crate::Outcome::Positive) => Atom::XpY,
        (Treatment::Untreated, crate::Outcome::Negative) => Atom::XpYp,
    };
    let other = match variant.treatment {
        Treatment::Treated => LinearExpr::complement(Atom::X),
        Treatment::Untreated => LinearExpr::atom(Atom::X),
    };
    let mut missing = Vec::new();
    let p_cell = evidence.exact(cell);
    if p_cell.is_none() {
        missing.push(cell.label().to_string());
    }
    let other_ub = evidence.range(&other).map(|r| r.hi());
    if other_ub.is_none() {
        missing.push(format!("bound on {other}"));
    }
    match (p_cell, other_ub) {
        (Some(c), Some(ub)) => eps_identify_effect(c, ub.clamp(0.0, 1.0), eps, variant),
        _ => Err(Error::MissingData(missing)),
    }
}

/// How `c` is chosen for the confounded-effect condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CChoice {
    /// A fixed `c` with `0 < c ≤ P(x) − u_max`.
    Explicit(f64),
    /// Largest `c` on a 1e-4 grid in `(0, P(x) − u_max]` that fires.
    Auto,
    /// The `P(x) ≥ 1/2`, `P(u) ≤ 0.1`, `c = 0.4` shortcut: `q = P(y|x) + ε/13`.
    Reference,
}

/// Inputs for identifying `P(y_x)` under a binary confounder `U` with a
/// known upper bound on `P(u)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConfoundedEffectInput {
    pub p_y_given_x: f64,
    pub p_x: f64,
    pub u_max: f64,
    pub c: CChoice,
}

/// Grid step used by [`CChoice::Auto`].
pub const C_GRID_STEP: f64 = 1e-4;

impl ConfoundedEffectInput {
    pub fn new(p_y_given_x: f64, p_x: f64, u_max: f64, c: CChoice) -> Result<Self> {
        check_unit("P(y|x)", p_y_given_x)?;
        check_unit("P(u) bound", u_max)?;
        if !(p_x > 0.0 && p_x <= 1.0) {
            return Err(Error::InvalidProbability {
                field: "P(x)",
                value: p_x,
            });
        }
        if let CChoice::Explicit(c) = c {
            if !(c > 0.0 && leq(c, p_x - u_max)) {
                return Err(Error::InvalidInput(format!(
                    "c = {c} must satisfy 0 < c <= P(x) - u_max = {}",
                    p_x - u_max
                )));
            }
        }
        Ok(Self {
            p_y_given_x,
            p_x,
            u_max,
            c,
        })
    }
}

/// Largest `P(u)` for which the condition fires, per unit of ε:
/// `2cP(x) / (2cP(x) + P(x) + c)`.
pub fn confounded_threshold_factor(p_x: f64, c: f64) -> f64 {
    2.0 * c * p_x / (2.0 * c * p_x + p_x + c)
}

/// Offset of the center from `P(y|x)`, per unit of ε:
/// `(P(x) − c) / (2cP(x) + P(x) + c)`.
pub fn confounded_center_factor(p_x: f64, c: f64) -> f64 {
    (p_x - c) / (2.0 * c * p_x + p_x + c)
}

/// Bounds on `P(y_x)` implied by `P(y|x)`, `P(x)`, `P(u)` and `c ≤ P(x) − P(u)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sandwich {
    pub lower: f64,
    pub upper: f64,
}

impl Sandwich {
    pub fn contains(&self, v: f64) -> bool {
        leq(self.lower, v) && leq(v, self.upper)
    }
}

/// `P(y|x) − (1 + 1/P(x))P(u) ≤ P(y_x) ≤ P(y|x) + (1 + 1/c)P(u)`.
pub fn confounder_sandwich(p_y_given_x: f64, p_x: f64, p_u: f64, c: f64) -> Sandwich {
    Sandwich {
        lower: p_y_given_x - (1.0 + 1.0 / p_x) * p_u,
        upper: p_y_given_x + (1.0 + 1.0 / c) * p_u,
    }
}

fn confounded_identification(
    input: &ConfoundedEffectInput,
    eps: f64,
    c: f64,
) -> Result<EffectVerdict> {
    let threshold = confounded_threshold_factor(input.p_x, c) * eps;
    let premise = format!("P(u) <= 2cP(x)/(2cP(x)+P(x)+c) * eps with c = {c}");
    if !leq(input.u_max, threshold) {
        return Ok(EffectVerdict::NotIdentified(NotIdentified {
            premise,
            lhs: input.u_max,
            rhs: threshold,
        }));
    }
    let q = input.p_y_given_x + confounded_center_factor(input.p_x, c) * eps;
    let condition = Condition {
        tag: "CONFOUNDED".to_string(),
        premise,
        center: format!("P(y|x) + (P(x)-c)/(2cP(x)+P(x)+c) * eps with c = {c}"),
        lhs: input.u_max,
        rhs: threshold,
    };
    Ok(EffectVerdict::Identified(EpsIdentification::new(
        Quantity::CausalEffect(EffectVariant::Y_X),
        q,
        eps,
        condition,
    )?))
}

/// ε-identify `P(y_x)` from `P(y|x)`, `P(x)` and an upper bound on `P(u)`
/// for a binary confounder of `X` and `Y`.
pub fn eps_identify_effect_confounded(input: &ConfoundedEffectInput, eps: f64) -> Result<EffectVerdict> {
    check_eps(eps)?;
    match input.c {
        CChoice::Explicit(c) => confounded_identification(input, eps, c),
        CChoice::Auto => {
            let c_max = input.p_x - input.u_max;
            let steps = ((c_max + 1e-12) / C_GRID_STEP).floor();
            let mut chosen = None;
            let mut k = 1.0;
            while k <= steps {
                let c = k * C_GRID_STEP;
                if leq(input.u_max, confounded_threshold_factor(input.p_x, c) * eps) {
                    chosen = Some(c);
                }
                k += 1.0;
            }
            match chosen {
                Some(c) => confounded_identification(input, eps, c),
                None => Err(Error::NoFeasibleC { c_max }),
            }
        }
        CChoice::Reference => {
            let premise = "P(x) >= 0.5, P(u) <= 0.1 and P(u) <= 4/13 * eps".to_string();
            let threshold = 4.0 / 13.0 * eps;
            if !leq(0.5, input.p_x) || !leq(input.u_max, 0.1) {
                return Ok(EffectVerdict::NotIdentified(NotIdentified {
                    premise,
                    lhs: input.u_max,
                    rhs: threshold,
                }));
            }
            if !leq(input.u_max, threshold) {
                return Ok(EffectVerdict::NotIdentified(NotIdentified {
                    premise,
                    lhs: input.u_max,
                    rhs: threshold,
                }));
            }
            let condition = Condition {
                tag: "CONFOUNDED-REF".to_string(),
                premise,
                center: "P(y|x) + eps/13".to_string(),
                lhs: input.u_max,
                rhs: threshold,
            };
            Ok(EffectVerdict::Identified(EpsIdentification::new(
                Quantity::CausalEffect(EffectVariant::Y_X),
                input.p_y_given_x + eps / 13.0,
                eps,
                condition,
            )?))
        }
    }
}

/// Smallest radius at which a quantity is ε-identified from full data, and
/// the center at that radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MinimalEps {
    pub eps_star: f64,
    pub q_star: f64,
}

/// `ε* = (hi − lo)/2`, `q* = (hi + lo)/2` of the quantity's tight bounds.
pub fn minimal_epsilon(
    quantity: Quantity,
    exp: &ExperimentalDistribution,
    obs: &ObservationalDistribution,
) -> Result<MinimalEps> {
    let interval = match quantity {
        Quantity::Pns => pns_bounds(exp, obs)?.interval,
        Quantity::Pn => pn_bounds(exp, obs)?.interval,
        Quantity::Ps => ps_bounds(exp, obs)?.interval,
        Quantity::CausalEffect(v) => causal_effect_bounds(obs, v)?,
        Quantity::Benefit => {
            return Err(Error::Unsupported(
                "minimal epsilon of the benefit function".into(),
            ))
        }
    };
    Ok(MinimalEps {
        eps_star: interval.width() / 2.0,
        q_star: interval.midpoint(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn exp(a: f64, b: f64) -> ExperimentalDistribution {
        ExperimentalDistribution::full(a, b).unwrap()
    }

    fn obs(a: f64, b: f64, c: f64, d: f64) -> ObservationalDistribution {
        ObservationalDistribution::full(a, b, c, d).unwrap()
    }

    #[test]
    fn effect_from_partial_joint() {
        let v = eps_identify_effect(0.52, 0.04, 0.02, EffectVariant::Y_X).unwrap();
        let id = v.identified().expect("fires");
        assert_abs_diff_eq!(id.q, 0.54, epsilon = 1e-12);
        assert_eq!(id.eps, 0.02);
        assert_eq!(id.condition.tag, "EFFECT-1");
    }

    #[test]
    fn effect_not_identified_reports_margin() {
        let v = eps_identify_effect(0.5, 0.5, 0.1, EffectVariant::Y_X).unwrap();
        match v {
            EffectVerdict::NotIdentified(n) => assert_abs_diff_eq!(n.margin(), 0.3, epsilon = 1e-12),
            _ => panic!("should not fire"),
        }
    }

    #[test]
    fn effect_point_mass() {
        let v = eps_identify_effect(1.0, 0.0, 0.3, EffectVariant::Y_X).unwrap();
        let id = v.identified().unwrap();
        assert_abs_diff_eq!(id.q, 1.3, epsilon = 1e-12);
        assert_eq!(id.clamped().unwrap(), Interval::point(1.0));
    }

    #[test]
    fn effect_rejects_bad_eps() {
        assert_eq!(
            eps_identify_effect(0.5, 0.1, 0.0, EffectVariant::Y_X),
            Err(Error::InvalidEpsilon(0.0))
        );
    }

    #[test]
    fn effect_from_evidence() {
        let ev = Evidence::new()
            .with_exact(Atom::XY, 0.52)
            .unwrap()
            .with_bound(Atom::X, Interval::new(0.96, 1.0).unwrap())
            .unwrap();
        let id = eps_identify_effect_from(&ev, EffectVariant::Y_X, 0.02).unwrap();
        assert_abs_diff_eq!(id.identified().unwrap().q, 0.54, epsilon = 1e-12);
        assert!(matches!(
            eps_identify_effect_from(&ev, EffectVariant::Y_XP, 0.02),
            Err(Error::MissingData(_))
        ));
    }

    #[test]
    fn medicine_general_route() {
        let input = ConfoundedEffectInput::new(0.62, 0.84, 0.01, CChoice::Explicit(0.8)).unwrap();
        let threshold = confounded_threshold_factor(0.84, 0.8) * 0.025;
        assert_abs_diff_eq!(threshold, 0.01126, epsilon = 1e-4);
        let id = eps_identify_effect_confounded(&input, 0.025).unwrap();
        let id = id.identified().expect("fires");
        assert_abs_diff_eq!(id.q, 0.62 + 0.04 / 2.984 * 0.025, epsilon = 1e-12);
    }

    #[test]
    fn medicine_reference_route() {
        let input = ConfoundedEffectInput::new(0.62, 0.84, 0.01, CChoice::Reference).unwrap();
        let v = eps_identify_effect_confounded(&input, 0.035).unwrap();
        assert_abs_diff_eq!(v.identified().unwrap().q, 0.62 + 0.035 / 13.0, epsilon = 1e-12);
        // 0.01 > 4/13 * 0.03
        let v = eps_identify_effect_confounded(&input, 0.03).unwrap();
        assert!(v.identified().is_none());
        let low = ConfoundedEffectInput::new(0.62, 0.4, 0.01, CChoice::Reference).unwrap();
        assert!(eps_identify_effect_confounded(&low, 0.5).unwrap().identified().is_none());
    }

    #[test]
    fn auto_c_picks_largest_grid_value() {
        let input = ConfoundedEffectInput::new(0.62, 0.84, 0.01, CChoice::Auto).unwrap();
        let v = eps_identify_effect_confounded(&input, 0.025).unwrap();
        let id = v.identified().unwrap();
        assert!(id.condition.premise.contains("c = 0.83"), "{}", id.condition.premise);
        let tiny = ConfoundedEffectInput::new(0.62, 0.84, 0.01, CChoice::Auto).unwrap();
        assert!(matches!(
            eps_identify_effect_confounded(&tiny, 0.001),
            Err(Error::NoFeasibleC { .. })
        ));
    }

    #[test]
    fn no_confounder_always_fires() {
        let input = ConfoundedEffectInput::new(0.3, 0.6, 0.0, CChoice::Explicit(0.5)).unwrap();
        for eps in [1e-6, 0.01, 0.2] {
            let v = eps_identify_effect_confounded(&input, eps).unwrap();
            let id = v.identified().unwrap();
            assert_abs_diff_eq!(id.q, 0.3 + confounded_center_factor(0.6, 0.5) * eps, epsilon = 1e-15);
            assert!(id.certified.contains(0.3));
        }
    }

    #[test]
    fn explicit_c_is_validated() {
        assert!(ConfoundedEffectInput::new(0.6, 0.84, 0.01, CChoice::Explicit(0.9)).is_err());
        assert!(ConfoundedEffectInput::new(0.6, 0.84, 0.01, CChoice::Explicit(0.0)).is_err());
        assert!(ConfoundedEffectInput::new(0.6, 0.0, 0.01, CChoice::Auto).is_err());
    }

    #[test]
    fn pns_scan_example() {
        let r = eps_identify_pns(Some(&exp(0.7, 0.3)), Some(&obs(0.4, 0.1, 0.2, 0.3)), 0.15).unwrap();
        assert!(!r.fired.is_empty());
        for id in &r.fired {
            assert_abs_diff_eq!(id.q, 0.55, epsilon = 1e-12);
        }
        let t = r.tightest.unwrap();
        assert_abs_diff_eq!(t.q, 0.55, epsilon = 1e-12);
        let r = eps_identify_pns(Some(&exp(0.7, 0.3)), Some(&obs(0.4, 0.1, 0.2, 0.3)), 0.14).unwrap();
        assert!(r.fired.is_empty());
        assert!(r.not_evaluated.is_empty());
    }

    #[test]
    fn pns_experimental_only() {
        let r = eps_identify_pns(Some(&exp(1.0, 0.0)), None, 0.005).unwrap();
        let tags = r.fired_tags();
        assert!(tags.contains(&"PNS-05"), "{tags:?}");
        let five = r.fired.iter().find(|f| f.condition.tag == "PNS-05").unwrap();
        assert_abs_diff_eq!(five.q, 0.995, epsilon = 1e-15);
        // observational conditions are listed as not evaluated
        assert!(r.not_evaluated.iter().any(|n| n.tag == "PNS-03"));
    }

    #[test]
    fn pns_large_outcome_rate() {
        // P(y) >= 0.95 and P(y'_x') known
        let ev = Evidence::new()
            .with_bound(Atom::Y, Interval::new(0.95, 1.0).unwrap())
            .unwrap()
            .with_exact(Atom::YDoXp, 0.9)
            .unwrap();
        let r = eps_identify(Quantity::Pns, &ev, 0.025).unwrap();
        let ten = r.fired.iter().find(|f| f.condition.tag == "PNS-10").expect("fires");
        assert_abs_diff_eq!(ten.q, 0.1 - 0.025, epsilon = 1e-12);
    }

    #[test]
    fn pn_scan_examples() {
        let r = eps_identify_pn(Some(&exp(0.7, 0.3)), Some(&obs(0.4, 0.1, 0.2, 0.3)), 0.125).unwrap();
        let qs: Vec<f64> = r.fired.iter().map(|f| f.q).collect();
        assert!(qs.iter().any(|q| (q - 0.875).abs() < 1e-12), "{qs:?}");
        assert_abs_diff_eq!(r.tightest.unwrap().q, 0.875, epsilon = 1e-12);

        // P(y_x') = P(x',y): premise of PN-2 is exactly 0
        let r = eps_identify_pn(Some(&exp(0.7, 0.2)), Some(&obs(0.4, 0.1, 0.2, 0.3)), 0.01).unwrap();
        let two = r.fired.iter().find(|f| f.condition.tag == "PN-2").expect("fires");
        assert_abs_diff_eq!(two.q, 0.99, epsilon = 1e-15);

        let r = eps_identify_pn(Some(&exp(0.5, 0.5)), Some(&obs(0.0, 0.5, 0.25, 0.25)), 0.1);
        assert_eq!(r, Err(Error::ZeroDenominator("P(x,y)")));
    }

    #[test]
    fn ps_scan_examples() {
        let r = eps_identify_ps(Some(&exp(0.7, 0.3)), Some(&obs(0.4, 0.1, 0.2, 0.3)), 1.0 / 3.0).unwrap();
        assert!(r.fired.iter().any(|f| (f.q - 2.0 / 3.0).abs() < 1e-12));

        // P(y_x) = P(x,y): premise of PS-1 is exactly 0
        let r = eps_identify_ps(Some(&exp(0.4, 0.3)), Some(&obs(0.4, 0.1, 0.2, 0.3)), 0.01).unwrap();
        let one = r.fired.iter().find(|f| f.condition.tag == "PS-1").expect("fires");
        assert_abs_diff_eq!(one.q, 0.01, epsilon = 1e-15);

        let r = eps_identify_ps(Some(&exp(0.5, 0.5)), Some(&obs(0.25, 0.25, 0.5, 0.0)), 0.1);
        assert_eq!(r, Err(Error::ZeroDenominator("P(x',y')")));
    }

    #[test]
    fn incompatible_evidence_is_refused() {
        let r = eps_identify_pns(Some(&exp(0.3, 0.3)), Some(&obs(0.4, 0.1, 0.2, 0.3)), 0.5);
        assert!(matches!(r, Err(Error::Incompatible(_))));
    }

    #[test]
    fn minimal_epsilon_examples() {
        let e = exp(0.7, 0.3);
        let o = obs(0.4, 0.1, 0.2, 0.3);
        let m = minimal_epsilon(Quantity::Pns, &e, &o).unwrap();
        assert_abs_diff_eq!(m.eps_star, 0.15, epsilon = 1e-12);
        assert_abs_diff_eq!(m.q_star, 0.55, epsilon = 1e-12);
        let m = minimal_epsilon(Quantity::Pn, &e, &o).unwrap();
        assert_abs_diff_eq!(m.eps_star, 0.125, epsilon = 1e-12);
        assert_abs_diff_eq!(m.q_star, 0.875, epsilon = 1e-12);
        let m = minimal_epsilon(Quantity::Pns, &exp(1.0, 0.0), &obs(0.5, 0.0, 0.0, 0.5)).unwrap();
        assert_eq!((m.eps_star, m.q_star), (0.0, 1.0));
    }
}
