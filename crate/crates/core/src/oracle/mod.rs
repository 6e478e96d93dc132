//! Brute-force verifier.
//!
//! Every binary-treatment model is, for counterfactual purposes, a joint
//! distribution over the four response types and the observed treatment:
//! an 8-cell [`ResponseTypeJoint`]. Data atoms are linear in those cells,
//! so the set of models consistent with the data is a polytope and the
//! exact range of any linear target is attained at one of its vertices.
//! [`feasible_range`] enumerates those vertices directly; it shares no code
//! with the closed-form bounds it is used to check.
//!
//! [`confounded_effect_range`] does the same for the confounder graph
//! `U → X → Y ← U` by grid search over SCM parameters.

mod polytope;
mod sample;
mod scm;

use serde::Serialize;

pub use polytope::Polytope;
pub use sample::{sample_defier_free_joint, sample_joint, sample_scm, SampledJoint};
pub use scm::{confounded_effect_range, ConfoundedScm};

use crate::distributions::{
    EffectVariant, ExperimentalDistribution, Interval, ObservationalDistribution, Outcome,
    Treatment,
};
use crate::error::{Error, Result};
use crate::evidence::{Atom, Evidence};
use crate::tolerance::tolerance;
use crate::unitselect::BenefitVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ResponseType {
    /// `y_x, y'_{x'}`
    Complier,
    /// `y_x, y_{x'}`
    AlwaysTaker,
    /// `y'_x, y'_{x'}`
    NeverTaker,
    /// `y'_x, y_{x'}`
    Defier,
}

impl ResponseType {
    pub const ALL: [ResponseType; 4] = [
        ResponseType::Complier,
        ResponseType::AlwaysTaker,
        ResponseType::NeverTaker,
        ResponseType::Defier,
    ];

    fn index(self) -> usize {
        self as usize
    }

    /// Outcome this type shows under treatment `t`.
    pub fn responds(self, t: Treatment) -> Outcome {
        use ResponseType::*;
        let positive = match t {
            Treatment::Treated => matches!(self, Complier | AlwaysTaker),
            Treatment::Untreated => matches!(self, AlwaysTaker | Defier),
        };
        if positive {
            Outcome::Positive
        } else {
            Outcome::Negative
        }
    }
}

/// Position of cell `(rt, arm)` in the flat 8-vector.
pub(crate) fn flat_index(rt: ResponseType, arm: Treatment) -> usize {
    rt.index() * 2
        + match arm {
            Treatment::Treated => 0,
            Treatment::Untreated => 1,
        }
}

/// Coefficients of an atom as a linear function of the 8 cells.
pub(crate) fn atom_row(atom: Atom) -> [f64; 8] {
    let mut row = [0.0; 8];
    for rt in ResponseType::ALL {
        for arm in [Treatment::Treated, Treatment::Untreated] {
            let y_under_x = rt.responds(Treatment::Treated) == Outcome::Positive;
            let y_under_xp = rt.responds(Treatment::Untreated) == Outcome::Positive;
            // observed outcome is the response to the received arm
            let y_obs = rt.responds(arm) == Outcome::Positive;
            let treated = arm == Treatment::Treated;
            let hit = match atom {
                Atom::YDoX => y_under_x,
                Atom::YDoXp => y_under_xp,
                Atom::XY => treated && y_obs,
                Atom::XYp => treated && !y_obs,
                Atom::XpY => !treated && y_obs,
                Atom::XpYp => !treated && !y_obs,
                Atom::Y => y_obs,
                Atom::X => treated,
            };
            if hit {
                row[flat_index(rt, arm)] = 1.0;
            }
        }
    }
    row
}

fn dot(a: &[f64; 8], b: &[f64; 8]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Joint distribution over (response type, received treatment).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResponseTypeJoint {
    cells: [f64; 8],
}

impl ResponseTypeJoint {
    /// Cells in `(complier,x), (complier,x'), (always,x), …, (defier,x')` order.
    pub fn new(cells: [f64; 8]) -> Result<Self> {
        let tol = tolerance();
        let mut sum = 0.0;
        for &c in &cells {
            if !c.is_finite() || c < -tol {
                return Err(Error::InvalidProbability {
                    field: "response-type cell",
                    value: c,
                });
            }
            sum += c;
        }
        if (sum - 1.0).abs() > tol {
            return Err(Error::MassNotConserved { sum });
        }
        Ok(Self {
            cells: cells.map(|c| c.max(0.0)),
        })
    }

    /// Types independent of treatment assignment, with `P(x) = p_x`.
    pub fn from_type_masses(masses: [f64; 4], p_x: f64) -> Result<Self> {
        let mut cells = [0.0; 8];
        for rt in ResponseType::ALL {
            let m = masses[rt.index()];
            cells[flat_index(rt, Treatment::Treated)] = m * p_x;
            cells[flat_index(rt, Treatment::Untreated)] = m * (1.0 - p_x);
        }
        Self::new(cells)
    }

    pub fn cells(&self) -> &[f64; 8] {
        &self.cells
    }

    pub fn cell(&self, rt: ResponseType, arm: Treatment) -> f64 {
        self.cells[flat_index(rt, arm)]
    }

    pub fn type_mass(&self, rt: ResponseType) -> f64 {
        self.cell(rt, Treatment::Treated) + self.cell(rt, Treatment::Untreated)
    }

    pub fn atom(&self, atom: Atom) -> f64 {
        dot(&atom_row(atom), &self.cells)
    }

    pub fn experimental(&self) -> ExperimentalDistribution {
        ExperimentalDistribution::full(
            self.atom(Atom::YDoX).min(1.0),
            self.atom(Atom::YDoXp).min(1.0),
        )
        .expect("forward map of a valid joint")
    }

    pub fn observational(&self) -> ObservationalDistribution {
        let cells = [Atom::XY, Atom::XYp, Atom::XpY, Atom::XpYp].map(|a| self.atom(a).min(1.0));
        ObservationalDistribution::full(cells[0], cells[1], cells[2], cells[3])
            .expect("forward map of a valid joint")
    }

    pub fn pns(&self) -> f64 {
        self.type_mass(ResponseType::Complier)
    }

    /// `P(y'_{x'} | x, y)`; `None` when `P(x,y) = 0`.
    pub fn pn(&self) -> Option<f64> {
        let xy = self.atom(Atom::XY);
        (xy > 0.0).then(|| self.cell(ResponseType::Complier, Treatment::Treated) / xy)
    }

    /// `P(y_x | x', y')`; `None` when `P(x',y') = 0`.
    pub fn ps(&self) -> Option<f64> {
        let xpyp = self.atom(Atom::XpYp);
        (xpyp > 0.0).then(|| self.cell(ResponseType::Complier, Treatment::Untreated) / xpyp)
    }

    pub fn effect(&self, v: EffectVariant) -> f64 {
        ResponseType::ALL
            .iter()
            .filter(|rt| rt.responds(v.treatment) == v.outcome)
            .map(|&rt| self.type_mass(rt))
            .sum()
    }

    pub fn is_defier_free(&self) -> bool {
        self.type_mass(ResponseType::Defier) == 0.0
    }
}

/// Target quantity for [`feasible_range`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Target {
    Pns,
    Pn,
    Ps,
    Effect(EffectVariant),
    Benefit(BenefitVector),
}

/// Vertices of the data-consistent polytope, reusable across targets.
#[derive(Debug, Clone)]
pub struct FeasibleSet {
    vertices: Vec<[f64; 8]>,
    evidence: Evidence,
}

impl FeasibleSet {
    pub fn new(evidence: &Evidence) -> Result<Self> {
        if Atom::ALL.iter().all(|a| evidence.supplied(*a).is_none()) {
            return Err(Error::MissingData(vec!["at least one data atom".into()]));
        }
        let polytope = Polytope::from_evidence(evidence);
        let vertices = polytope.vertices(tolerance());
        if vertices.is_empty() {
            return Err(Error::Infeasible);
        }
        Ok(Self {
            vertices,
            evidence: evidence.clone(),
        })
    }

    pub fn vertices(&self) -> &[[f64; 8]] {
        &self.vertices
    }

    fn denominator(&self, atom: Atom, target: &str) -> Result<f64> {
        match self.evidence.exact(atom) {
            None => Err(Error::Unsupported(format!(
                "{target} range needs {} known exactly",
                atom.label()
            ))),
            Some(d) if d <= 0.0 => Err(Error::ZeroDenominator(atom.label())),
            Some(d) => Ok(d),
        }
    }

    /// Objective as (coefficients, scale).
    fn objective(&self, target: &Target) -> Result<([f64; 8], f64)> {
        let mut row = [0.0; 8];
        let complier = |arm| flat_index(ResponseType::Complier, arm);
        Ok(match target {
            Target::Pns => {
                row[complier(Treatment::Treated)] = 1.0;
                row[complier(Treatment::Untreated)] = 1.0;
                (row, 1.0)
            }
            Target::Pn => {
                row[complier(Treatment::Treated)] = 1.0;
                (row, self.denominator(Atom::XY, "PN")?)
            }
            Target::Ps => {
                row[complier(Treatment::Untreated)] = 1.0;
                (row, self.denominator(Atom::XpYp, "PS")?)
            }
            Target::Effect(v) => {
                for rt in ResponseType::ALL {
                    if rt.responds(v.treatment) == v.outcome {
                        row[flat_index(rt, Treatment::Treated)] = 1.0;
                        row[flat_index(rt, Treatment::Untreated)] = 1.0;
                    }
                }
                (row, 1.0)
            }
            Target::Benefit(b) => {
                for rt in ResponseType::ALL {
                    row[flat_index(rt, Treatment::Treated)] = b.payoff(rt);
                    row[flat_index(rt, Treatment::Untreated)] = b.payoff(rt);
                }
                (row, 1.0)
            }
        })
    }

    /// Exact min and max of `target` over all consistent joints.
    pub fn range(&self, target: &Target) -> Result<Interval> {
        let (row, scale) = self.objective(target)?;
        let (lo, hi) = self
            .vertices
            .iter()
            .map(|v| dot(&row, v) / scale)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)));
        Interval::new(lo, hi)
    }
}

/// Exact range of `target` over every response-type joint consistent with
/// the evidence.
pub fn feasible_range(target: &Target, evidence: &Evidence) -> Result<Interval> {
    FeasibleSet::new(evidence)?.range(target)
}

/// [`feasible_range`] for plain experimental/observational data.
pub fn feasible_range_from(
    target: &Target,
    exp: Option<&ExperimentalDistribution>,
    obs: Option<&ObservationalDistribution>,
) -> Result<Interval> {
    feasible_range(target, &Evidence::from_data(exp, obs))
}

/// Range of `target` over joints on a lattice of the given step whose atoms
/// match the evidence within `step`. A coarse cross-check of the vertex
/// enumeration.
pub fn grid_feasible_range(target: &Target, evidence: &Evidence, step: f64) -> Result<Interval> {
    let set = FeasibleSet {
        vertices: Vec::new(),
        evidence: evidence.clone(),
    };
    let (row, scale) = set.objective(target)?;
    let units = (1.0 / step).round() as u32;
    let rows: Vec<(Interval, [f64; 8])> = Atom::ALL
        .iter()
        .filter_map(|&a| evidence.supplied(a).map(|i| (i, atom_row(a))))
        .collect();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut cells = [0u32; 8];
    let mut visit = |cells: &[u32; 8]| {
        let p = cells.map(|c| c as f64 / units as f64);
        let ok = rows.iter().all(|(i, r)| {
            let v = dot(r, &p);
            v >= i.lo() - step && v <= i.hi() + step
        });
        if ok {
            let v = dot(&row, &p) / scale;
            lo = lo.min(v);
            hi = hi.max(v);
        }
    };
    compositions(&mut cells, 0, units, &mut visit);
    if lo > hi {
        return Err(Error::Infeasible);
    }
    Interval::new(lo, hi)
}

fn compositions(cells: &mut [u32; 8], pos: usize, remaining: u32, visit: &mut impl FnMut(&[u32; 8])) {
    if pos == 7 {
        cells[7] = remaining;
        visit(cells);
        return;
    }
    for k in 0..=remaining {
        cells[pos] = k;
        compositions(cells, pos + 1, remaining - k, visit);
    }
}
