//! Benefit function of the unit-selection problem.
//!
//! The benefit of selecting a subpopulation is the payoff-weighted mixture of
//! its four response types. From experimental data on that subpopulation the
//! benefit is identified up to `|β − γ − θ + δ| / 2`, which is often enough
//! to settle its sign.

use serde::Serialize;

use crate::distributions::{Condition, EpsIdentification, ExperimentalDistribution, Quantity};
use crate::error::{Error, Result};
use crate::oracle::{ResponseType, ResponseTypeJoint};
use crate::tolerance::tolerance;

/// Payoffs for selecting a complier, always-taker, never-taker and defier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BenefitVector {
    pub beta: f64,
    pub gamma: f64,
    pub theta: f64,
    pub delta: f64,
}

impl BenefitVector {
    pub fn new(beta: f64, gamma: f64, theta: f64, delta: f64) -> Result<Self> {
        for (name, v) in [("beta", beta), ("gamma", gamma), ("theta", theta), ("delta", delta)] {
            if !v.is_finite() {
                return Err(Error::InvalidInput(format!("payoff {name} = {v} is not finite")));
            }
        }
        Ok(Self {
            beta,
            gamma,
            theta,
            delta,
        })
    }

    /// `β − γ − θ + δ`; zero exactly under gain equality.
    pub fn gain_equality_residual(&self) -> f64 {
        self.beta - self.gamma - self.theta + self.delta
    }

    pub fn payoff(&self, rt: ResponseType) -> f64 {
        match rt {
            ResponseType::Complier => self.beta,
            ResponseType::AlwaysTaker => self.gamma,
            ResponseType::NeverTaker => self.theta,
            ResponseType::Defier => self.delta,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BenefitSign {
    Positive,
    Negative,
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BenefitIdentification {
    pub q: f64,
    pub eps: f64,
    pub sign: BenefitSign,
    pub gain_equality_residual: f64,
}

impl BenefitIdentification {
    pub fn as_eps_identification(&self) -> EpsIdentification {
        let condition = Condition {
            tag: "BENEFIT".to_string(),
            premise: "selection covariates contain no descendant of X".to_string(),
            center: "(gamma - delta)P(y_x|c) + delta P(y_x'|c) + theta P(y'_x'|c) + (beta - gamma - theta + delta)/2"
                .to_string(),
            lhs: self.eps,
            rhs: self.eps,
        };
        EpsIdentification::new(Quantity::Benefit, self.q, self.eps, condition)
            .expect("q and eps are finite")
    }

    /// One-line recommendation when the sign is determined.
    pub fn recommendation(&self) -> Option<&'static str> {
        match self.sign {
            BenefitSign::Positive => Some("offer the treatment to this subpopulation"),
            BenefitSign::Negative => Some("do not offer the treatment to this subpopulation"),
            BenefitSign::Indeterminate => None,
        }
    }
}

fn sign_of(q: f64, eps: f64) -> BenefitSign {
    let tol = tolerance();
    if q - eps > tol {
        BenefitSign::Positive
    } else if q + eps < -tol {
        BenefitSign::Negative
    } else {
        BenefitSign::Indeterminate
    }
}

/// ε-identify the benefit of a subpopulation from its experimental data.
///
/// Valid when the covariates defining the subpopulation are not descendants
/// of the treatment; the caller is responsible for that assumption.
pub fn eps_identify_benefit(
    b: &BenefitVector,
    exp_c: &ExperimentalDistribution,
) -> Result<BenefitIdentification> {
    let mut missing = Vec::new();
    if exp_c.p_y_do_x().is_none() {
        missing.push("P(y_x|c)".to_string());
    }
    if exp_c.p_y_do_xp().is_none() {
        missing.push("P(y_x'|c)".to_string());
    }
    let (Some(y_x), Some(y_xp)) = (exp_c.p_y_do_x(), exp_c.p_y_do_xp()) else {
        return Err(Error::MissingData(missing));
    };
    let residual = b.gain_equality_residual();
    let q = (b.gamma - b.delta) * y_x + b.delta * y_xp + b.theta * (1.0 - y_xp) + residual / 2.0;
    let eps = residual.abs() / 2.0;
    Ok(BenefitIdentification {
        q,
        eps,
        sign: sign_of(q, eps),
        gain_equality_residual: residual,
    })
}

/// Benefit of a population described by its response-type joint.
pub fn benefit_true_value(b: &BenefitVector, joint: &ResponseTypeJoint) -> f64 {
    ResponseType::ALL
        .iter()
        .map(|&rt| b.payoff(rt) * joint.type_mass(rt))
        .sum()
}

/// The benefit split as
/// `(γ−δ)P(y_x) + δP(y_{x'}) + θP(y'_{x'}) + (β−γ−θ+δ)·PNS`.
pub fn decompose_benefit(b: &BenefitVector, joint: &ResponseTypeJoint) -> [f64; 4] {
    let exp = joint.experimental();
    let y_x = exp.p_y_do_x().expect("joint gives both arms");
    let y_xp = exp.p_y_do_xp().expect("joint gives both arms");
    [
        (b.gamma - b.delta) * y_x,
        b.delta * y_xp,
        b.theta * (1.0 - y_xp),
        b.gain_equality_residual() * joint.pns(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn discount_example() {
        let b = BenefitVector::new(100.0, -60.0, 0.0, -140.0).unwrap();
        let e = ExperimentalDistribution::full(0.6, 0.5).unwrap();
        let id = eps_identify_benefit(&b, &e).unwrap();
        assert_abs_diff_eq!(id.q, -12.0, epsilon = 1e-9);
        assert_abs_diff_eq!(id.eps, 10.0, epsilon = 1e-9);
        assert_eq!(id.sign, BenefitSign::Negative);
        assert!(id.recommendation().unwrap().starts_with("do not offer"));
    }

    #[test]
    fn gain_equality_is_exact() {
        let b = BenefitVector::new(100.0, -60.0, 0.0, -160.0).unwrap();
        let id = eps_identify_benefit(&b, &ExperimentalDistribution::full(0.6, 0.5).unwrap()).unwrap();
        assert_eq!(id.eps, 0.0);
        assert_eq!(id.gain_equality_residual, 0.0);
    }

    #[test]
    fn constant_payoff() {
        let b = BenefitVector::new(7.0, 7.0, 7.0, 7.0).unwrap();
        let id = eps_identify_benefit(&b, &ExperimentalDistribution::full(0.3, 0.8).unwrap()).unwrap();
        assert_abs_diff_eq!(id.q, 7.0, epsilon = 1e-12);
        assert_eq!(id.eps, 0.0);
        assert_eq!(id.sign, BenefitSign::Positive);
    }

    #[test]
    fn zero_payoff_is_indeterminate() {
        let b = BenefitVector::new(0.0, 0.0, 0.0, 0.0).unwrap();
        let id = eps_identify_benefit(&b, &ExperimentalDistribution::full(0.3, 0.8).unwrap()).unwrap();
        assert_eq!(id.q, 0.0);
        assert_eq!(id.sign, BenefitSign::Indeterminate);
        assert_eq!(id.recommendation(), None);
    }

    #[test]
    fn needs_both_arms() {
        let b = BenefitVector::new(1.0, 0.0, 0.0, 0.0).unwrap();
        let e = ExperimentalDistribution::new(Some(0.5), None).unwrap();
        assert!(matches!(eps_identify_benefit(&b, &e), Err(Error::MissingData(_))));
        assert!(BenefitVector::new(f64::INFINITY, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn true_value_examples() {
        let b = BenefitVector::new(100.0, -60.0, 0.0, -140.0).unwrap();
        let complier = ResponseTypeJoint::from_type_masses([1.0, 0.0, 0.0, 0.0], 0.5).unwrap();
        assert_abs_diff_eq!(benefit_true_value(&b, &complier), 100.0, epsilon = 1e-12);
        let uniform = ResponseTypeJoint::from_type_masses([0.25; 4], 0.5).unwrap();
        assert_abs_diff_eq!(benefit_true_value(&b, &uniform), -25.0, epsilon = 1e-12);
    }
}
