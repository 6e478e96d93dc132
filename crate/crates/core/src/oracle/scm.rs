//! Binary SCMs with a single confounder: `U → X`, `U → Y`, `X → Y`.

use rayon::prelude::*;

use crate::bounds::CovariateJoint;
use crate::distributions::{Interval, ObservationalDistribution, Outcome, Treatment};
use crate::error::{Error, Result};

fn t_index(t: Treatment) -> usize {
    match t {
        Treatment::Treated => 0,
        Treatment::Untreated => 1,
    }
}

fn check(field: &'static str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::InvalidProbability { field, value: v })
    }
}

/// Parameters indexed by `u` first (`0 = u`, `1 = u'`) and `x` first for
/// the outcome table (`0 = x`, `1 = x'`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfoundedScm {
    pub p_u: f64,
    pub p_x_given_u: [f64; 2],
    pub p_y_given_xu: [[f64; 2]; 2],
}

impl ConfoundedScm {
    pub fn new(p_u: f64, p_x_given_u: [f64; 2], p_y_given_xu: [[f64; 2]; 2]) -> Result<Self> {
        check("P(u)", p_u)?;
        for v in p_x_given_u {
            check("P(x|u)", v)?;
        }
        for v in p_y_given_xu.iter().flatten() {
            check("P(y|x,u)", *v)?;
        }
        Ok(Self {
            p_u,
            p_x_given_u,
            p_y_given_xu,
        })
    }

    fn p_stratum(&self, u: usize) -> f64 {
        if u == 0 {
            self.p_u
        } else {
            1.0 - self.p_u
        }
    }

    fn p_arm_given_u(&self, t: Treatment, u: usize) -> f64 {
        match t {
            Treatment::Treated => self.p_x_given_u[u],
            Treatment::Untreated => 1.0 - self.p_x_given_u[u],
        }
    }

    fn p_outcome(&self, t: Treatment, u: usize, o: Outcome) -> f64 {
        let y = self.p_y_given_xu[t_index(t)][u];
        match o {
            Outcome::Positive => y,
            Outcome::Negative => 1.0 - y,
        }
    }

    /// `P(x, y, u)` obtained by running the model forward.
    pub fn covariate_joint(&self) -> CovariateJoint {
        let mut cells = [[[0.0; 2]; 2]; 2];
        for (ti, t) in [Treatment::Treated, Treatment::Untreated].into_iter().enumerate() {
            for (oi, o) in [Outcome::Positive, Outcome::Negative].into_iter().enumerate() {
                for (u, cell) in cells[ti][oi].iter_mut().enumerate() {
                    *cell = self.p_stratum(u) * self.p_arm_given_u(t, u) * self.p_outcome(t, u, o);
                }
            }
        }
        CovariateJoint::new(cells).expect("forward map of a valid SCM")
    }

    pub fn observational(&self) -> ObservationalDistribution {
        let j = self.covariate_joint();
        let cell = |t, o| {
            [crate::bounds::Stratum::U, crate::bounds::Stratum::NotU]
                .iter()
                .map(|&u| j.cell(t, o, u))
                .sum::<f64>()
                .min(1.0)
        };
        ObservationalDistribution::full(
            cell(Treatment::Treated, Outcome::Positive),
            cell(Treatment::Treated, Outcome::Negative),
            cell(Treatment::Untreated, Outcome::Positive),
            cell(Treatment::Untreated, Outcome::Negative),
        )
        .expect("forward map of a valid SCM")
    }

    pub fn p_x(&self) -> f64 {
        (0..2).map(|u| self.p_stratum(u) * self.p_x_given_u[u]).sum()
    }

    pub fn p_y_given_x(&self) -> Option<f64> {
        let p_x = self.p_x();
        let p_xy: f64 = (0..2)
            .map(|u| self.p_stratum(u) * self.p_x_given_u[u] * self.p_y_given_xu[0][u])
            .sum();
        (p_x > 0.0).then(|| p_xy / p_x)
    }

    /// `P(y_t)`: set `X = t` and average over `U`.
    pub fn p_y_do(&self, t: Treatment) -> f64 {
        (0..2)
            .map(|u| self.p_stratum(u) * self.p_y_given_xu[t_index(t)][u])
            .sum()
    }
}

/// Range of `P(y_x)` over confounded SCMs with `P(x)` and `P(y|x)` as
/// given and `P(u) ≤ u_max`.
///
/// Grids `P(u)`, `P(x|u)` and `P(y|x,u)` at `step`; `P(x|u')` and
/// `P(y|x,u')` are then solved from the two observed constraints.
pub fn confounded_effect_range(p_x: f64, p_y_given_x: f64, u_max: f64, step: f64) -> Result<Interval> {
    check("P(x)", p_x)?;
    check("P(y|x)", p_y_given_x)?;
    check("P(u) bound", u_max)?;
    if p_x <= 0.0 {
        return Err(Error::ZeroDenominator("P(x)"));
    }
    if !(step > 0.0 && step <= 0.5) {
        return Err(Error::InvalidInput(format!("grid step {step} must lie in (0, 0.5]")));
    }
    let n = (1.0 / step).round() as usize;
    let n_u = ((u_max / step) + 1e-9).floor() as usize;
    let p_xy = p_y_given_x * p_x;
    let slack = 1e-12;

    let (lo, hi) = (0..=n_u)
        .into_par_iter()
        .flat_map_iter(|i| (0..=n).map(move |j| (i, j)))
        .map(|(i, j)| {
            let p_u = (i as f64 * step).min(u_max);
            let a = j as f64 / n as f64;
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            let mut push = |v: f64| {
                lo = lo.min(v);
                hi = hi.max(v);
            };
            let rest = 1.0 - p_u;
            if rest <= slack {
                // everybody is in stratum u
                if (a - p_x).abs() <= step / 2.0 {
                    push(p_y_given_x);
                }
                return (lo, hi);
            }
            let b = (p_x - p_u * a) / rest;
            if !(-slack..=1.0 + slack).contains(&b) {
                return (lo, hi);
            }
            let b = b.clamp(0.0, 1.0);
            let mass_xu = p_u * a;
            let mass_xup = rest * b;
            for k in 0..=n {
                let y_u = k as f64 / n as f64;
                let remainder = p_xy - mass_xu * y_u;
                if mass_xup > slack {
                    let y_up = remainder / mass_xup;
                    if (-slack..=1.0 + slack).contains(&y_up) {
                        push(p_u * y_u + rest * y_up.clamp(0.0, 1.0));
                    }
                } else if remainder.abs() <= step * p_x {
                    // P(y|x,u') is unconstrained when nobody in u' is treated
                    push(p_u * y_u);
                    push(p_u * y_u + rest);
                }
            }
            (lo, hi)
        })
        .reduce(
            || (f64::INFINITY, f64::NEG_INFINITY),
            |(a, b), (c, d)| (a.min(c), b.max(d)),
        );
    if lo > hi {
        return Err(Error::Infeasible);
    }
    Interval::new(lo, hi)
}
