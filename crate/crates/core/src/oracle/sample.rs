//! Seeded random response-type joints.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

use super::{flat_index, ConfoundedScm, ResponseType, ResponseTypeJoint};
use crate::distributions::{ExperimentalDistribution, ObservationalDistribution, Treatment};

#[derive(Debug, Clone, Copy)]
pub struct SampledJoint {
    pub joint: ResponseTypeJoint,
    pub exp: ExperimentalDistribution,
    pub obs: ObservationalDistribution,
}

impl SampledJoint {
    fn from_weights(w: [f64; 8]) -> Self {
        let total: f64 = w.iter().sum();
        let joint = ResponseTypeJoint::new(w.map(|c| c / total)).expect("normalized weights");
        Self {
            joint,
            exp: joint.experimental(),
            obs: joint.observational(),
        }
    }
}

/// Uniform draw from the 8-cell simplex (flat Dirichlet).
pub fn sample_joint(seed: u64) -> SampledJoint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w: [f64; 8] = std::array::from_fn(|_| rng.sample::<f64, _>(Exp1));
    SampledJoint::from_weights(w)
}

/// Uniform draw from the face with no defiers.
pub fn sample_defier_free_joint(seed: u64) -> SampledJoint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w: [f64; 8] = std::array::from_fn(|_| rng.sample::<f64, _>(Exp1));
    for arm in [Treatment::Treated, Treatment::Untreated] {
        w[flat_index(ResponseType::Defier, arm)] = 0.0;
    }
    SampledJoint::from_weights(w)
}

/// Confounded SCM with `P(u)` uniform on `[0, u_max]` and every other
/// parameter uniform on `[0, 1]`.
pub fn sample_scm(seed: u64, u_max: f64) -> ConfoundedScm {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p_u = rng.random::<f64>() * u_max.clamp(0.0, 1.0);
    let p_x_given_u = [rng.random(), rng.random()];
    let p_y_given_xu = [[rng.random(), rng.random()], [rng.random(), rng.random()]];
    ConfoundedScm::new(p_u, p_x_given_u, p_y_given_xu).expect("parameters drawn from [0, 1]")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        assert_eq!(sample_joint(7).joint, sample_joint(7).joint);
        assert_ne!(sample_joint(7).joint, sample_joint(8).joint);
    }

    #[test]
    fn scm_respects_confounder_bound() {
        for seed in 0..50 {
            assert!(sample_scm(seed, 0.1).p_u <= 0.1);
        }
    }

    #[test]
    fn defier_free() {
        for seed in 0..20 {
            assert!(sample_defier_free_joint(seed).joint.is_defier_free());
        }
    }
}
