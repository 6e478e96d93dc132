//! Tight bounds and ε-identification for causal effects and the binary
//! probabilities of causation (PNS, PN, PS).
//!
//! The crate is organised bottom-up:
//!
//! * [`distributions`]: experimental/observational data, study counts,
//!   intervals and the [`EpsIdentification`] record.
//! * [`evidence`]: data atoms, exact or interval-valued, and linear
//!   expressions over them.
//! * [`bounds`]: closed-form tight bounds, point identification under
//!   monotonicity, adjustment over one binary covariate.
//! * [`epsident`]: the ε-identification engine (pair scan over bound
//!   arguments, confounded-effect conditions, minimal ε).
//! * [`unitselect`]: ε-identification of the unit-selection benefit function.
//! * [`oracle`]: brute-force verifier over response-type joints and
//!   confounded SCM grids.

pub mod bounds;
pub mod distributions;
pub mod epsident;
pub mod error;
pub mod evidence;
pub mod oracle;
pub mod tolerance;
pub mod unitselect;

pub use distributions::{
    check_compatibility, from_counts, Compatibility, Distribution, EffectVariant,
    EpsIdentification, ExperimentalDistribution, Interval, ObservationalDistribution, Outcome,
    Quantity, StudyCounts, StudyKind, Treatment, Violation,
};
pub use error::{Error, Result};
pub use evidence::{Atom, Evidence, LinearExpr};
