//! One function per subcommand; each returns the finished report.

use epsident::bounds::{causal_effect_bounds, pn_bounds, pns_bounds, ps_bounds, TightBound};
use epsident::epsident::{
    confounder_sandwich, eps_identify, eps_identify_effect_confounded, eps_identify_effect_from,
    minimal_epsilon, ConfoundedEffectInput, EffectVerdict,
};
use epsident::oracle::{sample_joint, sample_scm, FeasibleSet, Target};
use epsident::unitselect::{eps_identify_benefit, BenefitVector};
use epsident::{
    check_compatibility, EffectVariant, Error, Evidence, ExperimentalDistribution,
    ObservationalDistribution, Quantity, Treatment,
};

use crate::args::{BoundsArgs, EpsidentArgs, QuantityArg, UnitSelectArgs, VerifyArgs};
use crate::error::{CliError, Result};
use crate::input::{self, Data};
use crate::report::{
    num, BenefitSection, BoundEntry, CheckSummary, ConfoundedSection, Report, Verification,
};

const BENEFIT_ASSUMPTION: &str =
    "the covariates that define the subpopulation are not descendants of the treatment";
const VERIFY_EPS: [f64; 4] = [0.01, 0.05, 0.1, 0.25];
const VERIFY_U_MAX: f64 = 0.1;
const TIGHTNESS_TOL: f64 = 1e-6;

type BoundFn = fn(&ExperimentalDistribution, &ObservationalDistribution) -> epsident::Result<TightBound>;

const RATIO_BOUNDS: [(Quantity, Target, BoundFn); 3] = [
    (Quantity::Pns, Target::Pns, pns_bounds),
    (Quantity::Pn, Target::Pn, pn_bounds),
    (Quantity::Ps, Target::Ps, ps_bounds),
];

fn load(args: &crate::args::InputArgs) -> Result<Data> {
    input::load(
        args.input.as_ref(),
        args.experimental_csv.as_ref(),
        args.observational_csv.as_ref(),
    )
}

fn require_data(data: &Data) -> Result<()> {
    if data.is_empty() {
        Err(CliError::Input(
            "no data: pass a JSON file or --experimental-csv/--observational-csv".into(),
        ))
    } else {
        Ok(())
    }
}

fn skip_reason(e: &Error) -> String {
    match e {
        Error::MissingData(m) => format!("insufficient data: needs {}", m.join(", ")),
        other => other.to_string(),
    }
}

pub fn bounds(args: &BoundsArgs) -> Result<Report> {
    let data = load(&args.input)?;
    require_data(&data)?;
    let mut r = Report::new("bounds", &data);
    let exp = data.exp.unwrap_or_default();
    let obs = data.obs.unwrap_or_default();

    let compat = check_compatibility(&exp, &obs);
    if !compat.is_compatible() {
        if !args.force {
            return Err(Error::Incompatible(compat.violations).into());
        }
        r.warnings.extend(compat.violations.iter().map(|v| format!("incompatible: {v}")));
    }
    if !data.bounds.is_empty() {
        r.warnings.push("interval \"bounds\" in the input are used by epsident and verify only".into());
    }

    for v in EffectVariant::ALL {
        match causal_effect_bounds(&obs, v) {
            Ok(i) => {
                r.bounds.insert(v.to_string(), i.into());
            }
            Err(e) => {
                r.skipped.insert(v.to_string(), skip_reason(&e));
            }
        }
    }
    for (q, _, f) in RATIO_BOUNDS {
        match f(&exp, &obs) {
            Ok(tb) => {
                if tb.was_clamped() {
                    r.warnings.push(format!(
                        "{q} bound [{}, {}] clamped to [{}, {}]",
                        num(tb.raw_lo),
                        num(tb.raw_hi),
                        num(tb.interval.lo()),
                        num(tb.interval.hi())
                    ));
                }
                r.bounds.insert(
                    q.to_string(),
                    BoundEntry {
                        raw_lo: Some(tb.raw_lo),
                        raw_hi: Some(tb.raw_hi),
                        ..tb.interval.into()
                    },
                );
            }
            Err(e) => {
                r.skipped.insert(q.to_string(), skip_reason(&e));
            }
        }
    }
    Ok(r)
}

fn selected(q: QuantityArg) -> (Vec<Quantity>, bool) {
    match q {
        QuantityArg::Pns => (vec![Quantity::Pns], false),
        QuantityArg::Pn => (vec![Quantity::Pn], false),
        QuantityArg::Ps => (vec![Quantity::Ps], false),
        QuantityArg::Effect => (vec![], true),
        QuantityArg::All => (vec![Quantity::Pns, Quantity::Pn, Quantity::Ps], true),
    }
}

pub fn epsident(args: &EpsidentArgs) -> Result<Report> {
    let data = load(&args.input)?;
    if args.confounder {
        return confounded(args, data);
    }
    require_data(&data)?;
    let mut r = Report::new("epsident", &data);
    let (quantities, effects) = selected(args.quantity);

    if let Some(eps) = args.eps {
        let ev = data.evidence()?;
        for q in quantities {
            r.eps_reports.insert(q.to_string(), eps_identify(q, &ev, eps)?);
        }
        if effects {
            for v in EffectVariant::ALL {
                match eps_identify_effect_from(&ev, v, eps) {
                    Ok(verdict) => {
                        r.effects.insert(v.to_string(), verdict);
                    }
                    Err(e @ Error::MissingData(_)) => {
                        r.skipped.insert(v.to_string(), skip_reason(&e));
                    }
                    Err(e) => return Err(e.into()),
                }
            }
        }
        return Ok(r);
    }

    let exp = data.exp.unwrap_or_default();
    let obs = data.obs.unwrap_or_default();
    let mut targets = quantities;
    if effects {
        targets.extend(EffectVariant::ALL.map(Quantity::CausalEffect));
    }
    for q in targets {
        match minimal_epsilon(q, &exp, &obs) {
            Ok(m) => {
                r.minimal.insert(q.to_string(), m);
            }
            Err(e @ (Error::MissingData(_) | Error::ZeroDenominator(_))) => {
                r.skipped.insert(q.to_string(), skip_reason(&e));
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(r)
}

fn confounded(args: &EpsidentArgs, data: Data) -> Result<Report> {
    let eps = args
        .eps
        .ok_or_else(|| CliError::Input("--confounder needs --eps".into()))?;
    let u_max = args.u_max.expect("clap enforces --u-max");
    let p_x = args
        .p_x
        .or_else(|| data.obs.and_then(|o| o.p_x()))
        .ok_or_else(|| CliError::Input("--confounder needs --p-x or observational P(x,y), P(x,y')".into()))?;
    let p_y_given_x = args
        .p_y_given_x
        .or_else(|| data.obs.and_then(|o| o.p_y_given_x()))
        .ok_or_else(|| CliError::Input("--confounder needs --p-y-given-x or observational P(x,y), P(x,y')".into()))?;
    let input = ConfoundedEffectInput::new(p_y_given_x, p_x, u_max, args.c)?;
    let verdict = eps_identify_effect_confounded(&input, eps)?;
    let mut r = Report::new("epsident", &data);
    r.confounded = Some(ConfoundedSection { input, eps, verdict });
    Ok(r)
}

fn benefit_vector(p: &[f64]) -> Result<BenefitVector> {
    match p {
        [b, g, t, d] => Ok(BenefitVector::new(*b, *g, *t, *d)?),
        _ => Err(CliError::Input("--payoffs takes exactly four numbers".into())),
    }
}

pub fn unit_select(args: &UnitSelectArgs) -> Result<Report> {
    let data = load(&args.input)?;
    let exp = data
        .exp
        .ok_or_else(|| CliError::Input("unit-select needs experimental data for the subpopulation".into()))?;
    let b = benefit_vector(&args.payoffs)?;
    let id = eps_identify_benefit(&b, &exp)?;
    let mut r = Report::new("unit-select", &data);
    if data.obs.is_some() {
        r.warnings.push("observational data is not used by unit-select".into());
    }
    r.benefit = Some(BenefitSection {
        payoffs: b,
        identification: id,
        recommendation: id.recommendation().map(str::to_string),
        assumption: BENEFIT_ASSUMPTION.to_string(),
    });
    Ok(r)
}

struct Checks {
    tightness: CheckSummary,
    containment: CheckSummary,
}

impl Checks {
    fn new(prefix: &str) -> Self {
        Self {
            tightness: CheckSummary::new(&format!("{prefix}: tightness")),
            containment: CheckSummary::new(&format!("{prefix}: containment")),
        }
    }
}

/// Closed-form bounds against the oracle, and every fired identification
/// against the oracle's feasible range.
fn cross_check(
    checks: &mut Checks,
    label: &str,
    data_full: Option<(ExperimentalDistribution, ObservationalDistribution)>,
    ev: &Evidence,
    set: &FeasibleSet,
    payoffs: Option<&BenefitVector>,
) {
    if let Some((e, o)) = data_full {
        for (q, t, f) in RATIO_BOUNDS {
            let (Ok(b), Ok(range)) = (f(&e, &o), set.range(&t)) else {
                continue;
            };
            let d = (b.interval.lo() - range.lo()).abs().max((b.interval.hi() - range.hi()).abs());
            checks.tightness.record(d <= TIGHTNESS_TOL, || {
                format!("{label} {q}: closed form {} vs oracle {range}", b.interval)
            });
        }
    }
    for eps in VERIFY_EPS {
        for (q, t, _) in RATIO_BOUNDS {
            let report = match eps_identify(q, ev, eps) {
                Ok(r) => r,
                Err(e) => {
                    checks.containment.record(false, || format!("{label} {q}: {e}"));
                    continue;
                }
            };
            let Ok(range) = set.range(&t) else {
                continue;
            };
            for id in &report.fired {
                checks.containment.record(id.certified.contains_interval(&range), || {
                    format!(
                        "{label} {} at eps {eps}: {} does not contain {range}",
                        id.condition.tag, id.certified
                    )
                });
            }
        }
        for v in EffectVariant::ALL {
            let Ok(EffectVerdict::Identified(id)) = eps_identify_effect_from(ev, v, eps) else {
                continue;
            };
            if let Ok(range) = set.range(&Target::Effect(v)) {
                checks.containment.record(id.certified.contains_interval(&range), || {
                    format!("{label} {v} at eps {eps}: {} does not contain {range}", id.certified)
                });
            }
        }
    }
    if let (Some(b), Some(exp)) = (payoffs, ev.experimental().is_full().then(|| ev.experimental())) {
        if let (Ok(id), Ok(range)) = (eps_identify_benefit(b, &exp), set.range(&Target::Benefit(*b))) {
            let certified = id.as_eps_identification().certified;
            checks.containment.record(certified.contains_interval(&range), || {
                format!("{label} benefit: {certified} does not contain {range}")
            });
        }
    }
}

pub fn verify(args: &VerifyArgs) -> Result<Report> {
    let data = load(&args.input)?;
    let payoffs = args.payoffs.as_deref().map(benefit_vector).transpose()?;
    let mut r = Report::new("verify", &data);
    let mut summaries = Vec::new();

    if !data.is_empty() {
        let mut feasible = CheckSummary::new("input: feasibility");
        let mut checks = Checks::new("input");
        match data.evidence().and_then(|ev| Ok((FeasibleSet::new(&ev)?, ev))) {
            Ok((set, ev)) => {
                feasible.record(true, String::new);
                cross_check(&mut checks, "input", data.full(), &ev, &set, payoffs.as_ref());
            }
            Err(e) => feasible.record(false, || e.to_string()),
        }
        summaries.extend([feasible, checks.tightness, checks.containment]);
    }

    let mut checks = Checks::new("sampled");
    let mut sandwich = CheckSummary::new("sampled: confounder sandwich");
    for i in 0..args.trials {
        let seed = args.seed.wrapping_add(i);
        let s = sample_joint(seed);
        let ev = Evidence::from_data(Some(&s.exp), Some(&s.obs));
        let label = format!("seed {seed}");
        match FeasibleSet::new(&ev) {
            Ok(set) => cross_check(&mut checks, &label, Some((s.exp, s.obs)), &ev, &set, payoffs.as_ref()),
            Err(e) => checks.tightness.record(false, || format!("{label}: {e}")),
        }

        let scm = sample_scm(seed, VERIFY_U_MAX);
        let Some(p_y_given_x) = scm.p_y_given_x() else {
            continue;
        };
        let p_x = scm.p_x();
        let truth = scm.p_y_do(Treatment::Treated);
        let c = p_x - scm.p_u;
        let bounds = confounder_sandwich(p_y_given_x, p_x, scm.p_u, if c > 0.0 { c } else { f64::INFINITY });
        let upper_ok = c <= 0.0 || truth <= bounds.upper + TIGHTNESS_TOL;
        sandwich.record(bounds.lower <= truth + TIGHTNESS_TOL && upper_ok, || {
            format!("{label}: P(y_x) = {truth} outside [{}, {}]", bounds.lower, bounds.upper)
        });
    }
    summaries.extend([checks.tightness, checks.containment, sandwich]);

    let passed = summaries.iter().all(|c| c.failed == 0);
    r.verification = Some(Verification {
        seed: args.seed,
        trials: args.trials,
        checks: summaries,
        passed,
    });
    Ok(r)
}
