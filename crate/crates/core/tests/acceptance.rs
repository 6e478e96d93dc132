//! Acceptance suite: one line per criterion, non-zero exit on any failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{pn_printed, pns_printed, ps_printed};
use epsident::bounds::{identify_monotone, pn_bounds, pns_bounds, ps_bounds};
use epsident::epsident::{
    catalog, confounded_threshold_factor, confounder_sandwich, eps_identify,
    eps_identify_effect_confounded, minimal_epsilon, CChoice, ConfoundedEffectInput,
};
use epsident::oracle::{
    sample_defier_free_joint, sample_joint, ConfoundedScm, FeasibleSet, Target,
};
use epsident::unitselect::{eps_identify_benefit, BenefitSign, BenefitVector};
use epsident::{Atom, Evidence, ExperimentalDistribution, Quantity, Treatment};

const THRESHOLD_TOL: f64 = 1e-4;
const CENTER_TOL: f64 = 1e-6;
const EXACT_TOL: f64 = 1e-9;
const TIGHTNESS_TOL: f64 = 1e-6;
const MONOTONE_TOL: f64 = 1e-9;
const SANDWICH_TOL: f64 = 1e-12;
const SAMPLES: u64 = 1000;
const EPS_SWEEP: [f64; 4] = [0.01, 0.05, 0.1, 0.25];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn medicine() -> Outcome {
    let (p_y_given_x, p_x, u_max) = (0.62, 0.84, 0.01);
    let threshold = confounded_threshold_factor(p_x, 0.8) * 0.025;
    check((threshold - 0.01126).abs() <= THRESHOLD_TOL, || format!("threshold {threshold}"))?;

    let input = ConfoundedEffectInput::new(p_y_given_x, p_x, u_max, CChoice::Explicit(0.8))
        .map_err(|e| e.to_string())?;
    let v = eps_identify_effect_confounded(&input, 0.025).map_err(|e| e.to_string())?;
    let id = v.identified().ok_or("c = 0.8 route did not fire")?;
    let expected = 0.62 + 0.04 / 2.984 * 0.025;
    check((id.q - expected).abs() <= CENTER_TOL, || format!("q {} vs {expected}", id.q))?;

    let input = ConfoundedEffectInput::new(p_y_given_x, p_x, u_max, CChoice::Reference)
        .map_err(|e| e.to_string())?;
    let v = eps_identify_effect_confounded(&input, 0.035).map_err(|e| e.to_string())?;
    let r = v.identified().ok_or("c = 0.4 route did not fire")?;
    let expected_ref = 0.62 + 0.035 / 13.0;
    check((r.q - expected_ref).abs() <= CENTER_TOL, || format!("q {} vs {expected_ref}", r.q))?;
    Ok(format!("threshold {threshold:.6}, q {:.6}, reference q {:.6}", id.q, r.q))
}

fn flu() -> Outcome {
    let p_y_do_x = 0.04;
    let ev = Evidence::new()
        .with_exact(Atom::YDoX, p_y_do_x)
        .and_then(|e| e.with_upper(Atom::Y, 0.05))
        .map_err(|e| e.to_string())?;
    let report = eps_identify(Quantity::Pns, &ev, 0.025).map_err(|e| e.to_string())?;
    let id = report
        .fired
        .iter()
        .find(|id| id.condition.center == "P(y_x) - eps")
        .ok_or_else(|| format!("fired {:?}", report.fired_tags()))?;
    check((id.q - (p_y_do_x - 0.025)).abs() <= EXACT_TOL, || format!("q {}", id.q))?;
    Ok(format!("{} fired, PNS = P(y_x) - 0.025 = {:.3}", id.condition.tag, id.q))
}

fn discount() -> Outcome {
    let b = BenefitVector::new(100.0, -60.0, 0.0, -140.0).map_err(|e| e.to_string())?;
    let e = ExperimentalDistribution::full(0.6, 0.5).map_err(|e| e.to_string())?;
    let id = eps_identify_benefit(&b, &e).map_err(|e| e.to_string())?;
    check((id.q + 12.0).abs() <= EXACT_TOL, || format!("q {}", id.q))?;
    check((id.eps - 10.0).abs() <= EXACT_TOL, || format!("eps {}", id.eps))?;
    check(id.sign == BenefitSign::Negative, || format!("sign {:?}", id.sign))?;
    Ok(format!("q {}, eps {}, sign {:?}", id.q, id.eps, id.sign))
}

fn completeness() -> Outcome {
    let mut counts = Vec::new();
    for (q, printed, expected) in [
        (Quantity::Pns, pns_printed(), 21),
        (Quantity::Pn, pn_printed(), 5),
        (Quantity::Ps, ps_printed(), 5),
    ] {
        let entries: Vec<_> = catalog(q).iter().filter(|e| e.printed).collect();
        check(entries.len() == expected, || format!("{q}: {} printed entries", entries.len()))?;
        check(printed.len() == expected, || format!("{q}: reference table has {}", printed.len()))?;
        for p in &printed {
            check(entries.iter().any(|e| e.tag == p.tag), || format!("{} not in catalog", p.tag))?;
        }
        counts.push(format!("{q} {}", entries.len()));
    }
    Ok(counts.join(", "))
}

fn tightness() -> Outcome {
    let mut worst: f64 = 0.0;
    for seed in 0..SAMPLES {
        let s = sample_joint(seed);
        let ev = Evidence::from_data(Some(&s.exp), Some(&s.obs));
        let set = FeasibleSet::new(&ev).map_err(|e| format!("seed {seed}: {e}"))?;
        let closed = [
            pns_bounds(&s.exp, &s.obs),
            pn_bounds(&s.exp, &s.obs),
            ps_bounds(&s.exp, &s.obs),
        ];
        for (t, b) in [Target::Pns, Target::Pn, Target::Ps].iter().zip(closed) {
            let b = b.map_err(|e| format!("seed {seed}: {e}"))?.interval;
            let r = set.range(t).map_err(|e| format!("seed {seed}: {e}"))?;
            let d = (r.lo() - b.lo()).abs().max((r.hi() - b.hi()).abs());
            worst = worst.max(d);
            check(d <= TIGHTNESS_TOL, || format!("seed {seed} {t:?}: oracle {r}, closed form {b}"))?;
        }
    }
    Ok(format!("{SAMPLES} samples, max deviation {worst:.2e}"))
}

fn soundness() -> Outcome {
    let mut fired = 0usize;
    for seed in 0..SAMPLES {
        let s = sample_joint(seed);
        let ev = Evidence::from_data(Some(&s.exp), Some(&s.obs));
        let set = FeasibleSet::new(&ev).map_err(|e| format!("seed {seed}: {e}"))?;
        for (q, t) in [(Quantity::Pns, Target::Pns), (Quantity::Pn, Target::Pn), (Quantity::Ps, Target::Ps)] {
            let range = set.range(&t).map_err(|e| e.to_string())?;
            for eps in EPS_SWEEP {
                let report = eps_identify(q, &ev, eps).map_err(|e| format!("seed {seed}: {e}"))?;
                for id in &report.fired {
                    fired += 1;
                    check(id.certified.contains_interval(&range), || {
                        format!("seed {seed} {} at eps {eps}: {} misses {range}", id.condition.tag, id.certified)
                    })?;
                }
            }
        }
    }
    Ok(format!("{fired} fired identifications, 0 violations"))
}

fn sandwich() -> Outcome {
    let p_us: Vec<f64> = (0..=10).map(|i| i as f64 * 0.01).collect();
    let levels = [0.0, 0.25, 0.5, 0.75, 1.0];
    let mut scms = 0usize;
    let mut upper_checks = 0usize;
    for &p_u in &p_us {
        for &a in &levels {
            for &b in &levels {
                for &y0 in &levels {
                    for &y1 in &levels {
                        for &y2 in &levels {
                            for &y3 in &levels {
                                let scm = ConfoundedScm::new(p_u, [a, b], [[y0, y1], [y2, y3]])
                                    .map_err(|e| e.to_string())?;
                                let Some(p_y_given_x) = scm.p_y_given_x() else {
                                    continue;
                                };
                                scms += 1;
                                let p_x = scm.p_x();
                                let truth = scm.p_y_do(Treatment::Treated);
                                let c_max = p_x - p_u;
                                // the upper bound weakens as c shrinks, so c_max is the binding case
                                let cs: Vec<f64> = if c_max > 0.0 {
                                    (1..=4).map(|k| c_max * k as f64 / 4.0).collect()
                                } else {
                                    vec![f64::NAN]
                                };
                                for c in cs {
                                    let s = confounder_sandwich(p_y_given_x, p_x, p_u, c);
                                    check(s.lower <= truth + SANDWICH_TOL, || {
                                        format!("lower fails: {scm:?}: {} > {truth}", s.lower)
                                    })?;
                                    if c.is_nan() {
                                        continue;
                                    }
                                    upper_checks += 1;
                                    check(truth <= s.upper + SANDWICH_TOL, || {
                                        format!("upper fails at c = {c}: {scm:?}: {truth} > {}", s.upper)
                                    })?;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    check(scms >= 10_000, || format!("only {scms} SCMs"))?;
    Ok(format!("{scms} SCMs, {upper_checks} (SCM, c) upper checks, 0 violations"))
}

fn monotone() -> Outcome {
    let mut worst: f64 = 0.0;
    for seed in 0..SAMPLES {
        let s = sample_defier_free_joint(seed);
        let m = identify_monotone(&s.exp, &s.obs).map_err(|e| format!("seed {seed}: {e}"))?;
        let truth = [s.joint.pns(), s.joint.pn().unwrap(), s.joint.ps().unwrap()];
        for (got, want) in [m.pns, m.pn, m.ps].iter().zip(truth) {
            let d = (got - want).abs();
            worst = worst.max(d);
            check(d <= MONOTONE_TOL, || format!("seed {seed}: {got} vs {want}"))?;
        }
    }
    Ok(format!("{SAMPLES} defier-free joints, max deviation {worst:.2e}"))
}

fn minimal_eps_law() -> Outcome {
    let mut strict = 0usize;
    for seed in 0..SAMPLES {
        let s = sample_joint(seed);
        let ev = Evidence::from_data(Some(&s.exp), Some(&s.obs));
        for q in [Quantity::Pns, Quantity::Pn, Quantity::Ps] {
            let m = minimal_epsilon(q, &s.exp, &s.obs).map_err(|e| e.to_string())?;
            let above = eps_identify(q, &ev, m.eps_star + 1e-6).map_err(|e| e.to_string())?;
            check(!above.fired.is_empty(), || format!("seed {seed} {q}: nothing fires above eps* = {}", m.eps_star))?;
            if m.eps_star > 1e-3 {
                strict += 1;
                let below = eps_identify(q, &ev, m.eps_star - 1e-3).map_err(|e| e.to_string())?;
                check(below.fired.is_empty(), || {
                    format!("seed {seed} {q}: {:?} fire below eps* = {}", below.fired_tags(), m.eps_star)
                })?;
            }
        }
    }
    Ok(format!("{} inputs, {strict} with eps* > 1e-3", SAMPLES * 3))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("medicine example", medicine, Some(Duration::from_secs(1))),
        ("flu example", flu, Some(Duration::from_secs(1))),
        ("discount example", discount, Some(Duration::from_secs(1))),
        ("condition catalog completeness", completeness, None),
        ("bound tightness against the oracle", tightness, Some(Duration::from_secs(60))),
        ("soundness of fired identifications", soundness, Some(Duration::from_secs(120))),
        ("confounder sandwich", sandwich, Some(Duration::from_secs(60))),
        ("monotone identification", monotone, None),
        ("minimal-epsilon law", minimal_eps_law, None),
    ];
    let mut failures = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut result = run();
        let elapsed = start.elapsed();
        if let (Ok(detail), Some(limit)) = (&result, limit) {
            if elapsed > *limit {
                result = Err(format!("{detail}; took {elapsed:.2?}, limit {limit:.0?}"));
            }
        }
        match result {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}; {elapsed:.2?})", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {}: FAIL {name} ({why})", i + 1);
            }
        }
    }
    if failures == 0 {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
