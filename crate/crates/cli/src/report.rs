//! The report every subcommand produces, and its two renderings.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;
use serde_json::Value;

use epsident::epsident::{ConfoundedEffectInput, EffectVerdict, EpsReport, MinimalEps};
use epsident::unitselect::{BenefitIdentification, BenefitVector};
use epsident::{
    EpsIdentification, ExperimentalDistribution, Interval, ObservationalDistribution,
};

use crate::input::{atom_from_key, BoundJson, Data};

pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Clone, Default, Serialize)]
pub struct Inputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub experimental: Option<ExperimentalDistribution>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observational: Option<ObservationalDistribution>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub bounds: BTreeMap<String, BoundJson>,
}

impl From<&Data> for Inputs {
    fn from(d: &Data) -> Self {
        Self {
            experimental: d.exp,
            observational: d.obs,
            bounds: d
                .bounds
                .iter()
                .map(|(k, (_, iv))| {
                    let b = BoundJson {
                        lo: Some(iv.lo()),
                        hi: Some(iv.hi()),
                    };
                    (k.to_string(), b)
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundEntry {
    pub lo: f64,
    pub hi: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub raw_lo: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub raw_hi: Option<f64>,
}

impl From<Interval> for BoundEntry {
    fn from(i: Interval) -> Self {
        Self {
            lo: i.lo(),
            hi: i.hi(),
            raw_lo: None,
            raw_hi: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfoundedSection {
    pub input: ConfoundedEffectInput,
    pub eps: f64,
    pub verdict: EffectVerdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenefitSection {
    pub payoffs: BenefitVector,
    pub identification: BenefitIdentification,
    pub recommendation: Option<String>,
    pub assumption: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CheckSummary {
    pub name: String,
    pub passed: u64,
    pub failed: u64,
    pub first_failure: Option<String>,
}

impl CheckSummary {
    pub fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            ..Self::default()
        }
    }

    pub fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Verification {
    pub seed: u64,
    pub trials: u64,
    pub checks: Vec<CheckSummary>,
    pub passed: bool,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub command: String,
    pub tolerance: f64,
    pub inputs: Inputs,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub bounds: BTreeMap<String, BoundEntry>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub skipped: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub eps_reports: BTreeMap<String, EpsReport>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub effects: BTreeMap<String, EffectVerdict>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub minimal: BTreeMap<String, MinimalEps>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub confounded: Option<ConfoundedSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub benefit: Option<BenefitSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verification>,
    pub warnings: Vec<String>,
}

/// Round to the canonical number of significant digits.
pub fn round_significant(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Round every float in place; integers and other values are untouched.
pub fn canonicalize(value: &mut Value) {
    match value {
        Value::Number(n) if n.is_f64() => {
            let x = round_significant(n.as_f64().expect("f64 number"));
            if let Some(m) = serde_json::Number::from_f64(x) {
                *n = m;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(canonicalize),
        Value::Object(map) => map.values_mut().for_each(canonicalize),
        _ => {}
    }
}

/// Canonical JSON text: sorted keys, rounded floats, two-space indent.
pub fn canonical_json(value: &Value) -> String {
    let mut v = value.clone();
    canonicalize(&mut v);
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values always serialize");
    s.push('\n');
    s
}

impl Report {
    pub fn new(command: &str, data: &Data) -> Self {
        Self {
            command: command.to_string(),
            tolerance: epsident::tolerance::tolerance(),
            inputs: Inputs::from(data),
            ..Self::default()
        }
    }

    pub fn to_json(&self) -> String {
        canonical_json(&serde_json::to_value(self).expect("report serializes"))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out).expect("writing to a String");
        out
    }

    fn write_text(&self, out: &mut String) -> std::fmt::Result {
        writeln!(out, "epsident {} (tolerance {:e})", self.command, self.tolerance)?;
        self.write_inputs(out)?;
        if !self.bounds.is_empty() {
            writeln!(out, "\nbounds:")?;
            for (name, b) in &self.bounds {
                write!(out, "  {name:<10} [{}, {}]", num(b.lo), num(b.hi))?;
                if let (Some(lo), Some(hi)) = (b.raw_lo, b.raw_hi) {
                    if lo != b.lo || hi != b.hi {
                        write!(out, "  (before clamping [{}, {}])", num(lo), num(hi))?;
                    }
                }
                writeln!(out)?;
            }
        }
        if !self.minimal.is_empty() {
            writeln!(out, "\nminimal eps:")?;
            for (name, m) in &self.minimal {
                writeln!(out, "  {name:<10} eps* = {}, q* = {}", num(m.eps_star), num(m.q_star))?;
            }
        }
        for (name, r) in &self.eps_reports {
            write_eps_report(out, name, r)?;
        }
        if !self.effects.is_empty() {
            writeln!(out)?;
            for (name, v) in &self.effects {
                write_verdict(out, name, v)?;
            }
        }
        if let Some(c) = &self.confounded {
            writeln!(
                out,
                "\nP(y_x) with a confounder: P(x) = {}, P(y|x) = {}, P(u) <= {}, eps = {}",
                num(c.input.p_x),
                num(c.input.p_y_given_x),
                num(c.input.u_max),
                num(c.eps)
            )?;
            write_verdict(out, "P(y_x)", &c.verdict)?;
        }
        if let Some(b) = &self.benefit {
            write_benefit(out, b)?;
        }
        if let Some(v) = &self.verification {
            write_verification(out, v)?;
        }
        if !self.skipped.is_empty() {
            writeln!(out, "\nskipped:")?;
            for (name, why) in &self.skipped {
                writeln!(out, "  {name:<10} {why}")?;
            }
        }
        if !self.warnings.is_empty() {
            writeln!(out, "\nwarnings:")?;
            for w in &self.warnings {
                writeln!(out, "  {w}")?;
            }
        }
        Ok(())
    }

    fn write_inputs(&self, out: &mut String) -> std::fmt::Result {
        let mut parts = Vec::new();
        if let Some(e) = &self.inputs.experimental {
            parts.extend(e.p_y_do_x().map(|v| format!("P(y_x) = {}", num(v))));
            parts.extend(e.p_y_do_xp().map(|v| format!("P(y_x') = {}", num(v))));
        }
        if let Some(o) = &self.inputs.observational {
            for (label, v) in [
                ("P(x,y)", o.p_xy()),
                ("P(x,y')", o.p_xyp()),
                ("P(x',y)", o.p_xpy()),
                ("P(x',y')", o.p_xpyp()),
            ] {
                parts.extend(v.map(|v| format!("{label} = {}", num(v))));
            }
        }
        for (key, b) in &self.inputs.bounds {
            let lo = b.lo.unwrap_or(0.0);
            let hi = b.hi.unwrap_or(1.0);
            let label = atom_from_key(key).map_or(key.as_str(), |a| a.label());
            parts.push(format!("{label} in [{}, {}]", num(lo), num(hi)));
        }
        if !parts.is_empty() {
            writeln!(out, "inputs: {}", parts.join(", "))?;
        }
        Ok(())
    }
}

/// Human-readable number: canonical rounding, shortest representation.
pub fn num(x: f64) -> String {
    format!("{}", round_significant(x))
}

fn describe(id: &EpsIdentification) -> String {
    let eps = num(id.eps);
    let center = id.condition.center.replace("eps", &eps);
    format!(
        "{} ~ {center} = {} (+/- {eps}, certifies [{}, {}])",
        id.quantity,
        num(id.q),
        num(id.certified.lo()),
        num(id.certified.hi())
    )
}

fn write_eps_report(out: &mut String, name: &str, r: &EpsReport) -> std::fmt::Result {
    writeln!(out, "\n{name} at eps = {}:", num(r.eps))?;
    if r.fired.is_empty() {
        writeln!(out, "  no condition fires")?;
    }
    for id in &r.fired {
        writeln!(out, "  {:<7} {}", id.condition.tag, describe(id))?;
        writeln!(
            out,
            "          premise {} ({} <= {})",
            id.condition.premise,
            num(id.condition.lhs),
            num(id.condition.rhs)
        )?;
    }
    if let Some(t) = &r.tightest {
        writeln!(out, "  tightest: {}", t.condition.tag)?;
    }
    let mut by_reason: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for n in &r.not_evaluated {
        by_reason.entry(n.reason).or_default().push(n.tag);
    }
    for (reason, tags) in by_reason {
        writeln!(out, "  not evaluated, {reason}: {}", tags.join(" "))?;
    }
    Ok(())
}

fn write_verdict(out: &mut String, name: &str, v: &EffectVerdict) -> std::fmt::Result {
    match v {
        EffectVerdict::Identified(id) => {
            writeln!(out, "  {name}: fires {}: {}", id.condition.tag, describe(id))?;
            writeln!(
                out,
                "    premise {} ({} <= {})",
                id.condition.premise,
                num(id.condition.lhs),
                num(id.condition.rhs)
            )
        }
        EffectVerdict::NotIdentified(n) => writeln!(
            out,
            "  {name}: does not fire, premise {} fails ({} > {})",
            n.premise,
            num(n.lhs),
            num(n.rhs)
        ),
    }
}

fn write_benefit(out: &mut String, b: &BenefitSection) -> std::fmt::Result {
    let p = &b.payoffs;
    let id = &b.identification;
    writeln!(
        out,
        "\nbenefit with payoffs beta = {}, gamma = {}, theta = {}, delta = {}:",
        num(p.beta),
        num(p.gamma),
        num(p.theta),
        num(p.delta)
    )?;
    writeln!(out, "  q = {}, eps = {}, sign {:?}", num(id.q), num(id.eps), id.sign)?;
    writeln!(out, "  gain-equality residual = {}", num(id.gain_equality_residual))?;
    if let Some(r) = &b.recommendation {
        writeln!(out, "  recommendation: {r}")?;
    }
    writeln!(out, "  assumes: {}", b.assumption)
}

fn write_verification(out: &mut String, v: &Verification) -> std::fmt::Result {
    writeln!(out, "\nverification (seed {}, {} trials):", v.seed, v.trials)?;
    for c in &v.checks {
        let status = if c.failed == 0 { "pass" } else { "FAIL" };
        writeln!(out, "  {status} {:<28} {} passed, {} failed", c.name, c.passed, c.failed)?;
        if let Some(f) = &c.first_failure {
            writeln!(out, "       first failure: {f}")?;
        }
    }
    writeln!(out, "  overall: {}", if v.passed { "pass" } else { "FAIL" })
}
