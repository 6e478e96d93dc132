//! Input files: the JSON distribution schema and `arm,outcome,count` CSVs.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use epsident::{
    from_counts, Atom, Distribution, Evidence, ExperimentalDistribution, Interval,
    ObservationalDistribution, StudyCounts, StudyKind,
};

use crate::error::{CliError, Result};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExperimentalJson {
    p_y_do_x: Option<f64>,
    p_y_do_xp: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ObservationalJson {
    p_xy: Option<f64>,
    p_xyp: Option<f64>,
    p_xpy: Option<f64>,
    p_xpyp: Option<f64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct BoundJson {
    pub lo: Option<f64>,
    pub hi: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct InputJson {
    experimental: Option<ExperimentalJson>,
    observational: Option<ObservationalJson>,
    #[serde(default)]
    bounds: BTreeMap<String, BoundJson>,
}

/// JSON key for each atom that may carry a bound.
pub fn atom_key(atom: Atom) -> &'static str {
    match atom {
        Atom::YDoX => "p_y_do_x",
        Atom::YDoXp => "p_y_do_xp",
        Atom::XY => "p_xy",
        Atom::XYp => "p_xyp",
        Atom::XpY => "p_xpy",
        Atom::XpYp => "p_xpyp",
        Atom::Y => "p_y",
        Atom::X => "p_x",
    }
}

pub fn atom_from_key(key: &str) -> Option<Atom> {
    Atom::ALL.into_iter().find(|a| atom_key(*a) == key)
}

/// Everything read from the command line's data sources.
#[derive(Debug, Clone, Default)]
pub struct Data {
    pub exp: Option<ExperimentalDistribution>,
    pub obs: Option<ObservationalDistribution>,
    pub bounds: BTreeMap<&'static str, (Atom, Interval)>,
}

impl Data {
    pub fn is_empty(&self) -> bool {
        self.exp.is_none() && self.obs.is_none() && self.bounds.is_empty()
    }

    pub fn evidence(&self) -> Result<Evidence> {
        let mut ev = Evidence::from_data(self.exp.as_ref(), self.obs.as_ref());
        for (atom, bound) in self.bounds.values() {
            ev = ev.with_bound(*atom, *bound)?;
        }
        Ok(ev)
    }

    pub fn full(&self) -> Option<(ExperimentalDistribution, ObservationalDistribution)> {
        match (self.exp, self.obs) {
            (Some(e), Some(o)) => Some((e, o)),
            _ => None,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_error(path: &Path, message: impl ToString) -> CliError {
    CliError::Parse {
        path: path.to_path_buf(),
        message: message.to_string(),
    }
}

pub fn parse_json(path: &Path, text: &str) -> Result<Data> {
    let raw: InputJson = serde_json::from_str(text).map_err(|e| parse_error(path, e))?;
    let mut data = Data::default();
    if let Some(e) = raw.experimental {
        data.exp = Some(ExperimentalDistribution::new(e.p_y_do_x, e.p_y_do_xp).map_err(|e| parse_error(path, e))?);
    }
    if let Some(o) = raw.observational {
        data.obs = Some(
            ObservationalDistribution::new(o.p_xy, o.p_xyp, o.p_xpy, o.p_xpyp).map_err(|e| parse_error(path, e))?,
        );
    }
    for (key, b) in raw.bounds {
        let atom = atom_from_key(&key).ok_or_else(|| parse_error(path, format!("unknown bound key {key:?}")))?;
        let iv = Interval::new(b.lo.unwrap_or(0.0), b.hi.unwrap_or(1.0)).map_err(|e| parse_error(path, e))?;
        data.bounds.insert(atom_key(atom), (atom, iv));
    }
    Ok(data)
}

/// Rows of `arm,outcome,count`; repeated rows for the same cell add up.
pub fn parse_csv(path: &Path, text: &str, kind: StudyKind) -> Result<Distribution> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(|e| parse_error(path, e))?.clone();
    if headers.iter().collect::<Vec<_>>() != ["arm", "outcome", "count"] {
        return Err(parse_error(path, "expected header arm,outcome,count"));
    }
    let mut cells = [0u64; 4];
    for (line, row) in rdr.records().enumerate() {
        let row = row.map_err(|e| parse_error(path, e))?;
        let at = |msg: String| parse_error(path, format!("row {}: {msg}", line + 2));
        let arm = match &row[0] {
            "treated" => 0,
            "untreated" => 2,
            other => return Err(at(format!("arm {other:?} is not treated|untreated"))),
        };
        let outcome = match &row[1] {
            "positive" => 0,
            "negative" => 1,
            other => return Err(at(format!("outcome {other:?} is not positive|negative"))),
        };
        let count: u64 = row[2].parse().map_err(|_| at(format!("count {:?} is not a non-negative integer", &row[2])))?;
        cells[arm + outcome] += count;
    }
    let counts = StudyCounts::new(cells[0], cells[1], cells[2], cells[3], kind);
    from_counts(&counts).map_err(|e| parse_error(path, e))
}

/// Gather data from an optional JSON file and optional per-study CSVs.
pub fn load(json: Option<&PathBuf>, exp_csv: Option<&PathBuf>, obs_csv: Option<&PathBuf>) -> Result<Data> {
    let mut data = match json {
        Some(p) => parse_json(p, &read(p)?)?,
        None => Data::default(),
    };
    if let Some(p) = exp_csv {
        if data.exp.is_some() {
            return Err(CliError::Input("experimental data given twice".into()));
        }
        match parse_csv(p, &read(p)?, StudyKind::Experimental)? {
            Distribution::Experimental(e) => data.exp = Some(e),
            Distribution::Observational(_) => unreachable!("kind is experimental"),
        }
    }
    if let Some(p) = obs_csv {
        if data.obs.is_some() {
            return Err(CliError::Input("observational data given twice".into()));
        }
        match parse_csv(p, &read(p)?, StudyKind::Observational)? {
            Distribution::Observational(o) => data.obs = Some(o),
            Distribution::Experimental(_) => unreachable!("kind is observational"),
        }
    }
    Ok(data)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path() -> PathBuf {
        PathBuf::from("test.json")
    }

    #[test]
    fn json_with_partial_data_and_bounds() {
        let d = parse_json(
            &path(),
            r#"{"experimental": {"p_y_do_x": 0.04}, "bounds": {"p_y": {"hi": 0.05}}}"#,
        )
        .unwrap();
        assert_eq!(d.exp.unwrap().p_y_do_x(), Some(0.04));
        assert_eq!(d.exp.unwrap().p_y_do_xp(), None);
        assert!(d.obs.is_none());
        let ev = d.evidence().unwrap();
        assert_eq!(ev.supplied(Atom::Y).unwrap().hi(), 0.05);
    }

    #[test]
    fn json_rejects_unknown_keys_and_bad_values() {
        assert!(parse_json(&path(), r#"{"experimental": {"p_y": 0.1}}"#).is_err());
        assert!(parse_json(&path(), r#"{"bounds": {"p_z": {"hi": 0.1}}}"#).is_err());
        assert!(parse_json(&path(), r#"{"experimental": {"p_y_do_x": 1.5}}"#).is_err());
        assert!(parse_json(&path(), r#"{"observational": {"p_xy": 0.5, "p_xyp": 0.5, "p_xpy": 0.5, "p_xpyp": 0.5}}"#).is_err());
        assert!(parse_json(&path(), "{").is_err());
    }

    #[test]
    fn csv_counts() {
        let text = "arm,outcome,count\ntreated,positive,780\ntreated,negative,480\nuntreated,positive,210\nuntreated,negative,30\n";
        let Distribution::Observational(o) = parse_csv(&path(), text, StudyKind::Observational).unwrap() else {
            panic!("observational expected");
        };
        assert!((o.p_x().unwrap() - 0.84).abs() < 1e-12);
        assert!((o.p_y_given_x().unwrap() - 780.0 / 1260.0).abs() < 1e-12);
    }

    #[test]
    fn csv_errors() {
        assert!(parse_csv(&path(), "a,b,c\n", StudyKind::Experimental).is_err());
        assert!(parse_csv(&path(), "arm,outcome,count\nplacebo,positive,3\n", StudyKind::Experimental).is_err());
        assert!(parse_csv(&path(), "arm,outcome,count\ntreated,positive,-3\n", StudyKind::Experimental).is_err());
        let zero_arm = "arm,outcome,count\nuntreated,positive,5\nuntreated,negative,5\n";
        assert!(parse_csv(&path(), zero_arm, StudyKind::Experimental).is_err());
    }
}
