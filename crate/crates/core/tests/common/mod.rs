//! Helpers shared by the integration tests.
//!
//! The printed conditions below are written out by hand from the full-data
//! atoms so that they stay independent of the pair-scan catalog they check.

#![allow(dead_code)]

use epsident::{ExperimentalDistribution, ObservationalDistribution};

/// Full data for one population.
#[derive(Debug, Clone, Copy)]
pub struct Data {
    pub yx: f64,
    pub yxp: f64,
    pub xy: f64,
    pub xyp: f64,
    pub xpy: f64,
    pub xpyp: f64,
}

impl Data {
    pub fn new(exp: &ExperimentalDistribution, obs: &ObservationalDistribution) -> Self {
        Self {
            yx: exp.p_y_do_x().unwrap(),
            yxp: exp.p_y_do_xp().unwrap(),
            xy: obs.p_xy().unwrap(),
            xyp: obs.p_xyp().unwrap(),
            xpy: obs.p_xpy().unwrap(),
            xpyp: obs.p_xpyp().unwrap(),
        }
    }

    pub fn y(&self) -> f64 {
        self.xy + self.xpy
    }
}

/// One printed condition: fires when `lhs ≤ 2ε·den`, centered at `center`.
pub struct Printed {
    pub tag: &'static str,
    pub den: fn(&Data) -> f64,
    pub lhs: fn(&Data) -> f64,
    pub center: fn(&Data, f64) -> f64,
}

fn one(_: &Data) -> f64 {
    1.0
}

fn xy(d: &Data) -> f64 {
    d.xy
}

fn xpyp(d: &Data) -> f64 {
    d.xpyp
}

macro_rules! printed {
    ($tag:expr, $den:expr, |$d:ident| $lhs:expr, |$c:ident, $e:ident| $center:expr) => {
        Printed {
            tag: $tag,
            den: $den,
            lhs: |$d: &Data| $lhs,
            center: |$c: &Data, $e: f64| $center,
        }
    };
}

pub fn pns_printed() -> Vec<Printed> {
    vec![
        printed!("PNS-01", one, |d| d.yx, |_d, e| e),
        printed!("PNS-02", one, |d| 1.0 - d.yxp, |_d, e| e),
        printed!("PNS-03", one, |d| d.xy + d.xpyp, |_d, e| e),
        printed!("PNS-04", one, |d| d.yx - d.yxp + d.xyp + d.xpy, |_d, e| e),
        printed!("PNS-05", one, |d| d.yxp, |d, e| d.yx - e),
        printed!("PNS-06", one, |d| 1.0 - d.yx, |d, e| 1.0 - d.yxp - e),
        printed!("PNS-07", one, |d| d.xyp + d.xpy, |d, e| d.yx - d.yxp + e),
        printed!("PNS-08", one, |d| d.yxp - d.yx + d.xy + d.xpyp, |d, e| d.yx - d.yxp + e),
        printed!("PNS-09", one, |d| d.yxp - d.yx + d.xy + d.xpyp, |d, e| d.xy + d.xpyp - e),
        printed!("PNS-10", one, |d| 1.0 - d.y(), |d, e| 1.0 - d.yxp - e),
        printed!("PNS-11", one, |d| d.yx + d.yxp - d.y(), |d, e| d.yx - e),
        printed!("PNS-12", one, |d| d.yx + d.yxp - d.y(), |d, e| d.y() - d.yxp + e),
        printed!("PNS-13", one, |d| d.xpyp + d.yxp - d.xpy, |d, e| d.xy + d.xpyp - e),
        printed!("PNS-14", one, |d| d.xpyp + d.yxp - d.xpy, |d, e| d.y() - d.yxp + e),
        printed!("PNS-15", one, |d| d.yx + d.xyp - d.xy, |d, e| d.y() - d.yxp + e),
        printed!("PNS-16", one, |d| d.y(), |d, e| d.yx - e),
        printed!("PNS-17", one, |d| 1.0 - d.yxp - d.yx + d.y(), |d, e| 1.0 - d.yxp - e),
        printed!("PNS-18", one, |d| 1.0 - d.yxp - d.yx + d.y(), |d, e| d.yx - d.y() + e),
        printed!("PNS-19", one, |d| d.xy + 1.0 - d.yx - d.xyp, |d, e| d.xy + d.xpyp - e),
        printed!("PNS-20", one, |d| d.xy + 1.0 - d.yx - d.xyp, |d, e| d.yx - d.y() + e),
        printed!("PNS-21", one, |d| d.xpy + 1.0 - d.yxp - d.xpyp, |d, e| d.yx - d.y() + e),
    ]
}

pub fn pn_printed() -> Vec<Printed> {
    vec![
        printed!("PN-1", xy, |d| 1.0 - d.yxp - d.xpyp, |_d, e| e),
        printed!("PN-2", xy, |d| d.yxp - d.xpy, |_d, e| 1.0 - e),
        printed!("PN-3", xy, |d| d.yxp - d.xpy, |d, e| (d.y() - d.yxp) / d.xy + e),
        printed!("PN-4", xy, |d| d.xyp, |d, e| (1.0 - d.yxp - d.xpyp) / d.xy - e),
        printed!("PN-5", xy, |d| d.xyp, |d, e| (d.y() - d.yxp) / d.xy + e),
    ]
}

pub fn ps_printed() -> Vec<Printed> {
    vec![
        printed!("PS-1", xpyp, |d| d.yx - d.xy, |_d, e| e),
        printed!("PS-2", xpyp, |d| 1.0 - d.yx - d.xyp, |_d, e| 1.0 - e),
        printed!("PS-3", xpyp, |d| 1.0 - d.yx - d.xyp, |d, e| (d.yx - d.y()) / d.xpyp + e),
        printed!("PS-4", xpyp, |d| d.xpy, |d, e| (d.yx - d.xy) / d.xpyp - e),
        printed!("PS-5", xpyp, |d| d.xpy, |d, e| (d.yx - d.y()) / d.xpyp + e),
    ]
}
