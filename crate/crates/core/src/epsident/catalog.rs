//! Bound arguments and the condition catalog.
//!
//! Each tight bound is a max over lower arguments and a min over upper
//! arguments. Picking one lower argument `L` and one upper argument `U`
//! gives the premise `U − L ≤ 2ε` (scaled by the common denominator for the
//! ratio bounds), under which the quantity lies in `[L, L + 2ε]`, so both
//! `L + ε` and `U − ε` are valid centers. The catalog lists which
//! (pair, anchor) combinations are published conditions, in their
//! published order.

use serde::Serialize;

use crate::distributions::Quantity;
use crate::evidence::{Atom, Evidence, LinearExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
}

/// One argument of the max (lower) or min (upper) in a tight bound, as a
/// numerator over the quantity's common denominator.
#[derive(Debug, Clone, Copy)]
pub struct ArgumentSpec {
    pub label: &'static str,
    pub numerator: LinearExpr,
}

/// All bound arguments of a quantity.
#[derive(Debug, Clone)]
pub struct ArgumentTable {
    pub quantity: Quantity,
    /// `None` means the arguments are plain probabilities.
    pub denominator: Option<Atom>,
    pub lower: Vec<ArgumentSpec>,
    pub upper: Vec<ArgumentSpec>,
}

/// A bound argument evaluated against some evidence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundArgument {
    pub label: &'static str,
    pub side: Side,
    /// Present only when every required atom is known exactly.
    pub value: Option<f64>,
    pub requires: Vec<Atom>,
}

fn atom(a: Atom) -> LinearExpr {
    LinearExpr::atom(a)
}

fn one() -> LinearExpr {
    LinearExpr::constant(1.0)
}

fn arg(label: &'static str, numerator: LinearExpr) -> ArgumentSpec {
    ArgumentSpec { label, numerator }
}

impl ArgumentTable {
    pub fn for_quantity(quantity: Quantity) -> Option<Self> {
        use Atom::*;
        let table = match quantity {
            Quantity::Pns => ArgumentTable {
                quantity,
                denominator: None,
                lower: vec![
                    arg("0", LinearExpr::constant(0.0)),
                    arg("P(y_x) - P(y_x')", atom(YDoX) - atom(YDoXp)),
                    arg("P(y) - P(y_x')", atom(Y) - atom(YDoXp)),
                    arg("P(y_x) - P(y)", atom(YDoX) - atom(Y)),
                ],
                upper: vec![
                    arg("P(y_x)", atom(YDoX)),
                    arg("P(y'_x')", one() - atom(YDoXp)),
                    arg("P(x,y) + P(x',y')", atom(XY) + atom(XpYp)),
                    arg(
                        "P(y_x) - P(y_x') + P(x,y') + P(x',y)",
                        atom(YDoX) - atom(YDoXp) + atom(XYp) + atom(XpY),
                    ),
                ],
            },
            Quantity::Pn => ArgumentTable {
                quantity,
                denominator: Some(XY),
                lower: vec![
                    arg("0", LinearExpr::constant(0.0)),
                    arg("(P(y) - P(y_x'))/P(x,y)", atom(Y) - atom(YDoXp)),
                ],
                upper: vec![
                    arg("1", atom(XY)),
                    arg("(P(y'_x') - P(x',y'))/P(x,y)", one() - atom(YDoXp) - atom(XpYp)),
                ],
            },
            Quantity::Ps => ArgumentTable {
                quantity,
                denominator: Some(XpYp),
                lower: vec![
                    arg("0", LinearExpr::constant(0.0)),
                    // P(y') − P(y'_x) = P(y_x) − P(y)
                    arg("(P(y') - P(y'_x))/P(x',y')", atom(YDoX) - atom(Y)),
                ],
                upper: vec![
                    arg("1", atom(XpYp)),
                    arg("(P(y_x) - P(x,y))/P(x',y')", atom(YDoX) - atom(XY)),
                ],
            },
            _ => return None,
        };
        Some(table)
    }

    pub fn denominator_expr(&self) -> LinearExpr {
        self.denominator.map(LinearExpr::atom).unwrap_or_else(one)
    }

    pub fn argument(&self, side: Side, index: usize) -> &ArgumentSpec {
        match side {
            Side::Lower => &self.lower[index],
            Side::Upper => &self.upper[index],
        }
    }

    /// Evaluate every argument (as a ratio, when there is a denominator).
    pub fn evaluate(&self, evidence: &Evidence) -> Vec<BoundArgument> {
        let den = self.denominator_expr();
        let eval = |side: Side, spec: &ArgumentSpec| {
            let mut requires: Vec<Atom> = spec.numerator.atoms().collect();
            if let Some(d) = self.denominator {
                if !requires.contains(&d) {
                    requires.push(d);
                }
            }
            let value = match (evidence.value(&spec.numerator), evidence.value(&den)) {
                (Some(n), Some(d)) if d > 0.0 => Some(n / d),
                _ => None,
            };
            BoundArgument {
                label: spec.label,
                side,
                value,
                requires,
            }
        };
        self.lower
            .iter()
            .map(|s| eval(Side::Lower, s))
            .chain(self.upper.iter().map(|s| eval(Side::Upper, s)))
            .collect()
    }
}

/// A published ε-identification condition, generated from one
/// (lower, upper) pair and the side its center is anchored on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogEntry {
    pub tag: &'static str,
    pub quantity: Quantity,
    pub lower: usize,
    pub upper: usize,
    /// `Lower` gives `q = L + ε`, `Upper` gives `q = U − ε`.
    pub anchor: Side,
    /// Human-readable premise as usually written.
    pub premise: &'static str,
    /// Human-readable center.
    pub center: &'static str,
    /// `false` for the vacuous `(0, 1)` pair of the ratio bounds, which only
    /// fires for `ε ≥ 1/2`.
    pub printed: bool,
}

const fn entry(
    tag: &'static str,
    quantity: Quantity,
    lower: usize,
    upper: usize,
    anchor: Side,
    premise: &'static str,
    center: &'static str,
) -> CatalogEntry {
    CatalogEntry {
        tag,
        quantity,
        lower,
        upper,
        anchor,
        premise,
        center,
        printed: true,
    }
}

use Quantity::{Pn, Pns, Ps};
use Side::{Lower as L, Upper as U};

pub const PNS_CATALOG: [CatalogEntry; 21] = [
    entry("PNS-01", Pns, 0, 0, L, "P(y_x) <= 2eps", "eps"),
    entry("PNS-02", Pns, 0, 1, L, "P(y'_x') <= 2eps", "eps"),
    entry("PNS-03", Pns, 0, 2, L, "P(x,y) + P(x',y') <= 2eps", "eps"),
    entry("PNS-04", Pns, 0, 3, L, "P(y_x) - P(y_x') + P(x,y') + P(x',y) <= 2eps", "eps"),
    entry("PNS-05", Pns, 1, 0, U, "P(y_x') <= 2eps", "P(y_x) - eps"),
    entry("PNS-06", Pns, 1, 1, U, "P(y'_x) <= 2eps", "P(y'_x') - eps"),
    entry("PNS-07", Pns, 1, 3, L, "P(x,y') + P(x',y) <= 2eps", "P(y_x) - P(y_x') + eps"),
    entry("PNS-08", Pns, 1, 2, L, "P(y_x') - P(y_x) + P(x,y) + P(x',y') <= 2eps", "P(y_x) - P(y_x') + eps"),
    entry("PNS-09", Pns, 1, 2, U, "P(y_x') - P(y_x) + P(x,y) + P(x',y') <= 2eps", "P(x,y) + P(x',y') - eps"),
    entry("PNS-10", Pns, 2, 1, U, "P(y') <= 2eps", "P(y'_x') - eps"),
    entry("PNS-11", Pns, 2, 0, U, "P(y_x) + P(y_x') - P(y) <= 2eps", "P(y_x) - eps"),
    entry("PNS-12", Pns, 2, 0, L, "P(y_x) + P(y_x') - P(y) <= 2eps", "P(y) - P(y_x') + eps"),
    entry("PNS-13", Pns, 2, 2, U, "P(x',y') + P(y_x') - P(x',y) <= 2eps", "P(x,y) + P(x',y') - eps"),
    entry("PNS-14", Pns, 2, 2, L, "P(x',y') + P(y_x') - P(x',y) <= 2eps", "P(y) - P(y_x') + eps"),
    entry("PNS-15", Pns, 2, 3, L, "P(y_x) + P(x,y') - P(x,y) <= 2eps", "P(y) - P(y_x') + eps"),
    entry("PNS-16", Pns, 3, 0, U, "P(y) <= 2eps", "P(y_x) - eps"),
    entry("PNS-17", Pns, 3, 1, U, "P(y'_x') - P(y_x) + P(y) <= 2eps", "P(y'_x') - eps"),
    entry("PNS-18", Pns, 3, 1, L, "P(y'_x') - P(y_x) + P(y) <= 2eps", "P(y_x) - P(y) + eps"),
    entry("PNS-19", Pns, 3, 2, U, "P(x,y) + P(y'_x) - P(x,y') <= 2eps", "P(x,y) + P(x',y') - eps"),
    entry("PNS-20", Pns, 3, 2, L, "P(x,y) + P(y'_x) - P(x,y') <= 2eps", "P(y_x) - P(y) + eps"),
    entry("PNS-21", Pns, 3, 3, L, "P(x',y) + P(y'_x') - P(x',y') <= 2eps", "P(y_x) - P(y) + eps"),
];

pub const PN_CATALOG: [CatalogEntry; 6] = [
    CatalogEntry {
        printed: false,
        ..entry("PN-0", Pn, 0, 0, L, "1 <= 2eps", "eps")
    },
    entry("PN-1", Pn, 0, 1, L, "P(y'_x') - P(x',y') <= 2eps P(x,y)", "eps"),
    entry("PN-2", Pn, 1, 0, U, "P(y_x') - P(x',y) <= 2eps P(x,y)", "1 - eps"),
    entry("PN-3", Pn, 1, 0, L, "P(y_x') - P(x',y) <= 2eps P(x,y)", "(P(y) - P(y_x'))/P(x,y) + eps"),
    entry("PN-4", Pn, 1, 1, U, "P(x,y') <= 2eps P(x,y)", "(P(y'_x') - P(x',y'))/P(x,y) - eps"),
    entry("PN-5", Pn, 1, 1, L, "P(x,y') <= 2eps P(x,y)", "(P(y) - P(y_x'))/P(x,y) + eps"),
];

pub const PS_CATALOG: [CatalogEntry; 6] = [
    CatalogEntry {
        printed: false,
        ..entry("PS-0", Ps, 0, 0, L, "1 <= 2eps", "eps")
    },
    entry("PS-1", Ps, 0, 1, L, "P(y_x) - P(x,y) <= 2eps P(x',y')", "eps"),
    entry("PS-2", Ps, 1, 0, U, "P(y'_x) - P(x,y') <= 2eps P(x',y')", "1 - eps"),
    entry("PS-3", Ps, 1, 0, L, "P(y'_x) - P(x,y') <= 2eps P(x',y')", "(P(y') - P(y'_x))/P(x',y') + eps"),
    entry("PS-4", Ps, 1, 1, U, "P(x',y) <= 2eps P(x',y')", "(P(y_x) - P(x,y))/P(x',y') - eps"),
    entry("PS-5", Ps, 1, 1, L, "P(x',y) <= 2eps P(x',y')", "(P(y') - P(y'_x))/P(x',y') + eps"),
];

/// Catalog for PNS, PN or PS.
pub fn catalog(quantity: Quantity) -> &'static [CatalogEntry] {
    match quantity {
        Quantity::Pns => &PNS_CATALOG,
        Quantity::Pn => &PN_CATALOG,
        Quantity::Ps => &PS_CATALOG,
        _ => &[],
    }
}

impl CatalogEntry {
    /// `U − L` as a numerator (before comparing against `2ε·denominator`).
    pub fn gap(&self, table: &ArgumentTable) -> LinearExpr {
        table.upper[self.upper].numerator - table.lower[self.lower].numerator
    }

    /// Numerator of the center's anchor argument.
    pub fn anchor_numerator(&self, table: &ArgumentTable) -> LinearExpr {
        match self.anchor {
            Side::Lower => table.lower[self.lower].numerator,
            Side::Upper => table.upper[self.upper].numerator,
        }
    }
}
