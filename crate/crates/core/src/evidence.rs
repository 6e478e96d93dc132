//! Data atoms and what is known about them.
//!
//! An atom is one observable probability: a causal effect, a joint cell, or
//! a marginal. [`Evidence`] records each atom as exact or as an interval, so
//! "P(y) ≤ 0.05" and "P(x,y) = 0.52" live side by side. Bound arguments and
//! premises are [`LinearExpr`]s over atoms and are evaluated with interval
//! arithmetic, which is sound for partial data and exact for full data.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::distributions::{ExperimentalDistribution, Interval, ObservationalDistribution};
use crate::error::{Error, Result};
use crate::tolerance::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    /// `P(y_x)`
    YDoX,
    /// `P(y_{x'})`
    YDoXp,
    /// `P(x,y)`
    XY,
    /// `P(x,y')`
    XYp,
    /// `P(x',y)`
    XpY,
    /// `P(x',y')`
    XpYp,
    /// `P(y)`
    Y,
    /// `P(x)`
    X,
}

impl Atom {
    pub const ALL: [Atom; 8] = [
        Atom::YDoX,
        Atom::YDoXp,
        Atom::XY,
        Atom::XYp,
        Atom::XpY,
        Atom::XpYp,
        Atom::Y,
        Atom::X,
    ];

    pub const fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            Atom::YDoX => "P(y_x)",
            Atom::YDoXp => "P(y_x')",
            Atom::XY => "P(x,y)",
            Atom::XYp => "P(x,y')",
            Atom::XpY => "P(x',y)",
            Atom::XpYp => "P(x',y')",
            Atom::Y => "P(y)",
            Atom::X => "P(x)",
        }
    }

    /// Label of `1 − atom`.
    pub fn complement_label(self) -> &'static str {
        match self {
            Atom::YDoX => "P(y'_x)",
            Atom::YDoXp => "P(y'_x')",
            Atom::XY => "1 - P(x,y)",
            Atom::XYp => "1 - P(x,y')",
            Atom::XpY => "1 - P(x',y)",
            Atom::XpYp => "1 - P(x',y')",
            Atom::Y => "P(y')",
            Atom::X => "P(x')",
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for Atom {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

/// `constant + Σ coef·atom`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LinearExpr {
    constant: f64,
    coefs: [f64; 8],
}

impl LinearExpr {
    pub const fn constant(c: f64) -> Self {
        Self {
            constant: c,
            coefs: [0.0; 8],
        }
    }

    pub const fn atom(a: Atom) -> Self {
        let mut coefs = [0.0; 8];
        coefs[a.index()] = 1.0;
        Self {
            constant: 0.0,
            coefs,
        }
    }

    /// `1 − atom`.
    pub fn complement(a: Atom) -> Self {
        Self::constant(1.0) - Self::atom(a)
    }

    pub fn constant_term(&self) -> f64 {
        self.constant
    }

    pub fn coef(&self, a: Atom) -> f64 {
        self.coefs[a.index()]
    }

    /// Atoms with a non-zero coefficient.
    pub fn atoms(&self) -> impl Iterator<Item = Atom> + '_ {
        Atom::ALL.into_iter().filter(|a| self.coefs[a.index()] != 0.0)
    }

    /// Evaluate against a full assignment of atom values.
    pub fn eval_with(&self, value: impl Fn(Atom) -> f64) -> f64 {
        self.atoms()
            .fold(self.constant, |acc, a| acc + self.coef(a) * value(a))
    }
}

impl Add for LinearExpr {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.constant += rhs.constant;
        for (c, r) in self.coefs.iter_mut().zip(rhs.coefs) {
            *c += r;
        }
        self
    }
}

impl Neg for LinearExpr {
    type Output = Self;
    fn neg(self) -> Self {
        self * -1.0
    }
}

impl Sub for LinearExpr {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul<f64> for LinearExpr {
    type Output = Self;
    fn mul(mut self, k: f64) -> Self {
        self.constant *= k;
        for c in &mut self.coefs {
            *c *= k;
        }
        self
    }
}

impl From<Atom> for LinearExpr {
    fn from(a: Atom) -> Self {
        Self::atom(a)
    }
}

impl fmt::Display for LinearExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let atoms: Vec<Atom> = self.atoms().collect();
        if atoms.is_empty() {
            return write!(f, "{}", self.constant);
        }
        if self.constant == 1.0 && atoms.len() == 1 && self.coef(atoms[0]) == -1.0 {
            return f.write_str(atoms[0].complement_label());
        }
        let mut first = true;
        for a in atoms {
            let c = self.coef(a);
            let sign = if c < 0.0 { "-" } else { "+" };
            let mag = c.abs();
            let term = if mag == 1.0 {
                a.label().to_string()
            } else {
                format!("{mag}·{}", a.label())
            };
            if first {
                if c < 0.0 {
                    write!(f, "-{term}")?;
                } else {
                    write!(f, "{term}")?;
                }
                first = false;
            } else {
                write!(f, " {sign} {term}")?;
            }
        }
        if self.constant != 0.0 {
            let sign = if self.constant < 0.0 { "-" } else { "+" };
            write!(f, " {sign} {}", self.constant.abs())?;
        }
        Ok(())
    }
}

fn sum(a: Interval, b: Interval) -> Interval {
    Interval::new(a.lo() + b.lo(), a.hi() + b.hi()).expect("sum of intervals is ordered")
}

fn one_minus(a: Interval) -> Interval {
    Interval::new(1.0 - a.hi(), 1.0 - a.lo()).expect("complement is ordered")
}

/// Intersection that tolerates rounding gaps; on a gap within tolerance the
/// first argument wins.
fn meet(a: Interval, b: Interval) -> Interval {
    match a.intersect(&b) {
        Some(i) => i,
        None => a,
    }
}

/// Knowledge about each atom: absent, an interval, or exact (a point interval).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Evidence {
    known: [Option<Interval>; 8],
}

impl Evidence {
    pub fn new() -> Self {
        Self::default()
    }

    /// Exact atoms from whatever experimental and observational data exist.
    pub fn from_data(
        exp: Option<&ExperimentalDistribution>,
        obs: Option<&ObservationalDistribution>,
    ) -> Self {
        let mut ev = Self::new();
        if let Some(e) = exp {
            ev.known[Atom::YDoX.index()] = e.p_y_do_x().map(Interval::point);
            ev.known[Atom::YDoXp.index()] = e.p_y_do_xp().map(Interval::point);
        }
        if let Some(o) = obs {
            ev.known[Atom::XY.index()] = o.p_xy().map(Interval::point);
            ev.known[Atom::XYp.index()] = o.p_xyp().map(Interval::point);
            ev.known[Atom::XpY.index()] = o.p_xpy().map(Interval::point);
            ev.known[Atom::XpYp.index()] = o.p_xpyp().map(Interval::point);
        }
        ev
    }

    pub fn with_exact(self, atom: Atom, value: f64) -> Result<Self> {
        self.with_bound(atom, Interval::new(value, value)?)
    }

    /// Add a bound on an atom, intersecting with anything already supplied.
    pub fn with_bound(mut self, atom: Atom, bound: Interval) -> Result<Self> {
        if bound.lo() < -tolerance() || bound.hi() > 1.0 + tolerance() {
            return Err(Error::InvalidProbability {
                field: atom.label(),
                value: if bound.lo() < 0.0 { bound.lo() } else { bound.hi() },
            });
        }
        let slot = &mut self.known[atom.index()];
        *slot = match *slot {
            None => Some(bound),
            Some(prev) => Some(prev.intersect(&bound).ok_or_else(|| {
                Error::InvalidInput(format!(
                    "conflicting knowledge about {atom}: {prev} and {bound}"
                ))
            })?),
        };
        Ok(self)
    }

    /// Upper bound only: `atom ≤ hi`.
    pub fn with_upper(self, atom: Atom, hi: f64) -> Result<Self> {
        self.with_bound(atom, Interval::new(0.0, hi)?)
    }

    /// What was supplied directly for an atom.
    pub fn supplied(&self, atom: Atom) -> Option<Interval> {
        self.known[atom.index()]
    }

    /// Best known interval for an atom: supplied knowledge met with whatever
    /// follows from the joint cells (`P(y)` and `P(x)` are sums of cells).
    pub fn interval(&self, atom: Atom) -> Option<Interval> {
        let k = |a: Atom| self.known[a.index()];
        let derived = match atom {
            Atom::Y => [
                k(Atom::XY).zip(k(Atom::XpY)).map(|(a, b)| sum(a, b)),
                k(Atom::XYp).zip(k(Atom::XpYp)).map(|(a, b)| one_minus(sum(a, b))),
            ],
            Atom::X => [
                k(Atom::XY).zip(k(Atom::XYp)).map(|(a, b)| sum(a, b)),
                k(Atom::XpY).zip(k(Atom::XpYp)).map(|(a, b)| one_minus(sum(a, b))),
            ],
            _ => [None, None],
        };
        let mut out = k(atom);
        for d in derived.into_iter().flatten() {
            out = Some(match out {
                None => d,
                Some(cur) => {
                    // prefer whichever is a point, then the narrower one
                    let (first, second) = if d.width() < cur.width() { (d, cur) } else { (cur, d) };
                    meet(first, second)
                }
            });
        }
        out
    }

    pub fn exact(&self, atom: Atom) -> Option<f64> {
        self.interval(atom)
            .filter(|i| i.width() == 0.0)
            .map(|i| i.lo())
    }

    pub fn is_known(&self, atom: Atom) -> bool {
        self.interval(atom).is_some()
    }

    /// Atoms of `expr` with no knowledge at all.
    pub fn missing(&self, expr: &LinearExpr) -> Vec<Atom> {
        expr.atoms().filter(|a| !self.is_known(*a)).collect()
    }

    /// Atoms of `expr` that are not known exactly.
    pub fn missing_exact(&self, expr: &LinearExpr) -> Vec<Atom> {
        expr.atoms().filter(|a| self.exact(*a).is_none()).collect()
    }

    /// Range of `expr` by interval arithmetic; `None` if any atom is unknown.
    pub fn range(&self, expr: &LinearExpr) -> Option<Interval> {
        let mut lo = expr.constant_term();
        let mut hi = expr.constant_term();
        for a in expr.atoms() {
            let i = self.interval(a)?;
            let c = expr.coef(a);
            if c >= 0.0 {
                lo += c * i.lo();
                hi += c * i.hi();
            } else {
                lo += c * i.hi();
                hi += c * i.lo();
            }
        }
        Some(Interval::new(lo, hi).expect("interval arithmetic keeps order"))
    }

    /// Exact value of `expr`; `None` unless every atom is exact.
    pub fn value(&self, expr: &LinearExpr) -> Option<f64> {
        let mut v = expr.constant_term();
        for a in expr.atoms() {
            v += expr.coef(a) * self.exact(a)?;
        }
        Some(v)
    }

    /// Experimental distribution made of the exact effect atoms.
    pub fn experimental(&self) -> ExperimentalDistribution {
        ExperimentalDistribution::new(self.exact(Atom::YDoX), self.exact(Atom::YDoXp))
            .expect("atoms validated on insertion")
    }

    /// Observational distribution made of the exact cell atoms.
    pub fn observational(&self) -> Option<ObservationalDistribution> {
        ObservationalDistribution::new(
            self.exact(Atom::XY),
            self.exact(Atom::XYp),
            self.exact(Atom::XpY),
            self.exact(Atom::XpYp),
        )
        .ok()
    }

    /// Check that supplied marginals agree with what the cells imply.
    pub fn check_consistency(&self) -> Result<()> {
        for atom in [Atom::Y, Atom::X] {
            let Some(supplied) = self.supplied(atom) else {
                continue;
            };
            let derived = Evidence {
                known: {
                    let mut k = self.known;
                    k[atom.index()] = None;
                    k
                },
            }
            .interval(atom);
            if let Some(d) = derived {
                let gap = (supplied.lo() - d.hi()).max(d.lo() - supplied.hi());
                if gap > tolerance() {
                    return Err(Error::InvalidInput(format!(
                        "{atom} supplied as {supplied} but the joint cells imply {d}"
                    )));
                }
            }
        }
        Ok(())
    }
}
