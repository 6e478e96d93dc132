//! Vertex enumeration for small polytopes in the 8-cell simplex.

use itertools::Itertools;
use nalgebra::{DMatrix, SMatrix, SVector};

use super::atom_row;
use crate::evidence::{Atom, Evidence};

type Row = [f64; 8];

/// `{p : A_eq p = b_eq, A_in p <= b_in}` over 8 coordinates.
#[derive(Debug, Clone, Default)]
pub struct Polytope {
    equalities: Vec<(Row, f64)>,
    inequalities: Vec<(Row, f64)>,
}

impl Polytope {
    /// Probability simplex: cells sum to one and are non-negative.
    pub fn simplex() -> Self {
        let mut p = Self::default();
        p.equalities.push(([1.0; 8], 1.0));
        for i in 0..8 {
            let mut row = [0.0; 8];
            row[i] = -1.0;
            p.inequalities.push((row, 0.0));
        }
        p
    }

    /// The simplex cut down by every atom the evidence supplies.
    pub fn from_evidence(evidence: &Evidence) -> Self {
        let mut p = Self::simplex();
        for atom in Atom::ALL {
            let Some(iv) = evidence.supplied(atom) else {
                continue;
            };
            let row = atom_row(atom);
            if iv.width() == 0.0 {
                p.equalities.push((row, iv.lo()));
                continue;
            }
            if iv.hi() < 1.0 {
                p.inequalities.push((row, iv.hi()));
            }
            if iv.lo() > 0.0 {
                p.inequalities.push((row.map(|c| -c), -iv.lo()));
            }
        }
        p
    }

    pub fn add_equality(&mut self, row: Row, rhs: f64) {
        self.equalities.push((row, rhs));
    }

    pub fn add_inequality(&mut self, row: Row, rhs: f64) {
        self.inequalities.push((row, rhs));
    }

    /// Equality rows with linearly dependent ones dropped.
    fn independent_equalities(&self) -> Vec<(Row, f64)> {
        let mut kept: Vec<(Row, f64)> = Vec::new();
        for &(row, rhs) in &self.equalities {
            let mut rows: Vec<f64> = kept.iter().flat_map(|(r, _)| r.iter().copied()).collect();
            rows.extend_from_slice(&row);
            let m = DMatrix::from_row_slice(kept.len() + 1, 8, &rows);
            if m.rank(1e-9) == kept.len() + 1 {
                kept.push((row, rhs));
            }
        }
        kept
    }

    fn is_feasible(&self, p: &SVector<f64, 8>, tol: f64) -> bool {
        let dot = |row: &Row| row.iter().zip(p.iter()).map(|(a, b)| a * b).sum::<f64>();
        self.equalities.iter().all(|(r, b)| (dot(r) - b).abs() <= tol)
            && self.inequalities.iter().all(|(r, b)| dot(r) <= b + tol)
    }

    /// All vertices, each found by making 8 independent constraints active.
    ///
    /// Constraint rows have integer coefficients, so a basis is singular
    /// exactly when its determinant is below one half in magnitude.
    pub fn vertices(&self, tol: f64) -> Vec<Row> {
        let eq = self.independent_equalities();
        let free = 8 - eq.len();
        let mut out: Vec<Row> = Vec::new();
        for active in (0..self.inequalities.len()).combinations(free) {
            let mut m = SMatrix::<f64, 8, 8>::zeros();
            let mut rhs = SVector::<f64, 8>::zeros();
            let rows = eq.iter().chain(active.iter().map(|&i| &self.inequalities[i]));
            for (k, (row, b)) in rows.enumerate() {
                for j in 0..8 {
                    m[(k, j)] = row[j];
                }
                rhs[k] = *b;
            }
            if m.determinant().abs() < 0.5 {
                continue;
            }
            let Some(p) = m.lu().solve(&rhs) else {
                continue;
            };
            if !self.is_feasible(&p, tol) {
                continue;
            }
            let v: Row = std::array::from_fn(|i| p[i].max(0.0));
            if !out.iter().any(|w| w.iter().zip(&v).all(|(a, b)| (a - b).abs() <= tol)) {
                out.push(v);
            }
        }
        out
    }
}
