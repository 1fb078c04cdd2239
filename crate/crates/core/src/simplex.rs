//! Dense exact-rational primal simplex for `max c·x s.t. Ax ≤ b, x ≥ 0` with
//! `b ≥ 0`, so the slack basis is an initial feasible basis and no phase one is
//! needed. Bland's rule picks both the entering and the leaving variable, which
//! rules out cycling on degenerate bases. Duals are read off the reduced costs
//! of the slack columns in the final tableau.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpError {
    NegativeRhs(usize),
    Unbounded,
    Shape(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub value: BigRational,
    pub primal: Vec<BigRational>,
    pub dual: Vec<BigRational>,
    pub pivots: usize,
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
    reduced: Vec<BigRational>,
    value: BigRational,
    basis: Vec<usize>,
}

impl Tableau {
    fn entering(&self) -> Option<usize> {
        self.reduced.iter().position(|r| r.is_positive())
    }

    fn leaving(&self, col: usize) -> Option<usize> {
        let mut best: Option<(usize, BigRational)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            let a = &row[col];
            if !a.is_positive() {
                continue;
            }
            let ratio = &self.rhs[i] / a;
            let better = match &best {
                None => true,
                Some((j, r)) => ratio < *r || (ratio == *r && self.basis[i] < self.basis[*j]),
            };
            if better {
                best = Some((i, ratio));
            }
        }
        best.map(|(i, _)| i)
    }

    fn pivot(&mut self, p: usize, q: usize) {
        let piv = self.rows[p][q].clone();
        for x in self.rows[p].iter_mut() {
            if !x.is_zero() {
                *x /= &piv;
            }
        }
        self.rhs[p] /= &piv;
        let support: Vec<usize> = (0..self.rows[p].len())
            .filter(|&j| !self.rows[p][j].is_zero())
            .collect();
        let pivot_row = self.rows[p].clone();
        let pivot_rhs = self.rhs[p].clone();
        for i in 0..self.rows.len() {
            if i == p || self.rows[i][q].is_zero() {
                continue;
            }
            let f = self.rows[i][q].clone();
            let row = &mut self.rows[i];
            for &j in &support {
                row[j] -= &f * &pivot_row[j];
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        let f = self.reduced[q].clone();
        if !f.is_zero() {
            for &j in &support {
                self.reduced[j] -= &f * &pivot_row[j];
            }
            self.value += &f * &pivot_rhs;
        }
        self.basis[p] = q;
    }
}

/// Solves `max c·x` subject to `a·x ≤ b`, `x ≥ 0`. Requires `b ≥ 0`.
pub fn maximize(
    a: &[Vec<BigRational>],
    b: &[BigRational],
    c: &[BigRational],
) -> Result<LpSolution, LpError> {
    let m = a.len();
    let nv = c.len();
    if b.len() != m || a.iter().any(|row| row.len() != nv) {
        return Err(LpError::Shape(format!(
            "{m} rows, {} right-hand sides, {nv} objective coefficients",
            b.len()
        )));
    }
    if let Some(i) = b.iter().position(|x| x.is_negative()) {
        return Err(LpError::NegativeRhs(i));
    }
    let width = nv + m;
    let rows = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.resize(width, BigRational::zero());
            r[nv + i] = BigRational::from_integer(1.into());
            r
        })
        .collect();
    let mut reduced = c.to_vec();
    reduced.resize(width, BigRational::zero());
    let mut t = Tableau {
        rows,
        rhs: b.to_vec(),
        reduced,
        value: BigRational::zero(),
        basis: (nv..width).collect(),
    };

    let mut pivots = 0;
    while let Some(q) = t.entering() {
        let p = t.leaving(q).ok_or(LpError::Unbounded)?;
        t.pivot(p, q);
        pivots += 1;
    }

    let mut primal = vec![BigRational::zero(); nv];
    for (i, &var) in t.basis.iter().enumerate() {
        if var < nv {
            primal[var] = t.rhs[i].clone();
        }
    }
    let dual = (0..m).map(|i| -t.reduced[nv + i].clone()).collect();
    Ok(LpSolution {
        value: t.value,
        primal,
        dual,
        pivots,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{int, ratio};

    fn q(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect()
    }

    #[test]
    fn textbook_problem() {
        // max 3x + 5y, x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18 → 36 at (2, 6)
        let a = q(&[&[1, 0], &[0, 2], &[3, 2]]);
        let b = vec![int(4), int(12), int(18)];
        let c = vec![int(3), int(5)];
        let sol = maximize(&a, &b, &c).unwrap();
        assert_eq!(sol.value, int(36));
        assert_eq!(sol.primal, vec![int(2), int(6)]);
        // dual optimum (0, 3/2, 1)
        assert_eq!(sol.dual, vec![int(0), ratio(3, 2), int(1)]);
    }

    #[test]
    fn degenerate_triangle() {
        // fractional matching LP of a triangle: optimum 3/2, all duals 1/2
        let a = q(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        let b = vec![int(1); 3];
        let c = vec![int(1); 3];
        let sol = maximize(&a, &b, &c).unwrap();
        assert_eq!(sol.value, ratio(3, 2));
        assert_eq!(sol.dual, vec![ratio(1, 2); 3]);
    }

    #[test]
    fn unbounded_and_bad_input() {
        let a = q(&[&[1, -1]]);
        assert_eq!(
            maximize(&a, &[int(1)], &[int(0), int(1)]),
            Err(LpError::Unbounded)
        );
        assert_eq!(
            maximize(&a, &[int(-1)], &[int(1), int(0)]),
            Err(LpError::NegativeRhs(0))
        );
        assert!(matches!(
            maximize(&a, &[int(1)], &[int(1)]),
            Err(LpError::Shape(_))
        ));
    }

    #[test]
    fn empty_problem() {
        let sol = maximize(&[], &[], &[]).unwrap();
        assert!(sol.value.is_zero());
        assert!(sol.primal.is_empty() && sol.dual.is_empty());
    }
}
