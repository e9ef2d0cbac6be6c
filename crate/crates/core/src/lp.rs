//! Exact linear programming over the rationals.
//!
//! Two-phase primal simplex with Bland's rule, so termination is
//! guaranteed and there are no tolerances anywhere. Free variables are
//! split into positive parts; every row gets an artificial variable in
//! phase one. Problem sizes in this crate are tiny (dimension <= 6,
//! tens of rows), so the dense tableau is the right tool.

use num_traits::{One, Signed, Zero};

use crate::rational::Rat;

/// Result of an exact LP solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rat, point: Vec<Rat> },
}

impl LpOutcome {
    pub fn optimal_value(&self) -> Option<&Rat> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

struct Tableau {
    /// m rows by (ncols + 1) entries; last entry of each row is the rhs.
    rows: Vec<Vec<Rat>>,
    /// Reduced-cost row, length ncols + 1; entering column has zrow < 0,
    /// last entry is the current objective value.
    zrow: Vec<Rat>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..self.rows.len() {
            if i != r && !self.rows[i][c].is_zero() {
                let f = self.rows[i][c].clone();
                for j in 0..=self.ncols {
                    let delta = &f * &self.rows[r][j];
                    self.rows[i][j] = &self.rows[i][j] - delta;
                }
            }
        }
        if !self.zrow[c].is_zero() {
            let f = self.zrow[c].clone();
            for j in 0..=self.ncols {
                let delta = &f * &self.rows[r][j];
                self.zrow[j] = &self.zrow[j] - delta;
            }
        }
        self.basis[r] = c;
    }

    /// Runs the simplex loop restricted to columns `< col_limit`.
    /// Returns false on unboundedness.
    fn run(&mut self, col_limit: usize) -> bool {
        loop {
            // Bland: smallest improving column index.
            let Some(c) = (0..col_limit).find(|&j| self.zrow[j].is_negative()) else {
                return true;
            };
            // Ratio test; Bland tie-break on smallest basic variable.
            let mut best: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][c].is_positive() {
                    let ratio = &self.rows[i][self.ncols] / &self.rows[i][c];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, c);
        }
    }

    /// Installs a fresh objective (maximize `obj . columns`) and prices
    /// out the current basis.
    fn set_objective(&mut self, obj: &[Rat]) {
        self.zrow = obj.iter().map(|c| -c.clone()).collect();
        self.zrow.push(Rat::zero());
        for i in 0..self.rows.len() {
            let f = self.zrow[self.basis[i]].clone();
            if !f.is_zero() {
                for j in 0..=self.ncols {
                    let delta = &f * &self.rows[i][j];
                    self.zrow[j] = &self.zrow[j] - delta;
                }
            }
        }
    }
}

/// Maximizes `objective . x` subject to `rows[i] . x <= rhs[i]` with `x`
/// free, exactly.
pub fn maximize(objective: &[Rat], rows: &[Vec<Rat>], rhs: &[Rat]) -> LpOutcome {
    let n = objective.len();
    let m = rows.len();
    assert_eq!(m, rhs.len());
    for row in rows {
        assert_eq!(row.len(), n);
    }
    if m == 0 {
        return if objective.iter().all(|c| c.is_zero()) {
            LpOutcome::Optimal {
                value: Rat::zero(),
                point: vec![Rat::zero(); n],
            }
        } else {
            LpOutcome::Unbounded
        };
    }

    // Columns: x+ (n), x- (n), slack (m), artificial (m).
    let ncols = 2 * n + 2 * m;
    let mut t = Tableau {
        rows: Vec::with_capacity(m),
        zrow: Vec::new(),
        basis: (0..m).map(|i| 2 * n + m + i).collect(),
        ncols,
    };
    for i in 0..m {
        let flip = rhs[i].is_negative();
        let sign = if flip { -Rat::one() } else { Rat::one() };
        let mut row = Vec::with_capacity(ncols + 1);
        for j in 0..n {
            row.push(&sign * &rows[i][j]);
        }
        for j in 0..n {
            row.push(-(&sign * &rows[i][j]));
        }
        for j in 0..m {
            row.push(if j == i { sign.clone() } else { Rat::zero() });
        }
        for j in 0..m {
            row.push(if j == i { Rat::one() } else { Rat::zero() });
        }
        row.push(&sign * &rhs[i]);
        t.rows.push(row);
    }

    // Phase 1: maximize -(sum of artificials).
    let mut phase1_obj = vec![Rat::zero(); ncols];
    for j in (2 * n + m)..ncols {
        phase1_obj[j] = -Rat::one();
    }
    t.set_objective(&phase1_obj);
    let bounded = t.run(ncols);
    debug_assert!(bounded, "phase-1 objective is bounded by construction");
    if t.zrow[ncols].is_negative() {
        return LpOutcome::Infeasible;
    }

    // Drive leftover artificials out of the basis (degenerate rows).
    let mut drop_rows = Vec::new();
    for i in 0..t.rows.len() {
        if t.basis[i] >= 2 * n + m {
            if let Some(c) = (0..2 * n + m).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, c);
            } else {
                drop_rows.push(i);
            }
        }
    }
    for &i in drop_rows.iter().rev() {
        t.rows.remove(i);
        t.basis.remove(i);
    }

    // Phase 2.
    let mut phase2_obj = vec![Rat::zero(); ncols];
    for j in 0..n {
        phase2_obj[j] = objective[j].clone();
        phase2_obj[n + j] = -objective[j].clone();
    }
    t.set_objective(&phase2_obj);
    if !t.run(2 * n + m) {
        return LpOutcome::Unbounded;
    }

    let mut point = vec![Rat::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            point[b] = &point[b] + &t.rows[i][ncols];
        } else if b < 2 * n {
            point[b - n] = &point[b - n] - &t.rows[i][ncols];
        }
    }
    LpOutcome::Optimal {
        value: t.zrow[ncols].clone(),
        point,
    }
}

/// Minimizes `objective . x`; same constraint convention as [`maximize`].
pub fn minimize(objective: &[Rat], rows: &[Vec<Rat>], rhs: &[Rat]) -> LpOutcome {
    let neg: Vec<Rat> = objective.iter().map(|c| -c.clone()).collect();
    match maximize(&neg, rows, rhs) {
        LpOutcome::Optimal { value, point } => LpOutcome::Optimal {
            value: -value,
            point,
        },
        other => other,
    }
}

/// Exact feasibility of `rows[i] . x <= rhs[i]`.
pub fn is_feasible(rows: &[Vec<Rat>], rhs: &[Rat]) -> bool {
    let n = rows.first().map_or(0, |r| r.len());
    !matches!(
        maximize(&vec![Rat::zero(); n], rows, rhs),
        LpOutcome::Infeasible
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_i};

    fn rows(r: &[&[i64]]) -> Vec<Vec<Rat>> {
        r.iter()
            .map(|row| row.iter().map(|&v| rat_i(v)).collect())
            .collect()
    }

    fn rhs(r: &[i64]) -> Vec<Rat> {
        r.iter().map(|&v| rat_i(v)).collect()
    }

    #[test]
    fn simple_box_max() {
        // max x + y over [0,1]^2 => 2 at (1,1)
        let a = rows(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]]);
        let b = rhs(&[1, 1, 0, 0]);
        let out = maximize(&[rat_i(1), rat_i(1)], &a, &b);
        match out {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, rat_i(2));
                assert_eq!(point, vec![rat_i(1), rat_i(1)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn detects_infeasible() {
        // x <= 1, -x <= -2 (x >= 2)
        let a = rows(&[&[1], &[-1]]);
        let b = rhs(&[1, -2]);
        assert_eq!(maximize(&[rat_i(1)], &a, &b), LpOutcome::Infeasible);
        assert!(!is_feasible(&a, &b));
    }

    #[test]
    fn detects_unbounded() {
        // max x s.t. -x <= 0
        let a = rows(&[&[-1]]);
        let b = rhs(&[0]);
        assert_eq!(maximize(&[rat_i(1)], &a, &b), LpOutcome::Unbounded);
    }

    #[test]
    fn rational_optimum() {
        // max x s.t. 2x <= 1 => 1/2
        let a = rows(&[&[2]]);
        let b = rhs(&[1]);
        let out = maximize(&[rat_i(1)], &a, &b);
        assert_eq!(out.optimal_value(), Some(&rat(1, 2)));
    }

    #[test]
    fn triangle_vertex_optimum() {
        // max 2x + 3y over {x >= 0, y >= 0, 2x + 3y <= 2}
        let a = rows(&[&[-1, 0], &[0, -1], &[2, 3]]);
        let b = rhs(&[0, 0, 2]);
        let out = maximize(&[rat_i(2), rat_i(3)], &a, &b);
        assert_eq!(out.optimal_value(), Some(&rat_i(2)));
    }

    #[test]
    fn degenerate_equality_pair() {
        // x + y <= 1 and -(x + y) <= -1 pins x + y = 1.
        let a = rows(&[&[1, 1], &[-1, -1], &[1, 0], &[-1, 0]]);
        let b = rhs(&[1, -1, 1, 0]);
        let out = maximize(&[rat_i(1), rat_i(0)], &a, &b);
        assert_eq!(out.optimal_value(), Some(&rat_i(1)));
        let out = minimize(&[rat_i(0), rat_i(1)], &a, &b);
        assert_eq!(out.optimal_value(), Some(&rat_i(0)));
    }

    #[test]
    fn free_variable_negative_optimum() {
        // min x s.t. -x <= 3 => x >= -3 => -3
        let a = rows(&[&[-1]]);
        let b = rhs(&[3]);
        let out = minimize(&[rat_i(1)], &a, &b);
        assert_eq!(out.optimal_value(), Some(&rat_i(-3)));
    }

    #[test]
    fn empty_constraint_list() {
        assert_eq!(
            maximize(&[rat_i(0), rat_i(0)], &[], &[]),
            LpOutcome::Optimal {
                value: rat_i(0),
                point: vec![rat_i(0), rat_i(0)]
            }
        );
        assert_eq!(maximize(&[rat_i(1), rat_i(0)], &[], &[]), LpOutcome::Unbounded);
    }
}
