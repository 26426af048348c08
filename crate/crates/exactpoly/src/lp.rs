//! Exact two-phase simplex with Bland's rule.
//!
//! Free variables are split as `x = u - v` with `u, v >= 0`, inequalities
//! get slack variables, and phase one drives artificial variables out of
//! the basis. Bland's smallest-index rule is used for both the entering
//! and the leaving variable, so the method terminates on every input;
//! with exact rational pivots the returned verdicts are decisions, not
//! approximations.

use crate::scalar::Scalar;

/// `maximize objective . x` subject to `eq . x = rhs` and `le . x <= rhs`,
/// over free (unrestricted) variables.
#[derive(Clone, Debug)]
pub struct LpProblem<S> {
    pub num_vars: usize,
    pub objective: Vec<S>,
    pub eq: Vec<(Vec<S>, S)>,
    pub le: Vec<(Vec<S>, S)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome<S> {
    Infeasible,
    Unbounded,
    Optimal { value: S, point: Vec<S> },
}

impl<S: Scalar> LpProblem<S> {
    pub fn new(num_vars: usize) -> Self {
        LpProblem {
            num_vars,
            objective: vec![S::zero(); num_vars],
            eq: Vec::new(),
            le: Vec::new(),
        }
    }
}

struct Tableau<S> {
    /// rows[r] = constraint coefficients, last entry is the rhs.
    rows: Vec<Vec<S>>,
    /// basis[r] = column index of the basic variable of row r.
    basis: Vec<usize>,
    /// reduced-cost row: obj[j] > 0 means column j improves the maximum.
    obj: Vec<S>,
    obj_value: S,
}

impl<S: Scalar> Tableau<S> {
    fn cols(&self) -> usize {
        self.obj.len()
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let cols = self.cols();
        let inv_pivot = S::one() / self.rows[r][c].clone();
        for j in 0..=cols {
            self.rows[r][j] = self.rows[r][j].clone() * &inv_pivot;
        }
        let pivot_row = self.rows[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let factor = self.rows[i][c].clone();
            for j in 0..=cols {
                let delta = factor.clone() * &pivot_row[j];
                self.rows[i][j] = self.rows[i][j].clone() - delta;
            }
        }
        if !self.obj[c].is_zero() {
            let factor = self.obj[c].clone();
            for j in 0..cols {
                let delta = factor.clone() * &pivot_row[j];
                self.obj[j] = self.obj[j].clone() - delta;
            }
            let delta = factor * &pivot_row[cols];
            self.obj_value = self.obj_value.clone() + delta;
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations until optimal or unbounded.
    /// Returns `false` when the objective is unbounded above.
    fn run(&mut self, allowed: &dyn Fn(usize) -> bool) -> bool {
        let cols = self.cols();
        loop {
            // Bland: smallest improving column index.
            let Some(enter) = (0..cols).find(|&j| allowed(j) && self.obj[j].is_positive()) else {
                return true;
            };
            // Ratio test; ties resolved by smallest basic variable index.
            let mut leave: Option<(usize, S)> = None;
            for r in 0..self.rows.len() {
                if !self.rows[r][enter].is_positive() {
                    continue;
                }
                let ratio = self.rows[r][cols].clone() / &self.rows[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < *lratio || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(r, enter);
        }
    }
}

/// Column layout: `u_0..u_{n-1} v_0..v_{n-1} s_0..s_{k-1} [a_0..a_{m-1}]`.
pub fn maximize<S: Scalar>(p: &LpProblem<S>) -> LpOutcome<S> {
    let n = p.num_vars;
    let k = p.le.len();
    let m = p.eq.len() + k;
    let structural = 2 * n + k;
    let cols = structural + m;

    let mut rows: Vec<Vec<S>> = Vec::with_capacity(m);
    let build_row = |coeffs: &[S], rhs: &S, slack: Option<usize>, art: usize| {
        debug_assert_eq!(coeffs.len(), n);
        let mut row = vec![S::zero(); cols + 1];
        let negate = rhs.is_negative();
        for (j, c) in coeffs.iter().enumerate() {
            let c = if negate { -c.clone() } else { c.clone() };
            row[n + j] = -c.clone();
            row[j] = c;
        }
        if let Some(s) = slack {
            row[2 * n + s] = if negate { -S::one() } else { S::one() };
        }
        row[structural + art] = S::one();
        row[cols] = rhs.abs();
        row
    };
    let mut art = 0;
    for (coeffs, rhs) in &p.eq {
        rows.push(build_row(coeffs, rhs, None, art));
        art += 1;
    }
    for (s, (coeffs, rhs)) in p.le.iter().enumerate() {
        rows.push(build_row(coeffs, rhs, Some(s), art));
        art += 1;
    }

    // Phase one: maximize -(sum of artificials).
    let mut t = Tableau {
        basis: (structural..cols).collect(),
        obj: vec![S::zero(); cols],
        obj_value: S::zero(),
        rows,
    };
    // Reduced costs for c = (0,...,0, -1,...,-1) with the artificial basis:
    // obj[j] = c_j + sum over rows of row[j]; artificials come out as 0.
    for j in 0..cols {
        let mut v = if j >= structural { -S::one() } else { S::zero() };
        for r in 0..t.rows.len() {
            v = v + &t.rows[r][j];
        }
        t.obj[j] = v;
    }
    for r in 0..t.rows.len() {
        t.obj_value = t.obj_value.clone() - &t.rows[r][cols];
    }
    let bounded = t.run(&|_| true);
    debug_assert!(bounded, "phase one objective is bounded by zero");
    if t.obj_value.is_negative() {
        return LpOutcome::Infeasible;
    }

    // Drive leftover artificials out of the (degenerate) basis.
    let mut drop_rows = Vec::new();
    for r in 0..t.rows.len() {
        if t.basis[r] < structural {
            continue;
        }
        match (0..structural).find(|&j| !t.rows[r][j].is_zero()) {
            Some(j) => t.pivot(r, j),
            None => drop_rows.push(r), // redundant constraint
        }
    }
    for &r in drop_rows.iter().rev() {
        t.rows.remove(r);
        t.basis.remove(r);
    }

    // Phase two over the structural columns only.
    t.obj = vec![S::zero(); cols];
    t.obj_value = S::zero();
    for j in 0..n {
        t.obj[j] = p.objective[j].clone();
        t.obj[n + j] = -p.objective[j].clone();
    }
    // Re-reduce the objective row against the current basis.
    for r in 0..t.rows.len() {
        let b = t.basis[r];
        if t.obj[b].is_zero() {
            continue;
        }
        let factor = t.obj[b].clone();
        let cols_total = t.cols();
        for j in 0..cols_total {
            let delta = factor.clone() * &t.rows[r][j];
            t.obj[j] = t.obj[j].clone() - delta;
        }
        let delta = factor * &t.rows[r][cols_total];
        t.obj_value = t.obj_value.clone() + delta;
    }
    if !t.run(&|j| j < structural) {
        return LpOutcome::Unbounded;
    }

    let mut point = vec![S::zero(); n];
    for r in 0..t.rows.len() {
        let b = t.basis[r];
        let val = t.rows[r][t.cols()].clone();
        if b < n {
            point[b] = point[b].clone() + val;
        } else if b < 2 * n {
            point[b - n] = point[b - n].clone() - val;
        }
    }
    LpOutcome::Optimal {
        value: t.obj_value.clone(),
        point,
    }
}

/// Any feasible point of the system, or `None` when it is infeasible.
pub fn feasible_point<S: Scalar>(
    num_vars: usize,
    eq: &[(Vec<S>, S)],
    le: &[(Vec<S>, S)],
) -> Option<Vec<S>> {
    let p = LpProblem {
        num_vars,
        objective: vec![S::zero(); num_vars],
        eq: eq.to_vec(),
        le: le.to_vec(),
    };
    match maximize(&p) {
        LpOutcome::Optimal { point, .. } => Some(point),
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("zero objective cannot be unbounded"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    fn qv(vals: &[i64]) -> Vec<Q> {
        vals.iter().map(|&v| Q::from_int(v)).collect()
    }

    #[test]
    fn simple_box_max() {
        // max x + y over 0 <= x <= 1, 0 <= y <= 2, x + y <= 5/2.
        let p = LpProblem {
            num_vars: 2,
            objective: qv(&[1, 1]),
            eq: vec![],
            le: vec![
                (qv(&[1, 0]), Q::from_int(1)),
                (qv(&[-1, 0]), Q::from_int(0)),
                (qv(&[0, 1]), Q::from_int(2)),
                (qv(&[0, -1]), Q::from_int(0)),
                (qv(&[1, 1]), Q::fraction(5, 2)),
            ],
        };
        match maximize(&p) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, Q::fraction(5, 2));
                assert_eq!(point[0].clone() + &point[1], Q::fraction(5, 2));
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn infeasible_bounds() {
        let p = LpProblem {
            num_vars: 1,
            objective: qv(&[0]),
            eq: vec![],
            le: vec![(qv(&[1]), Q::from_int(0)), (qv(&[-1]), Q::from_int(-1))],
        };
        assert_eq!(maximize(&p), LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_direction() {
        let p = LpProblem {
            num_vars: 2,
            objective: qv(&[1, 0]),
            eq: vec![(qv(&[0, 1]), Q::from_int(3))],
            le: vec![(qv(&[-1, 0]), Q::from_int(0))],
        };
        assert_eq!(maximize(&p), LpOutcome::Unbounded);
    }

    #[test]
    fn equality_system_with_negative_rhs() {
        // x + y = -2, x - y <= 0, maximize x: optimum x = -1 at x = y = -1.
        let p = LpProblem {
            num_vars: 2,
            objective: qv(&[1, 0]),
            eq: vec![(qv(&[1, 1]), Q::from_int(-2))],
            le: vec![(qv(&[1, -1]), Q::from_int(0))],
        };
        match maximize(&p) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, Q::from_int(-1));
                assert_eq!(point, qv(&[-1, -1]));
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn redundant_equalities_are_dropped() {
        let p = LpProblem {
            num_vars: 2,
            objective: qv(&[1, 1]),
            eq: vec![
                (qv(&[1, 1]), Q::from_int(2)),
                (qv(&[2, 2]), Q::from_int(4)),
            ],
            le: vec![(qv(&[1, 0]), Q::from_int(1))],
        };
        match maximize(&p) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, Q::from_int(2)),
            other => panic!("expected optimum, got {other:?}"),
        }
    }
}
