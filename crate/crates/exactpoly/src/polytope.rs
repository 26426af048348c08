//! H-polytopes over named variables, and the exact predicates on them.
//!
//! A polytope is a list of `=` and `<=` constraints over an ordered
//! variable list. All predicates (feasibility, strict feasibility,
//! affine dimension, containment) are LP decisions over the scalar
//! field, so they are insensitive to constraint order and to positive
//! rescaling of constraints.

use crate::error::PolyError;
use crate::linalg;
use crate::lp::{self, LpOutcome, LpProblem};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
}

/// A single linear constraint `coeffs . x <relation> rhs`, with `coeffs`
/// aligned to the owning polytope's variable list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint<S> {
    pub coeffs: Vec<S>,
    pub rhs: S,
    pub relation: Relation,
}

impl<S: Scalar> Constraint<S> {
    pub fn new(coeffs: Vec<S>, rhs: S, relation: Relation) -> Result<Self, PolyError> {
        if coeffs.iter().all(S::is_zero) {
            return Err(PolyError::input(
                "constraint has no nonzero coefficient".to_string(),
            ));
        }
        Ok(Constraint {
            coeffs,
            rhs,
            relation,
        })
    }

    pub fn eval(&self, point: &[S]) -> S {
        self.coeffs
            .iter()
            .zip(point)
            .fold(S::zero(), |acc, (c, x)| acc + c.clone() * x)
    }

    pub fn satisfied_by(&self, point: &[S]) -> bool {
        let v = self.eval(point);
        match self.relation {
            Relation::Le => v <= self.rhs,
            Relation::Eq => v == self.rhs,
        }
    }

    /// Scale-normalized copy: integer coefficients and rhs with content
    /// one. Only positive scaling is canonicalized away; the relation is
    /// directional.
    pub fn canonical(&self) -> Constraint<S> {
        let mut scale = S::one();
        for c in self.coeffs.iter().chain(std::iter::once(&self.rhs)) {
            let d = c.denom_scalar();
            let g = gcd_scalar(scale.clone(), d.clone());
            scale = scale / g * d;
        }
        let ints: Vec<S> = self
            .coeffs
            .iter()
            .chain(std::iter::once(&self.rhs))
            .map(|c| c.clone() * &scale)
            .collect();
        let mut gcd = S::zero();
        for v in &ints {
            gcd = gcd_scalar(gcd, v.abs());
        }
        if gcd.is_zero() {
            gcd = S::one();
        }
        let mut coeffs: Vec<S> = ints.iter().map(|v| v.clone() / &gcd).collect();
        let rhs = coeffs.pop().expect("rhs present");
        Constraint {
            coeffs,
            rhs,
            relation: self.relation,
        }
    }
}

fn gcd_scalar<S: Scalar>(mut a: S, mut b: S) -> S {
    // Euclid on integer-valued scalars.
    while !b.is_zero() {
        let r = a.clone() - (a.clone() / &b).floor_int() * &b;
        a = b;
        b = r;
    }
    a
}

/// Verdict of a strict-feasibility query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility<S> {
    Witness(Vec<S>),
    Infeasible,
}

impl<S> Feasibility<S> {
    pub fn witness(&self) -> Option<&Vec<S>> {
        match self {
            Feasibility::Witness(w) => Some(w),
            Feasibility::Infeasible => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Containment<S> {
    Yes,
    /// A point of the left polytope violating the right one.
    No(Vec<S>),
}

impl<S> Containment<S> {
    pub fn holds(&self) -> bool {
        matches!(self, Containment::Yes)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytope<S> {
    vars: Vec<String>,
    equalities: Vec<Constraint<S>>,
    inequalities: Vec<Constraint<S>>,
}

impl<S: Scalar> HPolytope<S> {
    /// The whole space over the given variables; constraints are added on
    /// top. Empty constraint lists are allowed, but vertex and volume
    /// queries check boundedness before doing anything.
    pub fn whole_space(vars: Vec<String>) -> Result<Self, PolyError> {
        let mut seen = std::collections::HashSet::new();
        for v in &vars {
            if v.is_empty() || !seen.insert(v.clone()) {
                return Err(PolyError::input(format!("bad variable list: `{v}` repeats or is empty")));
            }
        }
        Ok(HPolytope {
            vars,
            equalities: Vec::new(),
            inequalities: Vec::new(),
        })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn equalities(&self) -> &[Constraint<S>] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[Constraint<S>] {
        &self.inequalities
    }

    pub fn push(&mut self, c: Constraint<S>) -> Result<(), PolyError> {
        if c.coeffs.len() != self.vars.len() {
            return Err(PolyError::input(format!(
                "constraint has {} coefficients for {} variables",
                c.coeffs.len(),
                self.vars.len()
            )));
        }
        let canon = c.canonical();
        let list = match c.relation {
            Relation::Eq => &mut self.equalities,
            Relation::Le => &mut self.inequalities,
        };
        if !list.iter().any(|existing| existing.canonical() == canon) {
            list.push(c);
        }
        Ok(())
    }

    pub fn satisfied_by(&self, point: &[S]) -> bool {
        self.equalities
            .iter()
            .chain(&self.inequalities)
            .all(|c| c.satisfied_by(point))
    }

    /// Point set intersection: concatenated constraint systems.
    pub fn intersect(&self, other: &HPolytope<S>) -> Result<HPolytope<S>, PolyError> {
        if self.vars != other.vars {
            return Err(PolyError::VarMismatch {
                left: self.vars.join(" "),
                right: other.vars.join(" "),
            });
        }
        let mut out = self.clone();
        for c in other.equalities.iter().chain(&other.inequalities) {
            out.push(c.clone())?;
        }
        Ok(out)
    }

    fn eq_rows(&self) -> Vec<(Vec<S>, S)> {
        self.equalities
            .iter()
            .map(|c| (c.coeffs.clone(), c.rhs.clone()))
            .collect()
    }

    fn le_rows(&self) -> Vec<(Vec<S>, S)> {
        self.inequalities
            .iter()
            .map(|c| (c.coeffs.clone(), c.rhs.clone()))
            .collect()
    }

    /// `maximize objective . x` over this polytope.
    pub fn maximize(&self, objective: Vec<S>) -> LpOutcome<S> {
        lp::maximize(&LpProblem {
            num_vars: self.num_vars(),
            objective,
            eq: self.eq_rows(),
            le: self.le_rows(),
        })
    }

    pub fn is_empty(&self) -> bool {
        lp::feasible_point(self.num_vars(), &self.eq_rows(), &self.le_rows()).is_none()
    }

    /// A rational point satisfying every constraint, with the selected
    /// inequalities satisfied strictly. `strict` holds indices into
    /// `inequalities()`. The verdict is an exact decision.
    pub fn feasible_point_strict(&self, strict: &[usize]) -> Result<Feasibility<S>, PolyError> {
        for &i in strict {
            if i >= self.inequalities.len() {
                return Err(PolyError::input(format!(
                    "strict index {i} out of range ({} inequalities)",
                    self.inequalities.len()
                )));
            }
        }
        let n = self.num_vars();
        if strict.is_empty() {
            return Ok(
                match lp::feasible_point(n, &self.eq_rows(), &self.le_rows()) {
                    Some(p) => Feasibility::Witness(p),
                    None => Feasibility::Infeasible,
                },
            );
        }
        // Maximize the common slack t of the strict set, capped at 1.
        let strict_set: std::collections::HashSet<usize> = strict.iter().copied().collect();
        let mut le = Vec::with_capacity(self.inequalities.len() + 1);
        for (i, c) in self.inequalities.iter().enumerate() {
            let mut coeffs = c.coeffs.clone();
            coeffs.push(if strict_set.contains(&i) {
                S::one()
            } else {
                S::zero()
            });
            le.push((coeffs, c.rhs.clone()));
        }
        let mut t_cap = vec![S::zero(); n];
        t_cap.push(S::one());
        le.push((t_cap.clone(), S::one()));
        let eq: Vec<(Vec<S>, S)> = self
            .equalities
            .iter()
            .map(|c| {
                let mut coeffs = c.coeffs.clone();
                coeffs.push(S::zero());
                (coeffs, c.rhs.clone())
            })
            .collect();
        let outcome = lp::maximize(&LpProblem {
            num_vars: n + 1,
            objective: t_cap,
            eq,
            le,
        });
        Ok(match outcome {
            LpOutcome::Infeasible => Feasibility::Infeasible,
            LpOutcome::Unbounded => unreachable!("slack objective is capped"),
            LpOutcome::Optimal { value, mut point } => {
                if value.is_positive() {
                    point.truncate(n);
                    Feasibility::Witness(point)
                } else {
                    Feasibility::Infeasible
                }
            }
        })
    }

    /// Indices of inequalities that hold with equality on the whole
    /// polytope (implicit equalities). Empty polytope returns them all.
    pub fn implicit_equalities(&self) -> Vec<usize> {
        if self.is_empty() {
            return (0..self.inequalities.len()).collect();
        }
        let mut implicit = Vec::new();
        for (i, c) in self.inequalities.iter().enumerate() {
            // a.x <= rhs holds everywhere, so the constraint is an implicit
            // equality iff min a.x over P equals rhs.
            let min = self.maximize(c.coeffs.iter().map(|v| -v.clone()).collect());
            if let LpOutcome::Optimal { value, .. } = min {
                if -value == c.rhs {
                    implicit.push(i);
                }
            }
        }
        implicit
    }

    /// A point in the relative interior: all non-implicit inequalities
    /// strict. `None` iff the polytope is empty.
    pub fn relint_point(&self) -> Option<Vec<S>> {
        if self.is_empty() {
            return None;
        }
        let implicit: std::collections::HashSet<usize> =
            self.implicit_equalities().into_iter().collect();
        let strict: Vec<usize> = (0..self.inequalities.len())
            .filter(|i| !implicit.contains(i))
            .collect();
        match self.feasible_point_strict(&strict) {
            Ok(Feasibility::Witness(p)) => Some(p),
            Ok(Feasibility::Infeasible) => None,
            Err(_) => None,
        }
    }

    /// Dimension of the affine hull; -1 for the empty polytope.
    pub fn affine_dim(&self) -> i64 {
        if self.is_empty() {
            return -1;
        }
        let implicit = self.implicit_equalities();
        let mut normals: Vec<Vec<S>> = self.equalities.iter().map(|c| c.coeffs.clone()).collect();
        normals.extend(implicit.iter().map(|&i| self.inequalities[i].coeffs.clone()));
        self.num_vars() as i64 - linalg::rank(&normals) as i64
    }

    /// Is every point of `self` inside `other`? On failure returns a
    /// rational witness point of `self` outside `other`.
    pub fn contains_in(&self, other: &HPolytope<S>) -> Result<Containment<S>, PolyError> {
        if self.vars != other.vars {
            return Err(PolyError::VarMismatch {
                left: self.vars.join(" "),
                right: other.vars.join(" "),
            });
        }
        if self.is_empty() {
            return Ok(Containment::Yes);
        }
        for c in other.inequalities.iter().chain(&other.equalities) {
            match self.maximize(c.coeffs.clone()) {
                LpOutcome::Optimal { value, point } => {
                    if value > c.rhs {
                        return Ok(Containment::No(point));
                    }
                }
                LpOutcome::Unbounded => {
                    // Some point of self violates the bound; find one by
                    // maximizing with the violated region made explicit.
                    let mut sys = self.clone();
                    let mut flipped: Vec<S> = c.coeffs.iter().map(|v| -v.clone()).collect();
                    let bound = -(c.rhs.clone() + S::one());
                    sys.push(Constraint {
                        coeffs: std::mem::take(&mut flipped),
                        rhs: bound,
                        relation: Relation::Le,
                    })?;
                    if let Some(p) =
                        lp::feasible_point(sys.num_vars(), &sys.eq_rows(), &sys.le_rows())
                    {
                        return Ok(Containment::No(p));
                    }
                    unreachable!("unbounded objective admits violating points");
                }
                LpOutcome::Infeasible => return Ok(Containment::Yes),
            }
            if c.relation == Relation::Eq {
                match self.maximize(c.coeffs.iter().map(|v| -v.clone()).collect()) {
                    LpOutcome::Optimal { value, point } => {
                        if -value < c.rhs {
                            return Ok(Containment::No(point));
                        }
                    }
                    LpOutcome::Unbounded => {
                        let mut sys = self.clone();
                        sys.push(Constraint {
                            coeffs: c.coeffs.clone(),
                            rhs: c.rhs.clone() - S::one(),
                            relation: Relation::Le,
                        })?;
                        if let Some(p) =
                            lp::feasible_point(sys.num_vars(), &sys.eq_rows(), &sys.le_rows())
                        {
                            return Ok(Containment::No(p));
                        }
                        unreachable!("unbounded objective admits violating points");
                    }
                    LpOutcome::Infeasible => return Ok(Containment::Yes),
                }
            }
        }
        Ok(Containment::Yes)
    }

    /// Do the two systems carve out the same point set?
    pub fn same_point_set(&self, other: &HPolytope<S>) -> Result<bool, PolyError> {
        Ok(self.contains_in(other)?.holds() && other.contains_in(self)?.holds())
    }

    /// Checks that every coordinate is bounded on the polytope.
    pub fn check_bounded(&self) -> Result<(), PolyError> {
        if self.is_empty() {
            return Ok(());
        }
        for i in 0..self.num_vars() {
            for sign in [S::one(), -S::one()] {
                let mut obj = vec![S::zero(); self.num_vars()];
                obj[i] = sign;
                if matches!(self.maximize(obj), LpOutcome::Unbounded) {
                    return Err(PolyError::Unbounded);
                }
            }
        }
        Ok(())
    }
}
