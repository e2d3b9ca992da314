//! Dense two-phase simplex over exact rationals.
//!
//! Pivoting follows Bland's rule (lowest-index entering column, lowest-index
//! basic variable among ratio-test ties), which rules out cycling and makes the
//! returned vertex a deterministic function of the program.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `coeffs · x <= rhs`
    Le,
    /// `coeffs · x >= rhs`
    Ge,
    /// `coeffs · x == rhs`
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `maximize objective · x` subject to linear constraints and per-variable
/// lower bounds (`Some(0)` by default, `None` for a free variable).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
    lower_bounds: Vec<Option<Rational>>,
}

impl LinearProgram {
    pub fn new(objective: Vec<Rational>) -> Self {
        let n = objective.len();
        LinearProgram {
            objective,
            constraints: Vec::new(),
            lower_bounds: vec![Some(Rational::zero()); n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn lower_bounds(&self) -> &[Option<Rational>] {
        &self.lower_bounds
    }

    pub fn add_constraint(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars(), "constraint width must match the variable count");
        self.constraints.push(Constraint { coeffs, relation, rhs });
        self
    }

    pub fn set_lower_bound(&mut self, var: usize, bound: Option<Rational>) -> &mut Self {
        self.lower_bounds[var] = bound;
        self
    }

    /// Checks every constraint and bound exactly.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars() {
            return false;
        }
        let bounds_ok = self
            .lower_bounds
            .iter()
            .zip(x)
            .all(|(lb, v)| lb.as_ref().is_none_or(|lb| v >= lb));
        bounds_ok
            && self.constraints.iter().all(|c| {
                let lhs: Rational = c.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
                match c.relation {
                    Relation::Le => lhs <= c.rhs,
                    Relation::Ge => lhs >= c.rhs,
                    Relation::Eq => lhs == c.rhs,
                }
            })
    }

    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Optimal point; empty unless `status == Optimal`.
    pub values: Vec<Rational>,
    pub objective_value: Rational,
    pub pivots: usize,
}

impl LpSolution {
    fn without_point(status: LpStatus, pivots: usize) -> Self {
        LpSolution {
            status,
            values: Vec::new(),
            objective_value: Rational::zero(),
            pivots,
        }
    }
}

/// How an original variable maps onto nonnegative standard-form columns.
enum VarMap {
    Shifted { col: usize, lower: Rational },
    Split { pos: usize, neg: usize },
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Reduced costs `c_j - c_B B^-1 A_j` of the current objective.
    reduced: Vec<Rational>,
    pivots: usize,
}

enum RunOutcome {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn width(&self) -> usize {
        self.reduced.len()
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        debug_assert!(!p.is_zero());
        if !p.is_one() {
            for v in self.rows[row].iter_mut() {
                *v /= &p;
            }
            self.rhs[row] /= &p;
        }
        let pivot_row = self.rows[row].clone();
        let pivot_rhs = self.rhs[row].clone();
        for r in 0..self.rows.len() {
            if r == row {
                continue;
            }
            let factor = self.rows[r][col].clone();
            if factor.is_zero() {
                continue;
            }
            for (v, pv) in self.rows[r].iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
            self.rhs[r] -= &factor * &pivot_rhs;
        }
        let factor = self.reduced[col].clone();
        if !factor.is_zero() {
            for (v, pv) in self.reduced.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
        }
        self.basis[row] = col;
        self.pivots += 1;
    }

    fn set_objective(&mut self, costs: &[Rational]) {
        let mut reduced = costs.to_vec();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (r, a) in reduced.iter_mut().zip(row) {
                *r -= cb * a;
            }
        }
        self.reduced = reduced;
    }

    /// Maximizes the current objective with Bland's rule over allowed columns.
    fn run(&mut self, allowed: &[bool]) -> RunOutcome {
        loop {
            let entering = (0..self.width()).find(|&j| allowed[j] && self.reduced[j].is_positive());
            let Some(col) = entering else {
                return RunOutcome::Optimal;
            };
            let mut best: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / a;
                let better = match &best {
                    None => true,
                    Some((br, bratio)) => ratio < *bratio || (ratio == *bratio && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                None => return RunOutcome::Unbounded,
                Some((row, _)) => self.pivot(row, col),
            }
        }
    }
}

/// Solves `lp` exactly. Infeasible and unbounded programs are reported through
/// [`LpSolution::status`].
pub fn simplex_solve(lp: &LinearProgram) -> LpSolution {
    // Standard form: every column nonnegative, every row an equality with rhs >= 0.
    let mut maps = Vec::with_capacity(lp.num_vars());
    let mut next = 0;
    for lb in &lp.lower_bounds {
        match lb {
            Some(lower) => {
                maps.push(VarMap::Shifted {
                    col: next,
                    lower: lower.clone(),
                });
                next += 1;
            }
            None => {
                maps.push(VarMap::Split { pos: next, neg: next + 1 });
                next += 2;
            }
        }
    }
    let structural = next;
    let slack_count = lp.constraints.iter().filter(|c| c.relation != Relation::Eq).count();
    let m = lp.constraints.len();
    let art_start = structural + slack_count;
    let width = art_start + m;

    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut slack = structural;
    for (i, c) in lp.constraints.iter().enumerate() {
        let mut row = vec![Rational::zero(); width];
        let mut b = c.rhs.clone();
        for (a, map) in c.coeffs.iter().zip(&maps) {
            match map {
                VarMap::Shifted { col, lower } => {
                    row[*col] = a.clone();
                    b -= a * lower;
                }
                VarMap::Split { pos, neg } => {
                    row[*pos] = a.clone();
                    row[*neg] = -a;
                }
            }
        }
        match c.relation {
            Relation::Le => {
                row[slack] = Rational::one();
                slack += 1;
            }
            Relation::Ge => {
                row[slack] = -Rational::one();
                slack += 1;
            }
            Relation::Eq => {}
        }
        if b.is_negative() {
            for v in row.iter_mut() {
                *v = -&*v;
            }
            b = -b;
        }
        row[art_start + i] = Rational::one();
        rows.push(row);
        rhs.push(b);
    }

    let mut tab = Tableau {
        rows,
        rhs,
        basis: (art_start..width).collect(),
        reduced: Vec::new(),
        pivots: 0,
    };

    // Phase 1: maximize -(sum of artificials).
    let mut phase1 = vec![Rational::zero(); width];
    for c in phase1.iter_mut().skip(art_start) {
        *c = -Rational::one();
    }
    tab.set_objective(&phase1);
    let all = vec![true; width];
    tab.run(&all);
    let infeasibility: Rational = tab
        .basis
        .iter()
        .zip(&tab.rhs)
        .filter(|(&b, _)| b >= art_start)
        .map(|(_, v)| v.clone())
        .sum();
    if infeasibility.is_positive() {
        return LpSolution::without_point(LpStatus::Infeasible, tab.pivots);
    }

    // Drive zero-level artificials out of the basis; drop redundant rows.
    let mut r = 0;
    while r < tab.rows.len() {
        if tab.basis[r] >= art_start {
            match (0..art_start).find(|&j| !tab.rows[r][j].is_zero()) {
                Some(col) => tab.pivot(r, col),
                None => {
                    tab.rows.remove(r);
                    tab.rhs.remove(r);
                    tab.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    // Phase 2 on the structural and slack columns.
    let mut costs = vec![Rational::zero(); width];
    for (c, map) in lp.objective.iter().zip(&maps) {
        match map {
            VarMap::Shifted { col, .. } => costs[*col] = c.clone(),
            VarMap::Split { pos, neg } => {
                costs[*pos] = c.clone();
                costs[*neg] = -c;
            }
        }
    }
    tab.set_objective(&costs);
    let allowed: Vec<bool> = (0..width).map(|j| j < art_start).collect();
    if let RunOutcome::Unbounded = tab.run(&allowed) {
        return LpSolution::without_point(LpStatus::Unbounded, tab.pivots);
    }

    let mut column_values = vec![Rational::zero(); width];
    for (&b, v) in tab.basis.iter().zip(&tab.rhs) {
        column_values[b] = v.clone();
    }
    let values: Vec<Rational> = maps
        .iter()
        .map(|map| match map {
            VarMap::Shifted { col, lower } => &column_values[*col] + lower,
            VarMap::Split { pos, neg } => &column_values[*pos] - &column_values[*neg],
        })
        .collect();
    let objective_value = lp.evaluate(&values);
    debug_assert!(lp.is_feasible(&values));
    LpSolution {
        status: LpStatus::Optimal,
        values,
        objective_value,
        pivots: tab.pivots,
    }
}
