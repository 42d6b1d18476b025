//! Exact simplex method over the rationals.
//!
//! Two-phase dense tableau with Bland's rule for both the entering and the
//! leaving variable, so pivoting is deterministic and cannot cycle. The dual
//! solution is read off the artificial columns, which stay in the tableau
//! throughout phase 2.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// `min Σ_j w_j |x_j|` subject to `A x = b`, with every `w_j > 0` and `x` free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    weights: Vec<Rational>,
    constraints: Matrix,
    rhs: Vec<Rational>,
}

impl LinearProgram {
    pub fn new(weights: Vec<Rational>, constraints: Matrix, rhs: Vec<Rational>) -> Result<Self> {
        let n = weights.len();
        if weights.iter().any(|w| !w.is_positive()) {
            return Err(Error::LpFailed("ill-posed: weights must be positive"));
        }
        if constraints.len() != rhs.len() {
            return Err(Error::DimensionMismatch { expected: constraints.len(), got: rhs.len() });
        }
        if let Some(row) = constraints.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: row.len() });
        }
        Ok(LinearProgram { weights, constraints, rhs })
    }

    pub fn variables(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn constraints(&self) -> &Matrix {
        &self.constraints
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.rhs
    }

    pub fn objective(&self, point: &[Rational]) -> Rational {
        point.iter().zip(&self.weights).map(|(x, w)| x.abs() * w).sum()
    }

    /// `A x = b` exactly.
    pub fn is_primal_feasible(&self, point: &[Rational]) -> bool {
        self.constraints.iter().zip(&self.rhs).all(|(row, b)| rational::dot(row, point) == *b)
    }

    /// `|Aᵀy|_j ≤ w_j` for every variable.
    pub fn is_dual_feasible(&self, dual: &[Rational]) -> bool {
        (0..self.variables()).all(|j| {
            let s: Rational = self.constraints.iter().zip(dual).map(|(row, y)| &row[j] * y).sum();
            s.abs() <= self.weights[j]
        })
    }

    pub fn dual_objective(&self, dual: &[Rational]) -> Rational {
        rational::dot(&self.rhs, dual)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: Rational,
    pub point: Vec<Rational>,
    pub dual: Vec<Rational>,
}

/// Result of a standard-form solve `min cᵀx, Ax = b, x ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardSolution {
    pub status: LpStatus,
    pub point: Vec<Rational>,
    pub dual: Vec<Rational>,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    /// Reduced costs; the last entry is minus the objective value.
    cost: Vec<Rational>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = self.rows[r].clone();
        let nonzero: Vec<usize> = (0..=self.width).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nonzero {
                row[j] -= &f * &pivot_row[j];
            }
        }
        if !self.cost[c].is_zero() {
            let f = self.cost[c].clone();
            for &j in &nonzero {
                self.cost[j] -= &f * &pivot_row[j];
            }
        }
        self.basis[r] = c;
    }

    /// Bland's rule. Returns `false` when the program is unbounded.
    fn optimize(&mut self, eligible: usize) -> bool {
        loop {
            let Some(enter) = (0..eligible).find(|&j| self.cost[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[self.width] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(r, enter);
        }
    }
}

/// Solves `min cᵀx` subject to `A x = b`, `x ≥ 0`.
pub fn solve_standard(cost: &[Rational], a: &Matrix, b: &[Rational]) -> StandardSolution {
    let m = a.len();
    let n = cost.len();
    let width = n + m;
    let mut flip = vec![false; m];
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        flip[i] = b[i].is_negative();
        let s = if flip[i] { -rational::one() } else { rational::one() };
        let mut row: Vec<Rational> = a[i].iter().map(|x| x * &s).collect();
        row.extend((0..m).map(|k| if k == i { rational::one() } else { rational::zero() }));
        row.push(&b[i] * &s);
        rows.push(row);
    }
    // Phase 1 costs: 1 on artificials, reduced against the artificial basis.
    let mut phase1 = vec![rational::zero(); width + 1];
    for row in &rows {
        for j in 0..n {
            phase1[j] -= &row[j];
        }
        phase1[width] -= &row[width];
    }
    let mut t = Tableau { rows, cost: phase1, basis: (n..n + m).collect(), width };
    t.optimize(n);
    if !t.cost[width].is_zero() {
        return StandardSolution { status: LpStatus::Infeasible, point: Vec::new(), dual: Vec::new() };
    }
    // Drive remaining artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    // Phase 2 reduced costs.
    let mut cost2: Vec<Rational> = cost.iter().cloned().chain((0..=m).map(|_| rational::zero())).collect();
    for (row, &bj) in t.rows.iter().zip(&t.basis) {
        let cb = cost[bj].clone();
        if cb.is_zero() {
            continue;
        }
        for j in 0..=width {
            if !row[j].is_zero() {
                cost2[j] -= &cb * &row[j];
            }
        }
    }
    t.cost = cost2;
    if !t.optimize(n) {
        return StandardSolution { status: LpStatus::Unbounded, point: Vec::new(), dual: Vec::new() };
    }
    let mut point = vec![rational::zero(); n];
    for (row, &bj) in t.rows.iter().zip(&t.basis) {
        point[bj] = row[width].clone();
    }
    let dual = (0..m)
        .map(|i| {
            let y = -t.cost[n + i].clone();
            if flip[i] {
                -y
            } else {
                y
            }
        })
        .collect();
    StandardSolution { status: LpStatus::Optimal, point, dual }
}

/// Minimizes the weighted ℓ¹ objective by splitting `x = x⁺ − x⁻`.
///
/// On optimal instances the returned point is basic, the dual satisfies
/// `|Aᵀy| ≤ w`, and `bᵀy` equals the primal value exactly.
pub fn solve_weighted_l1(lp: &LinearProgram) -> LpSolution {
    let n = lp.variables();
    let cost: Vec<Rational> = lp.weights.iter().chain(&lp.weights).cloned().collect();
    let a: Matrix =
        lp.constraints.iter().map(|row| row.iter().cloned().chain(row.iter().map(|x| -x)).collect()).collect();
    let sol = solve_standard(&cost, &a, &lp.rhs);
    if sol.status != LpStatus::Optimal {
        return LpSolution { status: sol.status, value: rational::zero(), point: Vec::new(), dual: Vec::new() };
    }
    let point: Vec<Rational> = (0..n).map(|j| &sol.point[j] - &sol.point[n + j]).collect();
    let value = lp.objective(&point);
    debug_assert_eq!(value, lp.dual_objective(&sol.dual));
    LpSolution { status: LpStatus::Optimal, value, point, dual: sol.dual }
}
