//! Two-phase primal simplex over exact rationals with Bland's rule.
//!
//! Every solve also returns a dual certificate that can be checked without
//! trusting the tableau: see [`verify_certificate`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rat::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

/// One linear row `Σ coeffs · x  (sense)  rhs`. Coefficients are sparse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Constraint {
    pub coeffs: Vec<(usize, Rat)>,
    pub sense: Sense,
    pub rhs: Rat,
}

/// Maximize `objective · x` subject to the rows and `lower <= x <= upper`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LpProblem {
    pub objective: Vec<Rat>,
    pub constraints: Vec<Constraint>,
    pub lower: Vec<Rat>,
    /// `None` means unbounded above.
    pub upper: Vec<Option<Rat>>,
}

impl LpProblem {
    /// `num_vars` variables with zero objective and bounds `[0, ∞)`.
    pub fn new(num_vars: usize) -> LpProblem {
        LpProblem {
            objective: vec![Rat::zero(); num_vars],
            constraints: Vec::new(),
            lower: vec![Rat::zero(); num_vars],
            upper: vec![None; num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_constraint(&mut self, coeffs: Vec<(usize, Rat)>, sense: Sense, rhs: Rat) {
        self.constraints.push(Constraint { coeffs, sense, rhs });
    }

    fn check_dimensions(&self) -> Result<()> {
        let n = self.num_vars();
        if self.lower.len() != n || self.upper.len() != n {
            return Err(Error::InvalidParameter(format!(
                "bounds have lengths {} and {}, expected {n}",
                self.lower.len(),
                self.upper.len()
            )));
        }
        for (r, c) in self.constraints.iter().enumerate() {
            if let Some(&(v, _)) = c.coeffs.iter().find(|(v, _)| *v >= n) {
                return Err(Error::InvalidParameter(format!(
                    "row {r} references variable {v} of {n}"
                )));
            }
        }
        Ok(())
    }

    /// Objective value at `x`.
    pub fn evaluate(&self, x: &[Rat]) -> Rat {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    fn row_value(c: &Constraint, x: &[Rat]) -> Rat {
        c.coeffs.iter().map(|(v, a)| a * &x[*v]).sum()
    }
}

/// Dual multipliers proving optimality.
///
/// With `z = Aᵀy + w − c`, the certificate is valid when `w ≥ 0`, `z ≥ 0`,
/// `y ≥ 0` on `≤` rows, `y ≤ 0` on `≥` rows, `w` vanishes on variables without
/// an upper bound, and `bᵀy + uᵀw − lᵀz` equals the primal objective.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualCertificate {
    /// One per constraint.
    pub row: Vec<Rat>,
    /// One per variable; multiplier of its upper bound.
    pub upper: Vec<Rat>,
    /// One per variable; multiplier of its lower bound.
    pub lower: Vec<Rat>,
    pub objective: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LpSolution {
    pub values: Vec<Rat>,
    pub objective: Rat,
    /// Whether each structural variable is basic in the final tableau.
    pub basic: Vec<bool>,
    pub certificate: DualCertificate,
}

impl LpSolution {
    /// Number of variables whose value is not an integer.
    pub fn fractional_count(&self) -> usize {
        self.values.iter().filter(|v| !v.is_integer()).count()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Column {
    Structural,
    Slack,
    Artificial,
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    basis: Vec<usize>,
    kinds: Vec<Column>,
    /// Reduced costs; a column may enter while its entry is negative.
    obj: Vec<Rat>,
    obj_value: Rat,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.rows[row][col].recip();
        if inv != Rat::one() {
            for v in self.rows[row].iter_mut() {
                if !v.is_zero() {
                    *v = &*v * &inv;
                }
            }
            self.rhs[row] = &self.rhs[row] * &inv;
        }
        let support: Vec<usize> = (0..self.rows[row].len())
            .filter(|&c| !self.rows[row][c].is_zero())
            .collect();
        let pivot_row = self.rows[row].clone();
        let pivot_rhs = self.rhs[row].clone();
        for r in 0..self.rows.len() {
            if r == row || self.rows[r][col].is_zero() {
                continue;
            }
            let f = self.rows[r][col].clone();
            for &c in &support {
                let d = &f * &pivot_row[c];
                self.rows[r][c] -= d;
            }
            self.rhs[r] -= &f * &pivot_rhs;
        }
        if !self.obj[col].is_zero() {
            let f = self.obj[col].clone();
            for &c in &support {
                let d = &f * &pivot_row[c];
                self.obj[c] -= d;
            }
            self.obj_value -= &f * &pivot_rhs;
        }
        self.basis[row] = col;
    }

    /// Runs Bland's rule to optimality. Artificial columns never enter.
    fn optimize(&mut self) -> Result<()> {
        loop {
            let entering = (0..self.obj.len())
                .find(|&c| self.kinds[c] != Column::Artificial && self.obj[c].is_negative());
            let Some(col) = entering else { return Ok(()) };
            let mut best: Option<(Rat, usize, usize)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / a;
                let better = match &best {
                    None => true,
                    Some((q, _, var)) => ratio < *q || (ratio == *q && self.basis[r] < *var),
                };
                if better {
                    best = Some((ratio, r, self.basis[r]));
                }
            }
            match best {
                Some((_, row, _)) => self.pivot(row, col),
                None => return Err(Error::Unbounded),
            }
        }
    }

    /// Reduced costs for maximizing `cost · columns`.
    fn set_objective(&mut self, cost: &[Rat]) {
        let width = self.kinds.len();
        let mut obj: Vec<Rat> = cost.iter().map(|c| -c).collect();
        let mut value = Rat::zero();
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for c in 0..width {
                if !self.rows[r][c].is_zero() {
                    obj[c] += cb * &self.rows[r][c];
                }
            }
            value += cb * &self.rhs[r];
        }
        self.obj = obj;
        self.obj_value = value;
    }
}

/// Solves `p` exactly. Returns an optimal basic solution with its certificate.
pub fn lp_solve(p: &LpProblem) -> Result<LpSolution> {
    p.check_dimensions()?;
    let n = p.num_vars();
    for v in 0..n {
        if let Some(u) = &p.upper[v] {
            if *u < p.lower[v] {
                return Err(Error::Infeasible);
            }
        }
    }

    // Shift to x' = x − l ≥ 0 and turn upper bounds into rows.
    struct Row {
        coeffs: Vec<(usize, Rat)>,
        sense: Sense,
        rhs: Rat,
        sign: i8,
    }
    let mut rows: Vec<Row> = Vec::new();
    for c in &p.constraints {
        let shift: Rat = c.coeffs.iter().map(|(v, a)| a * &p.lower[*v]).sum();
        rows.push(Row {
            coeffs: c.coeffs.clone(),
            sense: c.sense,
            rhs: &c.rhs - shift,
            sign: 1,
        });
    }
    let mut bound_row = vec![None; n];
    for v in 0..n {
        if let Some(u) = &p.upper[v] {
            bound_row[v] = Some(rows.len());
            rows.push(Row {
                coeffs: vec![(v, Rat::one())],
                sense: Sense::Le,
                rhs: u - &p.lower[v],
                sign: 1,
            });
        }
    }
    for row in rows.iter_mut() {
        if row.rhs.is_negative() {
            row.rhs = -&row.rhs;
            for (_, a) in row.coeffs.iter_mut() {
                *a = -&*a;
            }
            row.sense = match row.sense {
                Sense::Le => Sense::Ge,
                Sense::Ge => Sense::Le,
                Sense::Eq => Sense::Eq,
            };
            row.sign = -1;
        }
    }

    // Columns: structurals, then per row its slack/surplus and artificial.
    let mut kinds = vec![Column::Structural; n];
    let mut identity = Vec::with_capacity(rows.len());
    let mut surplus = Vec::with_capacity(rows.len());
    for row in &rows {
        match row.sense {
            Sense::Le => {
                identity.push(kinds.len());
                surplus.push(None);
                kinds.push(Column::Slack);
            }
            Sense::Ge => {
                surplus.push(Some(kinds.len()));
                kinds.push(Column::Slack);
                identity.push(kinds.len());
                kinds.push(Column::Artificial);
            }
            Sense::Eq => {
                surplus.push(None);
                identity.push(kinds.len());
                kinds.push(Column::Artificial);
            }
        }
    }
    let width = kinds.len();
    let mut tab = Tableau {
        rows: Vec::with_capacity(rows.len()),
        rhs: Vec::with_capacity(rows.len()),
        basis: identity.clone(),
        kinds,
        obj: Vec::new(),
        obj_value: Rat::zero(),
    };
    for (r, row) in rows.iter().enumerate() {
        let mut dense = vec![Rat::zero(); width];
        for (v, a) in &row.coeffs {
            dense[*v] += a;
        }
        dense[identity[r]] = Rat::one();
        if let Some(s) = surplus[r] {
            dense[s] = -Rat::one();
        }
        tab.rows.push(dense);
        tab.rhs.push(row.rhs.clone());
    }

    // Phase 1: maximize minus the sum of artificials.
    if tab.kinds.contains(&Column::Artificial) {
        let cost: Vec<Rat> = tab
            .kinds
            .iter()
            .map(|k| match k {
                Column::Artificial => -Rat::one(),
                _ => Rat::zero(),
            })
            .collect();
        tab.set_objective(&cost);
        // Artificials must be able to leave but never re-enter; Bland on the
        // non-artificial columns is enough for phase 1 as well.
        tab.optimize()?;
        if tab.obj_value.is_negative() {
            return Err(Error::Infeasible);
        }
        // Pivot zero-valued artificials out where a real column is available.
        for r in 0..tab.rows.len() {
            if tab.kinds[tab.basis[r]] != Column::Artificial {
                continue;
            }
            if let Some(c) = (0..width)
                .find(|&c| tab.kinds[c] != Column::Artificial && !tab.rows[r][c].is_zero())
            {
                tab.pivot(r, c);
            }
        }
    }

    // Phase 2 on the shifted objective.
    let mut cost = vec![Rat::zero(); width];
    cost[..n].clone_from_slice(&p.objective);
    tab.set_objective(&cost);
    tab.optimize()?;

    let mut shifted = vec![Rat::zero(); width];
    for (r, &b) in tab.basis.iter().enumerate() {
        shifted[b] = tab.rhs[r].clone();
    }
    let values: Vec<Rat> = (0..n).map(|v| &shifted[v] + &p.lower[v]).collect();
    let mut basic = vec![false; n];
    for &b in &tab.basis {
        if b < n {
            basic[b] = true;
        }
    }
    let objective = p.evaluate(&values);

    // Duals: reduced cost under each row's identity column, un-negated.
    let dual = |r: usize| -> Rat {
        let y = tab.obj[identity[r]].clone();
        if rows[r].sign < 0 {
            -y
        } else {
            y
        }
    };
    let row_duals: Vec<Rat> = (0..p.constraints.len()).map(dual).collect();
    let upper_duals: Vec<Rat> = (0..n)
        .map(|v| bound_row[v].map_or_else(Rat::zero, dual))
        .collect();
    let certificate = certificate_from(p, row_duals, upper_duals);
    if certificate.objective != objective {
        return Err(Error::Internal(format!(
            "dual objective {} differs from primal objective {objective}",
            certificate.objective
        )));
    }
    Ok(LpSolution {
        values,
        objective,
        basic,
        certificate,
    })
}

fn certificate_from(p: &LpProblem, row: Vec<Rat>, upper: Vec<Rat>) -> DualCertificate {
    let lower = reduced_costs(p, &row, &upper);
    let objective = dual_objective(p, &row, &upper, &lower);
    DualCertificate {
        row,
        upper,
        lower,
        objective,
    }
}

/// `z = Aᵀy + w − c`.
fn reduced_costs(p: &LpProblem, y: &[Rat], w: &[Rat]) -> Vec<Rat> {
    let mut z: Vec<Rat> = (0..p.num_vars()).map(|v| &w[v] - &p.objective[v]).collect();
    for (c, yr) in p.constraints.iter().zip(y) {
        if yr.is_zero() {
            continue;
        }
        for (v, a) in &c.coeffs {
            z[*v] += a * yr;
        }
    }
    z
}

fn dual_objective(p: &LpProblem, y: &[Rat], w: &[Rat], z: &[Rat]) -> Rat {
    let mut total: Rat = p.constraints.iter().zip(y).map(|(c, yr)| &c.rhs * yr).sum();
    for v in 0..p.num_vars() {
        if let Some(u) = &p.upper[v] {
            total += u * &w[v];
        }
        total -= &p.lower[v] * &z[v];
    }
    total
}

/// Independently checks primal feasibility of `sol.values`, dual feasibility
/// of the certificate, and equality of both objectives.
pub fn verify_certificate(p: &LpProblem, sol: &LpSolution) -> Result<()> {
    let fail = |msg: String| Err(Error::Internal(msg));
    let x = &sol.values;
    let cert = &sol.certificate;
    if x.len() != p.num_vars() || cert.row.len() != p.constraints.len() {
        return fail("certificate dimensions do not match the problem".into());
    }
    for v in 0..p.num_vars() {
        if x[v] < p.lower[v] || p.upper[v].as_ref().is_some_and(|u| x[v] > *u) {
            return fail(format!("variable {v} = {} violates its bounds", x[v]));
        }
    }
    for (r, c) in p.constraints.iter().enumerate() {
        let lhs = LpProblem::row_value(c, x);
        let ok = match c.sense {
            Sense::Le => lhs <= c.rhs,
            Sense::Eq => lhs == c.rhs,
            Sense::Ge => lhs >= c.rhs,
        };
        if !ok {
            return fail(format!(
                "row {r}: {lhs} {:?} {} is violated",
                c.sense, c.rhs
            ));
        }
        let y = &cert.row[r];
        let sign_ok = match c.sense {
            Sense::Le => !y.is_negative(),
            Sense::Ge => !y.is_positive(),
            Sense::Eq => true,
        };
        if !sign_ok {
            return fail(format!("row {r}: dual {y} has the wrong sign"));
        }
    }
    for v in 0..p.num_vars() {
        let w = &cert.upper[v];
        if w.is_negative() || (p.upper[v].is_none() && !w.is_zero()) {
            return fail(format!("variable {v}: upper-bound dual {w} is invalid"));
        }
    }
    let z = reduced_costs(p, &cert.row, &cert.upper);
    if z != cert.lower {
        return fail("lower-bound duals do not equal Aᵀy + w − c".into());
    }
    if let Some(v) = z.iter().position(Rat::is_negative) {
        return fail(format!("variable {v}: reduced cost {} is negative", z[v]));
    }
    let dual = dual_objective(p, &cert.row, &cert.upper, &z);
    let primal = p.evaluate(x);
    if dual != cert.objective || primal != sol.objective || dual != primal {
        return fail(format!(
            "dual objective {dual} differs from primal {primal}"
        ));
    }
    Ok(())
}
