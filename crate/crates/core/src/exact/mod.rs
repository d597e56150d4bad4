//! Ground truth: brute-force optima, an exact simplex, and the splittable
//! relaxation as a linear program.

mod oracle;
mod simplex;

pub use oracle::{
    exact_opt_infinite, exact_opt_infinite_with_copies, exact_opt_unit, OracleCaps, MAX_ITEMS_HARD,
};
pub use simplex::{
    lp_solve, verify_certificate, Constraint, DualCertificate, LpProblem, LpSolution, Sense,
};

use crate::instance::Instance;
use crate::rat::Rat;

/// The splittable relaxation with its variable layout.
#[derive(Debug, Clone)]
pub struct Lp1 {
    pub problem: LpProblem,
    /// Variable index of the fill level `y_i`, per bin.
    pub y: Vec<usize>,
    /// `(item, bin, variable)` for every admissible pair `s_j <= d_i`.
    pub x: Vec<(usize, usize, usize)>,
}

/// Maximize `Σ p_i y_i` subject to `d_i y_i <= Σ_j x_{j,i}`,
/// `Σ_i x_{j,i} <= s_j`, `0 <= y_i <= 1`, `x >= 0`. Pairs with `s_j > d_i`
/// get no variable.
pub fn build_lp1(inst: &Instance) -> Lp1 {
    let m = inst.m();
    let y: Vec<usize> = (0..m).collect();
    let mut x = Vec::new();
    for j in 0..inst.n() {
        for i in 0..m {
            if inst.size(j) <= &inst.bin(i).demand {
                x.push((j, i, m + x.len()));
            }
        }
    }
    let mut problem = LpProblem::new(m + x.len());
    for i in 0..m {
        problem.objective[i] = inst.bin(i).profit.clone();
        problem.upper[i] = Some(Rat::one());
        let mut row = vec![(y[i], inst.bin(i).demand.clone())];
        row.extend(x.iter().filter(|e| e.1 == i).map(|e| (e.2, -Rat::one())));
        problem.add_constraint(row, Sense::Le, Rat::zero());
    }
    for j in 0..inst.n() {
        let row = x
            .iter()
            .filter(|e| e.0 == j)
            .map(|e| (e.2, Rat::one()))
            .collect();
        problem.add_constraint(row, Sense::Le, inst.size(j).clone());
    }
    Lp1 { problem, y, x }
}
