//! Closed-form solutions of the two vector inequalities the solvers are
//! built from: `A x ≤ d` and `A x ⊕ b ≤ x`.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::semifield::{Scalar, Tolerance};

/// All regular solutions of `A x ≤ d` are the regular `x ≤ bound`.
#[derive(Debug, Clone, PartialEq)]
pub struct UpperSolution {
    pub bound: Matrix,
}

/// All regular solutions of `A x ⊕ b ≤ x` are `x = generator ⊗ u` for
/// regular `u ≥ lower`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeSolution {
    pub generator: Matrix,
    pub lower: Matrix,
}

impl ConeSolution {
    /// `generator ⊗ u`.
    pub fn point(&self, u: &Matrix) -> Result<Matrix> {
        self.generator.mul(u)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConeOutcome {
    Solved(ConeSolution),
    /// `Tr(A) > 𝟙`: no regular solution exists.
    Infeasible {
        cycle_trace: Scalar,
    },
}

/// Solves `A x ≤ d` for regular `x`: the solutions are exactly `x ≤ (d⁻A)⁻`.
pub fn solve_ax_leq_d(a: &Matrix, d: &Matrix) -> Result<UpperSolution> {
    if !d.is_column() || a.rows() != d.rows() {
        return Err(Error::Dimension {
            op: "solve_ax_leq_d",
            left_rows: a.rows(),
            left_cols: a.cols(),
            right_rows: d.rows(),
            right_cols: d.cols(),
        });
    }
    if !a.is_column_regular() {
        return Err(Error::NotColumnRegular { what: "A" });
    }
    if !d.is_regular() {
        return Err(Error::NotRegular { what: "d" });
    }
    let bound = d.conjugate()?.mul(a)?.conjugate()?;
    Ok(UpperSolution { bound })
}

/// Solves `A x ⊕ b ≤ x` for regular `x`.
pub fn solve_ax_plus_b_leq_x(a: &Matrix, b: &Matrix, tol: Tolerance) -> Result<ConeOutcome> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            op: "solve_ax_plus_b_leq_x",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if !b.is_column() || b.rows() != a.rows() {
        return Err(Error::Dimension {
            op: "solve_ax_plus_b_leq_x",
            left_rows: a.rows(),
            left_cols: a.cols(),
            right_rows: b.rows(),
            right_cols: b.cols(),
        });
    }
    let cycle_trace = a.cycle_trace()?;
    if !cycle_trace.leq_with(Scalar::one(a.kind()), tol)? {
        return Ok(ConeOutcome::Infeasible { cycle_trace });
    }
    Ok(ConeOutcome::Solved(ConeSolution {
        generator: a.star()?,
        lower: b.clone(),
    }))
}
