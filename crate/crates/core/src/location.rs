//! Constrained minimax single-facility location under the Chebyshev metric.
//!
//! Given demand points `r_1..r_m` with additive weights `w_j`, find `x`
//! minimizing `max_j (w_j + ρ(r_j, x))` subject to `x_j + b_ij ≤ x_i` and
//! `g_i ≤ x_i ≤ h_i`. Absent constraint entries `b_ij` and absent lower
//! bounds are `-inf`.
//!
//! [`solve_location`] evaluates the closed form in ordinary arithmetic;
//! [`reduce`] rewrites the instance as a max-plus [`ProblemInstance`] so the
//! general tropical solver can be run on the same data. The two paths
//! evaluate the same sums in the same association order and agree exactly.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::optimization::{InfeasibilityReason, InfeasibilityReport, ProblemInstance};
use crate::semifield::{Scalar, SemifieldKind::MaxPlus, Tolerance};

const NEG: f64 = f64::NEG_INFINITY;

#[derive(Debug, Clone, PartialEq)]
pub struct LocationInstance {
    points: Vec<Vec<f64>>,
    weights: Vec<f64>,
    constraints: Option<Vec<Vec<f64>>>,
    lower: Option<Vec<f64>>,
    upper: Option<Vec<f64>>,
}

fn invalid(value: f64) -> Error {
    Error::InvalidValue {
        value,
        kind: MaxPlus,
    }
}

fn dim_err(op: &'static str, expected: usize, found: usize) -> Error {
    Error::Dimension {
        op,
        left_rows: expected,
        left_cols: 1,
        right_rows: found,
        right_cols: 1,
    }
}

impl LocationInstance {
    pub fn new(points: Vec<Vec<f64>>, weights: Vec<f64>) -> Result<Self> {
        let n = points.first().map_or(0, Vec::len);
        if points.is_empty() || n == 0 {
            return Err(Error::EmptyMatrix);
        }
        for r in &points {
            if r.len() != n {
                return Err(dim_err("points", n, r.len()));
            }
            if let Some(&v) = r.iter().find(|v| !v.is_finite()) {
                return Err(invalid(v));
            }
        }
        if weights.len() != points.len() {
            return Err(dim_err("weights", points.len(), weights.len()));
        }
        if let Some(&v) = weights.iter().find(|v| !v.is_finite()) {
            return Err(invalid(v));
        }
        Ok(LocationInstance {
            points,
            weights,
            constraints: None,
            lower: None,
            upper: None,
        })
    }

    /// Constraint matrix: `x_j + b[i][j] ≤ x_i`; `-inf` entries impose nothing.
    pub fn with_constraints(mut self, b: Vec<Vec<f64>>) -> Result<Self> {
        let n = self.dim();
        if b.len() != n {
            return Err(dim_err("constraints", n, b.len()));
        }
        for row in &b {
            if row.len() != n {
                return Err(dim_err("constraints", n, row.len()));
            }
            if let Some(&v) = row.iter().find(|&&v| !(v.is_finite() || v == NEG)) {
                return Err(invalid(v));
            }
        }
        self.constraints = Some(b);
        Ok(self)
    }

    /// Lower bounds `g`; `-inf` components impose nothing.
    pub fn with_lower(mut self, g: Vec<f64>) -> Result<Self> {
        if g.len() != self.dim() {
            return Err(dim_err("lower", self.dim(), g.len()));
        }
        if let Some(&v) = g.iter().find(|&&v| !(v.is_finite() || v == NEG)) {
            return Err(invalid(v));
        }
        self.lower = Some(g);
        Ok(self)
    }

    /// Upper bounds `h`, all finite.
    pub fn with_upper(mut self, h: Vec<f64>) -> Result<Self> {
        if h.len() != self.dim() {
            return Err(dim_err("upper", self.dim(), h.len()));
        }
        if let Some(&v) = h.iter().find(|v| !v.is_finite()) {
            return Err(invalid(v));
        }
        self.upper = Some(h);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn constraints(&self) -> Option<&[Vec<f64>]> {
        self.constraints.as_deref()
    }

    pub fn lower(&self) -> Option<&[f64]> {
        self.lower.as_deref()
    }

    pub fn upper(&self) -> Option<&[f64]> {
        self.upper.as_deref()
    }

    /// `max_j (w_j + ρ(r_j, x))`.
    pub fn objective(&self, x: &[f64]) -> Result<f64> {
        let mut best = NEG;
        for (r, w) in self.points.iter().zip(&self.weights) {
            best = best.max(w + chebyshev_distance(r, x)?);
        }
        Ok(best)
    }

    /// `x_j + b_ij ≤ x_i` and `g ≤ x ≤ h`, exactly.
    pub fn is_feasible(&self, x: &[f64]) -> bool {
        if let Some(b) = &self.constraints {
            for (i, row) in b.iter().enumerate() {
                if row.iter().zip(x).any(|(&bij, &xj)| xj + bij > x[i]) {
                    return false;
                }
            }
        }
        if let Some(g) = &self.lower {
            if g.iter().zip(x).any(|(gi, xi)| xi < gi) {
                return false;
            }
        }
        if let Some(h) = &self.upper {
            if h.iter().zip(x).any(|(hi, xi)| xi > hi) {
                return false;
            }
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocationSolution {
    pub theta: f64,
    pub b_star: Vec<Vec<f64>>,
    pub u_lower: Vec<f64>,
    pub u_upper: Vec<f64>,
    pub x_lower: Vec<f64>,
    pub x_upper: Vec<f64>,
    pub p: Vec<f64>,
    pub q: Vec<f64>,
}

impl LocationSolution {
    /// `x_i = max_j (b*_ij + u_j)`.
    pub fn point(&self, u: &[f64]) -> Vec<f64> {
        self.b_star
            .iter()
            .map(|row| row.iter().zip(u).map(|(b, uj)| b + uj).fold(NEG, f64::max))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LocationOutcome {
    Optimal(LocationSolution),
    Infeasible(InfeasibilityReport),
}

impl LocationOutcome {
    pub fn optimal(&self) -> Option<&LocationSolution> {
        match self {
            LocationOutcome::Optimal(s) => Some(s),
            LocationOutcome::Infeasible(_) => None,
        }
    }

    pub fn infeasible(&self) -> Option<&InfeasibilityReport> {
        match self {
            LocationOutcome::Optimal(_) => None,
            LocationOutcome::Infeasible(r) => Some(r),
        }
    }
}

/// `max_i |r_i − s_i|`.
pub fn chebyshev_distance(r: &[f64], s: &[f64]) -> Result<f64> {
    if r.len() != s.len() {
        return Err(dim_err("chebyshev_distance", r.len(), s.len()));
    }
    Ok(r.iter()
        .zip(s)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

/// `p_i = max_j (r_ij + w_j)` and `q_i = min_j (r_ij − w_j)`: opposite
/// corners of the smallest box holding every shifted point `r_j ± w_j`.
pub fn build_pq(points: &[Vec<f64>], weights: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = points.first().map_or(0, Vec::len);
    let mut p = vec![NEG; n];
    let mut q = vec![f64::INFINITY; n];
    for (r, w) in points.iter().zip(weights) {
        for i in 0..n {
            p[i] = p[i].max(r[i] + w);
            q[i] = q[i].min(r[i] - w);
        }
    }
    (p, q)
}

/// The instance as a max-plus problem `min x⁻p ⊕ q⁻x` s.t. `Bx ⊕ g ≤ x ≤ h`.
pub fn reduce(inst: &LocationInstance) -> Result<ProblemInstance> {
    let (p, q) = build_pq(&inst.points, &inst.weights);
    let mut out = ProblemInstance::new(Matrix::column(MaxPlus, &p)?, Matrix::column(MaxPlus, &q)?)?;
    if let Some(b) = &inst.constraints {
        out = out.with_matrix(Matrix::from_rows(MaxPlus, b)?)?;
    }
    if let Some(g) = &inst.lower {
        out = out.with_lower(Matrix::column(MaxPlus, g)?)?;
    }
    if let Some(h) = &inst.upper {
        out = out.with_upper(Matrix::column(MaxPlus, h)?)?;
    }
    Ok(out)
}

/// Entries `b*_ij`: the longest path weight `β_ij` over paths of 1..n−1
/// arcs, lifted to at least 0 on the diagonal.
pub fn closure_entries(b: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let m = Matrix::from_rows(MaxPlus, b)?;
    if !m.is_square() {
        return Err(Error::NotSquare {
            op: "closure_entries",
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut beta = Matrix::zeros(MaxPlus, n, n);
    let mut power = m.clone();
    for k in 1..n {
        if k > 1 {
            power = power.mul(&m)?;
        }
        beta = beta.add(&power)?;
    }
    let mut rows = beta.to_rows();
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = row[i].max(0.0);
    }
    Ok(rows)
}

pub fn solve_location(inst: &LocationInstance) -> Result<LocationOutcome> {
    solve_location_with(inst, Tolerance::Policy)
}

pub fn solve_location_with(inst: &LocationInstance, tol: Tolerance) -> Result<LocationOutcome> {
    let n = inst.dim();
    let eps = tol.epsilon(MaxPlus);
    let b = inst
        .constraints
        .clone()
        .unwrap_or_else(|| vec![vec![NEG; n]; n]);
    let bs = closure_entries(&b)?;

    // longest cycle: an arc i → j closed by a path of 0..n−1 arcs back to i
    let mut cycle = NEG;
    for i in 0..n {
        for j in 0..n {
            cycle = cycle.max(b[i][j] + bs[j][i]);
        }
    }
    if cycle > eps {
        return Ok(LocationOutcome::Infeasible(InfeasibilityReport {
            reason: InfeasibilityReason::TrExceedsOne,
            detail: Scalar::new(MaxPlus, cycle)?,
        }));
    }

    let g = inst.lower.clone().unwrap_or_else(|| vec![NEG; n]);
    if let Some(h) = &inst.upper {
        let mut worst = NEG;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max(bs[i][j] - h[i] + g[j]);
            }
        }
        if worst > eps {
            return Ok(LocationOutcome::Infeasible(InfeasibilityReport {
                reason: InfeasibilityReason::BoundsIncompatible,
                detail: Scalar::new(MaxPlus, worst)?,
            }));
        }
    }

    let (p, q) = build_pq(&inst.points, &inst.weights);
    let mut theta = NEG;
    for i in 0..n {
        for j in 0..n {
            theta = theta.max((bs[i][j] - q[i] + p[j]) / 2.0);
            if let Some(h) = &inst.upper {
                theta = theta.max(bs[i][j] - h[i] + p[j]);
            }
            theta = theta.max(bs[i][j] - q[i] + g[j]);
        }
    }

    let u_lower: Vec<f64> = (0..n).map(|j| g[j].max(p[j] - theta)).collect();
    let u_upper: Vec<f64> = (0..n)
        .map(|j| {
            let by_h = match &inst.upper {
                Some(h) => (0..n).map(|i| bs[i][j] - h[i]).fold(NEG, f64::max),
                None => NEG,
            };
            // grouped as b*_ij + (−θ − q_i), the order the tropical path uses
            let by_q = (0..n)
                .map(|i| bs[i][j] + (-theta - q[i]))
                .fold(NEG, f64::max);
            (-by_h).min(-by_q)
        })
        .collect();
    if u_lower.iter().zip(&u_upper).any(|(l, u)| l > &(u + eps)) {
        return Err(Error::Numerical(format!(
            "empty parameter box: u_lower = {u_lower:?}, u_upper = {u_upper:?}"
        )));
    }

    let mut sol = LocationSolution {
        theta,
        b_star: bs,
        u_lower,
        u_upper,
        x_lower: Vec::new(),
        x_upper: Vec::new(),
        p,
        q,
    };
    sol.x_lower = sol.point(&sol.u_lower);
    sol.x_upper = sol.point(&sol.u_upper);
    Ok(LocationOutcome::Optimal(sol))
}
