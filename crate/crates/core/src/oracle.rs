//! Exhaustive grid search over small instances.
//!
//! The search evaluates feasibility and the objective straight from the raw
//! semifield operations, without going through the matrix code or the
//! closed-form solvers, so it can serve as an independent check on both.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::optimization::{Outcome, ProblemInstance, SolutionSet, Solver};
use crate::semifield::{Scalar, SemifieldKind, Tolerance};

/// Hard limit on the number of grid points.
pub const MAX_GRID_POINTS: u128 = 1_000_000;

/// Largest dimension the brute-force search accepts.
pub const MAX_DIM: usize = 3;

/// A rectangular lattice `lower + k·step` clipped to `upper`, in encoded
/// (raw `f64`) coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub step: f64,
}

impl GridSpec {
    pub const DEFAULT_STEP: f64 = 0.5;

    pub fn new(lower: Vec<f64>, upper: Vec<f64>, step: f64) -> Result<Self> {
        let grid = GridSpec { lower, upper, step };
        grid.validate()?;
        Ok(grid)
    }

    /// Uniform cube `[lo, hi]ⁿ`.
    pub fn cube(n: usize, lo: f64, hi: f64, step: f64) -> Result<Self> {
        GridSpec::new(vec![lo; n], vec![hi; n], step)
    }

    /// Default grid for an instance: `[g, h]` where both bounds are present,
    /// otherwise the hull of the finite data padded by its own spread (plus
    /// the largest constraint entry per step along a path), snapped outward
    /// to the step lattice.
    pub fn for_instance(inst: &ProblemInstance, step: f64) -> Result<Self> {
        let kind = inst.kind();
        let n = inst.dim();
        let mut finite: Vec<f64> = Vec::new();
        for v in [Some(inst.p()), Some(inst.q()), inst.lower(), inst.upper()]
            .into_iter()
            .flatten()
        {
            finite.extend(v.values().iter().copied().filter(|&x| !kind.is_zero(x)));
        }
        let lo0 = finite.iter().copied().fold(f64::INFINITY, f64::min);
        let hi0 = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let b_max = inst.matrix().map_or(0.0, |b| {
            b.values()
                .iter()
                .filter(|&&x| !kind.is_zero(x))
                .map(|&x| {
                    if kind.is_additive() {
                        x.abs()
                    } else {
                        x.ln().abs()
                    }
                })
                .fold(0.0, f64::max)
        });
        let path = b_max * n.saturating_sub(1) as f64;
        let (pad_lo, pad_hi) = if kind.is_additive() {
            let r = (hi0 - lo0) + path;
            (lo0 - r, hi0 + r)
        } else {
            let r = (hi0 / lo0) * path.exp();
            (lo0 / r, hi0 * r)
        };
        let mut lower = vec![pad_lo; n];
        let mut upper = vec![pad_hi; n];
        // min-semifields reverse the order, so g bounds the raw value from above
        let (raw_lo, raw_hi) = if kind.is_max() {
            (inst.lower(), inst.upper())
        } else {
            (inst.upper(), inst.lower())
        };
        for i in 0..n {
            if let Some(v) = raw_lo {
                let vi = v.values()[i];
                if vi.is_finite() && !kind.is_zero(vi) {
                    lower[i] = vi;
                }
            }
            if let Some(v) = raw_hi {
                let vi = v.values()[i];
                if vi.is_finite() {
                    upper[i] = vi;
                }
            }
            lower[i] = (lower[i] / step).floor() * step;
            upper[i] = (upper[i] / step).ceil() * step;
            if !kind.is_additive() && lower[i] <= 0.0 {
                lower[i] = step;
            }
        }
        GridSpec::new(lower, upper, step)
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    fn validate(&self) -> Result<()> {
        if !(self.step.is_finite() && self.step > 0.0) {
            return Err(Error::InvalidGrid {
                reason: format!("step must be positive, got {}", self.step),
            });
        }
        if self.lower.len() != self.upper.len() {
            return Err(Error::InvalidGrid {
                reason: "lower and upper have different lengths".into(),
            });
        }
        let n = self.dim();
        if n == 0 || n > MAX_DIM {
            return Err(Error::GridDimension { dim: n });
        }
        for (i, (&l, &u)) in self.lower.iter().zip(&self.upper).enumerate() {
            if !(l.is_finite() && u.is_finite()) {
                return Err(Error::InvalidGrid {
                    reason: format!("coordinate {i}: bounds must be finite"),
                });
            }
        }
        let points = self.point_count();
        if points > MAX_GRID_POINTS {
            return Err(Error::GridTooLarge {
                points,
                limit: MAX_GRID_POINTS,
                suggested_step: self.suggested_step(),
            });
        }
        Ok(())
    }

    fn axis_len(&self, i: usize) -> usize {
        let span = self.upper[i] - self.lower[i];
        if span < 0.0 {
            0
        } else {
            (span / self.step + 1e-9).floor() as usize + 1
        }
    }

    /// Total number of lattice points (0 when some `lower > upper`).
    pub fn point_count(&self) -> u128 {
        (0..self.dim()).map(|i| self.axis_len(i) as u128).product()
    }

    /// Smallest step (a power-of-two multiple of the current one) that
    /// satisfies the point guard.
    pub fn suggested_step(&self) -> f64 {
        let mut g = self.clone();
        while g.point_count() > MAX_GRID_POINTS {
            g.step *= 2.0;
        }
        g.step
    }

    fn coordinate(&self, i: usize, k: usize) -> f64 {
        self.lower[i] + k as f64 * self.step
    }
}

/// Minimum over the feasible grid points and every point attaining it, in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub min: Option<Scalar>,
    pub argmins: Vec<Vec<f64>>,
    pub feasible_points: usize,
}

impl OracleResult {
    pub fn is_empty(&self) -> bool {
        self.min.is_none()
    }
}

/// Raw-value feasibility of `x` for the instance: `Bx ≤ x`, `g ≤ x ≤ h`.
fn feasible_at(inst: &ProblemInstance, x: &[f64], kind: SemifieldKind, eps: f64) -> bool {
    let n = x.len();
    if let Some(b) = inst.matrix() {
        let bv = b.values();
        for i in 0..n {
            let mut lhs = kind.zero();
            for j in 0..n {
                lhs = kind.add(lhs, kind.mul(bv[i * n + j], x[j]));
            }
            if !kind.leq(lhs, x[i], eps) {
                return false;
            }
        }
    }
    if let Some(g) = inst.lower() {
        if !g
            .values()
            .iter()
            .zip(x)
            .all(|(&gi, &xi)| kind.leq(gi, xi, eps))
        {
            return false;
        }
    }
    if let Some(h) = inst.upper() {
        if !x
            .iter()
            .zip(h.values())
            .all(|(&xi, &hi)| kind.leq(xi, hi, eps))
        {
            return false;
        }
    }
    true
}

/// `⊕ᵢ xᵢ⁻¹pᵢ ⊕ ⊕ᵢ qᵢ⁻¹xᵢ` for a regular `x`.
fn objective_at(p: &[f64], q: &[f64], x: &[f64], kind: SemifieldKind) -> f64 {
    let mut acc = kind.zero();
    for i in 0..x.len() {
        let xi_inv = kind.inv(x[i]).expect("grid points are regular");
        acc = kind.add(acc, kind.mul(xi_inv, p[i]));
        if !kind.is_zero(q[i]) {
            acc = kind.add(acc, kind.mul(kind.inv(q[i]).expect("non-zero"), x[i]));
        }
    }
    acc
}

/// Evaluates the objective at every feasible grid point.
pub fn brute_force_min(
    inst: &ProblemInstance,
    grid: &GridSpec,
    tol: Tolerance,
) -> Result<OracleResult> {
    grid.validate()?;
    let n = inst.dim();
    if grid.dim() != n {
        return Err(Error::InvalidGrid {
            reason: format!("grid has dimension {}, instance has {n}", grid.dim()),
        });
    }
    let kind = inst.kind();
    let eps = tol.epsilon(kind);
    let (p, q) = (inst.p().values(), inst.q().values());

    let lens: Vec<usize> = (0..n).map(|i| grid.axis_len(i)).collect();
    let total: usize = lens.iter().product();
    let mut feasible: Vec<(Vec<f64>, f64)> = Vec::new();
    let mut idx = vec![0usize; n];
    let mut x = vec![0.0; n];
    for _ in 0..total {
        for i in 0..n {
            x[i] = grid.coordinate(i, idx[i]);
        }
        let regular = x
            .iter()
            .all(|&v| kind.validate(v).is_ok() && !kind.is_zero(v));
        if regular && feasible_at(inst, &x, kind, eps) {
            feasible.push((x.clone(), objective_at(p, q, &x, kind)));
        }
        // odometer, last coordinate fastest
        for i in (0..n).rev() {
            idx[i] += 1;
            if idx[i] < lens[i] {
                break;
            }
            idx[i] = 0;
        }
    }

    let best = feasible
        .iter()
        .map(|(_, v)| *v)
        .reduce(|a, b| if kind.leq(a, b, 0.0) { a } else { b });
    let Some(best) = best else {
        return Ok(OracleResult {
            min: None,
            argmins: Vec::new(),
            feasible_points: 0,
        });
    };
    let argmins = feasible
        .iter()
        .filter(|(_, v)| kind.approx_eq(*v, best, eps))
        .map(|(x, _)| x.clone())
        .collect();
    Ok(OracleResult {
        min: Some(Scalar::new(kind, best)?),
        argmins,
        feasible_points: feasible.len(),
    })
}

/// Solver result checked against the grid search.
#[derive(Debug, Clone, PartialEq)]
pub struct Verification {
    pub outcome: Outcome,
    pub oracle: OracleResult,
    /// Solver and oracle agree on the optimum (or both find nothing).
    pub minima_agree: bool,
    /// Oracle argmins that the solver's solution set contains.
    pub argmins_contained: usize,
    /// Solver sample points (corners and midpoint of the parameter box)
    /// that are feasible and attain `θ`.
    pub samples_attaining: usize,
    pub samples_total: usize,
}

impl Verification {
    pub fn agrees(&self) -> bool {
        self.minima_agree
            && self.argmins_contained == self.oracle.argmins.len()
            && self.samples_attaining == self.samples_total
    }
}

pub fn verify(inst: &ProblemInstance, grid: &GridSpec, tol: Tolerance) -> Result<Verification> {
    let solver = Solver::new(tol);
    let outcome = solver.solve(inst)?;
    let oracle = brute_force_min(inst, grid, tol)?;
    let kind = inst.kind();
    let (minima_agree, argmins_contained, samples_attaining, samples_total) = match &outcome {
        Outcome::Optimal(sol) => {
            let agree = match oracle.min {
                Some(m) => m.approx_eq(sol.theta, tol)?,
                None => false,
            };
            let contained = count_contained(&solver, sol, inst, &oracle.argmins, kind)?;
            let samples = sol.sample_points()?;
            let mut ok = 0;
            for x in &samples {
                if inst.is_feasible(x, tol)? && inst.objective(x)?.approx_eq(sol.theta, tol)? {
                    ok += 1;
                }
            }
            (agree, contained, ok, samples.len())
        }
        Outcome::Infeasible(_) => (oracle.is_empty(), 0, 0, 0),
    };
    Ok(Verification {
        outcome,
        oracle,
        minima_agree,
        argmins_contained,
        samples_attaining,
        samples_total,
    })
}

fn count_contained(
    solver: &Solver,
    sol: &SolutionSet,
    inst: &ProblemInstance,
    points: &[Vec<f64>],
    kind: SemifieldKind,
) -> Result<usize> {
    let mut n = 0;
    for x in points {
        if solver.contains(sol, inst, &Matrix::column(kind, x)?)? {
            n += 1;
        }
    }
    Ok(n)
}
