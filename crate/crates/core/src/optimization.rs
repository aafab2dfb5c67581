//! Closed-form solvers for
//!
//! ```text
//! minimize    x⁻p ⊕ q⁻x
//! subject to  B x ⊕ g ≤ x,  x ≤ h
//! ```
//!
//! and its special cases (no constraints, only `Bx ≤ x`, only `g ≤ x ≤ h`).
//!
//! Every solver returns the optimum `θ` together with the complete set of
//! minimizers, written as `x = B* u` for `u` in a coordinate box
//! `[u_lo, u_hi]`. When `B` is absent the generator is `I` and the set is the
//! box itself.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::linear_systems::{solve_ax_plus_b_leq_x, ConeOutcome};
use crate::semifield::{Scalar, SemifieldKind, Tolerance};

/// Data of a problem instance. Absent `B` stands for the zero matrix, absent
/// `g` for the zero vector and absent `h` for "no upper bound".
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance {
    p: Matrix,
    q: Matrix,
    g: Option<Matrix>,
    h: Option<Matrix>,
    b: Option<Matrix>,
}

fn check_vector(v: &Matrix, kind: SemifieldKind, n: usize, op: &'static str) -> Result<()> {
    if v.kind() != kind {
        return Err(Error::KindMismatch {
            left: kind,
            right: v.kind(),
        });
    }
    if !v.is_column() || v.rows() != n {
        return Err(Error::Dimension {
            op,
            left_rows: n,
            left_cols: 1,
            right_rows: v.rows(),
            right_cols: v.cols(),
        });
    }
    Ok(())
}

fn check_square(b: &Matrix, kind: SemifieldKind, n: usize) -> Result<()> {
    if b.kind() != kind {
        return Err(Error::KindMismatch {
            left: kind,
            right: b.kind(),
        });
    }
    if b.shape() != (n, n) {
        return Err(Error::Dimension {
            op: "constraint matrix",
            left_rows: n,
            left_cols: n,
            right_rows: b.rows(),
            right_cols: b.cols(),
        });
    }
    Ok(())
}

impl ProblemInstance {
    pub fn new(p: Matrix, q: Matrix) -> Result<Self> {
        if !p.is_column() {
            return Err(Error::NotVector {
                op: "p",
                rows: p.rows(),
                cols: p.cols(),
            });
        }
        check_vector(&q, p.kind(), p.rows(), "q")?;
        Ok(ProblemInstance {
            p,
            q,
            g: None,
            h: None,
            b: None,
        })
    }

    pub fn with_matrix(mut self, b: Matrix) -> Result<Self> {
        check_square(&b, self.kind(), self.dim())?;
        self.b = Some(b);
        Ok(self)
    }

    pub fn with_lower(mut self, g: Matrix) -> Result<Self> {
        check_vector(&g, self.kind(), self.dim(), "g")?;
        self.g = Some(g);
        Ok(self)
    }

    pub fn with_upper(mut self, h: Matrix) -> Result<Self> {
        check_vector(&h, self.kind(), self.dim(), "h")?;
        self.h = Some(h);
        Ok(self)
    }

    pub fn kind(&self) -> SemifieldKind {
        self.p.kind()
    }

    pub fn dim(&self) -> usize {
        self.p.rows()
    }

    pub fn p(&self) -> &Matrix {
        &self.p
    }

    pub fn q(&self) -> &Matrix {
        &self.q
    }

    pub fn lower(&self) -> Option<&Matrix> {
        self.g.as_ref()
    }

    pub fn upper(&self) -> Option<&Matrix> {
        self.h.as_ref()
    }

    pub fn matrix(&self) -> Option<&Matrix> {
        self.b.as_ref()
    }

    /// `B x ≤ x` and `g ≤ x ≤ h`.
    pub fn is_feasible(&self, x: &Matrix, tol: Tolerance) -> Result<bool> {
        check_vector(x, self.kind(), self.dim(), "x")?;
        if let Some(b) = &self.b {
            if !b.mul(x)?.leq(x, tol)? {
                return Ok(false);
            }
        }
        if let Some(g) = &self.g {
            if !g.leq(x, tol)? {
                return Ok(false);
            }
        }
        if let Some(h) = &self.h {
            if !x.leq(h, tol)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Value of `x⁻p ⊕ q⁻x` at a regular `x`.
    pub fn objective(&self, x: &Matrix) -> Result<Scalar> {
        objective(&self.p, &self.q, x)
    }
}

/// Optimum and complete set of minimizers `{generator ⊗ u : u_lo ≤ u ≤ u_hi}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSet {
    pub theta: Scalar,
    pub generator: Matrix,
    pub u_lo: Matrix,
    pub u_hi: Matrix,
    pub x_lo: Matrix,
    pub x_hi: Matrix,
}

impl SolutionSet {
    /// `generator ⊗ u`.
    pub fn point(&self, u: &Matrix) -> Result<Matrix> {
        self.generator.mul(u)
    }

    /// Corners of the `u` box plus its midpoint `(u_lo ⊗ u_hi)^{1/2}`,
    /// mapped through the generator. Zero components of `u_lo` are replaced
    /// by the matching `u_hi` component so that every sample is regular.
    pub fn sample_points(&self) -> Result<Vec<Matrix>> {
        let kind = self.u_lo.kind();
        let n = self.u_lo.rows();
        let lo: Vec<f64> = self
            .u_lo
            .values()
            .iter()
            .zip(self.u_hi.values())
            .map(|(&l, &h)| if kind.is_zero(l) { h } else { l })
            .collect();
        let hi = self.u_hi.values();
        let mut out = Vec::with_capacity((1 << n) + 1);
        for mask in 0u32..(1 << n) {
            let u: Vec<f64> = (0..n)
                .map(|i| if mask & (1 << i) == 0 { lo[i] } else { hi[i] })
                .collect();
            out.push(self.point(&Matrix::column(kind, &u)?)?);
        }
        let mid = lo
            .iter()
            .zip(hi)
            .map(|(&l, &h)| kind.pow(kind.mul(l, h), 0.5))
            .collect::<Result<Vec<_>>>()?;
        out.push(self.point(&Matrix::column(kind, &mid)?)?);
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InfeasibilityReason {
    /// `Tr(B) > 𝟙`: the constraint `B x ≤ x` has no regular solution.
    TrExceedsOne,
    /// `h⁻ B* g > 𝟙`: the bounds cannot be met together with `B x ≤ x`.
    BoundsIncompatible,
}

impl InfeasibilityReason {
    pub fn name(self) -> &'static str {
        match self {
            InfeasibilityReason::TrExceedsOne => "TrExceedsOne",
            InfeasibilityReason::BoundsIncompatible => "BoundsIncompatible",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfeasibilityReport {
    pub reason: InfeasibilityReason,
    /// The violating value (`Tr(B)` or `h⁻ B* g`), always above 𝟙.
    pub detail: Scalar,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Optimal(SolutionSet),
    Infeasible(InfeasibilityReport),
}

impl Outcome {
    pub fn optimal(&self) -> Option<&SolutionSet> {
        match self {
            Outcome::Optimal(s) => Some(s),
            Outcome::Infeasible(_) => None,
        }
    }

    pub fn infeasible(&self) -> Option<&InfeasibilityReport> {
        match self {
            Outcome::Optimal(_) => None,
            Outcome::Infeasible(r) => Some(r),
        }
    }

    pub fn into_optimal(self) -> Option<SolutionSet> {
        match self {
            Outcome::Optimal(s) => Some(s),
            Outcome::Infeasible(_) => None,
        }
    }
}

/// Result of the two independent membership tests in [`Solver::membership`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Membership {
    /// `x` is feasible and its objective value equals `θ`.
    pub by_objective: bool,
    /// `x = B* u` for some `u` in `[u_lo, u_hi]` (certified with `u = x`).
    pub by_generator: bool,
}

/// Solvers parameterized by the comparison tolerance used in the
/// feasibility conditions and membership tests.
#[derive(Debug, Clone, Copy, Default)]
pub struct Solver {
    tol: Tolerance,
}

fn scalar_product(row: &Matrix, col: &Matrix) -> Result<Scalar> {
    row.mul(col)?.to_scalar()
}

impl Solver {
    pub fn new(tol: Tolerance) -> Self {
        Solver { tol }
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tol
    }

    /// Minimizes `x⁻p ⊕ q⁻x` without constraints. Both `p` and `q` must be
    /// regular.
    pub fn unconstrained(&self, p: &Matrix, q: &Matrix) -> Result<SolutionSet> {
        let inst = ProblemInstance::new(p.clone(), q.clone())?;
        if !p.is_regular() {
            return Err(Error::NotRegular { what: "p" });
        }
        if !q.is_regular() {
            return Err(Error::NotRegular { what: "q" });
        }
        let kind = inst.kind();
        let theta = scalar_product(&q.conjugate()?, p)?.sqrt()?;
        let u_lo = p.scale(theta.inv()?)?;
        let u_hi = q.scale(theta)?;
        self.finish(theta, Matrix::identity(kind, inst.dim()), u_lo, u_hi)
    }

    /// Minimizes `x⁻p ⊕ q⁻x` subject to `B x ≤ x`.
    pub fn linear_constrained(&self, b: &Matrix, p: &Matrix, q: &Matrix) -> Result<Outcome> {
        let inst = ProblemInstance::new(p.clone(), q.clone())?.with_matrix(b.clone())?;
        require_nonzero_p_regular_q(&inst)?;
        let bstar = match self.closure(b)? {
            Ok(s) => s,
            Err(report) => return Ok(Outcome::Infeasible(report)),
        };
        let q_bstar = q.conjugate()?.mul(&bstar)?;
        let theta = scalar_product(&q_bstar, p)?.sqrt()?;
        let u_lo = p.scale(theta.inv()?)?;
        let u_hi = q_bstar.conjugate()?.scale(theta)?;
        self.finish(theta, bstar, u_lo, u_hi).map(Outcome::Optimal)
    }

    /// Minimizes `x⁻p ⊕ q⁻x` subject to `g ≤ x ≤ h`, all four vectors
    /// regular.
    pub fn box_constrained(
        &self,
        p: &Matrix,
        q: &Matrix,
        g: &Matrix,
        h: &Matrix,
    ) -> Result<Outcome> {
        let inst = ProblemInstance::new(p.clone(), q.clone())?
            .with_lower(g.clone())?
            .with_upper(h.clone())?;
        for (v, what) in [(p, "p"), (q, "q"), (g, "g"), (h, "h")] {
            if !v.is_regular() {
                return Err(Error::NotRegular { what });
            }
        }
        let kind = inst.kind();
        let h_conj = h.conjugate()?;
        if !g.leq(h, self.tol)? {
            return Ok(Outcome::Infeasible(InfeasibilityReport {
                reason: InfeasibilityReason::BoundsIncompatible,
                detail: scalar_product(&h_conj, g)?,
            }));
        }
        let q_conj = q.conjugate()?;
        let theta = scalar_product(&q_conj, p)?
            .sqrt()?
            .add(scalar_product(&h_conj, p)?)?
            .add(scalar_product(&q_conj, g)?)?;
        let theta_inv = theta.inv()?;
        let u_lo = g.add(&p.scale(theta_inv)?)?;
        let u_hi = h_conj.add(&q_conj.scale(theta_inv)?)?.conjugate()?;
        self.finish(theta, Matrix::identity(kind, inst.dim()), u_lo, u_hi)
            .map(Outcome::Optimal)
    }

    /// The general problem. `p` must be non-zero, `q` (and `h`, when given)
    /// regular.
    pub fn general(
        &self,
        b: Option<&Matrix>,
        p: &Matrix,
        q: &Matrix,
        g: Option<&Matrix>,
        h: Option<&Matrix>,
    ) -> Result<Outcome> {
        let mut inst = ProblemInstance::new(p.clone(), q.clone())?;
        if let Some(b) = b {
            inst = inst.with_matrix(b.clone())?;
        }
        if let Some(g) = g {
            inst = inst.with_lower(g.clone())?;
        }
        if let Some(h) = h {
            inst = inst.with_upper(h.clone())?;
        }
        self.solve(&inst)
    }

    /// Solves an instance as the general problem.
    pub fn solve(&self, inst: &ProblemInstance) -> Result<Outcome> {
        require_nonzero_p_regular_q(inst)?;
        if let Some(h) = inst.upper() {
            if !h.is_regular() {
                return Err(Error::NotRegular { what: "h" });
            }
        }
        let kind = inst.kind();
        let n = inst.dim();
        let (p, q) = (inst.p(), inst.q());

        let bstar = match inst.matrix() {
            Some(b) => match self.closure(b)? {
                Ok(s) => s,
                Err(report) => return Ok(Outcome::Infeasible(report)),
            },
            None => Matrix::identity(kind, n),
        };

        // h⁻B* is absent together with h; every term it enters drops out.
        let h_bstar = match inst.upper() {
            Some(h) => Some(h.conjugate()?.mul(&bstar)?),
            None => None,
        };
        if let (Some(hb), Some(g)) = (&h_bstar, inst.lower()) {
            let hbg = scalar_product(hb, g)?;
            if !hbg.leq_with(Scalar::one(kind), self.tol)? {
                return Ok(Outcome::Infeasible(InfeasibilityReport {
                    reason: InfeasibilityReason::BoundsIncompatible,
                    detail: hbg,
                }));
            }
        }

        let q_conj = q.conjugate()?;
        let q_bstar = q_conj.mul(&bstar)?;
        let mut theta = scalar_product(&q_bstar, p)?.sqrt()?;
        if let Some(hb) = &h_bstar {
            theta = theta.add(scalar_product(hb, p)?)?;
        }
        if let Some(g) = inst.lower() {
            theta = theta.add(scalar_product(&q_bstar, g)?)?;
        }

        let theta_inv = theta.inv()?;
        let mut u_lo = p.scale(theta_inv)?;
        if let Some(g) = inst.lower() {
            u_lo = g.add(&u_lo)?;
        }
        let mut upper_row = q_conj.scale(theta_inv)?;
        if let Some(h) = inst.upper() {
            upper_row = h.conjugate()?.add(&upper_row)?;
        }
        let u_hi = upper_row.mul(&bstar)?.conjugate()?;
        self.finish(theta, bstar, u_lo, u_hi).map(Outcome::Optimal)
    }

    /// `Ok(B*)` when `Tr(B) ≤ 𝟙`, otherwise the infeasibility report.
    fn closure(&self, b: &Matrix) -> Result<std::result::Result<Matrix, InfeasibilityReport>> {
        let lower = Matrix::zeros(b.kind(), b.rows(), 1);
        Ok(match solve_ax_plus_b_leq_x(b, &lower, self.tol)? {
            ConeOutcome::Solved(cone) => Ok(cone.generator),
            ConeOutcome::Infeasible { cycle_trace } => Err(InfeasibilityReport {
                reason: InfeasibilityReason::TrExceedsOne,
                detail: cycle_trace,
            }),
        })
    }

    fn finish(
        &self,
        theta: Scalar,
        generator: Matrix,
        u_lo: Matrix,
        u_hi: Matrix,
    ) -> Result<SolutionSet> {
        // A component whose bounds coincide in exact arithmetic can come out
        // inverted by an ulp or two; collapse it onto the upper bound.
        let kind = theta.kind();
        let scale = if kind.is_additive() {
            theta.value().abs()
        } else {
            0.0
        };
        let mut lo = u_lo.values().to_vec();
        for (l, &h) in lo.iter_mut().zip(u_hi.values()) {
            let slack = 16.0 * f64::EPSILON * (l.abs().max(h.abs()) + scale);
            if l.is_finite() && h.is_finite() && !kind.leq(*l, h, 0.0) && (*l - h).abs() <= slack {
                *l = h;
            }
        }
        let u_lo = Matrix::column(kind, &lo)?;
        if !u_lo.leq(&u_hi, self.tol)? {
            return Err(Error::Numerical(format!(
                "empty parameter box: u_lo = {u_lo}, u_hi = {u_hi}"
            )));
        }
        let x_lo = generator.mul(&u_lo)?;
        let x_hi = generator.mul(&u_hi)?;
        Ok(SolutionSet {
            theta,
            generator,
            u_lo,
            u_hi,
            x_lo,
            x_hi,
        })
    }

    /// Runs both membership tests for `x` against a solution of `inst`.
    pub fn membership(
        &self,
        sol: &SolutionSet,
        inst: &ProblemInstance,
        x: &Matrix,
    ) -> Result<Membership> {
        check_vector(x, inst.kind(), inst.dim(), "x")?;
        if !x.is_regular() {
            return Ok(Membership {
                by_objective: false,
                by_generator: false,
            });
        }
        let by_objective =
            inst.is_feasible(x, self.tol)? && inst.objective(x)?.approx_eq(sol.theta, self.tol)?;
        // x = B*u with u in the box iff B*x = x and u_lo ≤ x ≤ u_hi
        let by_generator = sol.point(x)?.approx_eq(x, self.tol)?
            && sol.u_lo.leq(x, self.tol)?
            && x.leq(&sol.u_hi, self.tol)?;
        Ok(Membership {
            by_objective,
            by_generator,
        })
    }

    pub fn contains(&self, sol: &SolutionSet, inst: &ProblemInstance, x: &Matrix) -> Result<bool> {
        let m = self.membership(sol, inst, x)?;
        Ok(m.by_objective && m.by_generator)
    }

    /// The two closed forms of the optimum under `B x ≤ x`:
    /// `((B*(q⁻B*)⁻)⁻p)^{1/2}` and `(q⁻B*p)^{1/2}`.
    pub fn theta_forms(&self, b: &Matrix, p: &Matrix, q: &Matrix) -> Result<(Scalar, Scalar)> {
        let inst = ProblemInstance::new(p.clone(), q.clone())?.with_matrix(b.clone())?;
        require_nonzero_p_regular_q(&inst)?;
        let bstar = match self.closure(b)? {
            Ok(s) => s,
            Err(report) => {
                return Err(Error::CycleTraceExceedsOne {
                    what: "B",
                    value: report.detail.value(),
                })
            }
        };
        let q_bstar = q.conjugate()?.mul(&bstar)?;
        let via_particular = bstar
            .mul(&q_bstar.conjugate()?)?
            .conjugate()?
            .mul(p)?
            .to_scalar()?
            .sqrt()?;
        let direct = scalar_product(&q_bstar, p)?.sqrt()?;
        Ok((via_particular, direct))
    }

    pub fn theta_forms_agree(&self, b: &Matrix, p: &Matrix, q: &Matrix) -> Result<bool> {
        let (a, c) = self.theta_forms(b, p, q)?;
        a.approx_eq(c, self.tol)
    }
}

fn require_nonzero_p_regular_q(inst: &ProblemInstance) -> Result<()> {
    if inst.p().is_zero() {
        return Err(Error::Zero { what: "p" });
    }
    if !inst.q().is_regular() {
        return Err(Error::NotRegular { what: "q" });
    }
    Ok(())
}

/// `x⁻p ⊕ q⁻x` for a regular `x`.
pub fn objective(p: &Matrix, q: &Matrix, x: &Matrix) -> Result<Scalar> {
    if !x.is_regular() {
        return Err(Error::NotRegular { what: "x" });
    }
    let left = scalar_product(&x.conjugate()?, p)?;
    let right = scalar_product(&q.conjugate()?, x)?;
    left.add(right)
}

pub fn solve_unconstrained(p: &Matrix, q: &Matrix) -> Result<SolutionSet> {
    Solver::default().unconstrained(p, q)
}

pub fn solve_linear_constrained(b: &Matrix, p: &Matrix, q: &Matrix) -> Result<Outcome> {
    Solver::default().linear_constrained(b, p, q)
}

pub fn solve_box_constrained(p: &Matrix, q: &Matrix, g: &Matrix, h: &Matrix) -> Result<Outcome> {
    Solver::default().box_constrained(p, q, g, h)
}

pub fn solve_general(
    b: Option<&Matrix>,
    p: &Matrix,
    q: &Matrix,
    g: Option<&Matrix>,
    h: Option<&Matrix>,
) -> Result<Outcome> {
    Solver::default().general(b, p, q, g, h)
}

pub fn contains(sol: &SolutionSet, inst: &ProblemInstance, x: &Matrix) -> Result<bool> {
    Solver::default().contains(sol, inst, x)
}

pub fn theta_forms_agree(b: &Matrix, p: &Matrix, q: &Matrix) -> Result<bool> {
    Solver::default().theta_forms_agree(b, p, q)
}
