//! The `solve`, `verify` and `plot` subcommands as plain functions.

use std::fmt::Write;
use std::path::Path;

use tropopt_core::location::solve_location_with;
use tropopt_core::oracle::MAX_DIM;
use tropopt_core::{
    verify as run_oracle, Error, GridSpec, LocationOutcome, Matrix, Outcome, SemifieldKind, Solver,
    Tolerance,
};

use crate::problem_file::{render, ProblemFile, ProblemType};
use crate::{plot, report, CliError, EXIT_NEGATIVE, EXIT_OK};

/// Text to print and the process exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

pub fn load(path: &Path, semifield: Option<SemifieldKind>) -> Result<ProblemFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(ProblemFile::parse(&text, semifield)?)
}

pub fn tolerance(epsilon: Option<f64>) -> Result<Tolerance, CliError> {
    match epsilon {
        None => Ok(Tolerance::Policy),
        Some(e) if e.is_finite() && e >= 0.0 => Ok(Tolerance::Fixed(e)),
        Some(e) => Err(CliError::Usage(format!(
            "epsilon must be finite and non-negative, got {e}"
        ))),
    }
}

fn column(kind: SemifieldKind, v: &Option<Vec<f64>>) -> Result<Matrix, CliError> {
    let v = v.as_deref().expect("required field checked by the parser");
    Ok(Matrix::column(kind, v)?)
}

pub fn solve(file: &ProblemFile, tol: Tolerance) -> Result<Output, CliError> {
    let solver = Solver::new(tol);
    let kind = file.semifield;
    let outcome = match file.problem {
        ProblemType::Location => {
            let value = match solve_location_with(&file.location()?, tol)? {
                LocationOutcome::Optimal(sol) => (report::location(&sol), EXIT_OK),
                LocationOutcome::Infeasible(r) => {
                    (report::infeasible(file.problem, &r), EXIT_NEGATIVE)
                }
            };
            return Ok(Output {
                text: render(&value.0),
                code: value.1,
            });
        }
        ProblemType::Unconstrained => Outcome::Optimal(
            solver.unconstrained(&column(kind, &file.p)?, &column(kind, &file.q)?)?,
        ),
        ProblemType::Linear => {
            let b = Matrix::from_rows(kind, file.b.as_deref().expect("required"))?;
            solver.linear_constrained(&b, &column(kind, &file.p)?, &column(kind, &file.q)?)?
        }
        ProblemType::Box => solver.box_constrained(
            &column(kind, &file.p)?,
            &column(kind, &file.q)?,
            &column(kind, &file.g)?,
            &column(kind, &file.h)?,
        )?,
        ProblemType::General => solver.solve(&file.instance()?)?,
    };
    let (value, code) = match &outcome {
        Outcome::Optimal(sol) => (report::optimal(file.problem, sol), EXIT_OK),
        Outcome::Infeasible(r) => (report::infeasible(file.problem, r), EXIT_NEGATIVE),
    };
    Ok(Output {
        text: render(&value),
        code,
    })
}

/// Grid bounds requested on the command line. A single value applies to
/// every coordinate.
#[derive(Debug, Clone, Default)]
pub struct GridRequest {
    pub step: Option<f64>,
    pub lower: Option<Vec<f64>>,
    pub upper: Option<Vec<f64>>,
}

fn broadcast(v: &[f64], n: usize, flag: &str) -> Result<Vec<f64>, CliError> {
    match v.len() {
        1 => Ok(vec![v[0]; n]),
        len if len == n => Ok(v.to_vec()),
        len => Err(CliError::Usage(format!(
            "{flag} has {len} values, expected 1 or {n}"
        ))),
    }
}

fn grid_error(e: Error) -> CliError {
    match e {
        Error::GridTooLarge {
            points,
            limit,
            suggested_step,
        } => CliError::Usage(format!(
            "grid guard: {points} points exceed the limit of {limit}; rerun with --grid-step {}",
            crate::number::fmt(suggested_step)
        )),
        Error::GridDimension { dim } => CliError::Usage(format!(
            "grid guard: brute-force search handles n ≤ {MAX_DIM}, the problem has n = {dim}"
        )),
        other => CliError::Core(other),
    }
}

fn build_grid(file: &ProblemFile, req: &GridRequest) -> Result<GridSpec, CliError> {
    let n = file.dim();
    if n > MAX_DIM {
        return Err(grid_error(Error::GridDimension { dim: n }));
    }
    let step = req.step.unwrap_or(GridSpec::DEFAULT_STEP);
    let lower = req
        .lower
        .as_deref()
        .map(|v| broadcast(v, n, "--grid-lo"))
        .transpose()?;
    let upper = req
        .upper
        .as_deref()
        .map(|v| broadcast(v, n, "--grid-hi"))
        .transpose()?;
    let grid = match (lower, upper) {
        (Some(lo), Some(hi)) => GridSpec::new(lo, hi, step),
        (lo, hi) => GridSpec::for_instance(&file.instance()?, step)
            .and_then(|d| GridSpec::new(lo.unwrap_or(d.lower), hi.unwrap_or(d.upper), step)),
    };
    grid.map_err(grid_error)
}

/// Runs the solver and the grid search and reports whether they agree.
pub fn verify(file: &ProblemFile, tol: Tolerance, req: &GridRequest) -> Result<Output, CliError> {
    let grid = build_grid(file, req)?;
    let inst = file.instance()?;
    let v = run_oracle(&inst, &grid, tol).map_err(grid_error)?;
    let fmt = crate::number::fmt;

    let mut agree = v.agrees();
    let mut text = String::new();
    match &v.outcome {
        Outcome::Optimal(sol) => {
            let theta = fmt(sol.theta.value());
            let status = if agree { "agree" } else { "disagree" };
            match v.oracle.min {
                Some(m) if !v.minima_agree => {
                    let _ = writeln!(
                        text,
                        "{status}: θ = {theta}, grid minimum = {}",
                        fmt(m.value())
                    );
                }
                None => {
                    let _ = writeln!(text, "{status}: θ = {theta}, but no grid point is feasible");
                }
                _ => {
                    let _ = writeln!(text, "{status}: θ = {theta}");
                }
            }
        }
        Outcome::Infeasible(r) => {
            let reason = r.reason.name();
            if agree {
                let _ = writeln!(text, "agree: infeasible ({reason}), no feasible grid point");
            } else {
                let _ = writeln!(
                    text,
                    "disagree: solver reports infeasible ({reason}), grid has {} feasible points",
                    v.oracle.feasible_points
                );
            }
        }
    }
    let _ = writeln!(
        text,
        "grid: {} points, step {}, {} feasible",
        grid.point_count(),
        fmt(grid.step),
        v.oracle.feasible_points
    );
    if v.outcome.optimal().is_some() {
        let _ = writeln!(
            text,
            "grid minimizers in the solution set: {} of {}",
            v.argmins_contained,
            v.oracle.argmins.len()
        );
        let _ = writeln!(
            text,
            "sampled solutions attaining θ: {} of {}",
            v.samples_attaining, v.samples_total
        );
    }

    if file.problem == ProblemType::Location {
        let closed = solve_location_with(&file.location()?, tol)?;
        let same = match (&closed, &v.outcome) {
            (LocationOutcome::Optimal(a), Outcome::Optimal(b)) => {
                a.theta == b.theta.value()
                    && a.x_lower == b.x_lo.values()
                    && a.x_upper == b.x_hi.values()
            }
            (LocationOutcome::Infeasible(a), Outcome::Infeasible(b)) => a.reason == b.reason,
            _ => false,
        };
        agree &= same;
        let _ = writeln!(
            text,
            "closed form {} the tropical solver",
            if same { "matches" } else { "differs from" }
        );
    }
    Ok(Output {
        text,
        code: if agree { EXIT_OK } else { EXIT_NEGATIVE },
    })
}

pub fn plot(file: &ProblemFile, tol: Tolerance) -> Result<Output, CliError> {
    Ok(Output {
        text: plot::render(file, tol)?,
        code: EXIT_OK,
    })
}
