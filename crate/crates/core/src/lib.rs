//! Closed-form solvers for constrained tropical optimization problems
//!
//! ```text
//! minimize    x⁻p ⊕ q⁻x
//! subject to  B x ⊕ g ≤ x,  x ≤ h
//! ```
//!
//! over an idempotent semifield, and a constrained minimax single-facility
//! location solver for the Chebyshev metric built on top of them.
//!
//! ```
//! use tropopt_core::{Matrix, SemifieldKind::MaxPlus, solve_unconstrained};
//!
//! let p = Matrix::column(MaxPlus, &[3.0, 14.0]).unwrap();
//! let q = Matrix::column(MaxPlus, &[-12.0, -4.0]).unwrap();
//! let sol = solve_unconstrained(&p, &q).unwrap();
//! assert_eq!(sol.theta.value(), 9.0);
//! assert_eq!(sol.x_lo.values(), &[-6.0, 5.0]);
//! assert_eq!(sol.x_hi.values(), &[-3.0, 5.0]);
//! ```

pub mod error;
pub mod linalg;
pub mod linear_systems;
pub mod location;
pub mod optimization;
pub mod oracle;
pub mod semifield;

pub use error::{Error, Result};
pub use linalg::Matrix;
pub use linear_systems::{
    solve_ax_leq_d, solve_ax_plus_b_leq_x, ConeOutcome, ConeSolution, UpperSolution,
};
pub use location::{LocationInstance, LocationOutcome, LocationSolution};
pub use optimization::{
    contains, objective, solve_box_constrained, solve_general, solve_linear_constrained,
    solve_unconstrained, theta_forms_agree, InfeasibilityReason, InfeasibilityReport, Membership,
    Outcome, ProblemInstance, SolutionSet, Solver,
};
pub use oracle::{brute_force_min, verify, GridSpec, OracleResult, Verification};
pub use semifield::{Scalar, SemifieldKind, Tolerance};
