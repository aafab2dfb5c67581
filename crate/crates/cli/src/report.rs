//! JSON solution reports.

use serde_json::{Map, Value};
use tropopt_core::{InfeasibilityReport, LocationSolution, Matrix, SemifieldKind, SolutionSet};

use crate::number::{rows_to_json, to_json, vec_to_json};
use crate::problem_file::ProblemType;

fn header(status: &str, problem: ProblemType, kind: SemifieldKind) -> Map<String, Value> {
    let mut map = Map::new();
    map.insert("status".into(), Value::String(status.into()));
    map.insert("problem".into(), Value::String(problem.tag().into()));
    map.insert("semifield".into(), Value::String(kind.tag().into()));
    map
}

fn column(m: &Matrix) -> Value {
    vec_to_json(m.values())
}

pub fn optimal(problem: ProblemType, sol: &SolutionSet) -> Value {
    let mut map = header("optimal", problem, sol.theta.kind());
    map.insert("theta".into(), to_json(sol.theta.value()));
    map.insert("u_lo".into(), column(&sol.u_lo));
    map.insert("u_hi".into(), column(&sol.u_hi));
    map.insert("x_lo".into(), column(&sol.x_lo));
    map.insert("x_hi".into(), column(&sol.x_hi));
    map.insert("generator".into(), rows_to_json(&sol.generator.to_rows()));
    Value::Object(map)
}

pub fn location(sol: &LocationSolution) -> Value {
    let mut map = header("optimal", ProblemType::Location, SemifieldKind::MaxPlus);
    map.insert("theta".into(), to_json(sol.theta));
    map.insert("u_lo".into(), vec_to_json(&sol.u_lower));
    map.insert("u_hi".into(), vec_to_json(&sol.u_upper));
    map.insert("x_lo".into(), vec_to_json(&sol.x_lower));
    map.insert("x_hi".into(), vec_to_json(&sol.x_upper));
    map.insert("p".into(), vec_to_json(&sol.p));
    map.insert("q".into(), vec_to_json(&sol.q));
    map.insert("b_star".into(), rows_to_json(&sol.b_star));
    Value::Object(map)
}

pub fn infeasible(problem: ProblemType, report: &InfeasibilityReport) -> Value {
    let mut map = header("infeasible", problem, report.detail.kind());
    map.insert("reason".into(), Value::String(report.reason.name().into()));
    map.insert("value".into(), to_json(report.detail.value()));
    Value::Object(map)
}
