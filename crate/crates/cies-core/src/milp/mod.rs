//! MILP assembly, LP export, solution parsing, objective recomputation,
//! and feasibility auditing for the scheduling problem.

pub mod assemble;
pub mod audit;
pub mod backend;
pub mod ir;
pub mod lp;
pub mod solution;

pub use assemble::{assemble_model, AssembledModel, Scenario};
pub use audit::{audit_feasibility, evaluate_objective, CostBreakdown, ScheduleSolution, Violation};
pub use backend::{solve, SolveError, SolveOutcome, SolverBackendConfig};
pub use ir::{Constraint, LinExpr, ModelError, ModelIR, Sense, VarId, VarKind, Variable};
pub use lp::export_lp;
pub use solution::{parse_solution, ParsedSolution};
