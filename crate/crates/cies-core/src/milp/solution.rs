//! Solution-file parsing: one `name value` pair per line, `#` comments.

use super::ir::{ModelError, ModelIR, VarKind};

/// Integrality tolerance on parsed binary values.
pub const INTEGRALITY_TOL: f64 = 1e-5;
/// Bound-violation tolerance on parsed values.
pub const BOUND_TOL: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct ParsedSolution {
    /// One value per model variable, indexed by `VarId`.
    pub values: Vec<f64>,
    /// Objective reported by the solver, if present in the file.
    pub solver_objective: Option<f64>,
    /// Variables the backend left unbound (only allowed with partial output).
    pub warnings: Vec<String>,
}

/// Bind a solver solution file to the model's variables.
///
/// Every model variable must be assigned unless `partial_output` is set, in
/// which case missing variables default to 0 with a warning. Binary values
/// are rounded within [`INTEGRALITY_TOL`]; values outside declared bounds by
/// more than [`BOUND_TOL`] are rejected.
pub fn parse_solution(
    text: &str,
    model: &ModelIR,
    partial_output: bool,
) -> Result<ParsedSolution, ModelError> {
    let mut values = vec![f64::NAN; model.num_vars()];
    let mut solver_objective = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let mut it = comment.split_whitespace();
            if it.next() == Some("objective") {
                if let Some(v) = it.next().and_then(|v| v.parse::<f64>().ok()) {
                    solver_objective = Some(v);
                }
            }
            continue;
        }
        let mut parts = line.split_whitespace();
        let (name, value) = match (parts.next(), parts.next(), parts.next()) {
            (Some(n), Some(v), None) => (n, v),
            _ => {
                return Err(ModelError::Parse(format!(
                    "line {}: expected `name value`, got `{line}`",
                    lineno + 1
                )))
            }
        };
        let value: f64 = value.parse().map_err(|_| {
            ModelError::Parse(format!("line {}: bad number `{value}`", lineno + 1))
        })?;
        let id = model.lookup(name).ok_or_else(|| {
            ModelError::Parse(format!("line {}: unknown variable `{name}`", lineno + 1))
        })?;
        values[id] = value;
    }

    let mut warnings = Vec::new();
    for (id, var) in model.vars().iter().enumerate() {
        let v = &mut values[id];
        if v.is_nan() {
            if partial_output {
                warnings.push(format!("variable `{}` missing; defaulted to 0", var.name));
                *v = 0.0;
            } else {
                return Err(ModelError::Parse(format!(
                    "no binding for variable `{}`",
                    var.name
                )));
            }
        }
        if var.kind == VarKind::Binary {
            let rounded = v.round();
            if (*v - rounded).abs() > INTEGRALITY_TOL {
                return Err(ModelError::Parse(format!(
                    "binary `{}` has fractional value {v}",
                    var.name
                )));
            }
            *v = rounded;
        }
        if *v < var.lower - BOUND_TOL || *v > var.upper + BOUND_TOL {
            return Err(ModelError::Parse(format!(
                "variable `{}` value {v} outside bounds [{}, {}]",
                var.name, var.lower, var.upper
            )));
        }
        // Snap residual bound noise so downstream audits see admissible values.
        *v = v.clamp(var.lower, var.upper);
    }
    Ok(ParsedSolution {
        values,
        solver_objective,
        warnings,
    })
}
