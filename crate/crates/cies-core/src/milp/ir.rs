//! Solver-agnostic MILP intermediate representation: variables with bounds
//! and integrality, linear constraints, and a linear minimization objective.

use std::collections::HashMap;

use thiserror::Error;

pub type VarId = usize;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("duplicate variable name `{0}`")]
    DuplicateName(String),
    #[error("invalid variable name `{0}`")]
    InvalidName(String),
    #[error("bounds crossed for `{name}`: [{lower}, {upper}]")]
    BoundsCrossed { name: String, lower: f64, upper: f64 },
    #[error("unknown variable id {0}")]
    UnknownVar(VarId),
    #[error("non-finite coefficient on `{0}`")]
    BadCoefficient(String),
    #[error("export error: {0}")]
    Export(String),
    #[error("solution parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    Continuous,
    Binary,
}

#[derive(Debug, Clone)]
pub struct Variable {
    pub name: String,
    pub lower: f64,
    pub upper: f64,
    pub kind: VarKind,
}

/// Sparse linear expression over model variables.
#[derive(Debug, Clone, Default)]
pub struct LinExpr {
    pub terms: Vec<(VarId, f64)>,
}

impl LinExpr {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn term(var: VarId, coef: f64) -> Self {
        Self {
            terms: vec![(var, coef)],
        }
    }

    pub fn add(&mut self, var: VarId, coef: f64) -> &mut Self {
        self.terms.push((var, coef));
        self
    }

    pub fn evaluate(&self, values: &[f64]) -> f64 {
        self.terms.iter().map(|(v, c)| c * values[*v]).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

impl Sense {
    pub fn symbol(&self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Eq => "=",
            Sense::Ge => ">=",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub name: String,
    pub expr: LinExpr,
    pub sense: Sense,
    pub rhs: f64,
}

/// A full minimization model. Variable ids are dense indices in insertion
/// order, which also fixes the deterministic export ordering.
#[derive(Debug, Clone, Default)]
pub struct ModelIR {
    vars: Vec<Variable>,
    by_name: HashMap<String, VarId>,
    constraints: Vec<Constraint>,
    objective: LinExpr,
    objective_constant: f64,
}

fn name_ok(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl ModelIR {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_var(
        &mut self,
        name: impl Into<String>,
        lower: f64,
        upper: f64,
        kind: VarKind,
    ) -> Result<VarId, ModelError> {
        let name = name.into();
        if !name_ok(&name) {
            return Err(ModelError::InvalidName(name));
        }
        if self.by_name.contains_key(&name) {
            return Err(ModelError::DuplicateName(name));
        }
        if !(lower <= upper) {
            return Err(ModelError::BoundsCrossed { name, lower, upper });
        }
        let id = self.vars.len();
        self.by_name.insert(name.clone(), id);
        self.vars.push(Variable {
            name,
            lower,
            upper,
            kind,
        });
        Ok(id)
    }

    pub fn add_continuous(
        &mut self,
        name: impl Into<String>,
        lower: f64,
        upper: f64,
    ) -> Result<VarId, ModelError> {
        self.add_var(name, lower, upper, VarKind::Continuous)
    }

    pub fn add_binary(&mut self, name: impl Into<String>) -> Result<VarId, ModelError> {
        self.add_var(name, 0.0, 1.0, VarKind::Binary)
    }

    pub fn add_constraint(
        &mut self,
        name: impl Into<String>,
        expr: LinExpr,
        sense: Sense,
        rhs: f64,
    ) -> Result<(), ModelError> {
        let name = name.into();
        for (v, c) in &expr.terms {
            if *v >= self.vars.len() {
                return Err(ModelError::UnknownVar(*v));
            }
            if !c.is_finite() {
                return Err(ModelError::BadCoefficient(self.vars[*v].name.clone()));
            }
        }
        self.constraints.push(Constraint {
            name,
            expr,
            sense,
            rhs,
        });
        Ok(())
    }

    pub fn add_objective_term(&mut self, var: VarId, coef: f64) {
        self.objective.add(var, coef);
    }

    pub fn add_objective_constant(&mut self, value: f64) {
        self.objective_constant += value;
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn var(&self, id: VarId) -> &Variable {
        &self.vars[id]
    }

    pub fn lookup(&self, name: &str) -> Option<VarId> {
        self.by_name.get(name).copied()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective(&self) -> &LinExpr {
        &self.objective
    }

    pub fn objective_constant(&self) -> f64 {
        self.objective_constant
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn num_binaries(&self) -> usize {
        self.vars.iter().filter(|v| v.kind == VarKind::Binary).count()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    /// Objective value at a full assignment (includes the constant term).
    pub fn objective_value(&self, values: &[f64]) -> f64 {
        self.objective.evaluate(values) + self.objective_constant
    }
}
