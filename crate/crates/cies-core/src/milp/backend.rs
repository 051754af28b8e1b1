//! External solver invocation.
//!
//! The backend shells out to a user-configured executable through a command
//! template with `{model}` and `{solution}` placeholders. Any solver that
//! reads the exported LP subset and emits `name value` pairs qualifies; the
//! repository ships a scipy/HiGHS adapter at tools/solve_lp.py.

use std::path::Path;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::ir::{ModelError, ModelIR};
use super::lp::export_lp;
use super::solution::{parse_solution, ParsedSolution};

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("model error: {0}")]
    Model(#[from] ModelError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("solver command is empty")]
    EmptyCommand,
    #[error("solver timed out after {0} s")]
    Timeout(u64),
    #[error("solver exited with status {status}: {stderr}")]
    SolverFailed { status: i32, stderr: String },
    #[error("solver produced no solution file")]
    NoSolution,
}

/// Backend configuration, normally taken from the scenario config.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolverBackendConfig {
    /// Command template; `{model}` and `{solution}` are replaced by file
    /// paths. Tokens are split on whitespace (no shell).
    pub command: String,
    #[serde(default = "default_timeout")]
    pub timeout_s: u64,
    /// Backend declares it may omit variables from the solution file.
    #[serde(default)]
    pub partial_output: bool,
}

fn default_timeout() -> u64 {
    300
}

impl Default for SolverBackendConfig {
    fn default() -> Self {
        Self {
            command: "python3 tools/solve_lp.py {model} {solution}".into(),
            timeout_s: default_timeout(),
            partial_output: false,
        }
    }
}

#[derive(Debug)]
pub struct SolveOutcome {
    pub solution: ParsedSolution,
    pub wall_time_s: f64,
    pub solver_log: String,
}

/// Export `model`, run the configured solver, and parse the bound solution.
pub fn solve(model: &ModelIR, config: &SolverBackendConfig) -> Result<SolveOutcome, SolveError> {
    let dir = tempfile::tempdir()?;
    let model_path = dir.path().join("model.lp");
    let solution_path = dir.path().join("solution.txt");
    std::fs::write(&model_path, export_lp(model)?)?;
    let started = Instant::now();
    let log = run_command(&config.command, &model_path, &solution_path, config.timeout_s)?;
    let wall_time_s = started.elapsed().as_secs_f64();
    let text = std::fs::read_to_string(&solution_path).map_err(|_| SolveError::NoSolution)?;
    let solution = parse_solution(&text, model, config.partial_output)?;
    Ok(SolveOutcome {
        solution,
        wall_time_s,
        solver_log: log,
    })
}

fn run_command(
    template: &str,
    model: &Path,
    solution: &Path,
    timeout_s: u64,
) -> Result<String, SolveError> {
    let tokens: Vec<String> = template
        .split_whitespace()
        .map(|t| {
            t.replace("{model}", &model.to_string_lossy())
                .replace("{solution}", &solution.to_string_lossy())
        })
        .collect();
    let (program, args) = tokens.split_first().ok_or(SolveError::EmptyCommand)?;
    let mut child = Command::new(program)
        .args(args)
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()?;

    let deadline = Instant::now() + Duration::from_secs(timeout_s);
    loop {
        if let Some(status) = child.try_wait()? {
            let output = child.wait_with_output()?;
            let stderr = String::from_utf8_lossy(&output.stderr).into_owned();
            let stdout = String::from_utf8_lossy(&output.stdout).into_owned();
            if !status.success() {
                return Err(SolveError::SolverFailed {
                    status: status.code().unwrap_or(-1),
                    stderr: format!("{stderr}{stdout}"),
                });
            }
            return Ok(format!("{stdout}{stderr}"));
        }
        if Instant::now() >= deadline {
            let _ = child.kill();
            let _ = child.wait();
            return Err(SolveError::Timeout(timeout_s));
        }
        std::thread::sleep(Duration::from_millis(20));
    }
}
