//! Day-ahead scheduling engine for a community integrated energy system.
//!
//! The pipeline discretizes renewable output distributions into
//! probabilistic sequences, converts the spinning-reserve chance constraint
//! into deterministic linear rows, assembles the integrated-demand-response
//! scheduling problem as a mixed-integer linear program, solves it through a
//! pluggable external solver, and validates results with independent
//! auditing, Monte Carlo simulation, and a metaheuristic baseline.

pub mod quad;
pub mod uncertainty;
