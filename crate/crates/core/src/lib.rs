//! Balanced and unbalanced partition functionals for `K_{r+1}`-free graphs:
//! exact solvers, constructive heuristics, flag-style averaging checks and a
//! sweep harness over enumerated graphs.

pub mod flags;
pub mod gen;
pub mod graph;
pub mod heuristics;
pub mod lab;
pub mod solver;

/// Exact rational used for densities, bounds and residuals.
pub type Rational = num_rational::Ratio<i128>;
