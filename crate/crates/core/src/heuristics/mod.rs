//! Constructive partition procedures with certified costs.
//!
//! Every procedure returns a concrete partition or subset together with a
//! cost recomputed from it. Randomised procedures draw each trial from its
//! own xoshiro256** stream, obtained by repeated `jump()` from
//! `seed_from_u64(seed)`, and pick the winner by `(cost, partition)` so the
//! result does not depend on scheduling.

mod constructions;
mod local;

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256StarStar;
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet};
use crate::solver::{CostVector, Partition, SolverError};

pub use constructions::{
    biased_unbalanced, biased_unbalanced_trials, independent_bisection, neighborhood_bisection,
    random_balanced_kpartition, sparse_class_bisection, three_quarters_sparse,
    tripartition_via_independent, SparseSubset,
};
pub use local::local_search_swap;

/// Largest remainder handed to the exact solver inside the constructions.
pub const EXACT_SUBPROBLEM_MAX_N: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeuristicError {
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("vertex {v} has degree {degree}, above n/2 = {half}")]
    DegreeTooLarge {
        v: usize,
        degree: usize,
        half: usize,
    },
    #[error("alpha = {0} is outside (1/2, 1) or leaves too few vertices")]
    BadAlpha(String),
    #[error("the graph contains a triangle")]
    NotTriangleFree,
    #[error("invalid argument: {0}")]
    BadArgument(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// A partition with its recomputed cost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scored {
    pub partition: Partition,
    pub cost: CostVector,
}

impl Scored {
    pub fn new(g: &Graph, partition: Partition) -> Self {
        let cost = CostVector::of(g, &partition);
        Self { partition, cost }
    }
}

/// One independent generator per trial.
pub fn trial_streams(seed: u64, trials: usize) -> Vec<Xoshiro256StarStar> {
    let mut base = Xoshiro256StarStar::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            let stream = base.clone();
            base.jump();
            stream
        })
        .collect()
}

/// Maximum independent set: exact up to 64 vertices, greedy minimum-degree
/// beyond.
pub(crate) fn large_independent_set(g: &Graph) -> VertexSet {
    if g.is_exact_sized() {
        return crate::graph::max_independent_set(g).expect("exact-sized graph");
    }
    let n = g.n();
    let mut alive = VertexSet::full(n);
    let mut deg: Vec<usize> = g.degrees();
    let mut chosen = VertexSet::new();
    while let Some(v) = alive.iter().min_by_key(|&v| (deg[v], v)) {
        chosen.insert(v);
        let mut dead = vec![v];
        dead.extend(g.neighbor_iter(v).filter(|&u| alive.contains(u)));
        for &d in &dead {
            alive.remove(d);
        }
        for &d in &dead {
            for w in g.neighbor_iter(d) {
                if alive.contains(w) {
                    deg[w] -= 1;
                }
            }
        }
    }
    chosen
}
