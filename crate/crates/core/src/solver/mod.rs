//! Exact minimization of class-edge functionals over constrained vertex
//! partitions and fixed-size vertex subsets.

mod bnb;
mod brute;
mod subset;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};

pub use bnb::{solve, solve_with, SolveOptions};
pub use brute::{brute_force_solve, brute_force_subset, BRUTE_PARTITION_MAX_N, BRUTE_SUBSET_MAX_N};
pub use subset::{solve_subset, solve_subset_with, SUBSET_MAX_N};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("n = {n} exceeds the guard of {limit}; raise the limit explicitly to continue")]
    GuardExceeded { n: usize, limit: usize },
    #[error("infeasible size constraint: {0}")]
    InfeasibleSpec(String),
    #[error("invalid argument: {0}")]
    BadArgument(String),
}

/// Class-size constraint of a partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SizeSpec {
    /// `k` classes of size `n/k`; when `k` does not divide `n` the first
    /// `n mod k` classes get the extra vertex.
    Balanced(usize),
    /// Prescribed size of every class.
    Exact(Vec<usize>),
    /// `k` classes of arbitrary (possibly zero) size.
    Free(usize),
}

impl SizeSpec {
    pub fn k(&self) -> usize {
        match self {
            SizeSpec::Balanced(k) | SizeSpec::Free(k) => *k,
            SizeSpec::Exact(sizes) => sizes.len(),
        }
    }

    /// Per-class `(min, max)` sizes on `n` vertices. With `strict`, a
    /// balanced spec whose `k` does not divide `n` is rejected.
    pub fn bounds(&self, n: usize, strict: bool) -> Result<Vec<(usize, usize)>, SolverError> {
        let k = self.k();
        if k == 0 {
            return Err(SolverError::InfeasibleSpec(
                "at least one class is required".into(),
            ));
        }
        match self {
            SizeSpec::Balanced(_) => {
                if strict && !n.is_multiple_of(k) {
                    return Err(SolverError::InfeasibleSpec(format!(
                        "{k} does not divide n = {n}"
                    )));
                }
                let (q, r) = (n / k, n % k);
                Ok((0..k)
                    .map(|i| if i < r { (q + 1, q + 1) } else { (q, q) })
                    .collect())
            }
            SizeSpec::Exact(sizes) => {
                let total: usize = sizes.iter().sum();
                if total != n {
                    return Err(SolverError::InfeasibleSpec(format!(
                        "class sizes sum to {total}, not n = {n}"
                    )));
                }
                Ok(sizes.iter().map(|&s| (s, s)).collect())
            }
            SizeSpec::Free(_) => Ok(vec![(0, n); k]),
        }
    }

    /// Default vertex-count guard of the exact solver for this spec.
    pub fn default_guard(&self) -> usize {
        match self {
            SizeSpec::Balanced(2) => 24,
            SizeSpec::Balanced(3) => 18,
            _ => 16,
        }
    }

    pub fn is_free(&self) -> bool {
        matches!(self, SizeSpec::Free(_))
    }
}

impl fmt::Display for SizeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SizeSpec::Balanced(k) => write!(f, "balanced:{k}"),
            SizeSpec::Free(k) => write!(f, "free:{k}"),
            SizeSpec::Exact(sizes) => {
                let parts: Vec<String> = sizes.iter().map(usize::to_string).collect();
                write!(f, "exact:{}", parts.join(","))
            }
        }
    }
}

impl FromStr for SizeSpec {
    type Err = SolverError;

    /// Parses `balanced:K`, `free:K` or `exact:a,b,...`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SolverError::BadArgument(format!("unrecognised size spec `{s}`"));
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        match kind.trim() {
            "balanced" => Ok(SizeSpec::Balanced(num(rest)?)),
            "free" => Ok(SizeSpec::Free(num(rest)?)),
            "exact" => Ok(SizeSpec::Exact(
                rest.split(',').map(num).collect::<Result<_, _>>()?,
            )),
            _ => Err(bad()),
        }
    }
}

/// Which `ℓ_p` aggregate of the per-class vector is minimized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Norm {
    /// Finite `p >= 1`, compared through `Σ e_i^p`.
    P(u32),
    Inf,
}

impl Norm {
    pub const L1: Norm = Norm::P(1);
    pub const L2: Norm = Norm::P(2);
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Norm::P(p) => write!(f, "{p}"),
            Norm::Inf => f.write_str("inf"),
        }
    }
}

impl FromStr for Norm {
    type Err = SolverError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "max" | "∞" => Ok(Norm::Inf),
            t => match t.parse::<u32>() {
                Ok(p) if p >= 1 => Ok(Norm::P(p)),
                _ => Err(SolverError::BadArgument(format!("unrecognised norm `{s}`"))),
            },
        }
    }
}

/// Vertex-to-class assignment.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition {
    assign: Vec<usize>,
    k: usize,
}

impl Partition {
    pub fn new(assign: Vec<usize>, k: usize) -> Result<Self, SolverError> {
        if let Some(&c) = assign.iter().find(|&&c| c >= k) {
            return Err(SolverError::BadArgument(format!(
                "class index {c} out of range for {k} classes"
            )));
        }
        Ok(Self { assign, k })
    }

    /// Two classes from the members of the first.
    pub fn from_set(n: usize, first: &VertexSet) -> Self {
        let assign = (0..n).map(|v| usize::from(!first.contains(v))).collect();
        Self { assign, k: 2 }
    }

    pub fn from_classes(n: usize, classes: &[VertexSet]) -> Result<Self, SolverError> {
        let mut assign = vec![usize::MAX; n];
        for (c, set) in classes.iter().enumerate() {
            for v in set.iter() {
                if v >= n || assign[v] != usize::MAX {
                    return Err(SolverError::BadArgument(format!(
                        "vertex {v} is out of range or in two classes"
                    )));
                }
                assign[v] = c;
            }
        }
        if assign.contains(&usize::MAX) {
            return Err(SolverError::BadArgument(
                "classes do not cover every vertex".into(),
            ));
        }
        Ok(Self {
            assign,
            k: classes.len(),
        })
    }

    pub fn assign(&self) -> &[usize] {
        &self.assign
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.assign.len()
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.assign[v]
    }

    pub fn class(&self, c: usize) -> VertexSet {
        self.assign
            .iter()
            .enumerate()
            .filter(|&(_, &a)| a == c)
            .map(|(v, _)| v)
            .collect()
    }

    pub fn classes(&self) -> Vec<VertexSet> {
        (0..self.k).map(|c| self.class(c)).collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &c in &self.assign {
            sizes[c] += 1;
        }
        sizes
    }

    /// Whether the class sizes meet `spec` (balanced accepts any placement
    /// of the larger classes).
    pub fn satisfies(&self, spec: &SizeSpec) -> bool {
        if spec.k() != self.k {
            return false;
        }
        let n = self.n();
        let mut sizes = self.sizes();
        match spec {
            SizeSpec::Free(_) => true,
            SizeSpec::Exact(s) => &sizes == s,
            SizeSpec::Balanced(k) => {
                sizes.sort_unstable();
                let (q, r) = (n / k, n % k);
                sizes
                    .iter()
                    .enumerate()
                    .all(|(i, &s)| s == if i + r >= *k { q + 1 } else { q })
            }
        }
    }

    pub fn swap(&mut self, u: usize, v: usize) {
        self.assign.swap(u, v);
    }

    pub fn set(&mut self, v: usize, c: usize) {
        assert!(c < self.k);
        self.assign[v] = c;
    }
}

/// Class-edge counts of a partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CostVector {
    pub per_class: Vec<usize>,
}

impl CostVector {
    pub fn of(g: &Graph, partition: &Partition) -> Self {
        assert_eq!(g.n(), partition.n(), "partition must cover the graph");
        let mut per_class = vec![0; partition.k()];
        for (u, v) in g.edges() {
            let c = partition.class_of(u);
            if c == partition.class_of(v) {
                per_class[c] += 1;
            }
        }
        Self { per_class }
    }

    /// `ℓ_1` norm, the number of class-edges.
    pub fn total(&self) -> usize {
        self.per_class.iter().sum()
    }

    /// `ℓ_∞` norm.
    pub fn max(&self) -> usize {
        self.per_class.iter().copied().max().unwrap_or(0)
    }

    pub fn power_sum(&self, p: u32) -> u128 {
        self.per_class.iter().map(|&e| (e as u128).pow(p)).sum()
    }

    /// `‖e‖_p^p` for finite `p`, the maximum for `p = ∞`.
    pub fn value(&self, norm: Norm) -> u128 {
        match norm {
            Norm::P(p) => self.power_sum(p),
            Norm::Inf => self.max() as u128,
        }
    }

    /// Total order used by the solvers: the value for finite `p`, the
    /// descending sorted vector for `p = ∞`.
    pub fn key(&self, norm: Norm) -> Vec<u128> {
        key_of(&self.per_class, norm)
    }
}

pub(crate) fn key_of(per_class: &[usize], norm: Norm) -> Vec<u128> {
    match norm {
        Norm::P(p) => vec![per_class.iter().map(|&e| (e as u128).pow(p)).sum()],
        Norm::Inf => {
            let mut v: Vec<u128> = per_class.iter().map(|&e| e as u128).collect();
            v.sort_unstable_by(|a, b| b.cmp(a));
            v
        }
    }
}

/// Objective of [`solve_subset`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Objective {
    /// `e(A)`.
    Sparse,
    /// `e(A) + e(A^c)`.
    TwoSided,
}

impl FromStr for Objective {
    type Err = SolverError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "sparse" => Ok(Objective::Sparse),
            "two_sided" | "two-sided" => Ok(Objective::TwoSided),
            _ => Err(SolverError::BadArgument(format!(
                "unrecognised objective `{s}`"
            ))),
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::Sparse => "sparse",
            Objective::TwoSided => "two_sided",
        })
    }
}

/// Objective value of `a` on `g`.
pub fn subset_cost(g: &Graph, a: &VertexSet, objective: Objective) -> usize {
    let inside = crate::graph::edges_within(g, a);
    match objective {
        Objective::Sparse => inside,
        Objective::TwoSided => inside + crate::graph::edges_within(g, &a.complement(g.n())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_parsing_round_trips() {
        for s in ["balanced:2", "free:3", "exact:3,1"] {
            assert_eq!(s.parse::<SizeSpec>().unwrap().to_string(), s);
        }
        assert!("balanced".parse::<SizeSpec>().is_err());
        assert!("weird:2".parse::<SizeSpec>().is_err());
        assert_eq!("inf".parse::<Norm>(), Ok(Norm::Inf));
        assert_eq!("2".parse::<Norm>(), Ok(Norm::L2));
        assert!("0".parse::<Norm>().is_err());
    }

    #[test]
    fn bounds() {
        assert_eq!(
            SizeSpec::Balanced(3).bounds(7, false).unwrap(),
            vec![(3, 3), (2, 2), (2, 2)]
        );
        assert!(SizeSpec::Balanced(3).bounds(7, true).is_err());
        assert!(SizeSpec::Exact(vec![2, 2]).bounds(5, false).is_err());
        assert!(SizeSpec::Free(0).bounds(5, false).is_err());
    }

    #[test]
    fn satisfies_accepts_any_placement_of_large_classes() {
        let p = Partition::new(vec![0, 1, 1, 1, 0], 2).unwrap();
        assert!(p.satisfies(&SizeSpec::Balanced(2)));
        assert!(!p.satisfies(&SizeSpec::Exact(vec![3, 2])));
        assert!(p.satisfies(&SizeSpec::Exact(vec![2, 3])));
        assert!(!Partition::new(vec![0, 0, 0, 1], 2)
            .unwrap()
            .satisfies(&SizeSpec::Balanced(2)));
    }

    #[test]
    fn cost_vector_norms() {
        let c = CostVector {
            per_class: vec![1, 3, 2],
        };
        assert_eq!(c.value(Norm::L1), 6);
        assert_eq!(c.value(Norm::L2), 14);
        assert_eq!(c.value(Norm::Inf), 3);
        assert_eq!(c.key(Norm::Inf), vec![3, 2, 1]);
    }
}
