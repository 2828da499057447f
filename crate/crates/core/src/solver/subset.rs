//! Minimum of `e(A)` or `e(A) + e(A^c)` over `m`-subsets, by include-first
//! depth-first search. Sets are visited in lexicographic order of their
//! sorted element lists and the incumbent is only replaced on strict
//! improvement, so the reported witness is the least optimal set.

use super::Objective;
use super::SolverError;
use crate::graph::{Graph, VertexSet, EXACT_MAX_N};

/// Default guard on `n`.
pub const SUBSET_MAX_N: usize = 24;

pub fn solve_subset(
    g: &Graph,
    m: usize,
    objective: Objective,
) -> Result<(VertexSet, usize), SolverError> {
    solve_subset_with(g, m, objective, SUBSET_MAX_N)
}

/// As [`solve_subset`] with an explicit guard (capped at 64).
pub fn solve_subset_with(
    g: &Graph,
    m: usize,
    objective: Objective,
    max_n: usize,
) -> Result<(VertexSet, usize), SolverError> {
    let n = g.n();
    let limit = max_n.min(EXACT_MAX_N);
    if n > limit {
        return Err(SolverError::GuardExceeded { n, limit });
    }
    if m > n {
        return Err(SolverError::BadArgument(format!(
            "subset size {m} exceeds n = {n}"
        )));
    }
    let masks = g.masks();
    let mut s = Search {
        masks: &masks,
        n,
        m,
        two_sided: objective == Objective::TwoSided,
        best: usize::MAX,
        best_set: 0,
    };
    s.run(0, 0, 0, 0, 0);
    Ok((VertexSet::from_mask(s.best_set), s.best))
}

struct Search<'a> {
    masks: &'a [u64],
    n: usize,
    m: usize,
    two_sided: bool,
    best: usize,
    best_set: u64,
}

impl Search<'_> {
    /// Lower bound on the cost added by vertices `v..n`.
    fn remaining_bound(&self, v: usize, inside: u64, outside: u64, taken: usize) -> usize {
        let need = self.m - taken;
        let mut into_a: Vec<usize> = (v..self.n)
            .map(|u| (self.masks[u] & inside).count_ones() as usize)
            .collect();
        if !self.two_sided {
            into_a.sort_unstable();
            return into_a[..need].iter().sum();
        }
        (v..self.n)
            .zip(into_a)
            .map(|(u, a)| a.min((self.masks[u] & outside).count_ones() as usize))
            .sum()
    }

    fn run(&mut self, v: usize, inside: u64, outside: u64, taken: usize, cost: usize) {
        let leaf = if self.two_sided {
            v == self.n
        } else {
            taken == self.m
        };
        if leaf {
            if cost < self.best {
                self.best = cost;
                self.best_set = inside;
            }
            return;
        }
        if cost + self.remaining_bound(v, inside, outside, taken) >= self.best {
            return;
        }
        let bit = 1u64 << v;
        if taken < self.m {
            let added = (self.masks[v] & inside).count_ones() as usize;
            self.run(v + 1, inside | bit, outside, taken + 1, cost + added);
        }
        if self.n - v > self.m - taken {
            let added = if self.two_sided {
                (self.masks[v] & outside).count_ones() as usize
            } else {
                0
            };
            self.run(v + 1, inside, outside | bit, taken, cost + added);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, cycle};

    #[test]
    fn examples() {
        let c5 = cycle(5).unwrap();
        let (a, c) = solve_subset(&c5, 2, Objective::Sparse).unwrap();
        assert_eq!((a.to_vec(), c), (vec![0, 2], 0));
        assert_eq!(solve_subset(&c5, 3, Objective::TwoSided).unwrap().1, 1);
        let k31 = complete_bipartite(3, 1).unwrap();
        let (a, c) = solve_subset(&k31, 3, Objective::TwoSided).unwrap();
        assert_eq!((a.to_vec(), c), (vec![0, 1, 2], 0));
    }

    #[test]
    fn extremes() {
        let c5 = cycle(5).unwrap();
        assert_eq!(solve_subset(&c5, 0, Objective::TwoSided).unwrap().1, 5);
        assert_eq!(solve_subset(&c5, 5, Objective::TwoSided).unwrap().1, 5);
        assert_eq!(solve_subset(&c5, 5, Objective::Sparse).unwrap().1, 5);
        assert_eq!(
            solve_subset(&c5, 0, Objective::Sparse).unwrap(),
            (VertexSet::new(), 0)
        );
        assert!(solve_subset(&c5, 6, Objective::Sparse).is_err());
    }
}
