//! Branch and bound over class assignments.
//!
//! A first pass in descending-degree order finds the optimal key. A second
//! pass walks vertices in natural order with classes tried in ascending order
//! and stops at the first leaf reaching that key, which is the
//! lexicographically least optimal assignment.

use std::cmp::Ordering;

use super::{key_of, CostVector, Norm, Partition, SizeSpec, SolverError};
use crate::graph::{Graph, EXACT_MAX_N};

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    /// Replaces `SizeSpec::default_guard` (still capped at 64).
    pub max_n: Option<usize>,
    /// Reject balanced specs whose `k` does not divide `n`.
    pub strict: bool,
}

/// Minimum of the selected norm over all partitions meeting `spec`.
pub fn solve(
    g: &Graph,
    spec: &SizeSpec,
    norm: Norm,
) -> Result<(Partition, CostVector), SolverError> {
    solve_with(g, spec, norm, &SolveOptions::default())
}

pub fn solve_with(
    g: &Graph,
    spec: &SizeSpec,
    norm: Norm,
    options: &SolveOptions,
) -> Result<(Partition, CostVector), SolverError> {
    let n = g.n();
    let limit = options
        .max_n
        .unwrap_or_else(|| spec.default_guard())
        .min(EXACT_MAX_N);
    if n > limit {
        return Err(SolverError::GuardExceeded { n, limit });
    }
    if let Norm::P(0) = norm {
        return Err(SolverError::BadArgument("p must be at least 1".into()));
    }
    let bounds = spec.bounds(n, options.strict)?;
    if bounds.iter().map(|b| b.0).sum::<usize>() > n
        || bounds.iter().map(|b| b.1).sum::<usize>() < n
    {
        return Err(SolverError::InfeasibleSpec(
            "class sizes cannot cover n".into(),
        ));
    }
    let masks = g.masks();

    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(masks[v].count_ones()), v));
    let mut search = Search::new(&masks, &bounds, norm, by_degree, Mode::Optimize);
    search.run(0);
    let target = search.best.take().expect("a feasible spec has a leaf");

    let mut search = Search::new(
        &masks,
        &bounds,
        norm,
        (0..n).collect(),
        Mode::FirstAt(target),
    );
    search.run(0);
    let assign = search
        .found
        .expect("the optimum is reachable in natural order");
    let partition = Partition::new(assign, bounds.len())?;
    let cost = CostVector::of(g, &partition);
    Ok((partition, cost))
}

enum Mode {
    Optimize,
    FirstAt(Vec<u128>),
}

struct Search<'a> {
    masks: &'a [u64],
    bounds: &'a [(usize, usize)],
    /// Nearest earlier class with identical size bounds.
    twin: Vec<Option<usize>>,
    norm: Norm,
    order: Vec<usize>,
    mode: Mode,
    assign: Vec<usize>,
    members: Vec<u64>,
    sizes: Vec<usize>,
    per_class: Vec<usize>,
    unassigned: u64,
    best: Option<Vec<u128>>,
    found: Option<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(
        masks: &'a [u64],
        bounds: &'a [(usize, usize)],
        norm: Norm,
        order: Vec<usize>,
        mode: Mode,
    ) -> Self {
        let k = bounds.len();
        let twin = (0..k)
            .map(|c| (0..c).rev().find(|&d| bounds[d] == bounds[c]))
            .collect();
        let n = masks.len();
        Self {
            masks,
            bounds,
            twin,
            norm,
            order,
            mode,
            assign: vec![usize::MAX; n],
            members: vec![0; k],
            sizes: vec![0; k],
            per_class: vec![0; k],
            unassigned: crate::graph::low_bits(n),
            best: None,
            found: None,
        }
    }

    fn done(&self) -> bool {
        self.found.is_some()
    }

    /// Lower bound on the key of every completion of the current node.
    fn bound(&self) -> Vec<u128> {
        let k = self.bounds.len();
        // every unassigned vertex adds at least its fewest edges into an open class
        let mut forced = 0usize;
        let mut rest = self.unassigned;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let m = (0..k)
                .filter(|&c| self.sizes[c] < self.bounds[c].1)
                .map(|c| (self.masks[u] & self.members[c]).count_ones() as usize)
                .min()
                .unwrap_or(0);
            forced += m;
        }
        let mut key = key_of(&self.per_class, self.norm);
        let total = self.per_class.iter().sum::<usize>() + forced;
        let (q, r) = (total / k, total % k);
        match self.norm {
            Norm::P(p) => {
                let spread =
                    r as u128 * ((q + 1) as u128).pow(p) + (k - r) as u128 * (q as u128).pow(p);
                key[0] = key[0].max(spread);
            }
            Norm::Inf => {
                key[0] = key[0].max(total.div_ceil(k) as u128);
            }
        }
        key
    }

    fn prune(&self, bound: &[u128]) -> bool {
        match &self.mode {
            Mode::Optimize => self.best.as_deref().is_some_and(|b| bound >= b),
            Mode::FirstAt(t) => bound > t.as_slice(),
        }
    }

    fn run(&mut self, depth: usize) {
        let n = self.order.len();
        if depth == n {
            let key = key_of(&self.per_class, self.norm);
            match &self.mode {
                Mode::Optimize => {
                    if self
                        .best
                        .as_ref()
                        .is_none_or(|b| key.cmp(b) == Ordering::Less)
                    {
                        self.best = Some(key);
                    }
                }
                Mode::FirstAt(t) => {
                    if &key == t {
                        self.found = Some(self.assign.clone());
                    }
                }
            }
            return;
        }
        let v = self.order[depth];
        let remaining_after = n - depth - 1;
        for c in 0..self.bounds.len() {
            if self.sizes[c] >= self.bounds[c].1 {
                continue;
            }
            if self.sizes[c] == 0 {
                if let Some(t) = self.twin[c] {
                    if self.sizes[t] == 0 {
                        continue;
                    }
                }
            }
            let bit = 1u64 << v;
            let added = (self.masks[v] & self.members[c]).count_ones() as usize;
            self.assign[v] = c;
            self.members[c] |= bit;
            self.sizes[c] += 1;
            self.per_class[c] += added;
            self.unassigned &= !bit;

            let deficit: usize = (0..self.bounds.len())
                .map(|d| self.bounds[d].0.saturating_sub(self.sizes[d]))
                .sum();
            if deficit <= remaining_after {
                let bound = self.bound();
                if !self.prune(&bound) {
                    self.run(depth + 1);
                }
            }

            self.unassigned |= bit;
            self.per_class[c] -= added;
            self.sizes[c] -= 1;
            self.members[c] &= !bit;
            self.assign[v] = usize::MAX;
            if self.done() {
                return;
            }
        }
    }
}
