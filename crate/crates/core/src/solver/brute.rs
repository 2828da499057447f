//! Exhaustive reference solvers. They share nothing with the branch and
//! bound code beyond `SizeSpec` and the cost types.

use itertools::Itertools;

use super::{CostVector, Norm, Objective, Partition, SizeSpec, SolverError};
use crate::graph::{edges_within, Graph, VertexSet};

pub const BRUTE_PARTITION_MAX_N: usize = 12;
pub const BRUTE_SUBSET_MAX_N: usize = 16;

/// Tries all `k^n` assignments in lexicographic order.
pub fn brute_force_solve(
    g: &Graph,
    spec: &SizeSpec,
    norm: Norm,
) -> Result<(Partition, CostVector), SolverError> {
    let n = g.n();
    if n > BRUTE_PARTITION_MAX_N {
        return Err(SolverError::GuardExceeded {
            n,
            limit: BRUTE_PARTITION_MAX_N,
        });
    }
    let bounds = spec.bounds(n, false)?;
    let k = bounds.len();
    let mut assign = vec![0usize; n];
    let mut best: Option<(Vec<u128>, Partition, CostVector)> = None;
    loop {
        let mut sizes = vec![0usize; k];
        for &c in &assign {
            sizes[c] += 1;
        }
        if sizes
            .iter()
            .zip(&bounds)
            .all(|(&s, &(lo, hi))| lo <= s && s <= hi)
        {
            let p = Partition::new(assign.clone(), k)?;
            let cost = CostVector::of(g, &p);
            let key = cost.key(norm);
            if best.as_ref().is_none_or(|(b, _, _)| key < *b) {
                best = Some((key, p, cost));
            }
        }
        // odometer with vertex n-1 as the fastest digit
        let mut i = n;
        loop {
            if i == 0 {
                let (_, p, c) = best.ok_or_else(|| {
                    SolverError::InfeasibleSpec("no assignment meets the size bounds".into())
                })?;
                return Ok((p, c));
            }
            i -= 1;
            assign[i] += 1;
            if assign[i] < k {
                break;
            }
            assign[i] = 0;
        }
    }
}

/// Tries all `m`-subsets in lexicographic order.
pub fn brute_force_subset(
    g: &Graph,
    m: usize,
    objective: Objective,
) -> Result<(VertexSet, usize), SolverError> {
    let n = g.n();
    if n > BRUTE_SUBSET_MAX_N {
        return Err(SolverError::GuardExceeded {
            n,
            limit: BRUTE_SUBSET_MAX_N,
        });
    }
    if m > n {
        return Err(SolverError::BadArgument(format!(
            "subset size {m} exceeds n = {n}"
        )));
    }
    let mut best: Option<(usize, VertexSet)> = None;
    for combo in (0..n).combinations(m) {
        let a: VertexSet = combo.into_iter().collect();
        let mut cost = edges_within(g, &a);
        if objective == Objective::TwoSided {
            cost += edges_within(g, &a.complement(n));
        }
        if best.as_ref().is_none_or(|(b, _)| cost < *b) {
            best = Some((cost, a));
        }
    }
    let (cost, a) = best.expect("at least one subset");
    Ok((a, cost))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, cycle};

    #[test]
    fn agrees_with_hand_counts() {
        let c5 = cycle(5).unwrap();
        assert_eq!(
            brute_force_subset(&c5, 3, Objective::TwoSided).unwrap().1,
            1
        );
        let k55 = complete_bipartite(5, 5).unwrap();
        assert_eq!(
            brute_force_solve(&k55, &SizeSpec::Balanced(2), Norm::L1)
                .unwrap()
                .1
                .total(),
            0
        );
        let (p, _) = brute_force_solve(&c5, &SizeSpec::Balanced(2), Norm::L1).unwrap();
        assert_eq!(p.assign(), &[0, 0, 1, 0, 1]);
    }
}
