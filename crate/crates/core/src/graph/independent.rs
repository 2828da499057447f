//! Maximum independent sets by branch and bound. The bound at each node is a
//! greedy partition of the candidates into cliques: an independent set takes
//! at most one vertex from each clique.

use super::{low_bits, Graph, GraphError, VertexSet, EXACT_MAX_N};

fn require_exact(g: &Graph) -> Result<(), GraphError> {
    if g.n() > EXACT_MAX_N {
        return Err(GraphError::TooLarge {
            n: g.n(),
            limit: EXACT_MAX_N,
        });
    }
    Ok(())
}

/// α(G).
pub fn independence_number(g: &Graph) -> Result<usize, GraphError> {
    require_exact(g)?;
    Ok(mis_size(&g.masks(), low_bits(g.n())))
}

/// A maximum independent set, lexicographically least among all maximum ones.
pub fn max_independent_set(g: &Graph) -> Result<VertexSet, GraphError> {
    require_exact(g)?;
    let masks = g.masks();
    Ok(VertexSet::from_mask(lex_least_mis(&masks, low_bits(g.n()))))
}

/// Size of a maximum independent set inside `cand`.
pub(crate) fn mis_size(masks: &[u64], cand: u64) -> usize {
    let mut best = 0;
    expand(masks, cand, 0, &mut best, usize::MAX);
    best
}

/// Lexicographically least maximum independent set inside `cand`.
pub(crate) fn lex_least_mis(masks: &[u64], cand: u64) -> u64 {
    let mut need = mis_size(masks, cand);
    let mut avail = cand;
    let mut chosen = 0u64;
    while need > 0 {
        let v = avail.trailing_zeros() as usize;
        let bit = 1u64 << v;
        let rest = avail & !bit & !masks[v];
        if reaches(masks, rest, need - 1) {
            chosen |= bit;
            avail = rest;
            need -= 1;
        } else {
            avail &= !bit;
        }
    }
    chosen
}

fn reaches(masks: &[u64], cand: u64, target: usize) -> bool {
    if target == 0 {
        return true;
    }
    let mut best = target - 1;
    expand(masks, cand, 0, &mut best, target);
    best >= target
}

/// Greedy clique cover of `cand`: vertices listed class by class, with the
/// running class count as an upper bound for the prefix ending at each entry.
fn clique_cover(masks: &[u64], cand: u64, order: &mut Vec<usize>, bounds: &mut Vec<usize>) {
    order.clear();
    bounds.clear();
    let mut uncovered = cand;
    let mut classes = 0;
    while uncovered != 0 {
        classes += 1;
        let mut q = uncovered;
        while q != 0 {
            let v = q.trailing_zeros() as usize;
            q &= masks[v];
            uncovered &= !(1u64 << v);
            order.push(v);
            bounds.push(classes);
        }
    }
}

fn expand(masks: &[u64], mut cand: u64, size: usize, best: &mut usize, stop_at: usize) {
    let mut order = Vec::with_capacity(cand.count_ones() as usize);
    let mut bounds = Vec::with_capacity(order.capacity());
    clique_cover(masks, cand, &mut order, &mut bounds);
    for i in (0..order.len()).rev() {
        if size + bounds[i] <= *best || *best >= stop_at {
            return;
        }
        let v = order[i];
        let bit = 1u64 << v;
        let next = cand & !bit & !masks[v];
        if next == 0 {
            if size + 1 > *best {
                *best = size + 1;
            }
        } else {
            expand(masks, next, size + 1, best, stop_at);
        }
        cand &= !bit;
    }
}
