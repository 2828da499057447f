//! Steepest-descent improvement by vertex swaps (or single moves for free
//! specs). Gains are evaluated from a per-vertex table of neighbors per class.

use crate::graph::Graph;
use crate::solver::{key_of, Norm, Partition, SizeSpec};

/// Repeatedly applies the best strictly improving swap between two classes,
/// or the best single-vertex move when `spec` is free. Among equally good
/// steps the first in `(u, v)` / `(v, class)` order wins.
pub fn local_search_swap(
    g: &Graph,
    partition: &Partition,
    spec: &SizeSpec,
    norm: Norm,
) -> Partition {
    let n = g.n();
    let k = partition.k();
    let mut p = partition.clone();
    let mut deg = vec![0usize; n * k];
    let mut per_class = vec![0usize; k];
    for (u, v) in g.edges() {
        let (cu, cv) = (p.class_of(u), p.class_of(v));
        deg[u * k + cv] += 1;
        deg[v * k + cu] += 1;
        if cu == cv {
            per_class[cu] += 1;
        }
    }
    let moves = spec.is_free();
    let mut current = key_of(&per_class, norm);
    let mut trial = per_class.clone();
    loop {
        let mut best: Option<(Vec<u128>, usize, usize)> = None;
        if moves {
            for v in 0..n {
                let a = p.class_of(v);
                for b in (0..k).filter(|&b| b != a) {
                    trial.copy_from_slice(&per_class);
                    trial[a] -= deg[v * k + a];
                    trial[b] += deg[v * k + b];
                    let key = key_of(&trial, norm);
                    if key < current && best.as_ref().is_none_or(|(bk, _, _)| key < *bk) {
                        best = Some((key, v, b));
                    }
                }
            }
        } else {
            for u in 0..n {
                let a = p.class_of(u);
                for v in u + 1..n {
                    let b = p.class_of(v);
                    if a == b {
                        continue;
                    }
                    let link = usize::from(g.has_edge(u, v));
                    trial.copy_from_slice(&per_class);
                    trial[a] = trial[a] - deg[u * k + a] + deg[v * k + a] - link;
                    trial[b] = trial[b] - deg[v * k + b] + deg[u * k + b] - link;
                    let key = key_of(&trial, norm);
                    if key < current && best.as_ref().is_none_or(|(bk, _, _)| key < *bk) {
                        best = Some((key, u, v));
                    }
                }
            }
        }
        let Some((key, x, y)) = best else {
            return p;
        };
        let relocate = |p: &mut Partition, deg: &mut [usize], v: usize, to: usize| {
            let from = p.class_of(v);
            for w in g.neighbor_iter(v) {
                deg[w * k + from] -= 1;
                deg[w * k + to] += 1;
            }
            p.set(v, to);
        };
        if moves {
            let a = p.class_of(x);
            per_class[a] -= deg[x * k + a];
            per_class[y] += deg[x * k + y];
            relocate(&mut p, &mut deg, x, y);
        } else {
            let (a, b) = (p.class_of(x), p.class_of(y));
            relocate(&mut p, &mut deg, x, b);
            relocate(&mut p, &mut deg, y, a);
            per_class.fill(0);
            for (u, v) in g.edges() {
                if p.class_of(u) == p.class_of(v) {
                    per_class[p.class_of(u)] += 1;
                }
            }
        }
        debug_assert_eq!(key_of(&per_class, norm), key);
        current = key;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_bipartite;
    use crate::solver::{solve, CostVector};

    #[test]
    fn repairs_a_mixed_split_of_k55() {
        let g = complete_bipartite(5, 5).unwrap();
        let start = Partition::new(vec![0, 0, 0, 1, 1, 0, 0, 1, 1, 1], 2).unwrap();
        let before = CostVector::of(&g, &start).total();
        let after = local_search_swap(&g, &start, &SizeSpec::Balanced(2), Norm::L1);
        assert!(CostVector::of(&g, &after).total() < before);
        assert_eq!(CostVector::of(&g, &after).total(), 0);
        assert_eq!(after.sizes(), start.sizes());
    }

    #[test]
    fn idempotent_on_an_optimum() {
        let g = complete_bipartite(3, 3).unwrap();
        let (p, _) = solve(&g, &SizeSpec::Balanced(3), Norm::L1).unwrap();
        assert_eq!(
            local_search_swap(&g, &p, &SizeSpec::Balanced(3), Norm::L1),
            p
        );
    }

    #[test]
    fn free_moves_reach_a_bipartition() {
        let g = complete_bipartite(3, 4).unwrap();
        let start = Partition::new(vec![0; 7], 2).unwrap();
        let after = local_search_swap(&g, &start, &SizeSpec::Free(2), Norm::L1);
        assert_eq!(CostVector::of(&g, &after).total(), 0);
    }
}
