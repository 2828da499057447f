use rand::seq::SliceRandom;
use rayon::prelude::*;

use super::EXACT_SUBPROBLEM_MAX_N;
use super::{large_independent_set, local_search_swap, trial_streams, HeuristicError, Scored};
use crate::graph::{is_clique_free, Graph, VertexSet};
use crate::solver::{solve, solve_subset, subset_cost, Norm, Objective, Partition, SizeSpec};
use crate::Rational;

type Result<T> = std::result::Result<T, HeuristicError>;

fn not_applicable(why: impl Into<String>) -> HeuristicError {
    HeuristicError::NotApplicable(why.into())
}

/// Keeps `size` vertices of the independent set `i`, moving out the ones of
/// lowest degree (higher index first among equal degrees). Moved vertices
/// only gain edges to the other side, so this is the cheapest truncation.
fn truncate(g: &Graph, i: &VertexSet, size: usize) -> VertexSet {
    let mut members = i.to_vec();
    members.sort_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)));
    members[members.len() - size..].iter().copied().collect()
}

fn best_of(candidates: impl IntoIterator<Item = Scored>, norm: Norm) -> Option<Scored> {
    candidates
        .into_iter()
        .min_by(|a, b| (a.cost.key(norm), &a.partition).cmp(&(b.cost.key(norm), &b.partition)))
}

/// Balanced bisection from an independent set of size at least `n/2`.
pub fn independent_bisection(g: &Graph) -> Result<Scored> {
    let n = g.n();
    if !n.is_multiple_of(2) {
        return Err(not_applicable("n is odd"));
    }
    let i = large_independent_set(g);
    if i.len() < n / 2 {
        return Err(not_applicable(format!(
            "independent set of size {} is below n/2 = {}",
            i.len(),
            n / 2
        )));
    }
    let a = truncate(g, &i, n / 2);
    Ok(Scored::new(g, Partition::from_set(n, &a)))
}

/// Best of `trials` uniform halves containing `N(v)`, each improved by
/// local search.
pub fn neighborhood_bisection(g: &Graph, v: usize, trials: usize, seed: u64) -> Result<Scored> {
    let n = g.n();
    if !n.is_multiple_of(2) {
        return Err(not_applicable("n is odd"));
    }
    if v >= n {
        return Err(HeuristicError::BadArgument(format!(
            "vertex {v} out of range"
        )));
    }
    if trials == 0 {
        return Err(HeuristicError::BadArgument(
            "at least one trial is required".into(),
        ));
    }
    let degree = g.degree(v);
    if degree > n / 2 {
        return Err(HeuristicError::DegreeTooLarge {
            v,
            degree,
            half: n / 2,
        });
    }
    let nbrs = g.neighbors(v);
    let pool: Vec<usize> = (0..n).filter(|&u| !nbrs.contains(u)).collect();
    let need = n / 2 - degree;
    let results: Vec<Scored> = trial_streams(seed, trials)
        .into_par_iter()
        .map(|mut rng| {
            let mut pool = pool.clone();
            let (chosen, _) = pool.partial_shuffle(&mut rng, need);
            let mut a = nbrs.clone();
            for &u in chosen.iter() {
                a.insert(u);
            }
            let start = Partition::from_set(n, &a);
            let p = local_search_swap(g, &start, &SizeSpec::Balanced(2), Norm::L1);
            Scored::new(g, p)
        })
        .collect();
    Ok(best_of(results, Norm::L1).expect("at least one trial"))
}

/// Best balanced bisection of an even-order graph available without a seed:
/// exact when small, otherwise the best of the constructive routines.
fn best_bisection(h: &Graph) -> Result<Scored> {
    if h.n() <= EXACT_SUBPROBLEM_MAX_N {
        let (p, cost) = solve(h, &SizeSpec::Balanced(2), Norm::L1)?;
        return Ok(Scored { partition: p, cost });
    }
    let mut found = vec![random_balanced_kpartition(h, 2, 0, 16, Norm::L1)?];
    if let Ok(s) = independent_bisection(h) {
        found.push(s);
    }
    let v = (0..h.n())
        .min_by_key(|&v| (h.degree(v), v))
        .expect("non-empty");
    if let Ok(s) = neighborhood_bisection(h, v, 16, 0) {
        found.push(s);
    }
    Ok(best_of(found, Norm::L1).expect("non-empty"))
}

/// Balanced tripartition `(I, A, B)` from an independent set `I` of size
/// `n/3` and a bisection `(A, B)` of the rest.
pub fn tripartition_via_independent(g: &Graph) -> Result<Scored> {
    let n = g.n();
    if !n.is_multiple_of(3) {
        return Err(not_applicable("3 does not divide n"));
    }
    let i = large_independent_set(g);
    if i.len() < n / 3 {
        return Err(not_applicable(format!(
            "independent set of size {} is below n/3 = {}",
            i.len(),
            n / 3
        )));
    }
    let i = truncate(g, &i, n / 3);
    let rest = i.complement(n).to_vec();
    let h = g.induced(&rest.iter().copied().collect());
    let split = best_bisection(&h)?;
    let mut assign = vec![0usize; n];
    for (idx, &v) in rest.iter().enumerate() {
        assign[v] = 1 + split.partition.class_of(idx);
    }
    Ok(Scored::new(g, Partition::new(assign, 3)?))
}

fn floor_alpha_n(alpha: Rational, n: usize) -> usize {
    (*alpha.numer() * n as i128 / *alpha.denom()) as usize
}

/// One run of the biased construction: a uniform `A` of size `2⌊αn⌋ - n`,
/// a bisection `A^c = A₁ ∪ A₂`, and the better of `A ∪ A₁`, `A ∪ A₂`.
/// Returns the `⌊αn⌋`-set and `e(S) + e(S^c)`.
pub fn biased_unbalanced(g: &Graph, alpha: Rational, seed: u64) -> Result<(VertexSet, usize)> {
    biased_unbalanced_trials(g, alpha, seed, 1)
}

/// Best of `trials` independent runs of [`biased_unbalanced`].
pub fn biased_unbalanced_trials(
    g: &Graph,
    alpha: Rational,
    seed: u64,
    trials: usize,
) -> Result<(VertexSet, usize)> {
    let n = g.n();
    let half = Rational::new(1, 2);
    if alpha <= half || alpha >= Rational::from_integer(1) {
        return Err(HeuristicError::BadAlpha(alpha.to_string()));
    }
    let m = floor_alpha_n(alpha, n);
    if 2 * m < n {
        return Err(HeuristicError::BadAlpha(alpha.to_string()));
    }
    if trials == 0 {
        return Err(HeuristicError::BadArgument(
            "at least one trial is required".into(),
        ));
    }
    let core = 2 * m - n;
    let results: Vec<Result<(usize, VertexSet)>> = trial_streams(seed, trials)
        .into_par_iter()
        .map(|mut rng| {
            let mut order: Vec<usize> = (0..n).collect();
            let (chosen, _) = order.partial_shuffle(&mut rng, core);
            let a: VertexSet = chosen.iter().copied().collect();
            let rest = a.complement(n).to_vec();
            let h = g.induced(&rest.iter().copied().collect());
            let (a1, a2) = if h.n() == 0 {
                (VertexSet::new(), VertexSet::new())
            } else {
                let split = best_bisection(&h)?;
                let side = |c: usize| -> VertexSet {
                    split.partition.class(c).iter().map(|i| rest[i]).collect()
                };
                (side(0), side(1))
            };
            let options = [a.union(&a1), a.union(&a2)];
            Ok(options
                .into_iter()
                .map(|s| (subset_cost(g, &s, Objective::TwoSided), s))
                .min()
                .expect("two options"))
        })
        .collect();
    let mut best: Option<(usize, VertexSet)> = None;
    for r in results {
        let r = r?;
        if best.as_ref().is_none_or(|b| r < *b) {
            best = Some(r);
        }
    }
    let (cost, set) = best.expect("at least one trial");
    Ok((set, cost))
}

/// Best of `trials` uniform balanced `k`-partitions after local search in
/// the selected norm.
pub fn random_balanced_kpartition(
    g: &Graph,
    k: usize,
    seed: u64,
    trials: usize,
    norm: Norm,
) -> Result<Scored> {
    let n = g.n();
    if k == 0 || trials == 0 {
        return Err(HeuristicError::BadArgument(
            "k and trials must be positive".into(),
        ));
    }
    if !n.is_multiple_of(k) {
        return Err(not_applicable(format!("{k} does not divide n = {n}")));
    }
    let size = n / k;
    let results: Vec<Scored> = trial_streams(seed, trials)
        .into_par_iter()
        .map(|mut rng| {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let mut assign = vec![0usize; n];
            for (i, &v) in order.iter().enumerate() {
                assign[v] = i / size.max(1);
            }
            let start = Partition::new(assign, k).expect("classes in range");
            Scored::new(
                g,
                local_search_swap(g, &start, &SizeSpec::Balanced(k), norm),
            )
        })
        .collect();
    Ok(best_of(results, norm).expect("at least one trial"))
}

/// A `3n/4`-subset with few edges and whether it meets `e(A) <= n²/8`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseSubset {
    pub set: VertexSet,
    pub edges: usize,
    pub bound: Rational,
    pub certified: bool,
    /// Whether `edges` is the exact minimum over all `3n/4`-subsets.
    pub exact: bool,
}

/// A `3n/4`-subset of a triangle-free graph spanning few edges.
pub fn three_quarters_sparse(g: &Graph) -> Result<SparseSubset> {
    let n = g.n();
    if !is_clique_free(g, 3) {
        return Err(HeuristicError::NotTriangleFree);
    }
    if !n.is_multiple_of(4) {
        return Err(not_applicable("4 does not divide n"));
    }
    let m = 3 * n / 4;
    let bound = Rational::new((n * n) as i128, 8);
    let (set, edges, exact) = if n <= EXACT_SUBPROBLEM_MAX_N {
        let (set, edges) = solve_subset(g, m, Objective::Sparse)?;
        (set, edges, true)
    } else {
        let (set, edges) = grow_sparse(g, m);
        (set, edges, false)
    };
    let certified = Rational::from_integer(edges as i128) <= bound;
    Ok(SparseSubset {
        set,
        edges,
        bound,
        certified,
        exact,
    })
}

/// Starts from a large independent set, adds vertices with the fewest
/// neighbors inside, then swaps while `e(S)` strictly drops.
fn grow_sparse(g: &Graph, m: usize) -> (VertexSet, usize) {
    let n = g.n();
    let i = large_independent_set(g);
    let mut s: VertexSet = i.iter().take(m).collect();
    let mut inside = vec![0usize; n];
    for v in s.iter() {
        for w in g.neighbor_iter(v) {
            inside[w] += 1;
        }
    }
    let add = |s: &mut VertexSet, inside: &mut [usize], v: usize| {
        s.insert(v);
        for w in g.neighbor_iter(v) {
            inside[w] += 1;
        }
    };
    while s.len() < m {
        let v = (0..n)
            .filter(|&v| !s.contains(v))
            .min_by_key(|&v| (inside[v], v))
            .expect("enough vertices");
        add(&mut s, &mut inside, v);
    }
    loop {
        let mut best: Option<(isize, usize, usize)> = None;
        for u in s.iter() {
            for w in (0..n).filter(|&w| !s.contains(w)) {
                let delta = inside[w] as isize - inside[u] as isize - isize::from(g.has_edge(u, w));
                if delta < 0 && best.is_none_or(|(d, _, _)| delta < d) {
                    best = Some((delta, u, w));
                }
            }
        }
        let Some((_, u, w)) = best else { break };
        s.remove(u);
        for x in g.neighbor_iter(u) {
            inside[x] -= 1;
        }
        add(&mut s, &mut inside, w);
    }
    let edges = crate::graph::edges_within(g, &s);
    (s, edges)
}

/// Balanced bisection keeping both classes sparse: an independent set `I` of
/// size `n/3`, then a sparse half `C` of `V \ I` of size `n/2`, giving the
/// classes `C` and `C^c ⊇ I`.
pub fn sparse_class_bisection(g: &Graph) -> Result<Scored> {
    let n = g.n();
    if !is_clique_free(g, 3) {
        return Err(HeuristicError::NotTriangleFree);
    }
    if !n.is_multiple_of(6) {
        return Err(not_applicable("6 does not divide n"));
    }
    let i = large_independent_set(g);
    if i.len() < n / 3 {
        return Err(not_applicable(format!(
            "independent set of size {} is below n/3 = {}",
            i.len(),
            n / 3
        )));
    }
    let i = truncate(g, &i, n / 3);
    let rest = i.complement(n).to_vec();
    let h = g.induced(&rest.iter().copied().collect());
    let sparse = three_quarters_sparse(&h)?;
    let c: VertexSet = sparse.set.iter().map(|x| rest[x]).collect();
    Ok(Scored::new(g, Partition::from_set(n, &c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{blow_up, complete_bipartite, cycle, petersen};

    #[test]
    fn independent_bisection_examples() {
        let k31 = complete_bipartite(3, 1).unwrap();
        let s = independent_bisection(&k31).unwrap();
        assert_eq!(s.cost.total(), 1);
        assert_eq!(s.partition.class(0).to_vec(), vec![0, 1]);
        let k55 = complete_bipartite(5, 5).unwrap();
        assert_eq!(independent_bisection(&k55).unwrap().cost.total(), 0);
        let c5x2 = blow_up(&cycle(5).unwrap(), &[2; 5]).unwrap();
        assert!(matches!(
            independent_bisection(&c5x2),
            Err(HeuristicError::NotApplicable(_))
        ));
    }

    #[test]
    fn neighborhood_bisection_examples() {
        let k55 = complete_bipartite(5, 5).unwrap();
        assert_eq!(
            neighborhood_bisection(&k55, 0, 1, 1).unwrap().cost.total(),
            0
        );
        let c4 = cycle(4).unwrap();
        for v in 0..4 {
            assert_eq!(
                neighborhood_bisection(&c4, v, 1, 9).unwrap().cost.total(),
                0
            );
        }
        let k51 = complete_bipartite(5, 1).unwrap();
        assert!(matches!(
            neighborhood_bisection(&k51, 5, 1, 1),
            Err(HeuristicError::DegreeTooLarge { .. })
        ));
        // exact optimum of the Petersen bisection is 4
        let s = neighborhood_bisection(&petersen(), 0, 64, 1).unwrap();
        assert_eq!(s.cost.total(), 4);
        assert_eq!(s, neighborhood_bisection(&petersen(), 0, 64, 1).unwrap());
    }

    #[test]
    fn tripartition_examples() {
        for (g, cost) in [
            (complete_bipartite(3, 3).unwrap(), 1),
            (complete_bipartite(5, 1).unwrap(), 1),
            (Graph::empty(6).unwrap(), 0),
        ] {
            let s = tripartition_via_independent(&g).unwrap();
            assert_eq!(s.cost.total(), cost, "{g:?}");
            assert!(s.partition.satisfies(&SizeSpec::Balanced(3)));
        }
    }

    #[test]
    fn biased_examples() {
        let alpha = Rational::new(7, 10);
        let (s, c) = biased_unbalanced(&Graph::empty(10).unwrap(), alpha, 3).unwrap();
        assert_eq!((s.len(), c), (7, 0));
        let k55 = complete_bipartite(5, 5).unwrap();
        let (s, c) = biased_unbalanced(&k55, alpha, 1).unwrap();
        assert_eq!(s.len(), 7);
        assert_eq!(c, subset_cost(&k55, &s, Objective::TwoSided));
        assert!(c >= solve_subset(&k55, 7, Objective::TwoSided).unwrap().1);
        assert!(biased_unbalanced(&k55, Rational::new(1, 2), 1).is_err());
        assert!(biased_unbalanced(&k55, Rational::from_integer(1), 1).is_err());
    }

    #[test]
    fn random_kpartition_examples() {
        let e = Graph::empty(6).unwrap();
        let s = random_balanced_kpartition(&e, 3, 1, 4, Norm::L1).unwrap();
        assert_eq!(s.cost.per_class, vec![0, 0, 0]);
        let k55 = complete_bipartite(5, 5).unwrap();
        assert_eq!(
            random_balanced_kpartition(&k55, 2, 1, 16, Norm::L1)
                .unwrap()
                .cost
                .total(),
            0
        );
        let k33 = complete_bipartite(3, 3).unwrap();
        assert_eq!(
            random_balanced_kpartition(&k33, 3, 1, 16, Norm::Inf)
                .unwrap()
                .cost
                .max(),
            1
        );
    }

    #[test]
    fn three_quarters_examples() {
        let k22 = complete_bipartite(2, 2).unwrap();
        let s = three_quarters_sparse(&k22).unwrap();
        assert_eq!((s.set.len(), s.edges, s.certified), (3, 2, true));
        let e8 = Graph::empty(8).unwrap();
        assert_eq!(three_quarters_sparse(&e8).unwrap().edges, 0);
        let k44 = complete_bipartite(4, 4).unwrap();
        let s = three_quarters_sparse(&k44).unwrap();
        assert_eq!(s.edges, 8);
        assert!(s.certified);
        assert_eq!(
            three_quarters_sparse(&crate::graph::complete(4).unwrap()),
            Err(HeuristicError::NotTriangleFree)
        );
    }

    #[test]
    fn grown_subset_on_large_bipartite_graph() {
        let g = complete_bipartite(20, 20).unwrap();
        let (s, e) = grow_sparse(&g, 30);
        assert_eq!(s.len(), 30);
        assert_eq!(e, crate::graph::edges_within(&g, &s));
        assert!(8 * e <= 40 * 40);
    }
}
