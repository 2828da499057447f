use rayon::prelude::*;

use crate::gen::Enumerator;
use crate::graph::Graph;
use crate::solver::{solve, CostVector, Norm, Partition, SizeSpec};

use super::LabError;

/// Graphs maximizing an optimal partition cost among all `K_{r+1}`-free
/// graphs on `n` vertices. `value` is the `p`-th power sum of the class
/// edge counts for finite `p`, and the largest class for the max norm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extremal {
    pub n: usize,
    pub value: u128,
    pub considered: usize,
    /// Maximizers in enumeration order with an optimal partition each.
    pub graphs: Vec<(Graph, Partition, CostVector)>,
}

pub fn extremal(
    n: usize,
    spec: &SizeSpec,
    norm: Norm,
    r_plus_1: usize,
) -> Result<Extremal, LabError> {
    let level = Enumerator::new(r_plus_1)?.level(n)?;
    let solved: Vec<(Graph, Partition, CostVector)> = level
        .into_par_iter()
        .map(|g| solve(&g, spec, norm).map(|(p, c)| (g, p, c)))
        .collect::<Result<_, _>>()?;
    let considered = solved.len();
    let value = solved
        .iter()
        .map(|(_, _, c)| c.value(norm))
        .max()
        .unwrap_or(0);
    let graphs = solved
        .into_iter()
        .filter(|(_, _, c)| c.value(norm) == value)
        .collect();
    Ok(Extremal {
        n,
        value,
        considered,
        graphs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::canonical_graph;
    use crate::graph::complete_bipartite;

    #[test]
    fn bisection_of_four_vertices() {
        let e = extremal(4, &SizeSpec::Balanced(2), Norm::L1, 3).unwrap();
        assert_eq!(e.value, 1);
        assert_eq!(e.considered, 7);
        let k31 = canonical_graph(&complete_bipartite(3, 1).unwrap()).unwrap();
        assert!(e.graphs.iter().any(|(g, _, _)| *g == k31));
    }

    #[test]
    fn three_vertices_split_freely_cost_nothing() {
        let e = extremal(3, &SizeSpec::Free(3), Norm::L1, 3).unwrap();
        assert_eq!((e.value, e.graphs.len()), (0, 3));
    }

    #[test]
    fn odd_order_uses_near_balanced_classes() {
        let e = extremal(5, &SizeSpec::Balanced(2), Norm::Inf, 3).unwrap();
        assert!(e.graphs.iter().all(|(_, p, _)| {
            let mut s = p.sizes();
            s.sort_unstable();
            s == [2, 3]
        }));
    }
}
