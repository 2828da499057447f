//! Expected class costs of a uniformly random completion of a forced
//! partial partition.
//!
//! The anchor forces neighbourhoods into classes; every other vertex is
//! free, and the free vertices are spread uniformly over the remaining
//! capacities, so pair probabilities follow the multivariate
//! hypergeometric law.

use crate::graph::Graph;
use crate::Rational;

use super::FlagError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AnchorKind {
    /// `N(v)` goes to class 0.
    Vertex(usize),
    /// For an edge `uv`: `N(u)` to class 0, `N(v)` to class 1.
    Edge(usize, usize),
    /// For an edge `uv` and a vertex `w` adjacent to neither: `N(u)` to
    /// class 0, `N(v) \ N(w)` to class 1, `N(w) \ N(u)` to class 2.
    EdgePlusNonneighbor(usize, usize, usize),
}

impl AnchorKind {
    fn classes_used(&self) -> usize {
        match self {
            AnchorKind::Vertex(_) => 1,
            AnchorKind::Edge(..) => 2,
            AnchorKind::EdgePlusNonneighbor(..) => 3,
        }
    }
}

/// Class forced on each vertex by `anchor`, or `None` for free vertices.
pub fn forced_classes(
    g: &Graph,
    anchor: &AnchorKind,
    k: usize,
) -> Result<Vec<Option<usize>>, FlagError> {
    let n = g.n();
    let bad = |why: String| Err(FlagError::InfeasibleAnchor(why));
    if k < anchor.classes_used() {
        return bad(format!(
            "{anchor:?} needs at least {} classes",
            anchor.classes_used()
        ));
    }
    let in_range = |v: usize| v < n;
    let groups: Vec<Vec<usize>> = match *anchor {
        AnchorKind::Vertex(v) => {
            if !in_range(v) {
                return bad(format!("vertex {v} out of range"));
            }
            vec![g.neighbor_iter(v).collect()]
        }
        AnchorKind::Edge(u, v) => {
            if !(in_range(u) && in_range(v) && g.has_edge(u, v)) {
                return bad(format!("{u}{v} is not an edge"));
            }
            vec![g.neighbor_iter(u).collect(), g.neighbor_iter(v).collect()]
        }
        AnchorKind::EdgePlusNonneighbor(u, v, w) => {
            if !(in_range(u) && in_range(v) && in_range(w) && g.has_edge(u, v)) {
                return bad(format!("{u}{v} is not an edge"));
            }
            if w == u || w == v || g.has_edge(w, u) || g.has_edge(w, v) {
                return bad(format!("{w} is not a non-neighbour of both {u} and {v}"));
            }
            vec![
                g.neighbor_iter(u).collect(),
                g.neighbor_iter(v).filter(|&x| !g.has_edge(x, w)).collect(),
                g.neighbor_iter(w).filter(|&x| !g.has_edge(x, u)).collect(),
            ]
        }
    };
    let mut forced = vec![None; n];
    for (class, group) in groups.iter().enumerate() {
        for &x in group {
            match forced[x] {
                Some(c) if c != class => {
                    return bad(format!("vertex {x} is forced into classes {c} and {class}"))
                }
                _ => forced[x] = Some(class),
            }
        }
    }
    Ok(forced)
}

/// Free capacity per class, after checking that the forced sets fit.
fn residual_capacity(
    forced: &[Option<usize>],
    target_sizes: &[usize],
) -> Result<Vec<usize>, FlagError> {
    let n = forced.len();
    if target_sizes.iter().sum::<usize>() != n {
        return Err(FlagError::InfeasibleAnchor(format!(
            "class sizes {target_sizes:?} do not sum to {n}"
        )));
    }
    let mut rest = target_sizes.to_vec();
    for c in forced.iter().flatten() {
        if rest[*c] == 0 {
            return Err(FlagError::InfeasibleAnchor(format!(
                "forced set of class {c} exceeds its size {}",
                target_sizes[*c]
            )));
        }
        rest[*c] -= 1;
    }
    Ok(rest)
}

/// `E e(A_i)` for each class over uniform completions with the given sizes.
pub fn expected_cut_cost(
    g: &Graph,
    anchor: &AnchorKind,
    target_sizes: &[usize],
) -> Result<Vec<Rational>, FlagError> {
    let forced = forced_classes(g, anchor, target_sizes.len())?;
    let rest = residual_capacity(&forced, target_sizes)?;
    let free = forced.iter().filter(|c| c.is_none()).count() as i128;
    let mut out = vec![Rational::from_integer(0); target_sizes.len()];
    for (x, y) in g.edges() {
        match (forced[x], forced[y]) {
            (Some(a), Some(b)) => {
                if a == b {
                    out[a] += 1;
                }
            }
            (Some(a), None) | (None, Some(a)) => {
                out[a] += Rational::new(rest[a] as i128, free);
            }
            (None, None) => {
                for (o, &r) in out.iter_mut().zip(&rest) {
                    let r = r as i128;
                    if r >= 2 {
                        *o += Rational::new(r * (r - 1), free * (free - 1));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The same expectation by listing every completion. Exponential in the
/// number of free vertices.
pub fn brute_force_cut_cost(
    g: &Graph,
    anchor: &AnchorKind,
    target_sizes: &[usize],
) -> Result<Vec<Rational>, FlagError> {
    let k = target_sizes.len();
    let forced = forced_classes(g, anchor, k)?;
    let mut rest = residual_capacity(&forced, target_sizes)?;
    let free: Vec<usize> = (0..g.n()).filter(|&v| forced[v].is_none()).collect();
    let mut assign: Vec<usize> = forced.iter().map(|c| c.unwrap_or(0)).collect();
    let mut totals = vec![0i128; k];
    let mut completions = 0i128;
    complete(
        g,
        &free,
        &mut assign,
        &mut rest,
        &mut totals,
        &mut completions,
    );
    Ok(totals
        .into_iter()
        .map(|t| Rational::new(t, completions))
        .collect())
}

fn complete(
    g: &Graph,
    free: &[usize],
    assign: &mut [usize],
    rest: &mut [usize],
    totals: &mut [i128],
    completions: &mut i128,
) {
    let Some((&v, tail)) = free.split_first() else {
        for (x, y) in g.edges() {
            if assign[x] == assign[y] {
                totals[assign[x]] += 1;
            }
        }
        *completions += 1;
        return;
    };
    for c in 0..rest.len() {
        if rest[c] > 0 {
            rest[c] -= 1;
            assign[v] = c;
            complete(g, tail, assign, rest, totals, completions);
            rest[c] += 1;
        }
    }
}
