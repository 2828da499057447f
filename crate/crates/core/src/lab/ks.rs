//! Vertex-disjoint clique packings and the two closed-form bounds used in
//! the `K_{r+1}`-free unbalanced cut argument.

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::graph::{edges_within, max_independent_set, Graph, VertexSet};
use crate::Rational;

use super::LabError;

/// Guard for the exact packing search.
pub const EXACT_COVER_MAX_N: usize = 20;

fn cliques(g: &Graph, r: usize) -> Vec<u64> {
    let n = g.n();
    (0..n)
        .combinations(r)
        .filter(|c| {
            c.iter()
                .tuple_combinations()
                .all(|(&a, &b)| g.has_edge(a, b))
        })
        .map(|c| c.iter().fold(0u64, |m, &v| m | 1 << v))
        .collect()
}

fn to_sets(masks: &[u64]) -> Vec<VertexSet> {
    masks.iter().map(|&m| VertexSet::from_mask(m)).collect()
}

/// First-fit packing over cliques in lexicographic order.
pub fn disjoint_cliques_greedy(g: &Graph, r: usize) -> Result<Vec<VertexSet>, LabError> {
    guard(g, r)?;
    let mut used = 0u64;
    let mut out = Vec::new();
    for c in cliques(g, r) {
        if c & used == 0 {
            used |= c;
            out.push(c);
        }
    }
    Ok(to_sets(&out))
}

fn guard(g: &Graph, r: usize) -> Result<(), LabError> {
    if r == 0 {
        return Err(LabError::BadArgument("r must be at least 1".into()));
    }
    if g.n() > EXACT_COVER_MAX_N {
        return Err(LabError::GuardExceeded {
            n: g.n(),
            limit: EXACT_COVER_MAX_N,
        });
    }
    Ok(())
}

/// Maximum number of vertex-disjoint copies of `K_r`, by branch and bound
/// on the lowest undecided vertex.
pub fn disjoint_cliques_exact(g: &Graph, r: usize) -> Result<Vec<VertexSet>, LabError> {
    guard(g, r)?;
    let all = cliques(g, r);
    let by_low: Vec<Vec<u64>> = (0..g.n())
        .map(|v| {
            all.iter()
                .copied()
                .filter(|c| c.trailing_zeros() as usize == v)
                .collect()
        })
        .collect();
    // vertices in no clique can never be covered
    let coverable = all.iter().fold(0u64, |m, c| m | c);
    let mut best = Vec::new();
    let mut current = Vec::new();
    search(&by_low, coverable, r, &mut current, &mut best);
    Ok(to_sets(&best))
}

fn search(by_low: &[Vec<u64>], free: u64, r: usize, current: &mut Vec<u64>, best: &mut Vec<u64>) {
    if current.len() > best.len() {
        *best = current.clone();
    }
    if free == 0 || current.len() + free.count_ones() as usize / r <= best.len() {
        return;
    }
    let v = free.trailing_zeros() as usize;
    for &c in &by_low[v] {
        if c & !free == 0 {
            current.push(c);
            search(by_low, free & !c, r, current, best);
            current.pop();
        }
    }
    search(by_low, free & !(1 << v), r, current, best);
}

/// `2(r-1) m/n - (r-2) n`, a lower bound on the independence number of a
/// `K_{r+1}`-free graph. May be negative.
pub fn independence_lower_bound(g: &Graph, r: usize) -> Rational {
    let n = g.n() as i128;
    if n == 0 {
        return Rational::from_integer(0);
    }
    let (r, m) = (r as i128, g.edge_count() as i128);
    Rational::new(2 * (r - 1) * m, n) - Rational::from_integer((r - 2) * n)
}

// rationals go out as "p/q" like everywhere else in the JSON output
fn as_text<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

fn opt_as_text<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.collect_str(r),
        None => s.serialize_none(),
    }
}

/// Proportions of an `X / Y / Z` split: `X` independent, `Y` covered by
/// disjoint `K_r`'s, `Z` the rest with `e_z` edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct XyzParams {
    #[serde(serialize_with = "as_text")]
    pub x: Rational,
    #[serde(serialize_with = "as_text")]
    pub y: Rational,
    #[serde(serialize_with = "as_text")]
    pub z: Rational,
    pub e_z: usize,
}

/// Upper bound on the number of edges of a `K_{r+1}`-free graph on
/// `(x + y + z) n` vertices split as in [`XyzParams`]:
/// `n^2 [ (r-1)/(2r) (x+y+z)^2 - ((r-1)x - z)^2 / (2r(r-1)) - (r-2)/(2(r-1)) z^2 ] + e(Z)`.
pub fn xyz_bound(r: usize, params: &XyzParams, n: usize) -> Result<Rational, LabError> {
    if r < 2 {
        return Err(LabError::BadArgument("the X/Y/Z bound needs r >= 2".into()));
    }
    let rr = r as i128;
    let XyzParams { x, y, z, e_z } = *params;
    let s = x + y + z;
    let d = x * (rr - 1) - z;
    let per_n2 = Rational::new(rr - 1, 2 * rr) * s * s
        - d * d / (2 * rr * (rr - 1))
        - Rational::new(rr - 2, 2 * (rr - 1)) * z * z;
    let nn = Rational::from_integer((n * n) as i128);
    Ok(per_n2 * nn + Rational::from_integer(e_z as i128))
}

/// The bound evaluated on a split of `g` itself: `X` a maximum independent
/// set, `Y` a maximum `K_r` packing of the remainder.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XyzDecomposition {
    pub x_set: Vec<usize>,
    pub y_set: Vec<usize>,
    pub z_set: Vec<usize>,
    pub params: XyzParams,
    #[serde(serialize_with = "as_text")]
    pub bound: Rational,
    pub edges: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KsRecord {
    pub r: usize,
    pub greedy_cover: usize,
    pub exact_cover: usize,
    pub cover: Vec<Vec<usize>>,
    #[serde(serialize_with = "as_text")]
    pub independence_lower_bound: Rational,
    pub independence_number: usize,
    #[serde(serialize_with = "opt_as_text")]
    pub supplied_bound: Option<Rational>,
    pub decomposition: Option<XyzDecomposition>,
}

pub fn ks_ingredients(
    g: &Graph,
    r: usize,
    supplied: Option<&XyzParams>,
) -> Result<KsRecord, LabError> {
    let greedy = disjoint_cliques_greedy(g, r)?;
    let exact = disjoint_cliques_exact(g, r)?;
    let n = g.n();
    let x_set = max_independent_set(g)?;
    let decomposition = if r >= 2 && n > 0 {
        let rest: Vec<usize> = (0..n).filter(|&v| !x_set.contains(v)).collect();
        let sub = g.induced(&rest.iter().copied().collect());
        let y_set: VertexSet = disjoint_cliques_exact(&sub, r)?
            .iter()
            .flat_map(|c| c.iter().map(|i| rest[i]).collect::<Vec<_>>())
            .collect();
        let z_set: VertexSet = rest
            .iter()
            .copied()
            .filter(|&v| !y_set.contains(v))
            .collect();
        let frac = |s: &VertexSet| Rational::new(s.len() as i128, n as i128);
        let params = XyzParams {
            x: frac(&x_set),
            y: frac(&y_set),
            z: frac(&z_set),
            e_z: edges_within(g, &z_set),
        };
        Some(XyzDecomposition {
            x_set: x_set.to_vec(),
            y_set: y_set.to_vec(),
            z_set: z_set.to_vec(),
            bound: xyz_bound(r, &params, n)?,
            params,
            edges: g.edge_count(),
        })
    } else {
        None
    };
    Ok(KsRecord {
        r,
        greedy_cover: greedy.len(),
        exact_cover: exact.len(),
        cover: exact.iter().map(VertexSet::to_vec).collect(),
        independence_lower_bound: independence_lower_bound(g, r),
        independence_number: x_set.len(),
        supplied_bound: supplied.map(|p| xyz_bound(r, p, n)).transpose()?,
        decomposition,
    })
}
