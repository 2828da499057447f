//! Exact flag densities on concrete host graphs.
//!
//! A flag is a small graph `h` with an ordered list of labeled vertices. Its
//! density at an anchor (an injective map from the labels into the host) is
//! the probability that a uniformly random set of `|h| - k` further host
//! vertices, together with the anchor, induces a copy of `h` that fixes the
//! labels.

mod catalog;
mod cut;
mod expr;

use itertools::Itertools;
use num_integer::binomial;
use thiserror::Error;

use crate::graph::Graph;
use crate::Rational;

pub use catalog::{
    catalog, catalog_hash, inequality_residual, Catalog, Inequality, Params, ResidualReport,
    CATALOG_TEXT,
};
pub use cut::{brute_force_cut_cost, expected_cut_cost, forced_classes, AnchorKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlagError {
    #[error("pattern on {pattern} vertices does not fit a host on {host}")]
    PatternTooLarge { pattern: usize, host: usize },
    #[error("anchor does not induce the flag's labeled part")]
    AnchorMismatch,
    #[error("infeasible anchor: {0}")]
    InfeasibleAnchor(String),
    #[error("unknown inequality `{0}`")]
    UnknownInequality(String),
    #[error("missing parameter `{0}`")]
    MissingParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid flag: {0}")]
    BadFlag(String),
}

/// A small pattern graph with ordered labeled vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flag {
    h: Graph,
    labels: Vec<usize>,
}

impl Flag {
    pub fn new(h: Graph, labels: Vec<usize>) -> Result<Self, FlagError> {
        if labels.iter().any(|&l| l >= h.n()) || labels.iter().duplicates().next().is_some() {
            return Err(FlagError::BadFlag(
                "labels must be distinct vertices".into(),
            ));
        }
        Ok(Self { h, labels })
    }

    pub fn unlabeled(h: Graph) -> Self {
        Self {
            h,
            labels: Vec::new(),
        }
    }

    /// Parses `KINDS:DIGITS`, e.g. `luu:221`. `KINDS` names each vertex in
    /// order as labeled (`l`) or unlabeled (`u`); labels are numbered in
    /// order of appearance. `DIGITS` has one entry per vertex pair in
    /// lexicographic order (`12, 13, ..., 23, ...`): `2` for an edge, `1`
    /// for a non-edge. A single vertex takes no digits (`l:` or `u:`).
    pub fn parse(code: &str) -> Result<Self, FlagError> {
        let bad = |why: &str| FlagError::Parse(format!("flag `{code}`: {why}"));
        let (kinds, digits) = code
            .trim()
            .split_once(':')
            .ok_or_else(|| bad("missing `:`"))?;
        let v = kinds.len();
        if v == 0 || kinds.chars().any(|c| c != 'l' && c != 'u') {
            return Err(bad("vertex kinds must be `l` or `u`"));
        }
        let pairs: Vec<(usize, usize)> = (0..v).tuple_combinations().collect();
        if digits.len() != pairs.len() {
            return Err(bad(&format!("expected {} pair digits", pairs.len())));
        }
        let mut edges = Vec::new();
        for (&(a, b), d) in pairs.iter().zip(digits.chars()) {
            match d {
                '2' => edges.push((a, b)),
                '1' => {}
                _ => return Err(bad("pair digits must be 1 or 2")),
            }
        }
        let h = Graph::new(v, edges).map_err(|e| bad(&e.to_string()))?;
        let labels = kinds
            .chars()
            .enumerate()
            .filter(|&(_, c)| c == 'l')
            .map(|(i, _)| i)
            .collect();
        Ok(Self { h, labels })
    }

    pub fn h(&self) -> &Graph {
        &self.h
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn k(&self) -> usize {
        self.labels.len()
    }

    fn unlabeled_vertices(&self) -> Vec<usize> {
        (0..self.h.n())
            .filter(|v| !self.labels.contains(v))
            .collect()
    }

    /// The labeled part as a flag whose every vertex is labeled.
    pub fn flag_type(&self) -> Flag {
        let h = self.h.induced(&self.labels.iter().copied().collect());
        // `induced` relabels in ascending order; restore label order
        let mut sorted = self.labels.clone();
        sorted.sort_unstable();
        let labels = self
            .labels
            .iter()
            .map(|l| sorted.binary_search(l).expect("present"))
            .collect();
        Flag { h, labels }
    }

    /// Probability that a uniformly random injective map from the labels
    /// into `V(h)` yields a labeled graph isomorphic to this flag.
    pub fn averaging_coefficient(&self) -> Rational {
        let n = self.h.n();
        let k = self.k();
        let mut orbit: Vec<Vec<usize>> = (0..n)
            .permutations(n)
            .filter(|sigma| {
                self.h
                    .edges()
                    .all(|(a, b)| self.h.has_edge(sigma[a], sigma[b]))
            })
            .map(|sigma| self.labels.iter().map(|&l| sigma[l]).collect())
            .collect();
        orbit.sort();
        orbit.dedup();
        let falling: i128 = (0..k).map(|i| (n - i) as i128).product();
        Rational::new(orbit.len() as i128, falling)
    }
}

/// Host vertices standing in for the flag's labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Anchor {
    pub phi: Vec<usize>,
}

impl Anchor {
    pub fn new(phi: Vec<usize>) -> Self {
        Self { phi }
    }

    /// Whether `phi` is injective, in range and induces the flag's type.
    pub fn fits(&self, flag: &Flag, g: &Graph) -> bool {
        let k = flag.k();
        self.phi.len() == k
            && self.phi.iter().all(|&v| v < g.n())
            && self.phi.iter().all_unique()
            && (0..k).tuple_combinations().all(|(i, j)| {
                g.has_edge(self.phi[i], self.phi[j])
                    == flag.h.has_edge(flag.labels[i], flag.labels[j])
            })
    }
}

/// Whether `x` extends the anchor to a label-preserving copy of the flag.
fn extends(flag: &Flag, g: &Graph, phi: &[usize], free: &[usize], x: &[usize]) -> bool {
    let h = &flag.h;
    // adjacency between the unlabeled pattern vertices and the labels is fixed
    // per host vertex, so try each bijection of `x` onto `free`
    x.iter().permutations(x.len()).any(|img| {
        free.iter().zip(&img).all(|(&f, &&hv)| {
            flag.labels
                .iter()
                .zip(phi)
                .all(|(&l, &p)| h.has_edge(f, l) == g.has_edge(hv, p))
        }) && (0..free.len())
            .tuple_combinations()
            .all(|(i, j)| h.has_edge(free[i], free[j]) == g.has_edge(*img[i], *img[j]))
    })
}

/// Induced density `d(H, G)` of an unlabeled pattern.
pub fn density(h: &Graph, g: &Graph) -> Result<Rational, FlagError> {
    let flag = Flag::unlabeled(h.clone());
    labeled_density(&flag, g, &Anchor::new(Vec::new()))
}

/// Density of `flag` at `anchor` in `g`.
pub fn labeled_density(flag: &Flag, g: &Graph, anchor: &Anchor) -> Result<Rational, FlagError> {
    let n = g.n();
    let v = flag.h.n();
    if v > n {
        return Err(FlagError::PatternTooLarge {
            pattern: v,
            host: n,
        });
    }
    if !anchor.fits(flag, g) {
        return Err(FlagError::AnchorMismatch);
    }
    let free = flag.unlabeled_vertices();
    let rest: Vec<usize> = (0..n).filter(|u| !anchor.phi.contains(u)).collect();
    let edges_needed = flag.h.edge_count();
    let hits = rest
        .iter()
        .copied()
        .combinations(free.len())
        .filter(|x| {
            if flag.k() == 0 {
                let inside: usize = x
                    .iter()
                    .tuple_combinations()
                    .filter(|(&a, &b)| g.has_edge(a, b))
                    .count();
                if inside != edges_needed {
                    return false;
                }
            }
            extends(flag, g, &anchor.phi, &free, x)
        })
        .count();
    let total = binomial(rest.len() as i128, free.len() as i128);
    Ok(Rational::new(hits as i128, total))
}

/// All anchors of `g` that induce the flag's type, in lexicographic order.
pub fn valid_anchors(flag: &Flag, g: &Graph) -> Vec<Anchor> {
    (0..g.n())
        .permutations(flag.k())
        .map(Anchor::new)
        .filter(|a| a.fits(flag, g))
        .collect()
}

/// Both sides of `⟦(h, labels)⟧ = α·h` on `g`: the mean labeled density
/// over all injective anchors (anchors of the wrong type contribute zero),
/// and the averaging coefficient times the unlabeled density.
pub fn average_operator_check(flag: &Flag, g: &Graph) -> Result<(Rational, Rational), FlagError> {
    let n = g.n();
    if flag.h.n() > n {
        return Err(FlagError::PatternTooLarge {
            pattern: flag.h.n(),
            host: n,
        });
    }
    let mut sum = Rational::from_integer(0);
    for a in valid_anchors(flag, g) {
        sum += labeled_density(flag, g, &a)?;
    }
    let falling: i128 = (0..flag.k()).map(|i| (n - i) as i128).product();
    let lhs = sum / Rational::from_integer(falling);
    let rhs = flag.averaging_coefficient() * density(&flag.h, g)?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, cycle, Graph};

    fn r(a: i128, b: i128) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn unlabeled_densities() {
        let k3 = complete(3).unwrap();
        let edge = complete(2).unwrap();
        assert_eq!(density(&k3, &cycle(5).unwrap()), Ok(r(0, 1)));
        assert_eq!(
            density(&edge, &complete_bipartite(2, 2).unwrap()),
            Ok(r(2, 3))
        );
        assert_eq!(density(&k3, &k3), Ok(r(1, 1)));
        assert!(matches!(
            density(&cycle(5).unwrap(), &k3),
            Err(FlagError::PatternTooLarge { .. })
        ));
    }

    #[test]
    fn labeled_densities() {
        let deg = Flag::parse("lu:2").unwrap();
        let c5 = cycle(5).unwrap();
        assert_eq!(
            labeled_density(&deg, &c5, &Anchor::new(vec![0])),
            Ok(r(1, 2))
        );
        let k31 = complete_bipartite(3, 1).unwrap();
        assert_eq!(
            labeled_density(&deg, &k31, &Anchor::new(vec![3])),
            Ok(r(1, 1))
        );
        let common = Flag::parse("llu:222").unwrap();
        assert_eq!(
            labeled_density(&common, &c5, &Anchor::new(vec![0, 1])),
            Ok(r(0, 1))
        );
        assert_eq!(
            labeled_density(&common, &c5, &Anchor::new(vec![0, 2])),
            Err(FlagError::AnchorMismatch)
        );
    }

    #[test]
    fn degree_flag_is_normalised_degree() {
        let deg = Flag::parse("lu:2").unwrap();
        let g = complete_bipartite(3, 2).unwrap();
        for v in 0..5 {
            assert_eq!(
                labeled_density(&deg, &g, &Anchor::new(vec![v])).unwrap(),
                r(g.degree(v) as i128, 4)
            );
        }
    }

    #[test]
    fn averaging_coefficients() {
        assert_eq!(
            Flag::parse("luu:221").unwrap().averaging_coefficient(),
            r(2, 6)
        );
        assert_eq!(
            Flag::parse("ulu:221").unwrap().averaging_coefficient(),
            r(2, 3)
        );
        // path 1-2-3-4 labeled at an end and its neighbour, over ordered label maps
        assert_eq!(
            Flag::parse("lluu:211212").unwrap().averaging_coefficient(),
            r(1, 6)
        );
        assert_eq!(
            Flag::parse("uuu:222").unwrap().averaging_coefficient(),
            r(1, 1)
        );
    }

    #[test]
    fn averaging_identity_on_c6() {
        let c6 = cycle(6).unwrap();
        for code in ["luu:221", "ulu:221", "lu:2", "llu:221", "lluu:211212"] {
            let flag = Flag::parse(code).unwrap();
            let (lhs, rhs) = average_operator_check(&flag, &c6).unwrap();
            assert_eq!(lhs, rhs, "{code}");
        }
    }

    #[test]
    fn vertex_transitive_hosts_give_equal_anchor_densities() {
        let g = cycle(7).unwrap();
        let flag = Flag::parse("luu:212").unwrap();
        let values: Vec<_> = valid_anchors(&flag, &g)
            .iter()
            .map(|a| labeled_density(&flag, &g, a).unwrap())
            .collect();
        assert!(values.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn flag_type_keeps_label_order() {
        let f = Flag::new(Graph::new(3, [(0, 2)]).unwrap(), vec![2, 0]).unwrap();
        let t = f.flag_type();
        assert_eq!(t.labels(), &[1, 0]);
        assert!(t.h().has_edge(0, 1));
        assert!(Flag::parse("lx:2").is_err());
        assert!(Flag::parse("lu:21").is_err());
        assert!(Flag::new(Graph::empty(2).unwrap(), vec![0, 0]).is_err());
    }
}
