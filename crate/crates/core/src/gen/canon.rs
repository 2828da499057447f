//! Canonical labeling by equitable color refinement plus an
//! individualization search with automorphism pruning.
//!
//! The canonical form is the lexicographically least graph6 string over all
//! leaves of the search tree. Every choice in the tree (refinement order,
//! target cell) depends only on isomorphism-invariant data, so isomorphic
//! inputs produce equal forms.

use std::fmt;

use super::GenError;
use crate::graph::Graph;

/// Largest vertex count accepted by the canonical labeler.
pub const CANON_MAX_N: usize = 16;

/// graph6 string of the canonically relabeled graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Result of a canonical labeling: `label[v]` is the canonical position of `v`.
#[derive(Clone, Debug)]
pub struct Labeling {
    pub label: Vec<usize>,
    pub form: CanonicalForm,
}

impl Labeling {
    /// The vertex that receives canonical label `i`.
    pub fn vertex_at(&self, i: usize) -> usize {
        self.label
            .iter()
            .position(|&l| l == i)
            .expect("label in range")
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, GenError> {
    Ok(canonical_labeling(g, None)?.form)
}

/// The canonically relabeled copy of `g`.
pub fn canonical_graph(g: &Graph) -> Result<Graph, GenError> {
    let lab = canonical_labeling(g, None)?;
    Ok(g.permute(&lab.label))
}

/// Canonical labeling respecting an initial vertex coloring. Color classes
/// keep their relative order (higher colors get higher labels), so for two
/// colorings with equal class sizes the forms agree iff the colored graphs
/// are isomorphic.
pub fn canonical_labeling(g: &Graph, colors: Option<&[usize]>) -> Result<Labeling, GenError> {
    let n = g.n();
    if n > CANON_MAX_N {
        return Err(GenError::GuardExceeded {
            n,
            limit: CANON_MAX_N,
        });
    }
    let masks = g.masks();
    let initial = match colors {
        Some(c) => {
            assert_eq!(c.len(), n, "one color per vertex");
            compress(c)
        }
        None => vec![0; n],
    };
    let mut search = Search {
        n,
        masks: &masks,
        best: None,
        automorphisms: Vec::new(),
    };
    let root = refine(&masks, initial);
    search.descend(root, &mut Vec::new());
    let (_, label) = search.best.expect("search visits at least one leaf");
    let form = CanonicalForm(g.permute(&label).to_graph6());
    Ok(Labeling { label, form })
}

/// Renumbers colors to `0..k` preserving their order.
fn compress(colors: &[usize]) -> Vec<usize> {
    let mut distinct: Vec<usize> = colors.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    colors
        .iter()
        .map(|c| distinct.binary_search(c).expect("present"))
        .collect()
}

/// Refines a coloring until equitable. New colors are ordered by the sorted
/// signatures `(old color, neighbor counts per old color)`.
fn refine(masks: &[u64], mut colors: Vec<usize>) -> Vec<usize> {
    let n = colors.len();
    let mut k = colors.iter().copied().max().map_or(0, |m| m + 1);
    loop {
        let mut class_mask = vec![0u64; k];
        for (v, &c) in colors.iter().enumerate() {
            class_mask[c] |= 1u64 << v;
        }
        let signatures: Vec<Vec<u32>> = (0..n)
            .map(|v| {
                let mut s = Vec::with_capacity(k + 1);
                s.push(colors[v] as u32);
                s.extend(class_mask.iter().map(|&m| (masks[v] & m).count_ones()));
                s
            })
            .collect();
        let mut distinct = signatures.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let next: Vec<usize> = signatures
            .iter()
            .map(|s| distinct.binary_search(s).expect("present"))
            .collect();
        let refined = distinct.len();
        colors = next;
        if refined == k {
            return colors;
        }
        k = refined;
    }
}

struct Search<'a> {
    n: usize,
    masks: &'a [u64],
    /// Best leaf so far: encoding bits (column order) and its labeling.
    best: Option<(Vec<bool>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn encode(&self, label: &[usize]) -> Vec<bool> {
        let n = self.n;
        let mut at = vec![0usize; n];
        for (v, &l) in label.iter().enumerate() {
            at[l] = v;
        }
        let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for j in 1..n {
            for i in 0..j {
                bits.push(self.masks[at[i]] >> at[j] & 1 == 1);
            }
        }
        bits
    }

    fn descend(&mut self, colors: Vec<usize>, prefix: &mut Vec<usize>) {
        let n = self.n;
        let k = colors.iter().copied().max().map_or(0, |m| m + 1);
        if k == n {
            self.leaf(colors);
            return;
        }
        // first color class with more than one vertex
        let mut sizes = vec![0usize; k];
        for &c in &colors {
            sizes[c] += 1;
        }
        let target = sizes.iter().position(|&s| s > 1).expect("non-discrete");
        let cell: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cell {
            if !explored.is_empty() && self.same_orbit_as_explored(v, &explored, prefix) {
                continue;
            }
            explored.push(v);
            let individualized: Vec<usize> = colors
                .iter()
                .enumerate()
                .map(|(u, &c)| {
                    if c > target || (c == target && u != v) {
                        c + 1
                    } else {
                        c
                    }
                })
                .collect();
            let child = refine(self.masks, individualized);
            prefix.push(v);
            self.descend(child, prefix);
            prefix.pop();
        }
    }

    /// Whether `v` lies in the orbit of an explored vertex under the group
    /// generated by known automorphisms that fix `prefix` pointwise.
    fn same_orbit_as_explored(&self, v: usize, explored: &[usize], prefix: &[usize]) -> bool {
        let gens: Vec<&Vec<usize>> = self
            .automorphisms
            .iter()
            .filter(|a| prefix.iter().all(|&p| a[p] == p))
            .collect();
        if gens.is_empty() {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for a in gens {
            for (x, &y) in a.iter().enumerate() {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx] = ry;
                }
            }
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&u| find(&mut parent, u) == rv)
    }

    fn leaf(&mut self, label: Vec<usize>) {
        let bits = self.encode(&label);
        match &self.best {
            None => self.best = Some((bits, label)),
            Some((best_bits, best_label)) => match bits.cmp(best_bits) {
                std::cmp::Ordering::Less => self.best = Some((bits, label)),
                std::cmp::Ordering::Equal => {
                    // best_label^{-1} after label maps G onto itself
                    let mut inv = vec![0usize; self.n];
                    for (v, &l) in best_label.iter().enumerate() {
                        inv[l] = v;
                    }
                    let aut: Vec<usize> = label.iter().map(|&l| inv[l]).collect();
                    if aut.iter().enumerate().any(|(i, &j)| i != j) {
                        self.automorphisms.push(aut);
                    }
                }
                std::cmp::Ordering::Greater => {}
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, cycle, grotzsch, path, petersen};
    use itertools::Itertools;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_xoshiro::Xoshiro256StarStar;

    #[test]
    fn cycle_relabelings_agree() {
        let c5 = cycle(5).unwrap();
        let base = canonical_form(&c5).unwrap();
        for perm in (0..5).permutations(5) {
            assert_eq!(canonical_form(&c5.permute(&perm)).unwrap(), base);
        }
    }

    #[test]
    fn star_and_path_differ() {
        let star = complete_bipartite(3, 1).unwrap();
        let p4 = path(4).unwrap();
        assert_ne!(canonical_form(&star).unwrap(), canonical_form(&p4).unwrap());
    }

    #[test]
    fn all_labelings_of_p4_give_one_form() {
        let p4 = path(4).unwrap();
        let forms: std::collections::BTreeSet<_> = (0..4)
            .permutations(4)
            .map(|perm| canonical_form(&p4.permute(&perm)).unwrap())
            .collect();
        assert_eq!(forms.len(), 1);
    }

    #[test]
    fn random_permutations_of_symmetric_graphs() {
        let mut rng = Xoshiro256StarStar::seed_from_u64(7);
        for g in [
            petersen(),
            grotzsch(),
            Graph::empty(12).unwrap(),
            cycle(16).unwrap(),
        ] {
            let base = canonical_form(&g).unwrap();
            let mut perm: Vec<usize> = (0..g.n()).collect();
            for _ in 0..100 {
                perm.shuffle(&mut rng);
                assert_eq!(canonical_form(&g.permute(&perm)).unwrap(), base);
            }
        }
    }

    #[test]
    fn canonical_graph_matches_form() {
        let g = grotzsch();
        let c = canonical_graph(&g).unwrap();
        assert_eq!(c.to_graph6(), canonical_form(&g).unwrap().as_str());
        assert_eq!(canonical_form(&c).unwrap().as_str(), c.to_graph6());
    }

    #[test]
    fn colored_labeling_detects_vertex_orbits() {
        // in a path 0-1-2-3 the ends share an orbit, an end and an inner vertex do not
        let p4 = path(4).unwrap();
        let mark = |v: usize| {
            let mut c = vec![0; 4];
            c[v] = 1;
            canonical_labeling(&p4, Some(&c)).unwrap().form
        };
        assert_eq!(mark(0), mark(3));
        assert_eq!(mark(1), mark(2));
        assert_ne!(mark(0), mark(1));
    }

    #[test]
    fn guard() {
        assert!(matches!(
            canonical_form(&cycle(17).unwrap()),
            Err(GenError::GuardExceeded { .. })
        ));
    }
}
