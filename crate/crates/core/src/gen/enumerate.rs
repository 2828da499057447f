//! Canonical augmentation: every graph on `n` vertices is generated from its
//! canonical parent, the graph obtained by deleting the vertex that receives
//! the last canonical label. A child is kept only when the added vertex lies
//! in the automorphism orbit of that vertex, so each isomorphism class has a
//! single parent class and only a per-parent seen-set is needed.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::canon::{canonical_labeling, CANON_MAX_N};
use super::GenError;
use crate::graph::{has_clique_mask, Graph};

/// Default upper bound on `n` for enumeration.
pub const DEFAULT_MAX_N: usize = 10;

#[derive(Clone, Debug)]
pub struct Enumerator {
    r_plus_1: usize,
    max_n: usize,
    regular_only: bool,
}

impl Enumerator {
    /// Enumerates `K_{r_plus_1}`-free graphs.
    pub fn new(r_plus_1: usize) -> Result<Self, GenError> {
        if r_plus_1 < 2 {
            return Err(GenError::BadArgument(format!(
                "forbidden clique order must be at least 2, got {r_plus_1}"
            )));
        }
        Ok(Self {
            r_plus_1,
            max_n: DEFAULT_MAX_N,
            regular_only: false,
        })
    }

    /// Overrides the default guard on `n`.
    pub fn with_limit(mut self, max_n: usize) -> Self {
        self.max_n = max_n;
        self
    }

    /// Keeps only regular graphs in the output (parents are still complete).
    pub fn regular_only(mut self, yes: bool) -> Self {
        self.regular_only = yes;
        self
    }

    fn check(&self, n: usize) -> Result<(), GenError> {
        if n == 0 {
            return Err(GenError::BadArgument("n must be at least 1".into()));
        }
        let limit = self.max_n.min(CANON_MAX_N);
        if n > limit {
            return Err(GenError::GuardExceeded { n, limit });
        }
        Ok(())
    }

    /// One representative per isomorphism class on exactly `n` vertices,
    /// ordered by edge count and then canonical graph6 string.
    pub fn level(&self, n: usize) -> Result<Vec<Graph>, GenError> {
        Ok(self.levels(n)?.pop().unwrap_or_default())
    }

    /// Levels `1..=n`; entry `i` holds the graphs on `i + 1` vertices.
    pub fn levels(&self, n: usize) -> Result<Vec<Vec<Graph>>, GenError> {
        self.check(n)?;
        let mut out: Vec<Vec<Graph>> = Vec::with_capacity(n);
        let mut current = vec![Graph::empty(1).expect("one vertex")];
        for size in 2..=n + 1 {
            let next = if size <= n {
                let mut next: Vec<(usize, String, Graph)> = current
                    .par_iter()
                    .flat_map_iter(|parent| self.children(parent))
                    .map(|g| (g.edge_count(), g.to_graph6(), g))
                    .collect();
                next.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
                next.into_iter().map(|(_, _, g)| g).collect()
            } else {
                Vec::new()
            };
            let finished = std::mem::replace(&mut current, next);
            out.push(if self.regular_only {
                finished.into_iter().filter(Graph::is_regular).collect()
            } else {
                finished
            });
        }
        Ok(out)
    }

    /// Canonical children of `parent`, each canonically labeled.
    fn children(&self, parent: &Graph) -> Vec<Graph> {
        let m = parent.n();
        let masks = parent.masks();
        let mut seen = BTreeSet::new();
        let mut kids = Vec::new();
        for nbrs in 0u64..(1u64 << m) {
            if has_clique_mask(&masks, nbrs, self.r_plus_1 - 1) {
                continue;
            }
            let mut child_masks = masks.clone();
            for (u, cm) in child_masks.iter_mut().enumerate() {
                if nbrs >> u & 1 == 1 {
                    *cm |= 1u64 << m;
                }
            }
            child_masks.push(nbrs);
            let child = Graph::from_masks(&child_masks).expect("valid extension");
            let lab = canonical_labeling(&child, None).expect("within canonical guard");
            let last = lab.vertex_at(m);
            if last != m && !same_orbit(&child, m, last) {
                continue;
            }
            if seen.insert(lab.form.clone()) {
                kids.push(child.permute(&lab.label));
            }
        }
        kids
    }
}

fn same_orbit(g: &Graph, a: usize, b: usize) -> bool {
    let marked = |v: usize| {
        let mut colors = vec![0; g.n()];
        colors[v] = 1;
        canonical_labeling(g, Some(&colors))
            .expect("within canonical guard")
            .form
    };
    marked(a) == marked(b)
}

/// All `K_{r_plus_1}`-free graphs on `n` vertices up to isomorphism, under the
/// default guard.
pub fn enumerate_free(n: usize, r_plus_1: usize) -> Result<impl Iterator<Item = Graph>, GenError> {
    Ok(Enumerator::new(r_plus_1)?.level(n)?.into_iter())
}
