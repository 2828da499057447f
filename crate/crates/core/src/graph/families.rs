use super::{Graph, GraphError};

fn check_positive(sizes: &[usize]) -> Result<(), GraphError> {
    if sizes.contains(&0) {
        return Err(GraphError::BadSizes(format!(
            "part sizes must be positive, got {sizes:?}"
        )));
    }
    Ok(())
}

/// Complete multipartite graph. Part `i` occupies a contiguous block of
/// vertices, parts in the order given.
pub fn complete_multipartite(sizes: &[usize]) -> Result<Graph, GraphError> {
    check_positive(sizes)?;
    let n: usize = sizes.iter().sum();
    let mut part = Vec::with_capacity(n);
    for (i, &s) in sizes.iter().enumerate() {
        part.extend(std::iter::repeat_n(i, s));
    }
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    let edges: Vec<_> = edges.filter(|&(u, v)| part[u] != part[v]).collect();
    Graph::new(n, edges)
}

/// `K_{a,b}`: vertices `0..a` on one side, `a..a+b` on the other.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, GraphError> {
    complete_multipartite(&[a, b])
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Graph::empty(0);
    }
    complete_multipartite(&vec![1; n])
}

/// Turán graph `T(n, r)`: `r` parts as equal as possible, larger parts first.
pub fn turan(n: usize, r: usize) -> Result<Graph, GraphError> {
    if r == 0 {
        return Err(GraphError::BadSizes("turan graph needs r >= 1".into()));
    }
    let sizes: Vec<usize> = (0..r)
        .map(|i| n / r + usize::from(i < n % r))
        .filter(|&s| s > 0)
        .collect();
    if sizes.is_empty() {
        return Graph::empty(0);
    }
    complete_multipartite(&sizes)
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::BadSizes(format!("cycle needs n >= 3, got {n}")));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    Graph::new(n, (1..n).map(|i| (i - 1, i)))
}

/// Replaces vertex `i` of `h` by an independent set of `sizes[i]` vertices
/// (in order, contiguously) and every edge by a complete bipartite graph.
pub fn blow_up(h: &Graph, sizes: &[usize]) -> Result<Graph, GraphError> {
    if sizes.len() != h.n() {
        return Err(GraphError::BadSizes(format!(
            "{} sizes for a graph on {} vertices",
            sizes.len(),
            h.n()
        )));
    }
    check_positive(sizes)?;
    let mut start = Vec::with_capacity(sizes.len());
    let mut acc = 0;
    for &s in sizes {
        start.push(acc);
        acc += s;
    }
    let mut edges = Vec::new();
    for (i, j) in h.edges() {
        for a in start[i]..start[i] + sizes[i] {
            for b in start[j]..start[j] + sizes[j] {
                edges.push((a, b));
            }
        }
    }
    Graph::new(acc, edges)
}

/// The Grötzsch graph as the Mycielskian of `C_5`.
///
/// Vertices `0..5` form the cycle `0-1-2-3-4-0`, vertex `5 + i` is the shadow
/// of `i` (adjacent to both cycle neighbors of `i`), and vertex `10` is joined
/// to every shadow.
pub fn grotzsch() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, (i + 1) % 5));
        edges.push((5 + i, (i + 4) % 5));
        edges.push((5 + i, 10));
    }
    Graph::new(11, edges).expect("static construction")
}

/// The Petersen graph: outer cycle `0..5`, inner pentagram `5..10`, spokes `i - (5 + i)`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    Graph::new(10, edges).expect("static construction")
}
