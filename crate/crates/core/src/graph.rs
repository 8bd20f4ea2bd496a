//! Regular graphs with a deterministic arc ordering, family generators and
//! the brute-force local arc-transitivity checker.
//!
//! Every graph stores, for each vertex `x`, an ordered neighbor list
//! `y_1 < y_2 < ... < y_d` ("the i-th neighbor of x") together with the
//! reverse index `j` such that `x` is the j-th neighbor of `y_i`. The
//! flip-flop shift and the Szegedy swap are both permutations of these arcs.

use crate::error::{Result, WalkError};
use std::collections::VecDeque;

/// Default vertex-count limit for brute-force automorphism searches.
pub const BRUTE_FORCE_LIMIT: usize = 16;

/// A connected d-regular undirected graph with ordered arcs.
///
/// Self-loops are never stored here; lazy walks add them on their own.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularGraph {
    n_vertices: usize,
    degree: usize,
    /// Row-major neighbor lists, ascending within each row.
    neighbors: Vec<usize>,
    /// `reverse[x*d + i] = j` with `neighbors[y*d + j] == x` for `y = neighbors[x*d + i]`.
    reverse: Vec<usize>,
    /// Set by family generators that are known locally arc-transitive.
    certified_arc_transitive: bool,
}

impl RegularGraph {
    /// Build a graph from an undirected edge list, validating regularity,
    /// connectivity and symmetry. Neighbor lists come out ascending.
    pub fn from_edges(n_vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n_vertices < 2 {
            return Err(WalkError::InvalidGraph(format!(
                "need at least 2 vertices, got {n_vertices}"
            )));
        }
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n_vertices];
        for &(u, v) in edges {
            if u >= n_vertices || v >= n_vertices {
                return Err(WalkError::InvalidGraph(format!(
                    "edge ({u}, {v}) references a vertex >= {n_vertices}"
                )));
            }
            if u == v {
                return Err(WalkError::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (x, row) in adj.iter_mut().enumerate() {
            row.sort_unstable();
            if row.windows(2).any(|w| w[0] == w[1]) {
                return Err(WalkError::InvalidGraph(format!(
                    "duplicate edge incident to vertex {x}"
                )));
            }
        }
        let degree = adj[0].len();
        if degree == 0 {
            return Err(WalkError::InvalidGraph("vertex 0 has no neighbors".into()));
        }
        if let Some(x) = (0..n_vertices).find(|&x| adj[x].len() != degree) {
            return Err(WalkError::InvalidGraph(format!(
                "graph is not regular: vertex {x} has degree {}, vertex 0 has degree {degree}",
                adj[x].len()
            )));
        }

        let mut neighbors = Vec::with_capacity(n_vertices * degree);
        for row in &adj {
            neighbors.extend_from_slice(row);
        }
        let mut reverse = vec![0usize; n_vertices * degree];
        for x in 0..n_vertices {
            for i in 0..degree {
                let y = neighbors[x * degree + i];
                let j = adj[y]
                    .binary_search(&x)
                    .map_err(|_| WalkError::InvalidGraph(format!("asymmetric arc ({x}, {y})")))?;
                reverse[x * degree + i] = j;
            }
        }

        let graph = RegularGraph {
            n_vertices,
            degree,
            neighbors,
            reverse,
            certified_arc_transitive: false,
        };
        if !graph.is_connected() {
            return Err(WalkError::InvalidGraph("graph is not connected".into()));
        }
        Ok(graph)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The i-th neighbor of `x` (0-based slot).
    #[inline]
    pub fn neighbor(&self, x: usize, i: usize) -> usize {
        self.neighbors[x * self.degree + i]
    }

    /// Ordered neighbor list of `x`.
    #[inline]
    pub fn neighbors_of(&self, x: usize) -> &[usize] {
        &self.neighbors[x * self.degree..(x + 1) * self.degree]
    }

    /// Slot `j` such that `x` is the j-th neighbor of its i-th neighbor.
    #[inline]
    pub fn reverse_index(&self, x: usize, i: usize) -> usize {
        self.reverse[x * self.degree + i]
    }

    pub fn are_adjacent(&self, x: usize, y: usize) -> bool {
        self.neighbors_of(x).binary_search(&y).is_ok()
    }

    /// True when the generator is one of the families known to be locally
    /// arc-transitive, so sizes past the brute-force limit stay decidable.
    pub fn certified_arc_transitive(&self) -> bool {
        self.certified_arc_transitive
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n_vertices];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for &y in self.neighbors_of(x) {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        count == self.n_vertices
    }
}

/// A graph together with its unique marked vertex.
#[derive(Debug, Clone)]
pub struct MarkedInstance {
    graph: RegularGraph,
    marked: usize,
}

impl MarkedInstance {
    pub fn new(graph: RegularGraph, marked: usize) -> Result<Self> {
        if marked >= graph.n_vertices() {
            return Err(WalkError::InvalidParameter(format!(
                "marked vertex {marked} out of range for {} vertices",
                graph.n_vertices()
            )));
        }
        Ok(MarkedInstance { graph, marked })
    }

    pub fn graph(&self) -> &RegularGraph {
        &self.graph
    }

    pub fn marked(&self) -> usize {
        self.marked
    }
}

/// Graph family selector with family-specific size parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphFamily {
    Cycle { n: usize },
    Torus { rows: usize, cols: usize },
    Complete { n: usize },
    /// K_{k,k}; only the regular (balanced) complete bipartite graphs.
    CompleteBipartite { half: usize },
    Hypercube { dim: usize },
    Johnson { n: usize, k: usize },
    /// Paley graph over the prime field F_q, q prime with q = 1 mod 4.
    Paley { q: usize },
    MoebiusLadder { n: usize },
    Explicit { n_vertices: usize, edges: Vec<(usize, usize)> },
}

impl GraphFamily {
    /// Short text tag used in reports and CSV/JSON output.
    pub fn label(&self) -> String {
        match self {
            GraphFamily::Cycle { n } => format!("cycle({n})"),
            GraphFamily::Torus { rows, cols } => format!("torus({rows},{cols})"),
            GraphFamily::Complete { n } => format!("complete({n})"),
            GraphFamily::CompleteBipartite { half } => format!("complete_bipartite({half})"),
            GraphFamily::Hypercube { dim } => format!("hypercube({dim})"),
            GraphFamily::Johnson { n, k } => format!("johnson({n},{k})"),
            GraphFamily::Paley { q } => format!("paley({q})"),
            GraphFamily::MoebiusLadder { n } => format!("moebius_ladder({n})"),
            GraphFamily::Explicit { n_vertices, .. } => format!("explicit({n_vertices})"),
        }
    }
}

/// Construct the graph for a family spec. Neighbor ordering is ascending by
/// vertex id, so repeated runs produce identical arc layouts.
pub fn build_graph(spec: &GraphFamily) -> Result<RegularGraph> {
    let mut graph = match spec {
        GraphFamily::Cycle { n } => {
            if *n < 3 {
                return Err(WalkError::InvalidFamily(format!("cycle needs n >= 3, got {n}")));
            }
            let edges: Vec<_> = (0..*n).map(|i| (i, (i + 1) % n)).collect();
            RegularGraph::from_edges(*n, &edges)?
        }
        GraphFamily::Torus { rows, cols } => {
            if *rows < 3 || *cols < 3 {
                return Err(WalkError::InvalidFamily(format!(
                    "torus needs rows, cols >= 3, got ({rows}, {cols})"
                )));
            }
            let id = |r: usize, c: usize| r * cols + c;
            let mut edges = Vec::new();
            for r in 0..*rows {
                for c in 0..*cols {
                    edges.push((id(r, c), id((r + 1) % rows, c)));
                    edges.push((id(r, c), id(r, (c + 1) % cols)));
                }
            }
            RegularGraph::from_edges(rows * cols, &edges)?
        }
        GraphFamily::Complete { n } => {
            if *n < 2 {
                return Err(WalkError::InvalidFamily(format!("complete needs n >= 2, got {n}")));
            }
            let mut edges = Vec::new();
            for u in 0..*n {
                for v in (u + 1)..*n {
                    edges.push((u, v));
                }
            }
            RegularGraph::from_edges(*n, &edges)?
        }
        GraphFamily::CompleteBipartite { half } => {
            if *half < 1 {
                return Err(WalkError::InvalidFamily(
                    "complete_bipartite needs half >= 1".into(),
                ));
            }
            let mut edges = Vec::new();
            for u in 0..*half {
                for v in 0..*half {
                    edges.push((u, half + v));
                }
            }
            RegularGraph::from_edges(2 * half, &edges)?
        }
        GraphFamily::Hypercube { dim } => {
            if *dim < 1 || *dim > 20 {
                return Err(WalkError::InvalidFamily(format!(
                    "hypercube needs 1 <= dim <= 20, got {dim}"
                )));
            }
            let n = 1usize << dim;
            let mut edges = Vec::new();
            for u in 0..n {
                for b in 0..*dim {
                    let v = u ^ (1 << b);
                    if u < v {
                        edges.push((u, v));
                    }
                }
            }
            RegularGraph::from_edges(n, &edges)?
        }
        GraphFamily::Johnson { n, k } => {
            if *k == 0 || *k >= *n {
                return Err(WalkError::InvalidFamily(format!(
                    "johnson needs 0 < k < n, got J({n},{k})"
                )));
            }
            // Vertices are the k-subsets of {0..n-1}, ordered by bitmask value;
            // two subsets are adjacent iff their intersection has size k-1.
            let masks: Vec<u32> = (0u32..1 << n).filter(|m| m.count_ones() as usize == *k).collect();
            let nv = masks.len();
            let mut edges = Vec::new();
            for a in 0..nv {
                for b in (a + 1)..nv {
                    if (masks[a] & masks[b]).count_ones() as usize == k - 1 {
                        edges.push((a, b));
                    }
                }
            }
            RegularGraph::from_edges(nv, &edges)?
        }
        GraphFamily::Paley { q } => {
            if !is_prime(*q) || q % 4 != 1 {
                return Err(WalkError::InvalidFamily(format!(
                    "paley needs a prime q = 1 mod 4, got {q}"
                )));
            }
            let mut residue = vec![false; *q];
            for x in 1..*q {
                residue[(x * x) % q] = true;
            }
            let mut edges = Vec::new();
            for u in 0..*q {
                for v in (u + 1)..*q {
                    if residue[v - u] {
                        edges.push((u, v));
                    }
                }
            }
            RegularGraph::from_edges(*q, &edges)?
        }
        GraphFamily::MoebiusLadder { n } => {
            if *n < 4 || n % 2 != 0 {
                return Err(WalkError::InvalidFamily(format!(
                    "moebius_ladder needs even n >= 4, got {n}"
                )));
            }
            let mut edges: Vec<_> = (0..*n).map(|i| (i, (i + 1) % n)).collect();
            for i in 0..n / 2 {
                edges.push((i, i + n / 2));
            }
            RegularGraph::from_edges(*n, &edges)?
        }
        GraphFamily::Explicit { n_vertices, edges } => RegularGraph::from_edges(*n_vertices, edges)?,
    };
    graph.certified_arc_transitive = matches!(
        spec,
        GraphFamily::Cycle { .. }
            | GraphFamily::Torus { .. }
            | GraphFamily::Complete { .. }
            | GraphFamily::CompleteBipartite { .. }
            | GraphFamily::Hypercube { .. }
            | GraphFamily::Johnson { .. }
            | GraphFamily::Paley { .. }
    );
    Ok(graph)
}

fn is_prime(q: usize) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// Parse the explicit edge-list format: first line `N d`, then one
/// `u v` pair per line, 0-indexed, each undirected edge listed once.
pub fn parse_edge_list(text: &str) -> Result<GraphFamily> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| WalkError::Io("edge list is empty".into()))?;
    let mut head = header.split_whitespace();
    let n_vertices: usize = head
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| WalkError::Io("bad header: expected \"N d\"".into()))?;
    let degree: usize = head
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| WalkError::Io("bad header: expected \"N d\"".into()))?;
    let mut edges = Vec::new();
    for line in lines {
        let mut it = line.split_whitespace();
        let u: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| WalkError::Io(format!("bad edge line: {line:?}")))?;
        let v: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| WalkError::Io(format!("bad edge line: {line:?}")))?;
        edges.push((u, v));
    }
    if edges.len() * 2 != n_vertices * degree {
        return Err(WalkError::InvalidGraph(format!(
            "edge list has {} edges; a {degree}-regular graph on {n_vertices} vertices needs {}",
            edges.len(),
            n_vertices * degree / 2
        )));
    }
    Ok(GraphFamily::Explicit { n_vertices, edges })
}

/// Decide local arc-transitivity. `at` restricts the test to one vertex.
///
/// For each tested vertex `u` the question is whether the automorphisms
/// fixing `u` act transitively on its neighbors. It suffices to find, for the
/// first neighbor `v_1` and every other neighbor `v_j`, one automorphism with
/// `u -> u` and `v_1 -> v_j`: orbits compose, so the orbit of `v_1` covering
/// all neighbors gives every pairwise mapping.
///
/// Graphs above `limit` vertices are only decided when the generator attached
/// a certificate; otherwise this errs rather than guessing.
pub fn is_locally_arc_transitive(
    graph: &RegularGraph,
    at: Option<usize>,
    limit: usize,
) -> Result<bool> {
    if graph.n_vertices() > limit {
        if graph.certified_arc_transitive() {
            return Ok(true);
        }
        return Err(WalkError::UndecidableAtDeskScale {
            n_vertices: graph.n_vertices(),
            limit,
        });
    }
    let vertices: Vec<usize> = match at {
        Some(u) => vec![u],
        None => (0..graph.n_vertices()).collect(),
    };
    for u in vertices {
        if u >= graph.n_vertices() {
            return Err(WalkError::InvalidParameter(format!("vertex {u} out of range")));
        }
        let nbrs = graph.neighbors_of(u);
        let v1 = nbrs[0];
        for &vj in &nbrs[1..] {
            if !automorphism_exists(graph, u, v1, vj) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Backtracking search for an automorphism fixing `u` and mapping `v1 -> v2`.
fn automorphism_exists(graph: &RegularGraph, u: usize, v1: usize, v2: usize) -> bool {
    let n = graph.n_vertices();
    // Assign vertices in BFS order from u so every new vertex (after the
    // seeds) has a previously-assigned neighbor constraining its image.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for seed in [u, v1] {
        if !seen[seed] {
            seen[seed] = true;
            order.push(seed);
            queue.push_back(seed);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &y in graph.neighbors_of(x) {
            if !seen[y] {
                seen[y] = true;
                order.push(y);
                queue.push_back(y);
            }
        }
    }

    // Seed with u -> u and v1 -> v2; both v1 and v2 are neighbors of the
    // fixed u, so the seed assignment is always adjacency-consistent.
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    image[u] = u;
    used[u] = true;
    image[v1] = v2;
    used[v2] = true;

    fn consistent(graph: &RegularGraph, image: &[usize], v: usize, w: usize) -> bool {
        // Every already-assigned vertex must keep its adjacency to v.
        for p in 0..graph.n_vertices() {
            let ip = image[p];
            if ip == usize::MAX || p == v {
                continue;
            }
            if graph.are_adjacent(v, p) != graph.are_adjacent(w, ip) {
                return false;
            }
        }
        true
    }

    fn extend(
        graph: &RegularGraph,
        order: &[usize],
        pos: usize,
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        if image[v] != usize::MAX {
            return extend(graph, order, pos + 1, image, used);
        }
        for w in 0..graph.n_vertices() {
            if used[w] || !consistent(graph, image, v, w) {
                continue;
            }
            image[v] = w;
            used[w] = true;
            if extend(graph, order, pos + 1, image, used) {
                return true;
            }
            image[v] = usize::MAX;
            used[w] = false;
        }
        false
    }

    extend(graph, &order, 0, &mut image, &mut used)
}
