//! Simple undirected graphs over integer-indexed vertices, plus the
//! structural queries the reduction machinery is built on: connected
//! components, complement, induced subgraphs and induced-path detection.
//!
//! Vertices are `0..n` internally; the text format is 1-based.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("induced path length must be at least 1, got {0}")]
    BadPathLength(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A simple undirected graph. Neighbor lists are kept sorted, so all
/// iteration orders (and everything built on top of them) are deterministic.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.n(), self.m, self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    /// An edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => return Err(GraphError::DuplicateEdge(u.min(v), u.max(v))),
            Err(pos) => self.adj[u].insert(pos, v),
        }
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        self.m += 1;
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Neighbors of `u`, ascending.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    /// All edges as pairs `(u, v)` with `u < v`, lexicographically ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Disjoint union of `self` and `other`; vertices of `other` are shifted
    /// by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|nbrs| nbrs.iter().map(|&v| v + off).collect()));
        Graph { adj, m: self.m + other.m }
    }
}

/// Connected components, each sorted, ordered by smallest contained vertex.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut queue = std::collections::VecDeque::from([start]);
        seen[start] = true;
        while let Some(u) = queue.pop_front() {
            comp.push(u);
            for &v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// The complement graph: edge {u, v} present iff u != v and absent in `g`.
pub fn complement(g: &Graph) -> Graph {
    let n = g.n();
    let mut adj = Vec::with_capacity(n);
    let mut m = 0;
    for u in 0..n {
        let mut row = Vec::with_capacity(n - 1 - g.degree(u));
        let mut nbrs = g.neighbors(u).iter().copied().peekable();
        for v in 0..n {
            if nbrs.peek() == Some(&v) {
                nbrs.next();
                continue;
            }
            if v != u {
                row.push(v);
            }
        }
        m += row.len();
        adj.push(row);
    }
    Graph { adj, m: m / 2 }
}

/// An induced subgraph together with the vertex renumbering in both
/// directions: `new_to_old[i]` is the host vertex behind local vertex `i`,
/// and `old_to_new` maps each selected host vertex to its local index.
pub struct InducedSubgraph {
    pub graph: Graph,
    pub old_to_new: BTreeMap<usize, usize>,
    pub new_to_old: Vec<usize>,
}

pub fn induced_subgraph(
    g: &Graph,
    vertices: &BTreeSet<usize>,
) -> Result<InducedSubgraph, GraphError> {
    if let Some(&v) = vertices.iter().find(|&&v| v >= g.n()) {
        return Err(GraphError::VertexOutOfRange { vertex: v, n: g.n() });
    }
    let new_to_old: Vec<usize> = vertices.iter().copied().collect();
    let old_to_new: BTreeMap<usize, usize> =
        new_to_old.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut sub = Graph::new(new_to_old.len());
    let mut m = 0;
    for (i, &v) in new_to_old.iter().enumerate() {
        let row: Vec<usize> = g
            .neighbors(v)
            .iter()
            .filter_map(|w| old_to_new.get(w).copied())
            .collect();
        m += row.len();
        sub.adj[i] = row;
    }
    sub.m = m / 2;
    Ok(InducedSubgraph { graph: sub, old_to_new, new_to_old })
}

/// Searches for an induced path on exactly `d` vertices. Returns a witness
/// vertex sequence if one exists.
///
/// Depth-first over vertex sequences: a sequence is extended only by
/// neighbors of its last vertex that are non-adjacent to every earlier
/// vertex, so every complete sequence is an induced path by construction.
pub fn has_induced_path(g: &Graph, d: usize) -> Result<Option<Vec<usize>>, GraphError> {
    if d < 1 {
        return Err(GraphError::BadPathLength(d));
    }
    if d == 1 {
        return Ok((g.n() > 0).then(|| vec![0]));
    }
    let mut in_path = vec![false; g.n()];
    let mut path = Vec::with_capacity(d);
    for start in g.vertices() {
        path.push(start);
        in_path[start] = true;
        if extend_induced_path(g, d, &mut path, &mut in_path) {
            return Ok(Some(path));
        }
        in_path[start] = false;
        path.pop();
    }
    Ok(None)
}

fn extend_induced_path(g: &Graph, d: usize, path: &mut Vec<usize>, in_path: &mut [bool]) -> bool {
    if path.len() == d {
        return true;
    }
    let last = *path.last().unwrap();
    for &w in g.neighbors(last) {
        if in_path[w] || path[..path.len() - 1].iter().any(|&p| g.has_edge(p, w)) {
            continue;
        }
        path.push(w);
        in_path[w] = true;
        if extend_induced_path(g, d, path, in_path) {
            return true;
        }
        in_path[w] = false;
        path.pop();
    }
    false
}

/// True iff `g` has no induced path on `d` vertices.
pub fn is_pd_free(g: &Graph, d: usize) -> Result<bool, GraphError> {
    Ok(has_induced_path(g, d)?.is_none())
}

/// Parses the graph text format: a `p star <n> <m>` header, `m` edge lines
/// `e <u> <v>` with 1-based endpoints and `u < v`, and `c` comment lines.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut graph: Option<Graph> = None;
    let mut declared_m = 0usize;
    let mut seen_m = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        let err = |msg: String| GraphError::Parse { line: lineno, msg };
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_ascii_whitespace().collect();
        match fields[0] {
            "p" => {
                if graph.is_some() {
                    return Err(err("duplicate problem line".into()));
                }
                if fields.len() != 4 || fields[1] != "star" {
                    return Err(err(format!("expected `p star <n> <m>`, got `{line}`")));
                }
                let n: usize =
                    fields[2].parse().map_err(|_| err(format!("bad vertex count `{}`", fields[2])))?;
                declared_m =
                    fields[3].parse().map_err(|_| err(format!("bad edge count `{}`", fields[3])))?;
                graph = Some(Graph::new(n));
            }
            "e" => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| err("edge line before problem line".into()))?;
                if fields.len() != 3 {
                    return Err(err(format!("expected `e <u> <v>`, got `{line}`")));
                }
                let u: usize =
                    fields[1].parse().map_err(|_| err(format!("bad endpoint `{}`", fields[1])))?;
                let v: usize =
                    fields[2].parse().map_err(|_| err(format!("bad endpoint `{}`", fields[2])))?;
                if u == 0 || v == 0 {
                    return Err(err("endpoints are 1-based; got 0".into()));
                }
                if u >= v {
                    return Err(err(format!("edge endpoints must satisfy u < v, got {u} {v}")));
                }
                g.add_edge(u - 1, v - 1)
                    .map_err(|e| err(e.to_string()))?;
                seen_m += 1;
            }
            other => return Err(err(format!("unknown line type `{other}`"))),
        }
    }
    let g = graph.ok_or(GraphError::Parse { line: 0, msg: "missing problem line".into() })?;
    if seen_m != declared_m {
        return Err(GraphError::Parse {
            line: 0,
            msg: format!("header declares {declared_m} edges, found {seen_m}"),
        });
    }
    Ok(g)
}

/// Writes the canonical form of the graph format: header first, edges
/// ascending with 1-based endpoints.
pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p star {} {}", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use proptest::prelude::*;

    fn path_graph(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn cycle_graph(n: usize) -> Graph {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((0, n - 1));
        Graph::from_edges(n, &edges).unwrap()
    }

    fn complete_graph(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).tuple_combinations().collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    /// Independent check used to freeze derived expectations: enumerate all
    /// d-vertex sequences and test the induced-path condition directly.
    fn induced_path_by_enumeration(g: &Graph, d: usize) -> bool {
        g.vertices().permutations(d).any(|seq| {
            seq.iter().tuple_combinations().all(|(&a, &b)| true && a != b)
                && (0..d - 1).all(|i| g.has_edge(seq[i], seq[i + 1]))
                && seq
                    .iter()
                    .enumerate()
                    .tuple_combinations()
                    .filter(|((i, _), (j, _))| j - i >= 2)
                    .all(|((_, &a), (_, &b))| !g.has_edge(a, b))
        })
    }

    #[test]
    fn components_empty_graph() {
        assert!(components(&Graph::new(0)).is_empty());
    }

    #[test]
    fn components_isolated_vertices() {
        assert_eq!(components(&Graph::new(3)), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn components_path_plus_isolated() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(components(&g), vec![vec![0, 1, 2], vec![3]]);
    }

    #[test]
    fn complement_of_triangle_is_edgeless() {
        let c = complement(&complete_graph(3));
        assert_eq!(c.edge_count(), 0);
        assert_eq!(c.n(), 3);
    }

    #[test]
    fn complement_of_edgeless_is_complete() {
        assert_eq!(complement(&Graph::new(4)), complete_graph(4));
    }

    #[test]
    fn complement_of_p3() {
        let c = complement(&path_graph(3));
        assert_eq!(c.edges().collect::<Vec<_>>(), vec![(0, 2)]);
    }

    #[test]
    fn induced_subgraph_of_k4() {
        let s: BTreeSet<usize> = [0, 1].into();
        let sub = induced_subgraph(&complete_graph(4), &s).unwrap();
        assert_eq!(sub.graph, complete_graph(2));
        assert_eq!(sub.new_to_old, vec![0, 1]);
    }

    #[test]
    fn induced_subgraph_full_identity() {
        let g = cycle_graph(5);
        let all: BTreeSet<usize> = g.vertices().collect();
        let sub = induced_subgraph(&g, &all).unwrap();
        assert_eq!(sub.graph, g);
        assert!(sub.old_to_new.iter().all(|(o, n)| o == n));
    }

    #[test]
    fn induced_subgraph_of_c5_consecutive_is_p3() {
        let s: BTreeSet<usize> = [0, 1, 2].into();
        let sub = induced_subgraph(&cycle_graph(5), &s).unwrap();
        assert_eq!(sub.graph, path_graph(3));
    }

    #[test]
    fn induced_subgraph_rejects_out_of_range() {
        let s: BTreeSet<usize> = [0, 7].into();
        assert!(matches!(
            induced_subgraph(&path_graph(3), &s),
            Err(GraphError::VertexOutOfRange { vertex: 7, .. })
        ));
    }

    #[test]
    fn p5_contains_induced_p5() {
        let w = has_induced_path(&path_graph(5), 5).unwrap().unwrap();
        assert_eq!(w.len(), 5);
    }

    #[test]
    fn c5_has_no_induced_p5() {
        // Frozen against the brute-force sequence enumeration below.
        let g = cycle_graph(5);
        assert!(!induced_path_by_enumeration(&g, 5));
        assert!(has_induced_path(&g, 5).unwrap().is_none());
        assert!(has_induced_path(&g, 4).unwrap().is_some());
    }

    #[test]
    fn induced_path_matches_enumeration_on_small_graphs() {
        let graphs = [
            path_graph(6),
            cycle_graph(6),
            complete_graph(5),
            Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (3, 4), (4, 5)]).unwrap(),
        ];
        for g in &graphs {
            for d in 2..=5 {
                assert_eq!(
                    has_induced_path(g, d).unwrap().is_some(),
                    induced_path_by_enumeration(g, d),
                    "disagreement on {g:?} d={d}"
                );
            }
        }
    }

    #[test]
    fn induced_path_rejects_d_zero() {
        assert!(matches!(has_induced_path(&Graph::new(1), 0), Err(GraphError::BadPathLength(0))));
    }

    #[test]
    fn witness_is_an_induced_path() {
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 5), (5, 6), (1, 6)])
            .unwrap();
        let w = has_induced_path(&g, 5).unwrap().unwrap();
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                assert_eq!(g.has_edge(w[i], w[j]), j - i == 1, "witness {w:?} not induced");
            }
        }
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert!(parse_graph("p star 3 1\ne 1 1\n").is_err());
        assert!(parse_graph("p star 3 1\ne 2 1\n").is_err());
        assert!(parse_graph("p star 3 2\ne 1 2\ne 1 2\n").is_err());
        assert!(parse_graph("p star 3 1\ne 1 4\n").is_err());
        assert!(parse_graph("p star 3 2\ne 1 2\n").is_err());
        assert!(parse_graph("e 1 2\n").is_err());
    }

    #[test]
    fn parse_accepts_comments_and_blank_lines() {
        let g = parse_graph("c a comment\np star 3 1\n\nc another\ne 1 3\n").unwrap();
        assert_eq!(g.n(), 3);
        assert!(g.has_edge(0, 2));
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n)
            .prop_flat_map(|n| {
                let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
                (Just(n), proptest::collection::vec(any::<bool>(), pairs.len()), Just(pairs))
            })
            .prop_map(|(n, mask, pairs)| {
                let edges: Vec<_> = pairs
                    .into_iter()
                    .zip(mask)
                    .filter_map(|(e, keep)| keep.then_some(e))
                    .collect();
                Graph::from_edges(n, &edges).unwrap()
            })
    }

    proptest! {
        #[test]
        fn complement_is_involutive(g in arb_graph(9)) {
            prop_assert_eq!(complement(&complement(&g)), g);
        }

        #[test]
        fn complement_edge_count(g in arb_graph(9)) {
            let n = g.n();
            prop_assert_eq!(complement(&g).edge_count(), n * (n - 1) / 2 - g.edge_count());
        }

        #[test]
        fn component_sizes_sum_to_n(g in arb_graph(9)) {
            let total: usize = components(&g).iter().map(Vec::len).sum();
            prop_assert_eq!(total, g.n());
        }

        #[test]
        fn induced_path_monotone_in_d(g in arb_graph(8)) {
            // A prefix of an induced path is induced, so presence at d implies
            // presence at every shorter length >= 3.
            if has_induced_path(&g, 5).unwrap().is_some() {
                for d in 3..5 {
                    prop_assert!(has_induced_path(&g, d).unwrap().is_some());
                }
            }
        }

        #[test]
        fn format_round_trip(g in arb_graph(9)) {
            let text = write_graph(&g);
            let back = parse_graph(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(write_graph(&back), text);
        }
    }
}
