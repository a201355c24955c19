//! Undirected simple finite graphs, DIMACS input, and the brute-force
//! coloring oracle every algebraic decision is cross-checked against.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::algebra::ValidationReport;
use crate::ParseError;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex {0} out of range 1..={1}")]
    VertexOutOfRange(u32, u32),
    #[error("loop edge at vertex {0}")]
    LoopEdge(u32),
    #[error("graph must have at least one vertex")]
    Empty,
}

/// Simple undirected graph on vertices `1..=n`; edges stored as sorted,
/// deduplicated pairs `(a, b)` with `a < b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: u32,
    edges: Vec<(u32, u32)>,
}

impl Graph {
    pub fn new(n: u32, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(GraphError::VertexOutOfRange(w, n));
                }
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Graph { n, edges: set.into_iter().collect() })
    }

    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).is_ok()
    }

    pub fn degree(&self, v: u32) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Neighbor lists indexed by vertex - 1.
    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.n as usize];
        for &(a, b) in &self.edges {
            adj[a as usize - 1].push(b);
            adj[b as usize - 1].push(a);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n as usize];
        let mut stack = vec![1u32];
        seen[0] = true;
        let mut reached = 1u32;
        while let Some(v) = stack.pop() {
            for &w in &adj[v as usize - 1] {
                if !seen[w as usize - 1] {
                    seen[w as usize - 1] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == self.n
    }

    /// Simplicity holds by construction; connectivity is reported only when
    /// `require_connected` is set (the encoders are well-defined either way).
    pub fn validate(&self, require_connected: bool) -> ValidationReport {
        let mut report = ValidationReport::default();
        if require_connected && !self.is_connected() {
            report.push("graph is not connected");
        }
        report
    }

    pub fn complete(n: u32) -> Graph {
        let edges = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b)));
        Graph::new(n, edges).expect("complete graph is simple")
    }

    pub fn cycle(n: u32) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let edges = (1..n).map(|a| (a, a + 1)).chain(std::iter::once((1, n)));
        Graph::new(n, edges).expect("cycle is simple")
    }

    pub fn path(n: u32) -> Graph {
        Graph::new(n, (1..n).map(|a| (a, a + 1))).expect("path is simple")
    }

    /// Erdos-Renyi G(n, p) with p = p_permille / 1000, deterministic in the
    /// seed (splitmix64 stream).
    pub fn gnp(n: u32, p_permille: u32, seed: u64) -> Graph {
        let mut rng = SplitMix64::new(seed);
        let edges = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b)));
        let chosen: Vec<_> = edges.filter(|_| rng.next_below(1000) < p_permille as u64).collect();
        Graph::new(n, chosen).expect("gnp is simple")
    }

    /// Random graph that is guaranteed `classes`-colorable: vertices are
    /// split round-robin into classes and only cross-class edges are drawn.
    pub fn random_colorable(n: u32, classes: u32, p_permille: u32, seed: u64) -> Graph {
        let mut rng = SplitMix64::new(seed);
        let class = |v: u32| (v - 1) % classes;
        let mut edges = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                if class(a) != class(b) && rng.next_below(1000) < p_permille as u64 {
                    edges.push((a, b));
                }
            }
        }
        Graph::new(n, edges).expect("cross-class edges are simple")
    }
}

/// A total assignment vertex -> color in `0..c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<u32>,
}

impl Coloring {
    pub fn new(colors: Vec<u32>) -> Self {
        Coloring { colors }
    }

    pub fn color(&self, vertex: u32) -> u32 {
        self.colors[vertex as usize - 1]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn vertex_count(&self) -> u32 {
        self.colors.len() as u32
    }

    /// Proper iff the endpoints of every edge get distinct colors.
    pub fn is_proper(&self, graph: &Graph) -> bool {
        self.colors.len() == graph.vertex_count() as usize
            && graph.edges().iter().all(|&(a, b)| self.color(a) != self.color(b))
    }
}

impl fmt::Display for Coloring {
    /// One line per vertex: `v <vertex> <color>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.colors.iter().enumerate() {
            writeln!(f, "v {} {}", i + 1, c)?;
        }
        Ok(())
    }
}

/// Backtracking search for a proper `c`-coloring. Vertices are tried
/// highest-degree-first (ties by index), colors ascending, so the witness
/// is deterministic. Returns `None` when no proper coloring exists.
pub fn is_colorable(graph: &Graph, c: u32) -> Option<Coloring> {
    assert!(c >= 1, "need at least one color");
    let n = graph.vertex_count() as usize;
    let adj = graph.adjacency();
    let mut order: Vec<u32> = (1..=graph.vertex_count()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(graph.degree(v)), v));
    let mut colors: Vec<Option<u32>> = vec![None; n];

    fn assign(
        pos: usize,
        order: &[u32],
        adj: &[Vec<u32>],
        c: u32,
        colors: &mut Vec<Option<u32>>,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        for color in 0..c {
            let conflict = adj[v as usize - 1]
                .iter()
                .any(|&w| colors[w as usize - 1] == Some(color));
            if conflict {
                continue;
            }
            colors[v as usize - 1] = Some(color);
            if assign(pos + 1, order, adj, c, colors) {
                return true;
            }
            colors[v as usize - 1] = None;
        }
        false
    }

    if assign(0, &order, &adj, c, &mut colors) {
        let coloring = Coloring::new(colors.into_iter().map(|c| c.unwrap()).collect());
        debug_assert!(coloring.is_proper(graph));
        Some(coloring)
    } else {
        None
    }
}

/// DIMACS `.col`: `c` comment lines, one `p edge <n> <m>` line, then
/// `e <u> <v>` lines. Duplicate edges collapse; loops are rejected.
pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut n: Option<u32> = None;
    let mut edges: Vec<(u32, u32, usize)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        match words[0] {
            "p" => {
                if n.is_some() {
                    return Err(ParseError::new(lineno, "duplicate `p` line"));
                }
                if words.len() != 4 || words[1] != "edge" {
                    return Err(ParseError::new(lineno, "expected `p edge <n> <m>`"));
                }
                let vertices: u32 = words[2]
                    .parse()
                    .map_err(|_| ParseError::new(lineno, "bad vertex count"))?;
                if vertices == 0 {
                    return Err(ParseError::new(lineno, "graph must have at least one vertex"));
                }
                words[3]
                    .parse::<u64>()
                    .map_err(|_| ParseError::new(lineno, "bad edge count"))?;
                n = Some(vertices);
            }
            "e" => {
                if n.is_none() {
                    return Err(ParseError::new(lineno, "edge before `p` line"));
                }
                if words.len() != 3 {
                    return Err(ParseError::new(lineno, "expected `e <u> <v>`"));
                }
                let u: u32 = words[1]
                    .parse()
                    .map_err(|_| ParseError::new(lineno, "bad vertex index"))?;
                let v: u32 = words[2]
                    .parse()
                    .map_err(|_| ParseError::new(lineno, "bad vertex index"))?;
                edges.push((u, v, lineno));
            }
            _ => return Err(ParseError::new(lineno, format!("unknown line type `{}`", words[0]))),
        }
    }
    let n = n.ok_or_else(|| ParseError::new(text.lines().count().max(1), "missing `p edge` line"))?;
    for &(u, v, lineno) in &edges {
        if u == v {
            return Err(ParseError::new(lineno, format!("loop edge at vertex {u}")));
        }
        for w in [u, v] {
            if w == 0 || w > n {
                return Err(ParseError::new(lineno, format!("vertex {w} out of range 1..={n}")));
            }
        }
    }
    Graph::new(n, edges.into_iter().map(|(u, v, _)| (u, v)))
        .map_err(|e| ParseError::new(1, e.to_string()))
}

pub fn to_dimacs(graph: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", graph.vertex_count(), graph.edge_count());
    for &(a, b) in graph.edges() {
        out.push_str(&format!("e {a} {b}\n"));
    }
    out
}

/// Parses `v <vertex> <color>` lines into a coloring on `n` vertices.
pub fn parse_coloring(text: &str, n: u32) -> Result<Coloring, ParseError> {
    let mut colors: Vec<Option<u32>> = vec![None; n as usize];
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        if words.len() != 3 || words[0] != "v" {
            return Err(ParseError::new(lineno, "expected `v <vertex> <color>`"));
        }
        let vertex: u32 = words[1]
            .parse()
            .map_err(|_| ParseError::new(lineno, "bad vertex index"))?;
        if vertex == 0 || vertex > n {
            return Err(ParseError::new(lineno, format!("vertex {vertex} out of range 1..={n}")));
        }
        let color: u32 = words[2]
            .parse()
            .map_err(|_| ParseError::new(lineno, "bad color"))?;
        if colors[vertex as usize - 1].is_some() {
            return Err(ParseError::new(lineno, format!("duplicate color for vertex {vertex}")));
        }
        colors[vertex as usize - 1] = Some(color);
    }
    let mut out = Vec::with_capacity(n as usize);
    for (i, c) in colors.into_iter().enumerate() {
        match c {
            Some(c) => out.push(c),
            None => {
                return Err(ParseError::new(
                    text.lines().count().max(1),
                    format!("missing color for vertex {}", i + 1),
                ))
            }
        }
    }
    Ok(Coloring::new(out))
}

/// Deterministic 64-bit stream; enough randomness for test-family graphs.
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn next_below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_triangle() {
        let g = parse_dimacs("c a triangle\np edge 3 3\ne 1 2\ne 1 3\ne 2 3\n").unwrap();
        assert_eq!(g, Graph::complete(3));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = parse_dimacs("p edge 2 2\ne 1 2\ne 2 1\n").unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edges(), &[(1, 2)]);
    }

    #[test]
    fn loop_and_range_errors_with_lines() {
        let err = parse_dimacs("p edge 2 1\ne 1 1\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("loop"));
        let err = parse_dimacs("p edge 2 1\ne 1 5\n").unwrap_err();
        assert!(err.message.contains("out of range"));
        let err = parse_dimacs("p edge 2 1\np edge 2 1\n").unwrap_err();
        assert!(err.message.contains("duplicate"));
        let err = parse_dimacs("e 1 2\n").unwrap_err();
        assert!(err.message.contains("`p`"));
        assert!(parse_dimacs("p edge 0 0\n").is_err());
    }

    #[test]
    fn coloring_oracle_on_small_graphs() {
        let k3 = Graph::complete(3);
        let c = is_colorable(&k3, 3).unwrap();
        assert!(c.is_proper(&k3));
        assert_eq!(c.colors(), &[0, 1, 2]);
        assert!(is_colorable(&k3, 2).is_none());
        assert!(is_colorable(&Graph::complete(4), 3).is_none());
        let c5 = Graph::cycle(5);
        assert!(is_colorable(&c5, 2).is_none());
        assert!(is_colorable(&c5, 3).unwrap().is_proper(&c5));
    }

    #[test]
    fn one_color_iff_edgeless() {
        let edgeless = Graph::new(3, []).unwrap();
        assert!(is_colorable(&edgeless, 1).is_some());
        assert!(is_colorable(&Graph::path(2), 1).is_none());
    }

    /// Independent oracle: exhaustive enumeration over all c^n assignments.
    fn colorable_exhaustive(g: &Graph, c: u32) -> bool {
        let n = g.vertex_count();
        let total = (c as u64).pow(n);
        'outer: for code in 0..total {
            let mut x = code;
            let mut colors = Vec::with_capacity(n as usize);
            for _ in 0..n {
                colors.push((x % c as u64) as u32);
                x /= c as u64;
            }
            let col = Coloring::new(colors);
            if col.is_proper(g) {
                return true;
            }
            continue 'outer;
        }
        false
    }

    #[test]
    fn backtracking_agrees_with_exhaustive_enumeration() {
        let mut seed = 7u64;
        for n in 2..=6u32 {
            for p in [200, 500, 800] {
                seed += 1;
                let g = Graph::gnp(n, p, seed);
                for c in 1..=4u32 {
                    assert_eq!(
                        is_colorable(&g, c).is_some(),
                        colorable_exhaustive(&g, c),
                        "n={n} p={p} c={c}"
                    );
                }
            }
        }
    }

    #[test]
    fn colorable_monotone_in_colors() {
        for seed in 0..20u64 {
            let g = Graph::gnp(6, 500, seed);
            let mut prev = false;
            for c in 1..=5 {
                let now = is_colorable(&g, c).is_some();
                assert!(!prev || now, "monotonicity failed at c={c}");
                prev = now;
            }
        }
    }

    #[test]
    fn connectivity_validation() {
        assert!(Graph::complete(3).validate(true).is_valid());
        let two_edges = Graph::new(4, [(1, 2), (3, 4)]).unwrap();
        assert!(!two_edges.validate(true).is_valid());
        assert!(two_edges.validate(false).is_valid());
        let single = Graph::new(1, []).unwrap();
        assert!(single.validate(true).is_valid());
    }

    #[test]
    fn coloring_roundtrip() {
        let c = Coloring::new(vec![0, 2, 1]);
        let text = c.to_string();
        assert_eq!(text, "v 1 0\nv 2 2\nv 3 1\n");
        assert_eq!(parse_coloring(&text, 3).unwrap(), c);
        assert!(parse_coloring("v 1 0\n", 2).is_err());
    }

    #[test]
    fn random_colorable_is_colorable() {
        for seed in 0..5 {
            let g = Graph::random_colorable(12, 3, 400, seed);
            assert!(is_colorable(&g, 3).is_some());
        }
    }
}
