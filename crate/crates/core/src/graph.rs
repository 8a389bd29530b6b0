//! Simple undirected graphs, named generators and the unary transforms
//! (line graph, Q-graph, total graph, splitting graph).
//!
//! A [`Graph`] is an immutable value: a vertex count plus an edge list in
//! canonical form. Each edge is stored as `(u, v)` with `u < v` and the list
//! is sorted lexicographically. Position in that list is the edge's index,
//! which fixes the labelling of edge-vertices in every derived graph.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::layout::CompositeLayout;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeInfo {
    pub degrees: Vec<usize>,
    pub regular_degree: Option<usize>,
}

/// Dense integer matrix, row-major. Used for exact combinatorial identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.data[i * self.cols + j] = value;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, k: i64) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * k).collect(),
        }
    }

    /// Column sums.
    pub fn col_sums(&self) -> Vec<i64> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j)).sum())
            .collect()
    }
}

impl Graph {
    /// Builds a canonical graph from an arbitrary edge list.
    ///
    /// Pairs are normalised to `u < v`, duplicates removed and the list
    /// sorted. Self-loops and out-of-range endpoints are rejected.
    pub fn from_edge_list(n: usize, raw_edges: &[(usize, usize)]) -> Result<Graph> {
        let mut set = BTreeSet::new();
        for &(a, b) in raw_edges {
            for endpoint in [a, b] {
                if endpoint >= n {
                    return Err(Error::EndpointOutOfRange { endpoint, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Graph {
            n,
            edges: set.into_iter().collect(),
        })
    }

    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            edges: Vec::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).is_ok()
    }

    /// Sorted neighbour lists.
    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn degree_info(&self) -> DegreeInfo {
        let mut degrees = vec![0usize; self.n];
        for &(u, v) in &self.edges {
            degrees[u] += 1;
            degrees[v] += 1;
        }
        let regular_degree = match degrees.first() {
            Some(&d) if degrees.iter().all(|&x| x == d) => Some(d),
            _ => None,
        };
        DegreeInfo {
            degrees,
            regular_degree,
        }
    }

    pub fn regular_degree(&self) -> Option<usize> {
        self.degree_info().regular_degree
    }

    pub fn adjacency_matrix(&self) -> IntMatrix {
        let mut a = IntMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a.set(u, v, 1);
            a.set(v, u, 1);
        }
        a
    }

    pub fn degree_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.n, self.n);
        for (i, &deg) in self.degree_info().degrees.iter().enumerate() {
            d.set(i, i, deg as i64);
        }
        d
    }

    /// The `n x m` vertex-edge incidence matrix, columns in canonical edge order.
    pub fn incidence_matrix(&self) -> IntMatrix {
        let mut r = IntMatrix::zeros(self.n, self.edges.len());
        for (j, &(u, v)) in self.edges.iter().enumerate() {
            r.set(u, j, 1);
            r.set(v, j, 1);
        }
        r
    }

    /// Pairs of edge indices `(i, j)`, `i < j`, whose edges share an endpoint.
    fn adjacent_edge_pairs(&self) -> Vec<(usize, usize)> {
        let mut incident = vec![Vec::new(); self.n];
        for (j, &(u, v)) in self.edges.iter().enumerate() {
            incident[u].push(j);
            incident[v].push(j);
        }
        let mut pairs = Vec::new();
        for list in &incident {
            for (a, &e) in list.iter().enumerate() {
                for &f in &list[a + 1..] {
                    pairs.push((e.min(f), e.max(f)));
                }
            }
        }
        pairs
    }

    pub fn line_graph(&self) -> Graph {
        let pairs = self.adjacent_edge_pairs();
        Graph::from_edge_list(self.edges.len(), &pairs).expect("edge indices are in range")
    }

    /// Subdivide every edge, then join the new vertices of adjacent edges.
    pub fn q_graph(&self) -> (Graph, CompositeLayout) {
        let (n, m) = (self.n, self.size());
        let mut edges = self.incidence_edges(n);
        edges.extend(
            self.adjacent_edge_pairs()
                .into_iter()
                .map(|(e, f)| (n + e, n + f)),
        );
        let g = Graph::from_edge_list(n + m, &edges).expect("indices are in range");
        (g, CompositeLayout::new(n, m, 0, 0))
    }

    /// Vertices are `V ∪ E`; adjacency is adjacency or incidence in `self`.
    pub fn total_graph(&self) -> (Graph, CompositeLayout) {
        let (n, m) = (self.n, self.size());
        let mut edges = self.edges.clone();
        edges.extend(self.incidence_edges(n));
        edges.extend(
            self.adjacent_edge_pairs()
                .into_iter()
                .map(|(e, f)| (n + e, n + f)),
        );
        let g = Graph::from_edge_list(n + m, &edges).expect("indices are in range");
        (g, CompositeLayout::new(n, m, 0, 0))
    }

    /// Adds a twin `u_i` (index `n + i`) adjacent to every neighbour of `v_i`.
    pub fn splitting_graph(&self) -> (Graph, CompositeLayout) {
        let n = self.n;
        let mut edges = self.edges.clone();
        for &(u, v) in &self.edges {
            edges.push((n + u, v));
            edges.push((n + v, u));
        }
        let g = Graph::from_edge_list(2 * n, &edges).expect("indices are in range");
        (g, CompositeLayout::new(n, n, 0, 0))
    }

    /// Edges `(vertex, offset + edge index)` for every incidence.
    fn incidence_edges(&self, offset: usize) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .enumerate()
            .flat_map(|(j, &(u, v))| [(u, offset + j), (v, offset + j)])
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let adj = self.adjacency_lists();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Renders the edge-list text format: `n m` followed by one `u v` per line.
    pub fn to_edge_list_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Parses the edge-list text format. Everything after `#` on a line is ignored.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (header_line, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            reason: "missing `n m` header".into(),
        })?;
        let (n, m) = parse_pair(header_line, header)?;
        let mut raw = Vec::with_capacity(m);
        for (line, l) in lines {
            raw.push(parse_pair(line, l)?);
        }
        if raw.len() != m {
            return Err(Error::Parse {
                line: header_line,
                reason: format!("header declares {m} edges, found {}", raw.len()),
            });
        }
        Graph::from_edge_list(n, &raw)
    }
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize)> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::Parse {
            line,
            reason: format!("expected two integers, got `{text}`"),
        });
    }
    let parse = |s: &str| {
        s.parse::<usize>().map_err(|e| Error::Parse {
            line,
            reason: format!("`{s}`: {e}"),
        })
    };
    Ok((parse(fields[0])?, parse(fields[1])?))
}

/// Builds a named graph from a family descriptor such as `cycle:5`,
/// `complete:4`, `path:3`, `complete_bipartite:2:3`, `empty:2`, `rook:4`,
/// `petersen` or `shrikhande`.
pub fn generate(spec: &str) -> Result<Graph> {
    let mut parts = spec.trim().split(':');
    let family = parts
        .next()
        .unwrap_or("")
        .to_ascii_lowercase()
        .replace('-', "_");
    let params: Vec<&str> = parts.collect();

    let nums = |count: usize| -> Result<Vec<usize>> {
        if params.len() != count {
            return Err(Error::InvalidSize {
                family: family.clone(),
                reason: format!("expected {count} parameter(s), got {}", params.len()),
            });
        }
        params
            .iter()
            .map(|p| {
                p.parse::<usize>().map_err(|e| Error::InvalidSize {
                    family: family.clone(),
                    reason: format!("`{p}`: {e}"),
                })
            })
            .collect()
    };
    let at_least = |k: usize, min: usize| -> Result<()> {
        if k < min {
            Err(Error::InvalidSize {
                family: family.clone(),
                reason: format!("parameter must be at least {min}, got {k}"),
            })
        } else {
            Ok(())
        }
    };

    match family.as_str() {
        "cycle" => {
            let k = nums(1)?[0];
            at_least(k, 3)?;
            Ok(cycle(k))
        }
        "complete" => {
            let k = nums(1)?[0];
            at_least(k, 1)?;
            Ok(complete(k))
        }
        "path" => {
            let k = nums(1)?[0];
            at_least(k, 1)?;
            Ok(path(k))
        }
        "empty" => {
            let k = nums(1)?[0];
            at_least(k, 1)?;
            Ok(Graph::empty(k))
        }
        "complete_bipartite" => {
            let pq = nums(2)?;
            at_least(pq[0], 1)?;
            at_least(pq[1], 1)?;
            Ok(complete_bipartite(pq[0], pq[1]))
        }
        "rook" => {
            let k = nums(1)?[0];
            at_least(k, 1)?;
            Ok(rook(k))
        }
        "petersen" => {
            nums(0)?;
            Ok(petersen())
        }
        "shrikhande" => {
            nums(0)?;
            Ok(shrikhande())
        }
        _ => Err(Error::UnknownFamily(spec.to_string())),
    }
}

pub fn cycle(k: usize) -> Graph {
    let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    Graph::from_edge_list(k, &edges).expect("valid cycle")
}

pub fn complete(k: usize) -> Graph {
    let edges: Vec<_> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .collect();
    Graph::from_edge_list(k, &edges).expect("valid complete graph")
}

pub fn path(k: usize) -> Graph {
    let edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
    Graph::from_edge_list(k, &edges).expect("valid path")
}

pub fn complete_bipartite(p: usize, q: usize) -> Graph {
    let edges: Vec<_> = (0..p)
        .flat_map(|i| (0..q).map(move |j| (i, p + j)))
        .collect();
    Graph::from_edge_list(p + q, &edges).expect("valid complete bipartite graph")
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i ~ i + 5`.
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, i + 5));
    }
    Graph::from_edge_list(10, &edges).expect("valid Petersen graph")
}

/// `K_k □ K_k`: cells of a `k x k` board, adjacent when they share a row or column.
pub fn rook(k: usize) -> Graph {
    let mut edges = Vec::new();
    for a in 0..k * k {
        for b in a + 1..k * k {
            if a / k == b / k || a % k == b % k {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edge_list(k * k, &edges).expect("valid rook graph")
}

/// Cayley graph on `Z4 x Z4` with connection set `{±(1,0), ±(0,1), ±(1,1)}`.
pub fn shrikhande() -> Graph {
    let idx = |x: usize, y: usize| 4 * (x % 4) + (y % 4);
    let mut edges = Vec::new();
    for x in 0..4 {
        for y in 0..4 {
            for (dx, dy) in [(1, 0), (0, 1), (1, 1)] {
                edges.push((idx(x, y), idx(x + dx, y + dy)));
            }
        }
    }
    Graph::from_edge_list(16, &edges).expect("valid Shrikhande graph")
}
