//! Simple graphs, rook's graphs, and the automorphisms used on them.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Immutable simple graph: no loops, no multi-edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        vertex_count,
                    });
                }
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        let edges: Vec<(usize, usize)> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); vertex_count];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            vertex_count,
            edges,
            adj,
        })
    }

    /// The square rook's graph: vertices are the cells of an n x n grid,
    /// adjacent when they share a row or a column.
    pub fn rook(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::RookSizeTooSmall(n));
        }
        Ok(Self::rook_unchecked(n))
    }

    /// Rook's graph without the n >= 3 guard, for exploration.
    pub fn rook_unchecked(n: usize) -> Self {
        let idx = |i: usize, j: usize| i * n + j;
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in j + 1..n {
                    edges.push((idx(i, j), idx(i, k))); // same row
                    edges.push((idx(j, i), idx(k, i))); // same column
                }
            }
        }
        Self::new(n * n, edges).expect("rook construction is duplicate-free")
    }

    pub fn complement(&self) -> Self {
        let mut edges = Vec::new();
        for u in 0..self.vertex_count {
            for v in u + 1..self.vertex_count {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Self::new(self.vertex_count, edges).expect("complement edges are valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn adjacency_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.vertex_count, self.vertex_count, |i, j| {
            BigInt::from(u8::from(self.has_edge(i, j)))
        })
    }

    pub fn laplacian_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.vertex_count, self.vertex_count, |i, j| {
            if i == j {
                BigInt::from(self.degree(i))
            } else {
                -BigInt::from(u8::from(self.has_edge(i, j)))
            }
        })
    }

    /// Strongly-regular parameters (v, k, lambda, mu), if the graph has
    /// them, verified by counting common neighbors over all vertex pairs.
    pub fn srg_parameters(&self) -> Option<(usize, usize, usize, usize)> {
        let v = self.vertex_count;
        if v == 0 {
            return None;
        }
        let k = self.degree(0);
        if (1..v).any(|u| self.degree(u) != k) {
            return None;
        }
        let common = |a: usize, b: usize| {
            self.adj[a]
                .iter()
                .filter(|&&w| self.has_edge(b, w))
                .count()
        };
        let mut lambda: Option<usize> = None;
        let mut mu: Option<usize> = None;
        for a in 0..v {
            for b in a + 1..v {
                let c = common(a, b);
                let slot = if self.has_edge(a, b) { &mut lambda } else { &mut mu };
                match slot {
                    None => *slot = Some(c),
                    Some(prev) if *prev != c => return None,
                    _ => {}
                }
            }
        }
        Some((v, k, lambda?, mu?))
    }

    /// Parse the text format: a `V E` header line, then E lines `u v` with
    /// 0-based endpoints.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (ln, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "empty input, expected `V E` header".into(),
        })?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        let parse_num = |s: &str, ln: usize| -> Result<usize> {
            s.parse().map_err(|_| Error::Parse {
                line: ln + 1,
                message: format!("bad integer {s:?}"),
            })
        };
        if parts.len() != 2 {
            return Err(Error::Parse {
                line: ln + 1,
                message: format!("expected `V E` header, got {header:?}"),
            });
        }
        let v = parse_num(parts[0], ln)?;
        let e = parse_num(parts[1], ln)?;
        let mut edges = Vec::with_capacity(e);
        for k in 0..e {
            let (ln, line) = lines.next().ok_or(Error::Parse {
                line: ln + 2 + k,
                message: format!("expected {e} edges, found {k}"),
            })?;
            let ends: Vec<&str> = line.split_whitespace().collect();
            if ends.len() != 2 {
                return Err(Error::Parse {
                    line: ln + 1,
                    message: format!("expected `u v`, got {line:?}"),
                });
            }
            edges.push((parse_num(ends[0], ln)?, parse_num(ends[1], ln)?));
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::Parse {
                line: ln + 1,
                message: "trailing data after edge list".into(),
            });
        }
        Self::new(v, edges)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.vertex_count, self.edges.len())?;
        for &(u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

/// 1-based (row, column) coordinates on an n x n grid, flattened row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RookCoords {
    n: usize,
}

impl RookCoords {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::RookSizeTooSmall(n));
        }
        Ok(RookCoords { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.n * self.n
    }

    /// Flat index of grid cell (i, j), 1 <= i, j <= n.
    pub fn index(&self, i: usize, j: usize) -> Result<usize> {
        if i < 1 || i > self.n || j < 1 || j > self.n {
            return Err(Error::BadGridCoordinate { i, j, n: self.n });
        }
        Ok((i - 1) * self.n + (j - 1))
    }

    /// Inverse of `index`.
    pub fn coords(&self, v: usize) -> (usize, usize) {
        (v / self.n + 1, v % self.n + 1)
    }
}

/// Permutation of the vertex set, stored as the image sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPermutation {
    image: Vec<usize>,
}

impl VertexPermutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n {
                return Err(Error::NotAPermutation(format!("image {v} out of range")));
            }
            if seen[v] {
                return Err(Error::NotAPermutation(format!("image {v} repeated")));
            }
            seen[v] = true;
        }
        Ok(VertexPermutation { image })
    }

    pub fn identity(n: usize) -> Self {
        VertexPermutation {
            image: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.image[v]
    }

    pub fn inverse(&self) -> Self {
        let mut image = vec![0; self.image.len()];
        for (v, &w) in self.image.iter().enumerate() {
            image[w] = v;
        }
        VertexPermutation { image }
    }

    /// Exhaustive edge-preservation check.
    pub fn is_automorphism(&self, g: &Graph) -> bool {
        self.image.len() == g.vertex_count()
            && g.edges()
                .iter()
                .all(|&(u, v)| g.has_edge(self.apply(u), self.apply(v)))
    }
}

/// Automorphism of the rook's graph: an optional reflection across the
/// main diagonal followed by a row permutation and a column permutation.
/// `row_perm` and `col_perm` are 1-based images of 1..=n. The result is
/// checked against the rook's graph before it is returned.
pub fn rook_automorphism(
    n: usize,
    row_perm: &[usize],
    col_perm: &[usize],
    reflect: bool,
) -> Result<VertexPermutation> {
    let coords = RookCoords::new(n)?;
    let check = |perm: &[usize]| -> Result<()> {
        if perm.len() != n {
            return Err(Error::NotAPermutation(format!(
                "length {} != n = {n}",
                perm.len()
            )));
        }
        let mut seen = vec![false; n];
        for &v in perm {
            if v < 1 || v > n || seen[v - 1] {
                return Err(Error::NotAPermutation(format!("bad image {v}")));
            }
            seen[v - 1] = true;
        }
        Ok(())
    };
    check(row_perm)?;
    check(col_perm)?;
    let mut image = vec![0; coords.vertex_count()];
    for v in 0..coords.vertex_count() {
        let (i, j) = coords.coords(v);
        let (i, j) = if reflect { (j, i) } else { (i, j) };
        image[v] = coords.index(row_perm[i - 1], col_perm[j - 1])?;
    }
    let sigma = VertexPermutation::new(image)?;
    if !sigma.is_automorphism(&Graph::rook(n)?) {
        return Err(Error::NotAnAutomorphism);
    }
    Ok(sigma)
}

/// The transposition (a b) on {1..n}, as a 1-based image sequence.
pub fn swap_permutation(n: usize, a: usize, b: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (1..=n).collect();
    perm.swap(a - 1, b - 1);
    perm
}
