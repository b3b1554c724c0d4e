//! Exact search for simple paths and cycles of a prescribed length.
//!
//! The search is depth-bounded backtracking over neighbours in ascending id
//! order, so the first witness found is deterministic. Before searching, a
//! layered table is built backwards from the target: layer `r` holds every
//! vertex from which some walk of exactly `r` edges reaches the target
//! (honouring the position constraints). A partial path whose head is not in
//! the layer matching its remaining budget is abandoned. This subsumes the
//! plain BFS-distance cut-off (no walk of length `r` exists when
//! `dist > r`) and additionally rejects parity-infeasible branches, which is
//! what keeps queries on dense near-bipartite graphs cheap.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// A simple path, listed from one endpoint to the other.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathWitness {
    pub vertices: Vec<Vertex>,
}

impl PathWitness {
    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertices strictly between the second and second-to-last positions.
    pub fn inner(&self) -> &[Vertex] {
        let m = self.vertices.len();
        if m < 4 {
            &[]
        } else {
            &self.vertices[2..m - 2]
        }
    }

    /// Checks distinctness and adjacency of consecutive vertices in `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        validate_walk(g, &self.vertices, false)
    }
}

/// A simple cycle listed in cyclic order (the closing edge is implicit).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleWitness {
    pub vertices: Vec<Vertex>,
}

impl CycleWitness {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.vertices.len() < 3 {
            return Err(Error::Precondition(format!(
                "a cycle needs at least 3 vertices, got {}",
                self.vertices.len()
            )));
        }
        validate_walk(g, &self.vertices, true)
    }
}

fn validate_walk(g: &Graph, vertices: &[Vertex], closed: bool) -> Result<()> {
    let mut seen = VertexSet::new(g.order());
    for &v in vertices {
        g.check_vertex(v)?;
        if seen.contains(v) {
            return Err(Error::Precondition(format!("vertex {v} repeats in witness")));
        }
        seen.insert(v);
    }
    let mut pairs: Vec<(Vertex, Vertex)> = vertices.windows(2).map(|w| (w[0], w[1])).collect();
    if closed {
        pairs.push((vertices[vertices.len() - 1], vertices[0]));
    }
    for (a, b) in pairs {
        if !g.has_edge(a, b) {
            return Err(Error::Precondition(format!("witness uses non-edge ({a}, {b})")));
        }
    }
    Ok(())
}

const WORD: usize = usize::BITS as usize;

/// Restrictions applied to one search.
#[derive(Default, Clone, Copy)]
struct Constraints<'a> {
    /// Only these vertices may appear strictly inside the path.
    interior: Option<&'a FixedBitSet>,
    /// The vertex at position 1 must lie here.
    second: Option<&'a FixedBitSet>,
    /// The vertex at position `len - 1` must lie here.
    penultimate: Option<&'a FixedBitSet>,
}

struct PathSearch<'g> {
    g: &'g Graph,
    target: Vertex,
    len: usize,
    words: usize,
    /// `layers[r]` = vertices allowed at position `len - r`.
    layers: Vec<Vec<usize>>,
    visited: Vec<usize>,
    scratch: Vec<Vec<usize>>,
    path: Vec<Vertex>,
}

impl<'g> PathSearch<'g> {
    fn new(g: &'g Graph, target: Vertex, len: usize, c: Constraints<'g>) -> Self {
        let n = g.order();
        let words = n.div_ceil(WORD).max(1);
        let mut layers = vec![vec![0usize; words]; len + 1];
        layers[0][target / WORD] |= 1 << (target % WORD);

        let mut allowed = vec![usize::MAX; words];
        if let Some(interior) = c.interior {
            copy_into(&mut allowed, interior.as_slice());
        }
        trim_tail(&mut allowed, n);
        allowed[target / WORD] &= !(1 << (target % WORD));

        for r in 1..=len {
            let (done, rest) = layers.split_at_mut(r);
            let prev = &done[r - 1];
            let layer = &mut rest[0];
            // Position len - r; r == len is the start, which only needs reachability.
            let mut mask = if r < len {
                allowed.clone()
            } else {
                vec![usize::MAX; words]
            };
            if r == 1 {
                if let Some(p) = c.penultimate {
                    and_into(&mut mask, p.as_slice());
                }
            }
            if r == len - 1 {
                if let Some(s) = c.second {
                    and_into(&mut mask, s.as_slice());
                }
            }
            for v in 0..n {
                if mask[v / WORD] & (1 << (v % WORD)) == 0 {
                    continue;
                }
                if intersects(g.row(v).as_slice(), prev) {
                    layer[v / WORD] |= 1 << (v % WORD);
                }
            }
        }

        Self {
            g,
            target,
            len,
            words,
            layers,
            visited: vec![0usize; words],
            scratch: vec![vec![0usize; words]; len + 1],
            path: Vec::with_capacity(len + 1),
        }
    }

    fn run(mut self, start: Vertex) -> Option<Vec<Vertex>> {
        let top = &self.layers[self.len];
        if top[start / WORD] & (1 << (start % WORD)) == 0 {
            return None;
        }
        self.visited[start / WORD] |= 1 << (start % WORD);
        self.path.push(start);
        if self.extend(start, 0) {
            Some(self.path)
        } else {
            None
        }
    }

    fn extend(&mut self, head: Vertex, depth: usize) -> bool {
        if depth == self.len {
            return head == self.target;
        }
        let remaining = self.len - depth - 1;
        let mut cand = std::mem::take(&mut self.scratch[depth]);
        let row = self.g.row(head).as_slice();
        let layer = &self.layers[remaining];
        let mut any = false;
        for i in 0..self.words {
            let w = row.get(i).copied().unwrap_or(0) & layer[i] & !self.visited[i];
            cand[i] = w;
            any |= w != 0;
        }
        let mut found = false;
        if any {
            'scan: for (i, &word) in cand.iter().enumerate().take(self.words) {
                let mut w = word;
                while w != 0 {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    let v = i * WORD + b;
                    self.visited[i] |= 1 << b;
                    self.path.push(v);
                    if self.extend(v, depth + 1) {
                        found = true;
                        break 'scan;
                    }
                    self.path.pop();
                    self.visited[i] &= !(1 << b);
                }
            }
        }
        self.scratch[depth] = cand;
        found
    }
}

fn copy_into(dst: &mut [usize], src: &[usize]) {
    for (i, d) in dst.iter_mut().enumerate() {
        *d = src.get(i).copied().unwrap_or(0);
    }
}

fn and_into(dst: &mut [usize], src: &[usize]) {
    for (i, d) in dst.iter_mut().enumerate() {
        *d &= src.get(i).copied().unwrap_or(0);
    }
}

fn trim_tail(words: &mut [usize], n: usize) {
    let full = n / WORD;
    if full < words.len() {
        let rem = n % WORD;
        words[full] &= if rem == 0 { 0 } else { (1usize << rem) - 1 };
        for w in words.iter_mut().skip(full + 1) {
            *w = 0;
        }
    }
}

fn intersects(a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

fn search(g: &Graph, u: Vertex, v: Vertex, len: usize, c: Constraints<'_>) -> Option<PathWitness> {
    let n = g.order();
    if u >= n || v >= n || u == v || len == 0 || len >= n {
        return None;
    }
    PathSearch::new(g, v, len, c)
        .run(u)
        .map(|vertices| PathWitness { vertices })
}

/// A simple `u`–`v` path with exactly `len` edges, if one exists.
pub fn exists_path_of_length(g: &Graph, u: Vertex, v: Vertex, len: usize) -> Option<PathWitness> {
    search(g, u, v, len, Constraints::default())
}

/// A simple cycle on exactly `len` vertices, if one exists. The witness starts
/// at its smallest vertex.
pub fn find_cycle_of_length(g: &Graph, len: usize) -> Option<CycleWitness> {
    let n = g.order();
    if len < 3 || len > n {
        return None;
    }
    let mut above = FixedBitSet::with_capacity(n);
    above.insert_range(..);
    for s in 0..n {
        above.set(s, false);
        // Cycle with minimum vertex s: a path s -> t of len - 1 edges through vertices > s, closed by t-s.
        for t in g.neighbors(s).filter(|&t| t > s) {
            let c = Constraints {
                interior: Some(&above),
                ..Constraints::default()
            };
            if let Some(p) = search(g, s, t, len - 1, c) {
                return Some(CycleWitness { vertices: p.vertices });
            }
        }
    }
    None
}

pub fn is_cycle_free(g: &Graph, len: usize) -> bool {
    find_cycle_of_length(g, len).is_none()
}

/// For a non-edge `(u, v)`: a `u`–`v` path of `len - 1` edges, which together
/// with the new edge would close a `C_len`.
pub fn creates_cycle_on_addition(g: &Graph, u: Vertex, v: Vertex, len: usize) -> Result<Option<PathWitness>> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::SelfLoop(u));
    }
    if g.has_edge(u, v) {
        return Err(Error::AlreadyEdge(u, v));
    }
    if len < 3 {
        return Ok(None);
    }
    Ok(exists_path_of_length(g, u, v, len - 1))
}

/// A path `x, x', …, y', y` with exactly `len` edges whose second and
/// second-to-last vertices lie in `through`.
pub fn find_path_through_set(g: &Graph, x: Vertex, y: Vertex, len: usize, through: &VertexSet) -> Option<PathWitness> {
    if len < 3 {
        return None;
    }
    let c = Constraints {
        interior: None,
        second: Some(through.as_bits()),
        penultimate: Some(through.as_bits()),
    };
    search(g, x, y, len, c)
}

/// Whether `g` is `C_len`-free and adding any non-edge creates a `C_len`.
/// Returns the first offending non-edge otherwise (`None` pair means a cycle was found).
pub fn maximality_violation(g: &Graph, len: usize) -> Option<Option<(Vertex, Vertex)>> {
    if !is_cycle_free(g, len) {
        return Some(None);
    }
    g.non_edges()
        .find(|&(u, v)| exists_path_of_length(g, u, v, len - 1).is_none())
        .map(Some)
}

pub fn is_maximal_cycle_free(g: &Graph, len: usize) -> bool {
    maximality_violation(g, len).is_none()
}
