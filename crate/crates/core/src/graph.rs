//! Simple undirected graphs on dense vertex ids `0..n`.
//!
//! Adjacency is a symmetric bit matrix: one [`FixedBitSet`] row per vertex,
//! giving O(1) adjacency queries and O(n / word) neighbourhood operations.
//! A [`Graph`] is immutable once built; every derived graph is a new value.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Exhaustive max-cut refuses graphs above this order unless configured otherwise.
pub const DEFAULT_MAXCUT_LIMIT: usize = 24;

/// A subset of the vertex range `0..universe`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        Self {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        Self { bits }
    }

    /// Builds a set from members; fails if any member is outside the universe.
    pub fn from_members<I>(universe: usize, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vertex>,
    {
        let mut set = Self::new(universe);
        for v in members {
            if v >= universe {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    order: universe,
                });
            }
            set.bits.insert(v);
        }
        Ok(set)
    }

    pub(crate) fn from_bits(bits: FixedBitSet) -> Self {
        Self { bits }
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.bits.contains(v)
    }

    pub fn insert(&mut self, v: Vertex) {
        self.bits.insert(v);
    }

    pub fn remove(&mut self, v: Vertex) {
        self.bits.set(v, false);
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }

    pub fn min(&self) -> Option<Vertex> {
        self.bits.minimum()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// Smallest member shared with `other`.
    pub fn first_common(&self, other: &VertexSet) -> Option<Vertex> {
        self.bits.intersection(&other.bits).next()
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.bits.intersection_count(&other.bits)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Self { bits }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Self { bits }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        Self { bits }
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        self.bits.difference_with(&other.bits);
    }

    pub fn as_bits(&self) -> &FixedBitSet {
        &self.bits
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for v in self.iter() {
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

/// An ordered pair of disjoint vertex sets.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Bipartition {
    pub left: VertexSet,
    pub right: VertexSet,
}

impl Bipartition {
    pub fn new(left: VertexSet, right: VertexSet) -> Result<Self> {
        if let Some(v) = left.first_common(&right) {
            return Err(Error::Overlap(v));
        }
        Ok(Self { left, right })
    }

    pub fn from_members(
        universe: usize,
        left: impl IntoIterator<Item = Vertex>,
        right: impl IntoIterator<Item = Vertex>,
    ) -> Result<Self> {
        Self::new(
            VertexSet::from_members(universe, left)?,
            VertexSet::from_members(universe, right)?,
        )
    }

    pub fn order(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn swapped(&self) -> Self {
        Self {
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }

    /// The two sides ordered so that the side holding the smallest vertex comes first.
    pub fn normalized(&self) -> Self {
        match (self.left.min(), self.right.min()) {
            (Some(a), Some(b)) if b < a => self.swapped(),
            (None, Some(_)) => self.swapped(),
            _ => self.clone(),
        }
    }
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<FixedBitSet>,
    edges: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![FixedBitSet::with_capacity(n); n],
            edges: 0,
        }
    }

    /// Builds a graph from an edge list; repeated pairs (in either orientation) collapse.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, order: n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_edge(u, v);
            }
        }
        g
    }

    /// The cycle `0-1-…-(n-1)-0`; `n` must be at least 3.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Parameters(format!("cycle needs at least 3 vertices, got {n}")));
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// The path `0-1-…-(n-1)`.
    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("path edges are in range")
    }

    /// Complete bipartite graph with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Self::empty(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.insert_edge(u, v);
            }
        }
        g
    }

    /// Adds an edge in place, returning whether it was new. Callers own the
    /// range and loop checks.
    pub(crate) fn insert_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        debug_assert!(u != v);
        if self.adj[u].put(v) {
            return false;
        }
        self.adj[v].insert(u);
        self.edges += 1;
        true
    }

    pub(crate) fn delete_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        if !self.adj[u].contains(v) {
            return false;
        }
        self.adj[u].set(v, false);
        self.adj[v].set(u, false);
        self.edges -= 1;
        true
    }

    /// A copy with one more edge.
    pub fn with_edge(&self, u: Vertex, v: Vertex) -> Result<Self> {
        self.check_pair(u, v)?;
        let mut g = self.clone();
        g.insert_edge(u, v);
        Ok(g)
    }

    /// A copy with the listed edges removed (absent pairs are ignored).
    pub fn without_edges<I>(&self, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = self.clone();
        for (u, v) in edges {
            self.check_pair(u, v)?;
            g.delete_edge(u, v);
        }
        Ok(g)
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.order();
        let mut g = Graph::empty(shift + other.order());
        for (u, v) in self.edges() {
            g.insert_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.insert_edge(u + shift, v + shift);
        }
        g
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v >= self.order() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            });
        }
        Ok(())
    }

    fn check_pair(&self, u: Vertex, v: Vertex) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].count_ones(..)
    }

    /// Number of neighbours of `v` inside `s`.
    pub fn degree_in(&self, v: Vertex, s: &VertexSet) -> usize {
        self.adj[v].intersection_count(s.as_bits())
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.order()).map(|v| self.degree(v)).min()
    }

    /// Neighbours of `v` in ascending order.
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v].ones()
    }

    pub fn neighbor_set(&self, v: Vertex) -> VertexSet {
        VertexSet::from_bits(self.adj[v].clone())
    }

    pub(crate) fn row(&self, v: Vertex) -> &FixedBitSet {
        &self.adj[v]
    }

    /// Edges `(u, v)` with `u < v`, lexicographically ascending.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.order()).flat_map(move |u| self.adj[u].ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Non-adjacent pairs `(u, v)` with `u < v`, lexicographically ascending.
    pub fn non_edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let n = self.order();
        (0..n).flat_map(move |u| {
            (u + 1..n)
                .filter(move |&v| !self.adj[u].contains(v))
                .map(move |v| (u, v))
        })
    }

    /// Subgraph induced by `keep`, with vertices renumbered densely.
    pub fn induced(&self, keep: &VertexSet) -> Subgraph {
        let original: Vec<Vertex> = keep.iter().collect();
        let mut local = vec![usize::MAX; self.order()];
        for (i, &v) in original.iter().enumerate() {
            local[v] = i;
        }
        let mut graph = Graph::empty(original.len());
        for (i, &v) in original.iter().enumerate() {
            for w in self.adj[v].ones() {
                let j = local[w];
                if j != usize::MAX && j > i {
                    graph.insert_edge(i, j);
                }
            }
        }
        Subgraph { graph, original }
    }

    /// Subgraph obtained by deleting `removed` (`G − S`).
    pub fn minus(&self, removed: &VertexSet) -> Subgraph {
        self.induced(&VertexSet::full(self.order()).difference(removed))
    }

    /// Every vertex id of the graph.
    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.order())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.order())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// An induced subgraph together with the map from local to original ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    pub original: Vec<Vertex>,
}

impl Subgraph {
    pub fn to_original(&self, local: Vertex) -> Vertex {
        self.original[local]
    }

    /// Lifts a set of local ids to original ids in a universe of size `universe`.
    pub fn lift(&self, local: &VertexSet, universe: usize) -> VertexSet {
        let mut out = VertexSet::new(universe);
        for v in local.iter() {
            out.insert(self.original[v]);
        }
        out
    }
}

fn ensure_disjoint(x: &VertexSet, y: &VertexSet) -> Result<()> {
    match x.first_common(y) {
        Some(v) => Err(Error::Overlap(v)),
        None => Ok(()),
    }
}

/// `e_G(X, Y)`: edges with one endpoint in `x` and the other in `y`.
pub fn edges_between(g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<usize> {
    ensure_disjoint(x, y)?;
    Ok(x.iter().map(|u| g.degree_in(u, y)).sum())
}

/// `e_Ḡ(X, Y)`: cross pairs that are not edges.
pub fn non_edges_between(g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<usize> {
    Ok(x.len() * y.len() - edges_between(g, x, y)?)
}

/// Number of edges with both endpoints in `s`.
pub fn edges_within(g: &Graph, s: &VertexSet) -> usize {
    s.iter().map(|u| g.degree_in(u, s)).sum::<usize>() / 2
}

/// First edge `(u, v)` with `u < v` inside `s`, if any.
pub fn edge_within(g: &Graph, s: &VertexSet) -> Option<(Vertex, Vertex)> {
    s.iter()
        .find_map(|u| g.row(u).intersection(s.as_bits()).find(|&v| v > u).map(|v| (u, v)))
}

pub fn is_independent(g: &Graph, s: &VertexSet) -> bool {
    s.iter().all(|u| g.row(u).is_disjoint(s.as_bits()))
}

/// Whether `b` splits all of `V(g)` into two independent sets.
pub fn is_bipartition_of(g: &Graph, b: &Bipartition) -> Result<bool> {
    ensure_disjoint(&b.left, &b.right)?;
    if let Some(v) = (0..g.order()).find(|&v| !b.left.contains(v) && !b.right.contains(v)) {
        return Err(Error::Uncovered(v));
    }
    Ok(is_independent(g, &b.left) && is_independent(g, &b.right))
}

/// Whether `left ∪ right` induces exactly the complete bipartite graph with those sides.
pub fn is_induced_complete_bipartite(g: &Graph, b: &Bipartition) -> bool {
    if !b.left.is_disjoint(&b.right) {
        return false;
    }
    if !is_independent(g, &b.left) || !is_independent(g, &b.right) {
        return false;
    }
    let need = b.right.len();
    b.left.iter().all(|u| g.degree_in(u, &b.right) == need)
}

/// Exact maximum cut with the default order limit.
pub fn maxcut_exact(g: &Graph) -> Result<(usize, Bipartition)> {
    maxcut_exact_with_limit(g, DEFAULT_MAXCUT_LIMIT)
}

/// Exact maximum cut by Gray-code enumeration of all `2^(n-1)` splits with vertex 0
/// pinned to the left side. The witness is the first optimum in Gray order.
pub fn maxcut_exact_with_limit(g: &Graph, limit: usize) -> Result<(usize, Bipartition)> {
    let n = g.order();
    if n > limit || n > 63 {
        return Err(Error::BudgetExceeded {
            what: "exhaustive max-cut",
            size: n,
            limit: limit.min(63),
        });
    }
    if n == 0 {
        return Ok((0, Bipartition::new(VertexSet::new(0), VertexSet::new(0))?));
    }
    let masks: Vec<u64> = (0..n).map(|v| g.neighbors(v).fold(0u64, |m, w| m | (1 << w))).collect();
    let degrees: Vec<i64> = masks.iter().map(|m| m.count_ones() as i64).collect();

    // `right` holds the vertices on the right; vertex 0 never moves.
    let mut right = 0u64;
    let mut cut = 0i64;
    let mut best = (0i64, 0u64);
    let steps = 1u64 << (n - 1);
    for step in 1..steps {
        let v = step.trailing_zeros() as usize + 1;
        let inside = (masks[v] & right).count_ones() as i64;
        if right & (1 << v) == 0 {
            cut += degrees[v] - 2 * inside;
        } else {
            cut += 2 * inside - degrees[v];
        }
        right ^= 1 << v;
        if cut > best.0 {
            best = (cut, right);
        }
    }
    let (value, mask) = best;
    let right_members = (0..n).filter(|&v| mask & (1 << v) != 0);
    let left_members = (0..n).filter(|&v| mask & (1 << v) == 0);
    Ok((
        value as usize,
        Bipartition::from_members(n, left_members, right_members)?,
    ))
}

/// `D_2(G) = e(G) - maxcut(G)`: fewest edge deletions that leave a bipartite graph.
pub fn d2(g: &Graph) -> Result<usize> {
    d2_with_limit(g, DEFAULT_MAXCUT_LIMIT)
}

pub fn d2_with_limit(g: &Graph, limit: usize) -> Result<usize> {
    Ok(g.edge_count() - maxcut_exact_with_limit(g, limit)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, m: &[Vertex]) -> VertexSet {
        VertexSet::from_members(n, m.iter().copied()).unwrap()
    }

    #[test]
    fn make_graph_examples() {
        let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(c4.edge_count(), 4);
        assert_eq!(Graph::new(3, []).unwrap().edge_count(), 0);
        let g = Graph::new(5, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(1, 0));
    }

    #[test]
    fn make_graph_rejects_bad_input() {
        assert!(matches!(
            Graph::new(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, order: 3 })
        ));
        assert!(matches!(Graph::new(3, [(1, 1)]), Err(Error::SelfLoop(1))));
    }

    #[test]
    fn edge_count_is_half_degree_sum() {
        let g = Graph::complete_bipartite(3, 5);
        let sum: usize = (0..g.order()).map(|v| g.degree(v)).sum();
        assert_eq!(sum, 2 * g.edge_count());
    }

    #[test]
    fn edges_between_examples() {
        let k33 = Graph::complete_bipartite(3, 3);
        assert_eq!(
            edges_between(&k33, &set(6, &[0, 1, 2]), &set(6, &[3, 4, 5])).unwrap(),
            9
        );
        let e = Graph::empty(6);
        assert_eq!(edges_between(&e, &set(6, &[0, 1]), &set(6, &[2, 3])).unwrap(), 0);
        let c5 = Graph::cycle(5).unwrap();
        let (x, y) = (set(5, &[0, 2]), set(5, &[1, 3]));
        assert_eq!(edges_between(&c5, &x, &y).unwrap(), 3);
        assert_eq!(non_edges_between(&c5, &x, &y).unwrap(), 1);
        assert!(matches!(
            edges_between(&c5, &set(5, &[0, 1]), &set(5, &[1])),
            Err(Error::Overlap(1))
        ));
    }

    #[test]
    fn independence_examples() {
        let k44 = Graph::complete_bipartite(4, 4);
        assert!(is_independent(&k44, &set(8, &[0, 1, 2, 3])));
        let c5 = Graph::cycle(5).unwrap();
        assert!(!is_independent(&c5, &set(5, &[0, 1])));
        assert!(is_independent(&c5, &set(5, &[0, 2])));
    }

    #[test]
    fn bipartition_examples() {
        let c6 = Graph::cycle(6).unwrap();
        let b = Bipartition::from_members(6, [0, 2, 4], [1, 3, 5]).unwrap();
        assert!(is_bipartition_of(&c6, &b).unwrap());

        let c5 = Graph::cycle(5).unwrap();
        for mask in 0u32..32 {
            let b = Bipartition::from_members(
                5,
                (0..5).filter(|v| mask & (1 << v) != 0),
                (0..5).filter(|v| mask & (1 << v) == 0),
            )
            .unwrap();
            assert!(!is_bipartition_of(&c5, &b).unwrap());
        }

        let g = Graph::complete_bipartite(2, 4).with_edge(0, 1).unwrap();
        let b = Bipartition::from_members(6, [0, 1], [2, 3, 4, 5]).unwrap();
        assert!(!is_bipartition_of(&g, &b).unwrap());
        assert_eq!(edge_within(&g, &b.left), Some((0, 1)));

        let partial = Bipartition::from_members(6, [0, 2], [1, 3]).unwrap();
        assert!(matches!(is_bipartition_of(&c6, &partial), Err(Error::Uncovered(4))));
    }

    #[test]
    fn induced_complete_bipartite_examples() {
        let k44 = Graph::complete_bipartite(4, 4);
        let b = Bipartition::from_members(8, 0..4, 4..8).unwrap();
        assert!(is_induced_complete_bipartite(&k44, &b));
        let minus = k44.without_edges([(0, 4)]).unwrap();
        assert!(!is_induced_complete_bipartite(&minus, &b));
        let single = Bipartition::from_members(8, [3], []).unwrap();
        assert!(is_induced_complete_bipartite(&minus, &single));
    }

    #[test]
    fn maxcut_and_d2_examples() {
        let c5 = Graph::cycle(5).unwrap();
        let (cut, w) = maxcut_exact(&c5).unwrap();
        assert_eq!(cut, 4);
        assert_eq!(w.order(), 5);
        assert_eq!(d2(&c5).unwrap(), 1);

        let k33 = Graph::complete_bipartite(3, 3);
        assert_eq!(maxcut_exact(&k33).unwrap().0, 9);
        assert_eq!(d2(&Graph::complete_bipartite(4, 4)).unwrap(), 0);

        let k4 = Graph::complete(4);
        assert_eq!(maxcut_exact(&k4).unwrap().0, 4);
        assert_eq!(d2(&k4).unwrap(), 2);
    }

    #[test]
    fn maxcut_witness_realises_value() {
        let g = Graph::new(
            7,
            [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 3), (1, 5)],
        )
        .unwrap();
        let (cut, w) = maxcut_exact(&g).unwrap();
        let crossing = edges_between(&g, &w.left, &w.right).unwrap();
        assert_eq!(cut, crossing);
    }

    #[test]
    fn maxcut_respects_limit() {
        let g = Graph::empty(10);
        assert!(matches!(
            maxcut_exact_with_limit(&g, 9),
            Err(Error::BudgetExceeded { size: 10, .. })
        ));
        assert_eq!(maxcut_exact(&Graph::empty(0)).unwrap().0, 0);
        assert_eq!(maxcut_exact(&Graph::empty(1)).unwrap().0, 0);
    }

    #[test]
    fn induced_keeps_index_map() {
        let c6 = Graph::cycle(6).unwrap();
        let sub = c6.minus(&set(6, &[0]));
        assert_eq!(sub.original, vec![1, 2, 3, 4, 5]);
        assert_eq!(sub.graph.edge_count(), 4);
        assert!(sub.graph.has_edge(0, 1));
        assert!(!sub.graph.has_edge(0, 4));
    }
}
