//! Brute-force references that do not share search code with [`crate::cycles`].
//!
//! Everything here works on `u32`/`u64` adjacency masks and is meant for
//! small orders only; each entry point enforces an explicit budget.

use std::collections::{BTreeSet, HashSet};
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{blowup_cycle, random_maximal, GkaLayout};
use crate::cycles::{is_cycle_free, PathWitness};
use crate::error::{Error, Result};
use crate::graph::{d2_with_limit, Bipartition, Graph, Vertex};
use crate::graph6;

pub const EXTREMAL_ORDER_LIMIT: usize = 10;
pub const INDUCED_ORDER_LIMIT: usize = 18;
pub const PATH_ORDER_LIMIT: usize = 10;
pub const PATH_LENGTH_LIMIT: usize = 9;
pub const D2_ORDER_LIMIT: usize = 16;
pub const EXHAUSTIVE_SCAN_LIMIT: usize = 7;

fn budget(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::BudgetExceeded { what, size, limit })
    } else {
        Ok(())
    }
}

fn masks(g: &Graph) -> Vec<u32> {
    (0..g.order())
        .map(|v| g.neighbors(v).fold(0u32, |m, w| m | (1 << w)))
        .collect()
}

fn graph_from_masks(adj: &[u32]) -> Graph {
    let n = adj.len();
    let edges = (0..n).flat_map(|u| (u + 1..n).filter(move |&v| adj[u] & (1 << v) != 0).map(move |v| (u, v)));
    Graph::new(n, edges).expect("masks describe a simple graph")
}

/// Whether a simple path with exactly `len` edges joins `u` and `v`. Plain DFS.
fn mask_path(adj: &[u32], u: usize, v: usize, len: usize, used: u32) -> bool {
    if len == 1 {
        return adj[u] & (1 << v) != 0;
    }
    let mut next = adj[u] & !used & !(1 << v);
    while next != 0 {
        let w = next.trailing_zeros() as usize;
        next &= next - 1;
        if mask_path(adj, w, v, len - 1, used | (1 << w)) {
            return true;
        }
    }
    false
}

/// Canonical labelling: the permutation maximising the column-wise upper
/// triangle code, restricted to orders listing vertices by non-decreasing
/// degree. Returns the code and the relabelled adjacency.
pub(crate) fn canonical_form(adj: &[u32]) -> (u128, Vec<u32>) {
    let n = adj.len();
    assert!(n <= 16, "canonical form supports at most 16 vertices");
    let degree: Vec<u32> = adj.iter().map(|m| m.count_ones()).collect();
    let mut sorted = degree.clone();
    sorted.sort_unstable();
    let total = n * n.saturating_sub(1) / 2;

    struct State<'a> {
        adj: &'a [u32],
        degree: &'a [u32],
        sorted: &'a [u32],
        total: usize,
        best: Option<(u128, Vec<usize>)>,
        perm: Vec<usize>,
    }

    fn place(st: &mut State, used: u32, code: u128, bits: usize) {
        let pos = st.perm.len();
        if pos == st.adj.len() {
            if st.best.as_ref().is_none_or(|(b, _)| code > *b) {
                st.best = Some((code, st.perm.clone()));
            }
            return;
        }
        for v in 0..st.adj.len() {
            if used & (1 << v) != 0 || st.degree[v] != st.sorted[pos] {
                continue;
            }
            let mut c = code;
            for &p in &st.perm {
                c = (c << 1) | ((st.adj[p] >> v) & 1) as u128;
            }
            let b = bits + pos;
            if let Some((best, _)) = &st.best {
                if c < best >> (st.total - b) {
                    continue;
                }
            }
            st.perm.push(v);
            place(st, used | (1 << v), c, b);
            st.perm.pop();
        }
    }

    let mut st = State {
        adj,
        degree: &degree,
        sorted: &sorted,
        total,
        best: None,
        perm: Vec::with_capacity(n),
    };
    place(&mut st, 0, 0, 0);
    let (code, perm) = st.best.expect("at least one ordering exists");
    let mut pos = vec![0usize; n];
    for (i, &v) in perm.iter().enumerate() {
        pos[v] = i;
    }
    let relabelled = perm
        .iter()
        .map(|&v| {
            let mut m = 0u32;
            let mut nb = adj[v];
            while nb != 0 {
                let w = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                m |= 1 << pos[w];
            }
            m
        })
        .collect();
    (code, relabelled)
}

/// graph6 of the canonical relabelling of `g`; equal iff isomorphic.
pub fn canonical_graph6(g: &Graph) -> Result<String> {
    budget("canonical form", g.order(), 16)?;
    Ok(graph6::encode(&graph_from_masks(&canonical_form(&masks(g)).1)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalResult {
    pub n: usize,
    pub len: usize,
    pub max_edges: usize,
    /// Labelled graphs attaining the maximum.
    pub labelled_optima: usize,
    /// One graph6 string per isomorphism class, canonical form, sorted.
    pub witnesses: Vec<String>,
}

struct ExtremalSearch<'a> {
    n: usize,
    len: usize,
    pairs: Vec<(usize, usize)>,
    row_end: Vec<usize>,
    /// `ex(m, C_len)` for every `m < n`.
    ex_below: &'a [usize],
    best: &'a AtomicUsize,
}

struct Found {
    edges: usize,
    graphs: Vec<Vec<u32>>,
}

impl ExtremalSearch<'_> {
    fn min_degree_needed(&self) -> usize {
        self.best
            .load(Ordering::Relaxed)
            .saturating_sub(self.ex_below[self.n - 1])
    }

    fn dfs(&self, idx: usize, adj: &mut [u32], e: usize, found: &mut Found) {
        let best = self.best.load(Ordering::Relaxed);
        if idx == self.pairs.len() {
            if e >= best && e >= found.edges {
                if e > found.edges {
                    found.edges = e;
                    found.graphs.clear();
                }
                found.graphs.push(adj.to_vec());
                self.best.fetch_max(e, Ordering::Relaxed);
            }
            return;
        }
        let (u, v) = self.pairs[idx];
        // Edges touching 0..=u are decided by row u's end; the rest is bounded by ex.
        let upper = e + (self.row_end[u] - idx) + self.ex_below[self.n - 1 - u];
        if upper < best {
            return;
        }
        if !mask_path(adj, u, v, self.len - 1, 1 << u) {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
            self.dfs(idx + 1, adj, e + 1, found);
            adj[u] &= !(1 << v);
            adj[v] &= !(1 << u);
        }
        // Excluding uv: both endpoints must still reach the degree floor.
        let need = self.min_degree_needed();
        let cap_u = adj[u].count_ones() as usize + (self.row_end[u] - idx - 1);
        let cap_v = adj[v].count_ones() as usize + (v - u - 1) + (self.n - 1 - v);
        if cap_u >= need && cap_v >= need {
            self.dfs(idx + 1, adj, e, found);
        }
    }
}

fn extremal_lower_bound(n: usize, len: usize) -> usize {
    if n < len {
        return n * n.saturating_sub(1) / 2;
    }
    // Stars are acyclic; for odd len the balanced complete bipartite graph has no odd cycle.
    let star = n.saturating_sub(1);
    if len % 2 == 1 {
        star.max(n * n / 4)
    } else {
        star
    }
}

fn extremal_value(n: usize, len: usize, ex_below: &[usize], collect: bool) -> (usize, Vec<Vec<u32>>) {
    if n < 2 {
        return (0, vec![vec![0; n]]);
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut row_end = vec![0; n];
    let mut acc = 0;
    for (u, end) in row_end.iter_mut().enumerate() {
        acc += n - 1 - u;
        *end = acc;
    }
    let best = AtomicUsize::new(extremal_lower_bound(n, len));
    let search = ExtremalSearch {
        n,
        len,
        pairs,
        row_end,
        ex_below,
        best: &best,
    };

    // Split on the first few pairs; subtrees run in parallel and merge in order.
    let split = search.pairs.len().min(10);
    let mut prefixes = vec![(vec![0u32; n], 0usize)];
    for &(u, v) in &search.pairs[..split] {
        let mut next = Vec::with_capacity(prefixes.len() * 2);
        for (adj, e) in prefixes {
            if !mask_path(&adj, u, v, len - 1, 1 << u) {
                let mut with = adj.clone();
                with[u] |= 1 << v;
                with[v] |= 1 << u;
                next.push((with, e + 1));
            }
            next.push((adj, e));
        }
        prefixes = next;
    }
    let results: Vec<Found> = prefixes
        .into_par_iter()
        .map(|(mut adj, e)| {
            let mut found = Found {
                edges: 0,
                graphs: Vec::new(),
            };
            search.dfs(split, &mut adj, e, &mut found);
            found
        })
        .collect();
    let max = best.load(Ordering::Relaxed);
    let graphs = if collect {
        results
            .into_iter()
            .filter(|f| f.edges == max)
            .flat_map(|f| f.graphs)
            .collect()
    } else {
        Vec::new()
    };
    (max, graphs)
}

/// `ex(n, C_len)` with every extremal graph up to isomorphism, using the default budget.
pub fn max_edges_cycle_free(n: usize, len: usize) -> Result<ExtremalResult> {
    max_edges_cycle_free_with_limit(n, len, EXTREMAL_ORDER_LIMIT)
}

pub fn max_edges_cycle_free_with_limit(n: usize, len: usize, limit: usize) -> Result<ExtremalResult> {
    budget("exhaustive extremal search", n, limit.min(16))?;
    if len < 3 {
        return Err(Error::Parameters(format!("cycle length must be at least 3, got {len}")));
    }
    let mut ex_below = Vec::with_capacity(n);
    for m in 0..n {
        let (value, _) = extremal_value(m, len, &ex_below, false);
        ex_below.push(value);
    }
    let (max_edges, graphs) = extremal_value(n, len, &ex_below, true);
    let labelled: HashSet<Vec<u32>> = graphs.into_iter().collect();
    let witnesses: BTreeSet<String> = labelled
        .iter()
        .map(|adj| graph6::encode(&graph_from_masks(&canonical_form(adj).1)))
        .collect();
    Ok(ExtremalResult {
        n,
        len,
        max_edges,
        labelled_optima: labelled.len(),
        witnesses: witnesses.into_iter().collect(),
    })
}

/// Weighted search for the heaviest pair of disjoint independent unit sets
/// that are completely joined. Units are explored in order, trying A, then B,
/// then exclusion; the first unit used goes to A.
fn best_complete_bipartite_units(adj: &[u64], weight: &[usize]) -> (usize, u64, u64) {
    struct Search<'a> {
        adj: &'a [u64],
        weight: &'a [usize],
        best: (usize, u64, u64),
        found: bool,
    }
    fn go(s: &mut Search, i: usize, a: u64, b: u64, value: usize, can_a: u64, can_b: u64) {
        let m = s.adj.len();
        let rest = if i >= 64 { 0 } else { !0u64 << i };
        let open = (can_a | can_b) & rest;
        let mut bound = value;
        let mut o = open;
        while o != 0 {
            bound += s.weight[o.trailing_zeros() as usize];
            o &= o - 1;
        }
        if s.found && bound <= s.best.0 {
            return;
        }
        if i == m {
            if !s.found || value > s.best.0 {
                s.best = (value, a, b);
                s.found = true;
            }
            return;
        }
        let bit = 1u64 << i;
        let w = s.weight[i];
        if can_a & bit != 0 {
            go(s, i + 1, a | bit, b, value + w, can_a & !s.adj[i], can_b & s.adj[i]);
        }
        if can_b & bit != 0 && a != 0 {
            go(s, i + 1, a, b | bit, value + w, can_a & s.adj[i], can_b & !s.adj[i]);
        }
        go(s, i + 1, a, b, value, can_a, can_b);
    }
    let m = adj.len();
    let all = if m == 64 { !0 } else { (1u64 << m) - 1 };
    let mut s = Search {
        adj,
        weight,
        best: (0, 0, 0),
        found: false,
    };
    go(&mut s, 0, 0, 0, 0, all, all);
    s.best
}

fn sides_from_units(n: usize, units: &[Vec<Vertex>], a: u64, b: u64) -> Bipartition {
    let pick = |mask: u64| {
        units
            .iter()
            .enumerate()
            .filter(move |(i, _)| mask & (1 << i) != 0)
            .flat_map(|(_, u)| u.iter().copied())
    };
    Bipartition::from_members(n, pick(a), pick(b)).expect("units are disjoint")
}

/// Largest `|A| + |B|` over disjoint independent `A`, `B` with `A × B ⊆ E`.
/// One side may be empty, matching [`crate::graph::is_induced_complete_bipartite`].
pub fn max_induced_complete_bipartite(g: &Graph) -> Result<(usize, Bipartition)> {
    max_induced_complete_bipartite_with_limit(g, INDUCED_ORDER_LIMIT)
}

pub fn max_induced_complete_bipartite_with_limit(g: &Graph, limit: usize) -> Result<(usize, Bipartition)> {
    let n = g.order();
    budget("exhaustive induced complete bipartite search", n, limit.min(64))?;
    let adj: Vec<u64> = (0..n).map(|v| g.neighbors(v).fold(0u64, |m, w| m | (1 << w))).collect();
    let (value, a, b) = best_complete_bipartite_units(&adj, &vec![1; n]);
    let units: Vec<Vec<Vertex>> = (0..n).map(|v| vec![v]).collect();
    Ok((value, sides_from_units(n, &units, a, b)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClasswiseResult {
    pub value: usize,
    /// Unit labels (`X3`, `Y1`, `z2_1`, …) on each side.
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub sides: Bipartition,
}

/// Maximum induced complete bipartite subgraph of a layout-respecting graph,
/// searching over whole classes `X_i`, `Y_i` and single `Z` vertices.
///
/// Each class must consist of pairwise non-adjacent twins; twins can always be
/// moved together, so the class search is exact.
pub fn max_classwise_complete_bipartite(g: &Graph, layout: &GkaLayout) -> Result<ClasswiseResult> {
    let n = g.order();
    if layout.n != n {
        return Err(Error::Precondition(format!(
            "layout has {} vertices, graph has {n}",
            layout.n
        )));
    }
    let mut units: Vec<Vec<Vertex>> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    for (side, classes) in [("X", &layout.x), ("Y", &layout.y)] {
        for (i, class) in classes.iter().enumerate() {
            units.push(class.clone());
            labels.push(format!("{side}{}", i + 1));
        }
    }
    for (i, path) in layout.z.iter().enumerate() {
        for (j, &z) in path.iter().enumerate() {
            units.push(vec![z]);
            labels.push(format!("z{}_{}", i + 1, j + 1));
        }
    }
    if units.len() > 64 {
        return Err(Error::BudgetExceeded {
            what: "classwise unit count",
            size: units.len(),
            limit: 64,
        });
    }
    let covered: usize = units.iter().map(Vec::len).sum();
    if covered != n {
        return Err(Error::Precondition(format!("layout covers {covered} of {n} vertices")));
    }
    for (unit, label) in units.iter().zip(&labels) {
        let first = unit[0];
        let reference = g.neighbor_set(first);
        if let Some(&v) = unit
            .iter()
            .find(|&&v| g.neighbor_set(v) != reference || g.has_edge(first, v))
        {
            return Err(Error::Precondition(format!(
                "twin structure violated in class {label}: vertex {v} differs from {first}"
            )));
        }
    }
    let adj: Vec<u64> = units
        .iter()
        .map(|u| {
            units
                .iter()
                .enumerate()
                .filter(|(_, w)| g.has_edge(u[0], w[0]))
                .fold(0u64, |m, (j, _)| m | (1 << j))
        })
        .collect();
    let weight: Vec<usize> = units.iter().map(Vec::len).collect();
    let (value, a, b) = best_complete_bipartite_units(&adj, &weight);
    let names = |mask: u64| {
        labels
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, l)| l.clone())
            .collect()
    };
    Ok(ClasswiseResult {
        value,
        left: names(a),
        right: names(b),
        sides: sides_from_units(n, &units, a, b),
    })
}

/// Every simple `u`–`v` path with exactly `len` edges, by unpruned recursion.
pub fn enumerate_simple_paths(g: &Graph, u: Vertex, v: Vertex, len: usize) -> Result<Vec<PathWitness>> {
    budget("exhaustive path enumeration order", g.order(), PATH_ORDER_LIMIT)?;
    budget("exhaustive path enumeration length", len, PATH_LENGTH_LIMIT)?;
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    fn walk(g: &Graph, path: &mut Vec<Vertex>, v: Vertex, len: usize, out: &mut Vec<PathWitness>) {
        let last = *path.last().expect("path starts non-empty");
        if path.len() == len + 1 {
            if last == v {
                out.push(PathWitness { vertices: path.clone() });
            }
            return;
        }
        for w in 0..g.order() {
            if g.has_edge(last, w) && !path.contains(&w) {
                path.push(w);
                walk(g, path, v, len, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    if u != v {
        walk(g, &mut vec![u], v, len, &mut out);
    }
    Ok(out)
}

/// An odd closed walk of minimum length, as its edge list, or `None` if bipartite.
fn shortest_odd_cycle_edges(adj: &[u32]) -> Option<Vec<(usize, usize)>> {
    let n = adj.len();
    let mut best: Option<Vec<(usize, usize)>> = None;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(a) = queue.pop_front() {
            for b in (0..n).filter(|&b| adj[a] & (1 << b) != 0) {
                if dist[b] == usize::MAX {
                    dist[b] = dist[a] + 1;
                    parent[b] = a;
                    queue.push_back(b);
                } else if dist[b] == dist[a] && a < b {
                    let length = 2 * dist[a] + 1;
                    if best.as_ref().is_none_or(|c| length < c.len()) {
                        let mut edges = vec![(a, b)];
                        for start in [a, b] {
                            let mut x = start;
                            while x != s {
                                edges.push((parent[x], x));
                                x = parent[x];
                            }
                        }
                        best = Some(edges);
                    }
                }
            }
        }
    }
    best
}

/// `D_2` by direct search for the fewest edge deletions leaving a bipartite
/// graph: iterative deepening, branching on the edges of a shortest odd cycle.
pub fn d2_by_edge_removal(g: &Graph) -> Result<usize> {
    budget("edge-removal search", g.order(), PATH_ORDER_LIMIT)?;
    fn feasible(adj: &mut [u32], r: usize) -> bool {
        let Some(cycle) = shortest_odd_cycle_edges(adj) else {
            return true;
        };
        if r == 0 {
            return false;
        }
        for (a, b) in cycle {
            adj[a] &= !(1 << b);
            adj[b] &= !(1 << a);
            let ok = feasible(adj, r - 1);
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
            if ok {
                return true;
            }
        }
        false
    }
    let mut adj = masks(g);
    Ok((0..)
        .find(|&r| feasible(&mut adj, r))
        .expect("deleting every edge suffices"))
}

/// Compositions of `n` into `m` positive parts, one per dihedral class
/// (the lexicographically least rotation or reflection).
pub fn blowup_size_classes(m: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(m: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m - 1 {
            if left >= 1 {
                cur.push(left);
                if is_dihedral_min(cur) {
                    out.push(cur.clone());
                }
                cur.pop();
            }
            return;
        }
        let slots = m - 1 - cur.len();
        for part in 1..=left.saturating_sub(slots) {
            cur.push(part);
            rec(m, left - part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if m >= 1 && n >= m {
        rec(m, n, &mut Vec::with_capacity(m), &mut out);
    }
    out
}

fn is_dihedral_min(s: &[usize]) -> bool {
    let m = s.len();
    (0..m).all(|r| {
        let rot = (0..m).map(|i| s[(i + r) % m]);
        let rev = (0..m).map(|i| s[(r + m - i) % m]);
        s.iter().copied().le(rot) && s.iter().copied().le(rev)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupCandidate {
    pub sizes: Vec<usize>,
    pub edges: usize,
    pub d2: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanStatus {
    Dominated,
    /// No blowup matches both `e` and `D_2`: a candidate counterexample.
    NotDominated,
    /// `n` is smaller than the blown-up cycle, so no blowup exists.
    NoValidBlowup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureRecord {
    pub id: String,
    /// Seed that regenerates the sample with [`random_maximal`], when sampled.
    pub seed: Option<u64>,
    pub graph6: String,
    pub edges: usize,
    pub d2: usize,
    pub bipartite: bool,
    pub best: Option<BlowupCandidate>,
    pub dominated: bool,
    pub status: ScanStatus,
}

#[derive(Clone, Debug)]
pub enum Sample {
    /// Every `C_{2k+1}`-free graph on `n` vertices up to isomorphism.
    Exhaustive,
    /// `samples` random maximal `C_{2k+1}`-free graphs.
    Random { samples: usize, seed: u64 },
    /// Caller-supplied graphs with ids.
    Given(Vec<(String, Graph)>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub k: u64,
    pub n: usize,
    pub blowup_cycle: usize,
    /// How the blowup order is fixed.
    pub blowup_order: &'static str,
    pub blowup_classes: usize,
    pub records: Vec<ConjectureRecord>,
    pub flagged: usize,
    pub invariant_failures: Vec<String>,
}

/// Seed of the `i`-th random sample of a scan seeded with `seed`.
pub fn sample_seed(seed: u64, i: usize) -> u64 {
    // splitmix64 step over (seed, i)
    let mut z = seed.wrapping_add((i as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn all_free_graphs(n: usize, len: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    fn rec(
        pairs: &[(usize, usize)],
        i: usize,
        adj: &mut [u32],
        len: usize,
        seen: &mut BTreeSet<u128>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if i == pairs.len() {
            let (code, canon) = canonical_form(adj);
            if seen.insert(code) {
                out.push(canon);
            }
            return;
        }
        let (u, v) = pairs[i];
        if !mask_path(adj, u, v, len - 1, 1 << u) {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
            rec(pairs, i + 1, adj, len, seen, out);
            adj[u] &= !(1 << v);
            adj[v] &= !(1 << u);
        }
        rec(pairs, i + 1, adj, len, seen, out);
    }
    let mut out = Vec::new();
    rec(&pairs, 0, &mut vec![0; n], len, &mut BTreeSet::new(), &mut out);
    out.iter().map(|a| graph_from_masks(a)).collect()
}

/// Compares each sampled `C_{2k+1}`-free graph with every blowup of
/// `C_{2k+3}` on the same number of vertices.
pub fn conjecture_scan(k: u64, n: usize, sample: &Sample) -> Result<ScanReport> {
    if k < 2 {
        return Err(Error::Parameters(format!("k must be at least 2, got {k}")));
    }
    budget("D2 order", n, D2_ORDER_LIMIT)?;
    let len = 2 * k as usize + 1;
    let m = len + 2;
    let graphs: Vec<(String, Option<u64>, Graph)> = match sample {
        Sample::Exhaustive => {
            budget("exhaustive scan order", n, EXHAUSTIVE_SCAN_LIMIT)?;
            all_free_graphs(n, len)
                .into_iter()
                .enumerate()
                .map(|(i, g)| (format!("all/{i}"), None, g))
                .collect()
        }
        Sample::Random { samples, seed } => (0..*samples)
            .into_par_iter()
            .map(|i| {
                let s = sample_seed(*seed, i);
                random_maximal(n, len, s).map(|g| (format!("seed{seed}/sample{i}"), Some(s), g))
            })
            .collect::<Result<_>>()?,
        Sample::Given(list) => {
            if let Some((id, g)) = list.iter().find(|(_, g)| g.order() != n) {
                return Err(Error::Parameters(format!(
                    "sample {id} has {} vertices, expected {n}",
                    g.order()
                )));
            }
            list.iter().map(|(id, g)| (id.clone(), None, g.clone())).collect()
        }
    };

    let mut failures = Vec::new();
    let mut blowups = Vec::new();
    for sizes in blowup_size_classes(m, n) {
        let g = blowup_cycle(m, &sizes)?;
        let d2 = d2_with_limit(&g, D2_ORDER_LIMIT)?;
        let formula = (0..m).map(|i| sizes[i] * sizes[(i + 1) % m]).min().unwrap_or(0);
        if d2 != formula {
            failures.push(format!(
                "blowup {sizes:?}: D2 {d2} differs from min consecutive product {formula}"
            ));
        }
        if !is_cycle_free(&g, len) {
            failures.push(format!("blowup {sizes:?} contains C{len}"));
        }
        blowups.push(BlowupCandidate {
            edges: g.edge_count(),
            sizes,
            d2,
        });
    }

    let records: Vec<(ConjectureRecord, Vec<String>)> = graphs
        .into_par_iter()
        .map(|(id, seed, g)| -> Result<(ConjectureRecord, Vec<String>)> {
            let mut fails = Vec::new();
            if !is_cycle_free(&g, len) {
                fails.push(format!("sample {id} contains C{len}"));
            }
            let edges = g.edge_count();
            let d2 = d2_with_limit(&g, D2_ORDER_LIMIT)?;
            let bipartite = d2 == 0;
            let dominating = blowups.iter().filter(|b| b.edges >= edges && b.d2 >= d2);
            // Most edges, then largest D2; ties keep the first size class.
            let pick = |it: &mut dyn Iterator<Item = &BlowupCandidate>| {
                it.fold(None::<&BlowupCandidate>, |acc, b| match acc {
                    Some(a) if (a.edges, a.d2) >= (b.edges, b.d2) => Some(a),
                    _ => Some(b),
                })
                .cloned()
            };
            let (best, status) = match pick(&mut dominating.into_iter()) {
                Some(b) => (Some(b), ScanStatus::Dominated),
                None if blowups.is_empty() => (None, ScanStatus::NoValidBlowup),
                None => (pick(&mut blowups.iter()), ScanStatus::NotDominated),
            };
            let dominated = best.as_ref().is_some_and(|b| b.edges >= edges && b.d2 >= d2);
            if dominated != (status == ScanStatus::Dominated) {
                fails.push(format!("sample {id}: status disagrees with recorded blowup"));
            }
            Ok((
                ConjectureRecord {
                    id,
                    seed,
                    graph6: graph6::encode(&g),
                    edges,
                    d2,
                    bipartite,
                    best,
                    dominated,
                    status,
                },
                fails,
            ))
        })
        .collect::<Result<_>>()?;

    let mut out = Vec::with_capacity(records.len());
    for (r, f) in records {
        failures.extend(f);
        out.push(r);
    }
    Ok(ScanReport {
        k,
        n,
        blowup_cycle: m,
        blowup_order: "class sizes sum to n",
        blowup_classes: blowups.len(),
        flagged: out.iter().filter(|r| r.status == ScanStatus::NotDominated).count(),
        records: out,
        invariant_failures: failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{gka_minimal, turan_bipartite, GkaParams};
    use crate::graph::{d2, is_induced_complete_bipartite};

    #[test]
    fn extremal_small() {
        let r = max_edges_cycle_free(4, 5).unwrap();
        assert_eq!(r.max_edges, 6);
        assert_eq!(r.witnesses, vec![graph6::encode(&Graph::complete(4))]);
        let r = max_edges_cycle_free(5, 5).unwrap();
        assert_eq!(r.max_edges, 7);
        for w in &r.witnesses {
            let g = graph6::decode(w).unwrap();
            assert!(is_cycle_free(&g, 5));
            assert_eq!(g.edge_count(), 7);
        }
    }

    #[test]
    fn extremal_order_seven() {
        // ⌊49/4⌋ = 12, attained by K_{3,4}.
        let r = max_edges_cycle_free(7, 5).unwrap();
        assert_eq!(r.max_edges, 12);
        assert!(r
            .witnesses
            .contains(&canonical_graph6(&Graph::complete_bipartite(3, 4)).unwrap()));
    }

    #[test]
    fn extremal_budget() {
        assert!(matches!(max_edges_cycle_free(30, 5), Err(Error::BudgetExceeded { .. })));
        assert!(max_edges_cycle_free(5, 2).is_err());
    }

    #[test]
    fn canonical_form_detects_isomorphism() {
        let a = Graph::new(5, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = Graph::new(5, [(4, 2), (2, 0), (0, 3)]).unwrap();
        let c = Graph::new(5, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(canonical_graph6(&a).unwrap(), canonical_graph6(&b).unwrap());
        assert_ne!(canonical_graph6(&a).unwrap(), canonical_graph6(&c).unwrap());
    }

    #[test]
    fn induced_examples() {
        assert_eq!(max_induced_complete_bipartite(&Graph::cycle(5).unwrap()).unwrap().0, 3);
        assert_eq!(
            max_induced_complete_bipartite(&Graph::complete_bipartite(4, 4))
                .unwrap()
                .0,
            8
        );
        let (v, sides) = max_induced_complete_bipartite(&Graph::complete(4)).unwrap();
        assert_eq!(v, 2);
        assert!(is_induced_complete_bipartite(&Graph::complete(4), &sides));
        assert!(max_induced_complete_bipartite(&Graph::empty(19)).is_err());
    }

    #[test]
    fn classwise_matches_generic_on_small_layout() {
        let p = GkaParams::new(2, "1/2".parse().unwrap(), 16).unwrap();
        let (g, layout) = gka_minimal(&p).unwrap();
        assert_eq!(layout.t, 1);
        let c = max_classwise_complete_bipartite(&g, &layout).unwrap();
        let (v, _) = max_induced_complete_bipartite(&g).unwrap();
        assert_eq!(c.value, v);
        assert!(is_induced_complete_bipartite(&g, &c.sides));
        assert_eq!(c.sides.order(), c.value);
    }

    #[test]
    fn classwise_rejects_broken_twins() {
        let p = GkaParams::new(2, "1/2".parse().unwrap(), 16).unwrap();
        let (g, layout) = gka_minimal(&p).unwrap();
        let a = layout.x[0][0];
        let z = layout.z[0][1];
        let broken = g.with_edge(a, z).unwrap();
        assert!(matches!(
            max_classwise_complete_bipartite(&broken, &layout),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn path_enumeration_examples() {
        let c6 = Graph::cycle(6).unwrap();
        assert_eq!(enumerate_simple_paths(&c6, 0, 3, 3).unwrap().len(), 2);
        assert_eq!(enumerate_simple_paths(&Graph::complete(4), 0, 1, 2).unwrap().len(), 2);
        assert!(enumerate_simple_paths(&Graph::empty(5), 0, 1, 2).unwrap().is_empty());
        assert!(enumerate_simple_paths(&Graph::empty(11), 0, 1, 2).is_err());
    }

    #[test]
    fn edge_removal_matches_maxcut_small() {
        for g in [
            Graph::cycle(5).unwrap(),
            Graph::complete(5),
            Graph::complete_bipartite(3, 3),
            Graph::cycle(7).unwrap().disjoint_union(&Graph::complete(3)),
        ] {
            assert_eq!(d2_by_edge_removal(&g).unwrap(), d2(&g).unwrap());
        }
    }

    #[test]
    fn dihedral_classes() {
        // Necklaces of 5 beads with one bead of weight 2: a single class.
        assert_eq!(blowup_size_classes(5, 6), vec![vec![1, 1, 1, 1, 2]]);
        assert_eq!(blowup_size_classes(7, 7), vec![vec![1; 7]]);
        assert!(blowup_size_classes(7, 6).is_empty());
        // Two extra units on C7: adjacent, one apart, two apart, three apart, or a single 3.
        assert_eq!(blowup_size_classes(7, 9).len(), 4);
    }

    #[test]
    fn scan_small() {
        let r = conjecture_scan(2, 9, &Sample::Given(vec![("C9".into(), Graph::cycle(9).unwrap())])).unwrap();
        assert!(r.invariant_failures.is_empty());
        assert_eq!(r.records.len(), 1);
        let rec = &r.records[0];
        assert_eq!((rec.edges, rec.d2), (9, 1));
        assert_eq!(rec.status, ScanStatus::Dominated);

        let r = conjecture_scan(2, 6, &Sample::Given(vec![("K33".into(), turan_bipartite(6))])).unwrap();
        assert_eq!(r.records[0].status, ScanStatus::NoValidBlowup);
        assert!(!r.records[0].dominated);
    }

    #[test]
    fn scan_random_is_reproducible_from_seed() {
        let r = conjecture_scan(2, 10, &Sample::Random { samples: 6, seed: 3 }).unwrap();
        assert!(r.invariant_failures.is_empty());
        for rec in &r.records {
            let g = random_maximal(10, 5, rec.seed.unwrap()).unwrap();
            assert_eq!(graph6::encode(&g), rec.graph6);
        }
        assert_eq!(
            r,
            conjecture_scan(2, 10, &Sample::Random { samples: 6, seed: 3 }).unwrap()
        );
    }

    #[test]
    fn scan_exhaustive_tiny() {
        let r = conjecture_scan(2, 7, &Sample::Exhaustive).unwrap();
        assert!(r.invariant_failures.is_empty());
        // Every C5-free graph on 7 vertices, one per isomorphism class.
        assert!(r.records.len() > 100);
        assert!(r.records.iter().all(|x| x.status != ScanStatus::NoValidBlowup));
    }
}
