//! Graph generators: the bipartite Turán graph, the lower-bound family
//! `G_{k,α}(n)`, blowups of cycles, and saturation to a maximal
//! `C_len`-free supergraph.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{ceil_sqrt, Rational};
use crate::cycles::{exists_path_of_length, find_cycle_of_length, PathWitness};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// `K_{⌈n/2⌉,⌊n/2⌋}`.
pub fn turan_bipartite(n: usize) -> Graph {
    Graph::complete_bipartite(n.div_ceil(2), n / 2)
}

/// Parameters of a `G_{k,α}(n)` instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GkaParams {
    pub k: u64,
    pub alpha: Rational,
    pub n: usize,
}

/// Sizes derived from [`GkaParams`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GkaSizes {
    /// Number of gadget blocks `t = ⌈√(αn/(4k))⌉`.
    pub t: usize,
    /// `|X_i| = |Y_i| = ⌊(αn − (2k−1)t)/(2t)⌋` for `i ≤ t`.
    pub block: usize,
    /// Vertices per gadget path, `2k − 1`.
    pub path: usize,
    pub x_rest: usize,
    pub y_rest: usize,
}

impl GkaParams {
    pub fn new(k: u64, alpha: Rational, n: usize) -> Result<Self> {
        let p = Self { k, alpha, n };
        p.sizes()?;
        Ok(p)
    }

    pub fn cycle_len(&self) -> usize {
        2 * self.k as usize + 1
    }

    /// Checks feasibility and returns all class sizes.
    pub fn sizes(&self) -> Result<GkaSizes> {
        if self.k < 2 {
            return Err(Error::Parameters(format!("k must be at least 2, got {}", self.k)));
        }
        let half = Rational::new(1, 2)?;
        if !self.alpha.is_positive() || self.alpha > half {
            return Err(Error::Parameters(format!(
                "alpha must lie in (0, 1/2], got {}",
                self.alpha
            )));
        }
        let k = self.k as i128;
        let alpha_n = self.alpha * Rational::integer(self.n as i128);
        let t = ceil_sqrt(alpha_n / Rational::integer(4 * k)) as i128;
        if t == 0 {
            return Err(Error::Parameters("no gadget blocks (t = 0)".into()));
        }
        let path = 2 * k - 1;
        let slack = alpha_n - Rational::integer(path * t);
        let block = (slack / Rational::integer(2 * t)).floor();
        if block < 1 {
            return Err(Error::Parameters(format!(
                "infeasible G_{{k,alpha}}(n) for k={}, alpha={}, n={}: alpha*n - (2k-1)t = {} leaves X_i empty (t = {t})",
                self.k, self.alpha, self.n, slack
            )));
        }
        let used = 2 * t * block + path * t;
        let rest = self.n as i128 - used;
        if rest < 2 {
            return Err(Error::Parameters(format!(
                "infeasible G_{{k,alpha}}(n): only {rest} vertices left for X_(t+1), Y_(t+1)"
            )));
        }
        Ok(GkaSizes {
            t: t as usize,
            block: block as usize,
            path: path as usize,
            x_rest: rest.div_euclid(2) as usize + (rest % 2) as usize,
            y_rest: rest.div_euclid(2) as usize,
        })
    }
}

impl fmt::Display for GkaParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G_{{{},{}}}({})", self.k, self.alpha, self.n)
    }
}

/// Vertex classes of a `G_{k,α}(n)` instance. `x[t]` and `y[t]` are the
/// large classes `X_{t+1}`, `Y_{t+1}`; each `z[i]` lists its gadget path in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GkaLayout {
    pub k: u64,
    pub t: usize,
    pub n: usize,
    pub x: Vec<Vec<Vertex>>,
    pub y: Vec<Vec<Vertex>>,
    pub z: Vec<Vec<Vertex>>,
}

fn set_of(n: usize, classes: &[Vec<Vertex>]) -> VertexSet {
    let mut s = VertexSet::new(n);
    for v in classes.iter().flatten() {
        s.insert(*v);
    }
    s
}

impl GkaLayout {
    pub fn x_side(&self) -> VertexSet {
        set_of(self.n, &self.x)
    }

    pub fn y_side(&self) -> VertexSet {
        set_of(self.n, &self.y)
    }

    pub fn z_side(&self) -> VertexSet {
        set_of(self.n, &self.z)
    }

    pub fn class_set(&self, class: &[Vertex]) -> VertexSet {
        set_of(self.n, std::slice::from_ref(&class.to_vec()))
    }
}

/// Assigns ids `X_1..X_{t+1}`, then `Y_1..Y_{t+1}`, then `Z_1..Z_t`, each contiguous.
pub fn gka_layout(p: &GkaParams) -> Result<GkaLayout> {
    let s = p.sizes()?;
    let mut next = 0usize;
    let mut take = |count: usize| {
        let class: Vec<Vertex> = (next..next + count).collect();
        next += count;
        class
    };
    let mut x: Vec<Vec<Vertex>> = (0..s.t).map(|_| take(s.block)).collect();
    x.push(take(s.x_rest));
    let mut y: Vec<Vec<Vertex>> = (0..s.t).map(|_| take(s.block)).collect();
    y.push(take(s.y_rest));
    let z: Vec<Vec<Vertex>> = (0..s.t).map(|_| take(s.path)).collect();
    debug_assert_eq!(next, p.n);
    Ok(GkaLayout {
        k: p.k,
        t: s.t,
        n: p.n,
        x,
        y,
        z,
    })
}

/// The member of `G_{k,α}(n)` with the fewest edges.
pub fn gka_minimal(p: &GkaParams) -> Result<(Graph, GkaLayout)> {
    let layout = gka_layout(p)?;
    let mut g = Graph::empty(p.n);
    let t = layout.t;
    for (i, xi) in layout.x.iter().enumerate() {
        for (j, yj) in layout.y.iter().enumerate() {
            // G[X_i, Y_i] stays empty for i ≤ t; every other pair is complete.
            if i == j && i < t {
                continue;
            }
            for &a in xi {
                for &b in yj {
                    g.insert_edge(a, b);
                }
            }
        }
    }
    for (i, zi) in layout.z.iter().enumerate() {
        for w in zi.windows(2) {
            g.insert_edge(w[0], w[1]);
        }
        let (first, last) = (zi[0], zi[zi.len() - 1]);
        for &a in &layout.x[i] {
            g.insert_edge(first, a);
        }
        for &b in &layout.y[i] {
            g.insert_edge(last, b);
        }
    }
    Ok((g, layout))
}

/// Edge count of [`gka_minimal`] from the class sizes alone.
pub fn gka_minimal_edge_count(p: &GkaParams) -> Result<usize> {
    let s = p.sizes()?;
    let x = s.t * s.block + s.x_rest;
    let y = s.t * s.block + s.y_rest;
    Ok(x * y - s.t * s.block * s.block + (s.path - 1) * s.t + 2 * s.t * s.block)
}

/// The five defining clauses of `G_{k,α}(n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Clause {
    /// Each `Z_i` has `2k − 1` vertices and contains its path.
    PathGadgets,
    /// Class sizes and the balanced remainder split.
    ClassSizes,
    /// `X` and `Y` are independent.
    SidesIndependent,
    /// Empty `X_i–Y_i` blocks, complete blocks elsewhere.
    BlockPattern,
    /// Path ends attached to all of `X_i` and `Y_i`.
    Attachments,
}

impl Clause {
    pub const ALL: [Clause; 5] = [
        Clause::PathGadgets,
        Clause::ClassSizes,
        Clause::SidesIndependent,
        Clause::BlockPattern,
        Clause::Attachments,
    ];

    pub fn roman(self) -> &'static str {
        match self {
            Clause::PathGadgets => "i",
            Clause::ClassSizes => "ii",
            Clause::SidesIndependent => "iii",
            Clause::BlockPattern => "iv",
            Clause::Attachments => "v",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub clause: Clause,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub violations: Vec<Violation>,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn holds(&self, clause: Clause) -> bool {
        self.violations.iter().all(|v| v.clause != clause)
    }

    /// Clauses with no violation.
    pub fn surviving(&self) -> Vec<Clause> {
        Clause::ALL.into_iter().filter(|&c| self.holds(c)).collect()
    }
}

/// Checks `g` against every clause of the definition for the given layout.
/// Clause (i) is in containment form: `G[Z_i]` must contain the path but may hold more.
pub fn verify_membership(g: &Graph, layout: &GkaLayout, p: &GkaParams) -> Membership {
    let mut violations = Vec::new();
    let mut flag = |clause: Clause, detail: String| violations.push(Violation { clause, detail });
    let n = g.order();
    let t = layout.t;

    // Cover and disjointness belong with the size clause.
    let mut seen = VertexSet::new(n);
    for v in layout.x.iter().chain(&layout.y).chain(&layout.z).flatten() {
        if *v >= n {
            flag(Clause::ClassSizes, format!("vertex {v} outside the graph"));
        } else if seen.contains(*v) {
            flag(Clause::ClassSizes, format!("vertex {v} in two classes"));
        } else {
            seen.insert(*v);
        }
    }
    if seen.len() != n || n != p.n {
        flag(
            Clause::ClassSizes,
            format!("classes cover {} of {} vertices", seen.len(), n),
        );
    }
    if layout.x.len() != t + 1 || layout.y.len() != t + 1 || layout.z.len() != t {
        flag(
            Clause::ClassSizes,
            format!("expected {} X/Y classes and {t} Z classes", t + 1),
        );
        return Membership { violations };
    }
    match p.sizes() {
        Ok(s) => {
            if s.t != t {
                flag(Clause::ClassSizes, format!("t = {t}, parameters give {}", s.t));
            }
            for i in 0..t {
                if layout.x[i].len() != s.block || layout.y[i].len() != s.block {
                    flag(
                        Clause::ClassSizes,
                        format!(
                            "|X_{}| = {}, |Y_{}| = {}, expected {}",
                            i + 1,
                            layout.x[i].len(),
                            i + 1,
                            layout.y[i].len(),
                            s.block
                        ),
                    );
                }
            }
            if layout.x[t].len().abs_diff(layout.y[t].len()) > 1 {
                flag(Clause::ClassSizes, "X_(t+1), Y_(t+1) not balanced".into());
            }
        }
        Err(e) => flag(Clause::ClassSizes, e.to_string()),
    }
    let path_len = 2 * p.k as usize - 1;
    for (i, zi) in layout.z.iter().enumerate() {
        if zi.len() != path_len {
            flag(
                Clause::PathGadgets,
                format!("|Z_{}| = {}, expected {path_len}", i + 1, zi.len()),
            );
        }
        for w in zi.windows(2) {
            if w[0] < n && w[1] < n && !g.has_edge(w[0], w[1]) {
                flag(
                    Clause::PathGadgets,
                    format!("Z_{} path misses edge ({}, {})", i + 1, w[0], w[1]),
                );
            }
        }
    }

    for (side, name) in [(layout.x_side(), "X"), (layout.y_side(), "Y")] {
        for u in side.iter() {
            for v in g.neighbors(u).filter(|&v| v > u && side.contains(v)) {
                flag(Clause::SidesIndependent, format!("edge ({u}, {v}) inside {name}"));
            }
        }
    }

    for (i, xi) in layout.x.iter().enumerate() {
        for (j, yj) in layout.y.iter().enumerate() {
            let want_empty = i == j && i < t;
            for &a in xi {
                for &b in yj {
                    if a < n && b < n && g.has_edge(a, b) == want_empty {
                        let what = if want_empty { "unexpected edge" } else { "missing edge" };
                        flag(
                            Clause::BlockPattern,
                            format!("{what} ({a}, {b}) between X_{} and Y_{}", i + 1, j + 1),
                        );
                    }
                }
            }
        }
    }

    for (i, zi) in layout.z.iter().enumerate() {
        let (Some(&first), Some(&last)) = (zi.first(), zi.last()) else {
            continue;
        };
        for &a in &layout.x[i] {
            if !g.has_edge(first, a) {
                flag(
                    Clause::Attachments,
                    format!("z^{}_1 = {first} not joined to {a} in X_{}", i + 1, i + 1),
                );
            }
        }
        for &b in &layout.y[i] {
            if !g.has_edge(last, b) {
                flag(
                    Clause::Attachments,
                    format!("z^{}_end = {last} not joined to {b} in Y_{}", i + 1, i + 1),
                );
            }
        }
    }

    Membership { violations }
}

/// Blowup of `C_m`: classes `W_0..W_{m-1}` of the given sizes (contiguous ids),
/// complete between cyclically consecutive classes.
pub fn blowup_cycle(m: usize, sizes: &[usize]) -> Result<Graph> {
    if m < 3 {
        return Err(Error::Parameters(format!("cycle length must be at least 3, got {m}")));
    }
    if sizes.len() != m {
        return Err(Error::Parameters(format!(
            "expected {m} class sizes, got {}",
            sizes.len()
        )));
    }
    if let Some(i) = sizes.iter().position(|&s| s == 0) {
        return Err(Error::Parameters(format!("class {i} is empty")));
    }
    let mut starts = Vec::with_capacity(m + 1);
    let mut acc = 0;
    for &s in sizes {
        starts.push(acc);
        acc += s;
    }
    starts.push(acc);
    let mut g = Graph::empty(acc);
    for i in 0..m {
        let j = (i + 1) % m;
        for a in starts[i]..starts[i + 1] {
            for b in starts[j]..starts[j + 1] {
                g.insert_edge(a, b);
            }
        }
    }
    Ok(g)
}

/// Order in which saturation scans non-edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SaturationPolicy {
    /// Ascending `(u, v)`.
    Lexicographic,
    /// A seeded shuffle of the non-edges, redrawn each pass.
    Random { seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectedEdge {
    pub edge: (Vertex, Vertex),
    /// `u`–`v` path of `len − 1` edges that the new edge would close into a `C_len`.
    pub witness: PathWitness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationTrace {
    pub policy: SaturationPolicy,
    pub cycle_len: usize,
    pub passes: usize,
    pub added: Vec<(Vertex, Vertex)>,
    pub rejected: Vec<RejectedEdge>,
}

/// Adds non-edges one at a time whenever doing so keeps the graph `C_len`-free,
/// repeating passes until one adds nothing.
///
/// A rejected pair stays rejected: its witness path survives every later
/// addition. Each pass therefore only rescans pairs it has not yet rejected.
pub fn saturate(g: &Graph, len: usize, policy: SaturationPolicy) -> Result<(Graph, SaturationTrace)> {
    if len < 3 {
        return Err(Error::Parameters(format!("cycle length must be at least 3, got {len}")));
    }
    if let Some(c) = find_cycle_of_length(g, len) {
        return Err(Error::ContainsCycle(c));
    }
    let mut rng = match policy {
        SaturationPolicy::Random { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
        SaturationPolicy::Lexicographic => None,
    };
    let mut out = g.clone();
    let mut trace = SaturationTrace {
        policy,
        cycle_len: len,
        passes: 0,
        added: Vec::new(),
        rejected: Vec::new(),
    };
    let n = g.order();
    let mut rejected = vec![false; n * n];
    loop {
        trace.passes += 1;
        let mut pending: Vec<(Vertex, Vertex)> = out.non_edges().filter(|&(u, v)| !rejected[u * n + v]).collect();
        if let Some(rng) = rng.as_mut() {
            pending.shuffle(rng);
        }
        let mut added = 0;
        for (u, v) in pending {
            match exists_path_of_length(&out, u, v, len - 1) {
                Some(witness) => {
                    rejected[u * n + v] = true;
                    trace.rejected.push(RejectedEdge { edge: (u, v), witness });
                }
                None => {
                    out.insert_edge(u, v);
                    trace.added.push((u, v));
                    added += 1;
                }
            }
        }
        if added == 0 {
            break;
        }
    }
    Ok((out, trace))
}

/// A random maximal `C_len`-free graph on `n` vertices: seeded saturation of the empty graph.
pub fn random_maximal(n: usize, len: usize, seed: u64) -> Result<Graph> {
    Ok(saturate(&Graph::empty(n), len, SaturationPolicy::Random { seed })?.0)
}
