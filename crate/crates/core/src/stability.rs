//! Constructive stability procedures for maximal `C_{2k+1}`-free graphs and the end-to-end
//! decomposition report.
//!
//! - [`peel_min_degree`] deletes low-degree vertices one at a time to reach a
//!   core of minimum degree at least `(1/2 − 1/(20k))·order`.
//! - [`classify_around_cycle`] and [`bipartition_via_c2k`] sort the vertices
//!   around a `2k`-cycle and assemble the two candidate colour classes.
//! - [`extract_complete_bipartite`] greedily removes neighbourhoods of
//!   peeled vertices until the remaining bipartite graph is complete.
//! - [`decompose`] chains these and compares every measured quantity with
//!   the corresponding bound.

use std::collections::VecDeque;

use serde::Serialize;

use crate::bounds::Rational;
use crate::cycles::{find_cycle_of_length, find_path_through_set, CycleWitness, PathWitness};
use crate::error::{Error, Result};
use crate::graph::{
    edge_within, edges_between, is_independent, is_induced_complete_bipartite, Bipartition, Graph, Vertex, VertexSet,
};

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeelStep {
    pub vertex: Vertex,
    pub degree: usize,
    /// Order of the graph just before this removal.
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeelTrace {
    pub k: u64,
    pub start_order: usize,
    pub start_edges: usize,
    pub removed: Vec<PeelStep>,
    /// Surviving vertices (original ids, ascending).
    pub survivor: Vec<Vertex>,
    pub survivor_edges: usize,
    pub survivor_min_degree: Option<usize>,
}

/// `deg < (1/2 − 1/(20k))·order`, decided in integers.
fn below_peel_threshold(degree: usize, order: usize, k: u64) -> bool {
    let k = k as u128;
    20 * k * (degree as u128) < (10 * k - 1) * (order as u128)
}

impl PeelTrace {
    pub fn removed_set(&self) -> VertexSet {
        let mut s = VertexSet::new(self.start_order);
        for step in &self.removed {
            s.insert(step.vertex);
        }
        s
    }

    pub fn survivor_set(&self) -> VertexSet {
        VertexSet::from_members(self.start_order, self.survivor.iter().copied()).expect("survivors are in range")
    }

    /// Every removal was below the threshold for its order, and the survivor meets it.
    pub fn threshold_rule_holds(&self) -> bool {
        let steps_ok = self
            .removed
            .iter()
            .enumerate()
            .all(|(i, s)| s.order == self.start_order - i && below_peel_threshold(s.degree, s.order, self.k));
        let order = self.survivor.len();
        let core_ok = self
            .survivor_min_degree
            .is_none_or(|d| !below_peel_threshold(d, order, self.k));
        steps_ok && core_ok
    }

    /// `e(G) ≤ e(G') + Σ_{i<|T|} (1/2 − 1/(20k))(n − i)`.
    pub fn accounting_holds(&self) -> bool {
        let k = self.k as i128;
        let ratio = Rational::new(10 * k - 1, 20 * k).expect("k ≥ 1");
        let budget = (0..self.removed.len()).fold(Rational::integer(0), |acc, i| {
            acc + ratio * Rational::integer((self.start_order - i) as i128)
        });
        Rational::integer(self.start_edges as i128) <= Rational::integer(self.survivor_edges as i128) + budget
    }

    /// Re-derives the trace against `g`: removed degrees, survivor edges and min degree.
    pub fn replays_on(&self, g: &Graph) -> bool {
        let mut alive = g.vertex_set();
        for step in &self.removed {
            if !alive.contains(step.vertex)
                || g.degree_in(step.vertex, &alive) != step.degree
                || alive.len() != step.order
            {
                return false;
            }
            alive.remove(step.vertex);
        }
        let sub = g.induced(&alive);
        alive.to_vec() == self.survivor
            && sub.graph.edge_count() == self.survivor_edges
            && sub.graph.min_degree() == self.survivor_min_degree
    }
}

/// Repeatedly deletes a vertex of degree `< (1/2 − 1/(20k))·order`, choosing the
/// smallest degree and then the smallest id, until none remains.
pub fn peel_min_degree(g: &Graph, k: u64) -> Result<(Graph, VertexSet, PeelTrace)> {
    if k < 2 {
        return Err(Error::Parameters(format!("k must be at least 2, got {k}")));
    }
    let n = g.order();
    let mut alive = g.vertex_set();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = Vec::new();
    loop {
        let order = alive.len();
        let pick = alive
            .iter()
            .filter(|&v| below_peel_threshold(degree[v], order, k))
            .min_by_key(|&v| (degree[v], v));
        let Some(v) = pick else { break };
        removed.push(PeelStep {
            vertex: v,
            degree: degree[v],
            order,
        });
        alive.remove(v);
        for w in g.neighbors(v) {
            if alive.contains(w) {
                degree[w] -= 1;
            }
        }
    }
    let sub = g.induced(&alive);
    let trace = PeelTrace {
        k,
        start_order: n,
        start_edges: g.edge_count(),
        survivor: sub.original.clone(),
        survivor_edges: sub.graph.edge_count(),
        survivor_min_degree: sub.graph.min_degree(),
        removed,
    };
    let t = trace.removed_set();
    Ok((sub.graph, t, trace))
}

/// The partition of `U = V ∖ V(C)` around a `2k`-cycle `C = v_1 … v_{2k}`.
/// "Odd" refers to the 1-based positions `v_1, v_3, …` (indices 0, 2, … of `cycle`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleClassification {
    pub cycle: CycleWitness,
    pub s_odd: VertexSet,
    pub s_even: VertexSet,
    pub s_prime: VertexSet,
    pub s_prime_odd: VertexSet,
    pub s_prime_even: VertexSet,
}

impl CycleClassification {
    pub fn odd_cycle_vertices(&self, n: usize) -> VertexSet {
        VertexSet::from_members(n, self.cycle.vertices.iter().step_by(2).copied()).expect("cycle in range")
    }

    pub fn even_cycle_vertices(&self, n: usize) -> VertexSet {
        VertexSet::from_members(n, self.cycle.vertices.iter().skip(1).step_by(2).copied()).expect("cycle in range")
    }
}

/// Builds the `C_{2k+1}` `u, v_{i+1}, …, v_i` closed by a vertex `u` adjacent to
/// cyclically consecutive `v_i`, `v_{i+1}`.
fn detour_cycle(g: &Graph, cycle: &[Vertex], u: Vertex) -> Option<CycleWitness> {
    let m = cycle.len();
    (0..m).find_map(|i| {
        let (a, b) = (cycle[i], cycle[(i + 1) % m]);
        if g.has_edge(u, a) && g.has_edge(u, b) {
            let mut vertices = vec![u];
            vertices.extend((0..m).map(|j| cycle[(i + 1 + j) % m]));
            Some(CycleWitness { vertices })
        } else {
            None
        }
    })
}

/// Classifies every vertex off the cycle `c` (which must have length `2k`).
pub fn classify_around_cycle(g: &Graph, c: &CycleWitness, k: u64) -> Result<CycleClassification> {
    let len = 2 * k as usize;
    if c.len() != len {
        return Err(Error::Precondition(format!(
            "cycle has length {}, expected {len}",
            c.len()
        )));
    }
    c.validate(g)?;
    let n = g.order();
    let on_cycle = VertexSet::from_members(n, c.vertices.iter().copied())?;
    let odd = VertexSet::from_members(n, c.vertices.iter().step_by(2).copied())?;
    let even = on_cycle.difference(&odd);

    let mut s_odd = VertexSet::new(n);
    let mut s_even = VertexSet::new(n);
    let mut s_prime = VertexSet::new(n);
    for u in (0..n).filter(|&u| !on_cycle.contains(u)) {
        if g.degree_in(u, &on_cycle) > k as usize {
            let witness = detour_cycle(g, &c.vertices, u).expect("more than k of 2k positions forces two consecutive");
            return Err(Error::ContainsCycle(witness));
        }
        if g.degree_in(u, &odd) == odd.len() {
            s_odd.insert(u);
        } else if g.degree_in(u, &even) == even.len() {
            s_even.insert(u);
        } else {
            s_prime.insert(u);
        }
    }
    let mut s_prime_odd = VertexSet::new(n);
    for u in s_prime.iter() {
        if g.degree_in(u, &s_odd) == 0 {
            s_prime_odd.insert(u);
        }
    }
    let s_prime_even = s_prime.difference(&s_prime_odd);
    Ok(CycleClassification {
        cycle: c.clone(),
        s_odd,
        s_even,
        s_prime,
        s_prime_odd,
        s_prime_even,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CycleRuleFailure {
    NoEvenCycle,
    /// Classification met a vertex with more than `k` cycle neighbours.
    OddCycle {
        cycle: CycleWitness,
    },
    /// An assembled side is not independent.
    ViolatingEdge {
        edge: (Vertex, Vertex),
        classification: Box<CycleClassification>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CycleRuleOutcome {
    Bipartite {
        sides: Bipartition,
        classification: Box<CycleClassification>,
    },
    Failed(CycleRuleFailure),
}

/// Colours `g` from a `2k`-cycle: side A = `S_even ∪ S'_even ∪ {v_1, v_3, …}`,
/// side B = `S_odd ∪ S'_odd ∪ {v_2, v_4, …}`; both sides are then checked.
pub fn bipartition_via_c2k(g: &Graph, k: u64) -> Result<CycleRuleOutcome> {
    let n = g.order();
    let Some(cycle) = find_cycle_of_length(g, 2 * k as usize) else {
        return Ok(CycleRuleOutcome::Failed(CycleRuleFailure::NoEvenCycle));
    };
    let cls = match classify_around_cycle(g, &cycle, k) {
        Ok(c) => c,
        Err(Error::ContainsCycle(cycle)) => return Ok(CycleRuleOutcome::Failed(CycleRuleFailure::OddCycle { cycle })),
        Err(e) => return Err(e),
    };
    let a = cls.s_even.union(&cls.s_prime_even).union(&cls.odd_cycle_vertices(n));
    let b = cls.s_odd.union(&cls.s_prime_odd).union(&cls.even_cycle_vertices(n));
    for side in [&a, &b] {
        if let Some(edge) = edge_within(g, side) {
            return Ok(CycleRuleOutcome::Failed(CycleRuleFailure::ViolatingEdge {
                edge,
                classification: Box::new(cls),
            }));
        }
    }
    Ok(CycleRuleOutcome::Bipartite {
        sides: Bipartition::new(a, b)?,
        classification: Box::new(cls),
    })
}

/// Component-wise BFS 2-colouring. Components are visited by smallest vertex
/// and each root goes to the left side. On failure returns an odd cycle.
pub fn bipartition_bfs(g: &Graph) -> std::result::Result<Bipartition, CycleWitness> {
    let n = g.order();
    let mut color: Vec<Option<bool>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(false);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].expect("queued vertices are coloured");
            for w in g.neighbors(u) {
                match color[w] {
                    None => {
                        color[w] = Some(!cu);
                        parent[w] = u;
                        depth[w] = depth[u] + 1;
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => return Err(odd_cycle_from_tree(u, w, &parent, &depth)),
                    Some(_) => {}
                }
            }
        }
    }
    let left = (0..n).filter(|&v| color[v] == Some(false));
    let right = (0..n).filter(|&v| color[v] == Some(true));
    Ok(Bipartition::from_members(n, left, right).expect("colour classes are disjoint"))
}

fn odd_cycle_from_tree(u: Vertex, w: Vertex, parent: &[Vertex], depth: &[usize]) -> CycleWitness {
    let (mut a, mut b) = (u, w);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    CycleWitness { vertices: left }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeletedSide {
    X,
    Y,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtractionStep {
    pub non_edge: (Vertex, Vertex),
    /// `x_i, x'_i, u_1, …, u_{2k−3}, y'_i, y_i`.
    pub path: PathWitness,
    pub x_block: VertexSet,
    pub y_block: VertexSet,
    pub deleted_side: DeletedSide,
    pub deleted: VertexSet,
    pub edges_between_blocks: usize,
    pub non_edges_between_blocks: usize,
    /// `|S_i|² / (16k²)`.
    pub non_edge_floor: f64,
    /// Every `X_i–Y_i` edge meets `{u_1, …, u_{2k−3}}`.
    pub edges_meet_path_interior: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtractionTrace {
    pub k: u64,
    pub steps: Vec<ExtractionStep>,
    /// `2|T|`, the step budget.
    pub step_budget: usize,
}

impl ExtractionTrace {
    pub fn deleted_total(&self) -> usize {
        self.steps.iter().map(|s| s.deleted.len()).sum()
    }

    pub fn deleted_square_sum(&self) -> usize {
        self.steps.iter().map(|s| s.deleted.len().pow(2)).sum()
    }

    /// Steps whose block non-edge count reaches `|S_i|²/(16k²)`.
    pub fn steps_meeting_non_edge_floor(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| 16 * (self.k as usize).pow(2) * s.non_edges_between_blocks >= s.deleted.len().pow(2))
            .count()
    }

    pub fn structural_fact_holds(&self) -> bool {
        self.steps.iter().all(|s| s.edges_meet_path_interior)
    }

    pub fn deleted_set(&self, n: usize) -> VertexSet {
        let mut s = VertexSet::new(n);
        for step in &self.steps {
            s.union_with(&step.deleted);
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StuckReport {
    /// The non-edge for which no path through `T` exists.
    pub non_edge: (Vertex, Vertex),
    pub trace: ExtractionTrace,
    /// Sides at the moment the greedy stopped.
    pub remaining: Bipartition,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Extraction {
    Complete { sides: Bipartition, trace: ExtractionTrace },
    Stuck(StuckReport),
}

/// Greedy extraction of an induced complete bipartite subgraph from the
/// bipartite graph on `x ∪ y`, deleting neighbourhoods of vertices of `t`.
///
/// Checks that `t`, `x`, `y` partition the vertices, that `x` and `y` are
/// independent, and that `g` is `C_{2k+1}`-free.
pub fn extract_complete_bipartite(
    g: &Graph,
    t: &VertexSet,
    x: &VertexSet,
    y: &VertexSet,
    k: u64,
) -> Result<Extraction> {
    let n = g.order();
    for (a, b) in [(t, x), (t, y), (x, y)] {
        if let Some(v) = a.first_common(b) {
            return Err(Error::Overlap(v));
        }
    }
    if let Some(v) = (0..n).find(|&v| !t.contains(v) && !x.contains(v) && !y.contains(v)) {
        return Err(Error::Uncovered(v));
    }
    if !is_independent(g, x) || !is_independent(g, y) {
        return Err(Error::Precondition("x and y must both be independent".into()));
    }
    if let Some(c) = find_cycle_of_length(g, 2 * k as usize + 1) {
        return Err(Error::ContainsCycle(c));
    }
    Ok(extract_unchecked(g, t, x, y, k))
}

fn extract_unchecked(g: &Graph, t: &VertexSet, x: &VertexSet, y: &VertexSet, k: u64) -> Extraction {
    let len = 2 * k as usize;
    let mut cur_x = x.clone();
    let mut cur_y = y.clone();
    let mut trace = ExtractionTrace {
        k,
        steps: Vec::new(),
        step_budget: 2 * t.len(),
    };
    loop {
        let non_edge = cur_x
            .iter()
            .find_map(|a| cur_y.iter().find(|&b| !g.has_edge(a, b)).map(|b| (a, b)));
        let Some((xi, yi)) = non_edge else {
            let sides = Bipartition::new(cur_x, cur_y).expect("sides stay disjoint");
            return Extraction::Complete { sides, trace };
        };
        let Some(path) = find_path_through_set(g, xi, yi, len, t) else {
            let remaining = Bipartition::new(cur_x, cur_y).expect("sides stay disjoint");
            return Extraction::Stuck(StuckReport {
                non_edge: (xi, yi),
                trace,
                remaining,
            });
        };
        let m = path.vertices.len();
        let (x_anchor, y_anchor) = (path.vertices[1], path.vertices[m - 2]);
        let x_block = g.neighbor_set(x_anchor).intersection(&cur_x);
        let y_block = g.neighbor_set(y_anchor).intersection(&cur_y);
        let edges = edges_between(g, &x_block, &y_block).expect("blocks lie on opposite sides");
        let interior = VertexSet::from_members(g.order(), path.inner().iter().copied()).expect("path in range");
        let meets = x_block
            .iter()
            .all(|a| interior.contains(a) || g.row(a).intersection(y_block.as_bits()).all(|b| interior.contains(b)));
        let (deleted_side, deleted) = if x_block.len() <= y_block.len() {
            (DeletedSide::X, x_block.clone())
        } else {
            (DeletedSide::Y, y_block.clone())
        };
        match deleted_side {
            DeletedSide::X => cur_x.difference_with(&deleted),
            DeletedSide::Y => cur_y.difference_with(&deleted),
        }
        trace.steps.push(ExtractionStep {
            non_edge: (xi, yi),
            non_edges_between_blocks: x_block.len() * y_block.len() - edges,
            non_edge_floor: (deleted.len() as f64).powi(2) / (16.0 * (k as f64).powi(2)),
            edges_between_blocks: edges,
            edges_meet_path_interior: meets,
            path,
            x_block,
            y_block,
            deleted_side,
            deleted,
        });
    }
}

/// A measured quantity next to the bound it is compared with.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    pub measured: f64,
    pub bound: f64,
    /// `"<="` or `">="`: how `measured` should relate to `bound`.
    pub relation: &'static str,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EpsilonReadings {
    /// `n²/4 − e(G)`, clamped at zero.
    pub deficit: Rational,
    /// `deficit / n^{3/2}`, used by the final-order bound.
    pub per_n_three_halves: f64,
    /// `deficit / n²`, used by the peeling and extraction bounds.
    pub per_n_squared: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CycleRuleDiagnostic {
    Bipartite { agrees_with_bfs: bool },
    NoEvenCycle,
    OddCycle,
    ViolatingEdge { edge: (Vertex, Vertex) },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    /// A verified induced complete bipartite subgraph was extracted.
    Verified,
    /// Extraction met a non-edge with no path through the peeled set.
    Stuck { non_edge: (Vertex, Vertex) },
    /// The peeled core is not bipartite; the pipeline stopped.
    SurvivorNotBipartite { odd_cycle: CycleWitness },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StabilityReport {
    pub report_version: u32,
    pub n: usize,
    pub k: u64,
    pub edges: usize,
    pub epsilon: EpsilonReadings,
    pub removed: usize,
    pub survivor_order: usize,
    pub survivor_edges: usize,
    pub survivor_min_degree: Option<usize>,
    pub peel_threshold_rule: bool,
    pub peel_accounting: bool,
    pub bipartition_source: &'static str,
    pub cycle_rule_diagnostic: CycleRuleDiagnostic,
    pub extraction_steps: usize,
    pub deleted_total: usize,
    pub deleted_square_sum: usize,
    pub steps_meeting_non_edge_floor: usize,
    pub structural_fact: bool,
    pub partition_accounting: bool,
    pub final_left: usize,
    pub final_right: usize,
    pub final_order: usize,
    pub final_verified: bool,
    pub outcome: Outcome,
    pub bounds: Vec<BoundCheck>,
    pub peel_trace: PeelTrace,
    pub extraction_trace: Option<ExtractionTrace>,
    pub final_sides: Option<Bipartition>,
}

impl StabilityReport {
    pub fn is_verified(&self) -> bool {
        matches!(self.outcome, Outcome::Verified) && self.final_verified
    }

    /// One CSV row; the header is [`StabilityReport::CSV_HEADER`].
    pub fn csv_row(&self) -> Vec<String> {
        let outcome = match &self.outcome {
            Outcome::Verified => "verified",
            Outcome::Stuck { .. } => "stuck",
            Outcome::SurvivorNotBipartite { .. } => "survivor_not_bipartite",
        };
        vec![
            self.n.to_string(),
            self.k.to_string(),
            self.edges.to_string(),
            self.epsilon.deficit.to_string(),
            format!("{:.6}", self.epsilon.per_n_three_halves),
            format!("{:.8}", self.epsilon.per_n_squared),
            self.removed.to_string(),
            self.survivor_order.to_string(),
            self.extraction_steps.to_string(),
            self.deleted_total.to_string(),
            self.final_order.to_string(),
            outcome.to_string(),
            self.bounds.iter().filter(|b| b.holds).count().to_string(),
            self.bounds.len().to_string(),
        ]
    }

    pub const CSV_HEADER: [&'static str; 14] = [
        "n",
        "k",
        "edges",
        "deficit",
        "eps_n32",
        "eps_n2",
        "removed",
        "survivor_order",
        "steps",
        "deleted_total",
        "final_order",
        "outcome",
        "bounds_held",
        "bounds_total",
    ];
}

fn agrees(a: &Bipartition, b: &Bipartition) -> bool {
    a == b || *a == b.swapped()
}

fn cycle_rule_diagnostic(sub: &Graph, bfs: Option<&Bipartition>, k: u64) -> Result<CycleRuleDiagnostic> {
    Ok(match bipartition_via_c2k(sub, k)? {
        CycleRuleOutcome::Bipartite { sides, .. } => CycleRuleDiagnostic::Bipartite {
            agrees_with_bfs: bfs.is_some_and(|b| agrees(&sides, b)),
        },
        CycleRuleOutcome::Failed(CycleRuleFailure::NoEvenCycle) => CycleRuleDiagnostic::NoEvenCycle,
        CycleRuleOutcome::Failed(CycleRuleFailure::OddCycle { .. }) => CycleRuleDiagnostic::OddCycle,
        CycleRuleOutcome::Failed(CycleRuleFailure::ViolatingEdge { edge, .. }) => {
            CycleRuleDiagnostic::ViolatingEdge { edge }
        }
    })
}

/// Full pipeline: peel, 2-colour the core, extract, and compare with bounds.
pub fn decompose(g: &Graph, k: u64) -> Result<StabilityReport> {
    if k < 2 {
        return Err(Error::Parameters(format!("k must be at least 2, got {k}")));
    }
    if let Some(c) = find_cycle_of_length(g, 2 * k as usize + 1) {
        return Err(Error::ContainsCycle(c));
    }
    let n = g.order();
    let e = g.edge_count();
    let quarter = Rational::new((n * n) as i128, 4)?;
    let raw_deficit = quarter - Rational::integer(e as i128);
    let deficit = if raw_deficit.is_positive() {
        raw_deficit
    } else {
        Rational::integer(0)
    };
    let nf = n.max(1) as f64;
    let epsilon = EpsilonReadings {
        deficit,
        per_n_three_halves: deficit.to_f64() / nf.powf(1.5),
        per_n_squared: deficit.to_f64() / (nf * nf),
    };

    let (core, removed, peel) = peel_min_degree(g, k)?;
    let survivor = peel.survivor_set();
    let sub = g.induced(&survivor);
    debug_assert_eq!(sub.graph, core);

    let bfs = bipartition_bfs(&core);
    let rule = cycle_rule_diagnostic(&core, bfs.as_ref().ok(), k)?;

    let mut report = StabilityReport {
        report_version: REPORT_VERSION,
        n,
        k,
        edges: e,
        epsilon,
        removed: removed.len(),
        survivor_order: survivor.len(),
        survivor_edges: peel.survivor_edges,
        survivor_min_degree: peel.survivor_min_degree,
        peel_threshold_rule: peel.threshold_rule_holds(),
        peel_accounting: peel.accounting_holds(),
        bipartition_source: "bfs",
        cycle_rule_diagnostic: rule,
        extraction_steps: 0,
        deleted_total: 0,
        deleted_square_sum: 0,
        steps_meeting_non_edge_floor: 0,
        structural_fact: true,
        partition_accounting: true,
        final_left: 0,
        final_right: 0,
        final_order: 0,
        final_verified: false,
        outcome: Outcome::Verified,
        bounds: Vec::new(),
        peel_trace: peel,
        extraction_trace: None,
        final_sides: None,
    };

    let local_sides = match bfs {
        Ok(b) => b,
        Err(cycle) => {
            let odd_cycle = CycleWitness {
                vertices: cycle.vertices.iter().map(|&v| sub.to_original(v)).collect(),
            };
            report.outcome = Outcome::SurvivorNotBipartite { odd_cycle };
            report.bounds = bound_checks(&report, None);
            return Ok(report);
        }
    };
    let x = sub.lift(&local_sides.left, n);
    let y = sub.lift(&local_sides.right, n);

    let (trace, sides) = match extract_unchecked(g, &removed, &x, &y, k) {
        Extraction::Complete { sides, trace } => (trace, sides),
        Extraction::Stuck(stuck) => {
            report.outcome = Outcome::Stuck {
                non_edge: stuck.non_edge,
            };
            (stuck.trace, stuck.remaining)
        }
    };
    report.extraction_steps = trace.steps.len();
    report.deleted_total = trace.deleted_total();
    report.deleted_square_sum = trace.deleted_square_sum();
    report.steps_meeting_non_edge_floor = trace.steps_meeting_non_edge_floor();
    report.structural_fact = trace.structural_fact_holds();
    report.final_left = sides.left.len();
    report.final_right = sides.right.len();
    report.final_order = sides.order();
    report.partition_accounting = report.deleted_total + report.final_order + report.removed == n;
    report.final_verified = matches!(report.outcome, Outcome::Verified) && is_induced_complete_bipartite(g, &sides);
    report.bounds = bound_checks(&report, Some(&trace));
    report.extraction_trace = Some(trace);
    report.final_sides = Some(sides);
    Ok(report)
}

fn check(name: &'static str, measured: f64, bound: f64, relation: &'static str, holds: bool) -> BoundCheck {
    BoundCheck {
        name,
        measured,
        bound,
        relation,
        holds,
    }
}

fn bound_checks(r: &StabilityReport, trace: Option<&ExtractionTrace>) -> Vec<BoundCheck> {
    let n = r.n as i128;
    let k = r.k as i128;
    let d = r.epsilon.deficit;
    let int = |v: usize| Rational::integer(v as i128);
    let mut out = Vec::new();

    // |T| ≤ 50k·ε·n with e = n²/4 − εn², i.e. 50k·deficit/n.
    let t_bound = Rational::integer(50 * k) * d / Rational::integer(n.max(1));
    out.push(check(
        "removed_le_50k_eps_n",
        r.removed as f64,
        t_bound.to_f64(),
        "<=",
        int(r.removed) <= t_bound,
    ));
    // The same bound with ε = deficit/n^{3/2}: |T| ≤ 50k·deficit/√n ⇔ |T|²·n ≤ (50k·deficit)².
    let lit = Rational::integer(50 * k) * d;
    let nf = r.n.max(1) as f64;
    out.push(check(
        "removed_le_50k_eps32_n",
        r.removed as f64,
        lit.to_f64() / nf.sqrt(),
        "<=",
        Rational::integer((r.removed * r.removed) as i128 * n) <= lit * lit,
    ));

    // e(G − T) ≥ n²/4 − 25k·ε·n² = n²/4 − 25k·deficit.
    let e_bound = Rational::new(n * n, 4).unwrap() - Rational::integer(25 * k) * d;
    out.push(check(
        "survivor_edges_ge_quarter_n2_minus_25k_eps_n2",
        r.survivor_edges as f64,
        e_bound.to_f64(),
        ">=",
        int(r.survivor_edges) >= e_bound,
    ));

    // δ(G − T) ≥ (1/2 − 1/(16k))·n.
    let deg_bound = Rational::new(8 * k - 1, 16 * k).unwrap() * Rational::integer(n);
    let min_deg = r.survivor_min_degree.unwrap_or(0);
    out.push(check(
        "survivor_min_degree_ge_half_minus_1_16k_n",
        min_deg as f64,
        deg_bound.to_f64(),
        ">=",
        r.survivor_order > 0 && int(min_deg) >= deg_bound,
    ));

    let Some(trace) = trace else { return out };
    out.push(check(
        "steps_le_2_removed",
        trace.steps.len() as f64,
        trace.step_budget as f64,
        "<=",
        trace.steps.len() <= trace.step_budget,
    ));

    // Σ|S_i|² ≤ 16k²·25k·ε·n² = 400k³·deficit.
    let sq_bound = Rational::integer(400 * k * k * k) * d;
    out.push(check(
        "deleted_square_sum_le_400k3_eps_n2",
        r.deleted_square_sum as f64,
        sq_bound.to_f64(),
        "<=",
        int(r.deleted_square_sum) <= sq_bound,
    ));
    // (Σ|S_i|)² ≤ 400k³·ε·n²·l.
    let cs_bound = sq_bound * int(trace.steps.len());
    out.push(check(
        "deleted_total_sq_le_400k3_eps_n2_steps",
        (r.deleted_total as f64).powi(2),
        cs_bound.to_f64(),
        "<=",
        int(r.deleted_total * r.deleted_total) <= cs_bound,
    ));

    // Final order against (1 − 250k²ε)n with ε = deficit/n^{3/2}:
    // final ≥ n − 250k²·deficit/√n  ⇔  (n − final)²·n ≤ (250k²·deficit)² when final < n.
    let lost = n - r.final_order as i128;
    let budget = Rational::integer(250 * k * k) * d;
    let literal = lost <= 0 || Rational::integer(lost * lost * n) <= budget * budget;
    out.push(check(
        "final_ge_1_minus_250k2_eps_n",
        r.final_order as f64,
        nf - budget.to_f64() / nf.sqrt(),
        ">=",
        literal,
    ));
    // The deletion budget read as 250k²·ε·n^{3/2} = 250k²·deficit.
    let final_bound = Rational::integer(n) - budget;
    out.push(check(
        "final_ge_n_minus_250k2_eps_n32",
        r.final_order as f64,
        final_bound.to_f64(),
        ">=",
        int(r.final_order) >= final_bound,
    ));
    out
}
