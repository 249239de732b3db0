//! Exact decision and counting of spanning p-caterpillars by backtracking
//! over spine sequences.
//!
//! The spine is grown one vertex at a time from every start vertex, in
//! ascending index order. Two sound prunes cut the tree:
//!
//! * *frontier reachability*: future spine vertices must be reachable from
//!   the current spine end through non-spine vertices, so there must be
//!   enough of them, and every vertex that can no longer join the spine
//!   (a *dead* vertex) has to become a spike of the current spine;
//! * *Hall feasibility*, every `hall_every` levels: dead vertices must be
//!   matchable into the spine with `p` slots per spine vertex, and every
//!   spine vertex must be able to collect `p` private leaves.
//!
//! At full spine length the spikes are assigned by a maximum b-matching.

use serde::Serialize;
use thiserror::Error;

use crate::caterpillar::Caterpillar;
use crate::graph::{Graph, VertexSet};
use crate::matching::{saturates_leaves, star_system};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("p must be at least 1")]
    ZeroP,
    #[error("graph has {n} vertices, above the enumeration ceiling {ceiling}")]
    CeilingExceeded { n: usize, ceiling: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutcomeKind {
    Found,
    ProvedAbsent,
    Exhausted,
}

/// Three-valued answer: a certificate, a proof of absence (exhausted search
/// space), or no claim at all because the node budget ran out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveOutcome {
    #[serde(rename = "outcome")]
    pub kind: OutcomeKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Caterpillar>,
    #[serde(rename = "nodes")]
    pub nodes_explored: u64,
}

impl SolveOutcome {
    pub fn found(c: Caterpillar, nodes: u64) -> Self {
        Self { kind: OutcomeKind::Found, certificate: Some(c), nodes_explored: nodes }
    }

    pub fn absent(nodes: u64) -> Self {
        Self { kind: OutcomeKind::ProvedAbsent, certificate: None, nodes_explored: nodes }
    }

    pub fn exhausted(nodes: u64) -> Self {
        Self { kind: OutcomeKind::Exhausted, certificate: None, nodes_explored: nodes }
    }

    pub fn is_found(&self) -> bool {
        self.kind == OutcomeKind::Found
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Search-tree node limit.
    pub budget: u64,
    /// Run the matching-based Hall check every this many spine levels.
    pub hall_every: usize,
    pub pruning: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { budget: 5_000_000, hall_every: 2, pruning: true }
    }
}

impl OracleConfig {
    pub fn with_budget(budget: u64) -> Self {
        Self { budget, ..Self::default() }
    }
}

pub fn exact_solve(g: &Graph, p: usize, budget: u64) -> Result<SolveOutcome, OracleError> {
    exact_solve_with(g, p, &OracleConfig::with_budget(budget))
}

pub fn exact_solve_with(g: &Graph, p: usize, cfg: &OracleConfig) -> Result<SolveOutcome, OracleError> {
    if p == 0 {
        return Err(OracleError::ZeroP);
    }
    let n = g.n();
    if n == 0 || !n.is_multiple_of(p + 1) {
        return Ok(SolveOutcome::absent(0));
    }
    let mut search = Search {
        g,
        p,
        q: n / (p + 1),
        cfg,
        spine: Vec::with_capacity(n / (p + 1)),
        on_spine: VertexSet::new(n),
        nodes: 0,
        exhausted: false,
        found: None,
    };
    search.dfs();
    let nodes = search.nodes;
    Ok(match (search.found, search.exhausted) {
        (Some(c), _) => SolveOutcome::found(c, nodes),
        (None, true) => SolveOutcome::exhausted(nodes),
        (None, false) => SolveOutcome::absent(nodes),
    })
}

struct Search<'a> {
    g: &'a Graph,
    p: usize,
    q: usize,
    cfg: &'a OracleConfig,
    spine: Vec<usize>,
    on_spine: VertexSet,
    nodes: u64,
    exhausted: bool,
    found: Option<Caterpillar>,
}

impl Search<'_> {
    /// Returns `true` when the search must stop (found or out of budget).
    fn dfs(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.cfg.budget {
            self.exhausted = true;
            return true;
        }
        let len = self.spine.len();
        if len == self.q {
            return self.assign_leaves();
        }
        if self.cfg.pruning && len > 0 && !self.feasible() {
            return false;
        }
        let candidates: Vec<usize> = match self.spine.last() {
            None => (0..self.g.n()).collect(),
            Some(&last) => self.g.neighbors(last).difference(&self.on_spine).iter().collect(),
        };
        for c in candidates {
            // spine reversal gives the same caterpillar
            if self.q >= 2 && len == self.q - 1 && c < self.spine[0] {
                continue;
            }
            if self.cfg.pruning && self.g.degree(c) < self.p + self.spine_neighbors_needed(len) {
                continue;
            }
            self.spine.push(c);
            self.on_spine.insert(c);
            let stop = self.dfs();
            self.on_spine.remove(c);
            self.spine.pop();
            if stop {
                return true;
            }
        }
        false
    }

    fn spine_neighbors_needed(&self, position: usize) -> usize {
        match self.q {
            1 => 0,
            _ if position == 0 || position == self.q - 1 => 1,
            _ => 2,
        }
    }

    fn feasible(&self) -> bool {
        let g = self.g;
        let len = self.spine.len();
        let remaining = self.q - len;
        let last = *self.spine.last().expect("non-empty spine");
        // vertices reachable from the spine end avoiding the spine
        let mut reach = VertexSet::new(g.n());
        let mut stack: Vec<usize> = g.neighbors(last).difference(&self.on_spine).iter().collect();
        for &v in &stack {
            reach.insert(v);
        }
        while let Some(v) = stack.pop() {
            for w in g.neighbors(v).iter() {
                if !self.on_spine.contains(w) && reach.insert(w) {
                    stack.push(w);
                }
            }
        }
        if reach.len() < remaining {
            return false;
        }
        let mut dead = self.on_spine.union(&reach).complement();
        if dead.len() > self.p * len {
            return false;
        }
        if dead.iter().any(|d| g.neighbors(d).is_disjoint(&self.on_spine)) {
            return false;
        }
        if len.is_multiple_of(self.cfg.hall_every.max(1)) {
            let dead_v: Vec<usize> = dead.iter().collect();
            if !saturates_leaves(g, &dead_v, &self.spine, self.p) {
                return false;
            }
            dead = self.on_spine.complement();
            if star_system(g, &self.spine, &vec![self.p; len], &dead).is_none() {
                return false;
            }
        }
        true
    }

    fn assign_leaves(&mut self) -> bool {
        let leaves = self.on_spine.complement();
        match star_system(self.g, &self.spine, &vec![self.p; self.q], &leaves) {
            Some(spikes) => {
                self.found = Some(Caterpillar::from_parts_unchecked(self.p, self.spine.clone(), spikes));
                true
            }
            None => false,
        }
    }
}

/// Default vertex ceiling for [`count_spanning`].
pub const COUNT_CEILING: usize = 12;

/// Number of distinct spanning p-caterpillars. Two caterpillars are the same
/// iff their spines agree up to reversal and their spike sets agree.
pub fn count_spanning(g: &Graph, p: usize) -> Result<u128, OracleError> {
    count_spanning_with_ceiling(g, p, COUNT_CEILING)
}

pub fn count_spanning_with_ceiling(g: &Graph, p: usize, ceiling: usize) -> Result<u128, OracleError> {
    if p == 0 {
        return Err(OracleError::ZeroP);
    }
    let n = g.n();
    if n > ceiling {
        return Err(OracleError::CeilingExceeded { n, ceiling });
    }
    if n == 0 || !n.is_multiple_of(p + 1) {
        return Ok(0);
    }
    let q = n / (p + 1);
    let mut total = 0u128;
    let mut spine = Vec::with_capacity(q);
    let mut on = VertexSet::new(n);
    for s in 0..n {
        spine.push(s);
        on.insert(s);
        count_spines(g, p, q, &mut spine, &mut on, &mut total);
        on.remove(s);
        spine.pop();
    }
    Ok(total)
}

fn count_spines(g: &Graph, p: usize, q: usize, spine: &mut Vec<usize>, on: &mut VertexSet, total: &mut u128) {
    if spine.len() == q {
        if q >= 2 && spine[0] > spine[q - 1] {
            return;
        }
        *total += count_assignments(g, p, spine, &on.complement());
        return;
    }
    let last = *spine.last().expect("non-empty");
    for c in g.neighbors(last).difference(on).iter().collect::<Vec<_>>() {
        spine.push(c);
        on.insert(c);
        count_spines(g, p, q, spine, on, total);
        on.remove(c);
        spine.pop();
    }
}

/// Counts maps leaf → adjacent spine vertex with exactly `p` leaves per spine
/// vertex, by dynamic programming over per-vertex fill levels.
fn count_assignments(g: &Graph, p: usize, spine: &[usize], leaves: &VertexSet) -> u128 {
    let q = spine.len();
    let base = p + 1;
    let states = base.pow(q as u32);
    let mut pow = vec![1usize; q];
    for i in 1..q {
        pow[i] = pow[i - 1] * base;
    }
    let mut dp = vec![0u128; states];
    dp[0] = 1;
    for leaf in leaves.iter() {
        let mut next = vec![0u128; states];
        for (state, &ways) in dp.iter().enumerate() {
            if ways == 0 {
                continue;
            }
            for (i, &s) in spine.iter().enumerate() {
                let fill = (state / pow[i]) % base;
                if fill < p && g.has_edge(s, leaf) {
                    next[state + pow[i]] += ways;
                }
            }
        }
        dp = next;
    }
    dp[states - 1]
}

/// Up to `cap` distinct u,v-caterpillars whose spine has exactly `length`
/// edges, starting at `u` and ending at `v`. Enumeration order: spine
/// sequences lexicographically, then spike sets as ascending combinations.
pub fn enumerate_uv_caterpillars(
    g: &Graph,
    u: usize,
    v: usize,
    length: usize,
    p: usize,
    cap: usize,
) -> Vec<Caterpillar> {
    let mut out = Vec::new();
    if p == 0 || cap == 0 || (u == v) != (length == 0) {
        return out;
    }
    let mut spine = vec![u];
    let mut on = VertexSet::new(g.n());
    on.insert(u);
    uv_spines(g, v, length, p, cap, &mut spine, &mut on, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn uv_spines(
    g: &Graph,
    v: usize,
    length: usize,
    p: usize,
    cap: usize,
    spine: &mut Vec<usize>,
    on: &mut VertexSet,
    out: &mut Vec<Caterpillar>,
) {
    if out.len() >= cap {
        return;
    }
    if spine.len() == length + 1 {
        if *spine.last().unwrap() == v {
            let mut used = on.clone();
            let mut spikes = Vec::with_capacity(spine.len());
            uv_spikes(g, p, cap, spine, 0, &mut used, &mut spikes, out);
        }
        return;
    }
    let last = *spine.last().unwrap();
    let steps_left = length + 1 - spine.len();
    let candidates: Vec<usize> = if steps_left == 1 {
        if g.has_edge(last, v) && !on.contains(v) {
            vec![v]
        } else {
            vec![]
        }
    } else {
        g.neighbors(last).difference(on).iter().filter(|&c| c != v).collect()
    };
    for c in candidates {
        spine.push(c);
        on.insert(c);
        uv_spines(g, v, length, p, cap, spine, on, out);
        on.remove(c);
        spine.pop();
    }
}

#[allow(clippy::too_many_arguments)]
fn uv_spikes(
    g: &Graph,
    p: usize,
    cap: usize,
    spine: &[usize],
    index: usize,
    used: &mut VertexSet,
    spikes: &mut Vec<Vec<usize>>,
    out: &mut Vec<Caterpillar>,
) {
    if out.len() >= cap {
        return;
    }
    if index == spine.len() {
        out.push(Caterpillar::from_parts_unchecked(p, spine.to_vec(), spikes.clone()));
        return;
    }
    let avail: Vec<usize> = g.neighbors(spine[index]).difference(used).iter().collect();
    let mut combo = Vec::with_capacity(p);
    choose(&avail, p, 0, &mut combo, &mut |set: &[usize]| {
        if out.len() >= cap {
            return;
        }
        for &x in set {
            used.insert(x);
        }
        spikes.push(set.to_vec());
        uv_spikes(g, p, cap, spine, index + 1, used, spikes, out);
        spikes.pop();
        for &x in set {
            used.remove(x);
        }
    });
}

fn choose(items: &[usize], k: usize, from: usize, combo: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if combo.len() == k {
        f(combo);
        return;
    }
    let need = k - combo.len();
    for i in from..items.len() {
        if items.len() - i < need {
            break;
        }
        combo.push(items[i]);
        choose(items, k, i + 1, combo, f);
        combo.pop();
    }
}
