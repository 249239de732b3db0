//! β-extremality: a near-half-sized sparse set, or a near-balanced sparse cut.
//!
//! Exhaustive mode is an exact branch-and-bound; local search only ever
//! reports witnesses it has re-checked, so its `NonExtremal` answer is a
//! heuristic one.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::AnalysisError;
use crate::graph::{Graph, VertexSet};
use crate::par::{find_first_range, Execution};
use crate::rational::{ceil_usize, floor_usize, int, Rational};
use crate::rng::stream;

/// Largest graph accepted by the exhaustive mode.
pub const EXHAUSTIVE_LIMIT: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    LocalSearch { seed: u64, restarts: usize },
}

impl SearchMode {
    pub fn local(seed: u64) -> Self {
        SearchMode::LocalSearch { seed, restarts: 16 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExtremalKind {
    NonExtremal,
    SparseSet { w: VertexSet },
    SparseCut { v1: VertexSet, v2: VertexSet },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalityVerdict {
    #[serde(flatten)]
    pub kind: ExtremalKind,
    #[serde(with = "crate::rational::serde_str")]
    pub beta: Rational,
}

impl ExtremalityVerdict {
    pub fn is_extremal(&self) -> bool {
        self.kind != ExtremalKind::NonExtremal
    }
}

/// β used by the dispatcher when none is given.
pub fn default_beta(n: usize) -> Rational {
    if n >= 200 {
        Rational::new(1, 100)
    } else {
        Rational::new(1, 20)
    }
}

#[derive(Debug, Clone, Copy)]
struct Bounds {
    min_size: usize,
    max_edges: usize,
}

impl Bounds {
    fn new(n: usize, beta: Rational) -> Self {
        let nn = int(n);
        Self { min_size: ceil_usize(&((Rational::new(1, 2) - beta) * nn)), max_edges: floor_usize(&(beta * nn * nn)) }
    }

    fn certifies_set(&self, g: &Graph, w: &VertexSet) -> bool {
        w.len() >= self.min_size && g.internal_edges(w) <= self.max_edges
    }

    fn certifies_cut(&self, g: &Graph, v1: &VertexSet, v2: &VertexSet) -> bool {
        v1.is_disjoint(v2)
            && v1.len() + v2.len() == g.n()
            && v1.len() >= self.min_size
            && v2.len() >= self.min_size
            && g.edges_between(v1, v2) <= self.max_edges
    }
}

pub fn is_beta_extremal(g: &Graph, beta: Rational, mode: SearchMode) -> Result<ExtremalityVerdict, AnalysisError> {
    is_beta_extremal_with(g, beta, mode, Execution::default())
}

pub fn is_beta_extremal_with(
    g: &Graph,
    beta: Rational,
    mode: SearchMode,
    exec: Execution,
) -> Result<ExtremalityVerdict, AnalysisError> {
    if beta <= Rational::from_integer(0) || beta >= Rational::new(1, 2) {
        return Err(AnalysisError::BetaOutOfRange);
    }
    let n = g.n();
    let verdict = |kind| ExtremalityVerdict { kind, beta };
    if n == 0 {
        return Ok(verdict(ExtremalKind::NonExtremal));
    }
    let b = Bounds::new(n, beta);
    let kind = match mode {
        SearchMode::Exhaustive => {
            if n > EXHAUSTIVE_LIMIT {
                return Err(AnalysisError::TooLarge { n, limit: EXHAUSTIVE_LIMIT });
            }
            if let Some(v1) = exact_sparse_cut(g, b, exec) {
                let v2 = v1.complement();
                ExtremalKind::SparseCut { v1, v2 }
            } else if let Some(w) = exact_sparse_set(g, b, exec) {
                ExtremalKind::SparseSet { w }
            } else {
                ExtremalKind::NonExtremal
            }
        }
        SearchMode::LocalSearch { seed, restarts } => {
            let restarts = restarts.max(1);
            if let Some(v1) = find_first_range(exec, restarts, |r| local_cut(g, b, seed, r)) {
                let v2 = v1.complement();
                ExtremalKind::SparseCut { v1, v2 }
            } else if let Some(w) = find_first_range(exec, restarts, |r| local_set(g, b, seed, r)) {
                ExtremalKind::SparseSet { w }
            } else {
                ExtremalKind::NonExtremal
            }
        }
    };
    debug_assert!(match &kind {
        ExtremalKind::SparseSet { w } => b.certifies_set(g, w),
        ExtremalKind::SparseCut { v1, v2 } => b.certifies_cut(g, v1, v2),
        ExtremalKind::NonExtremal => true,
    });
    Ok(verdict(kind))
}

// ---------------------------------------------------------------- exact

/// Lexicographically first `min_size`-subset with at most `max_edges`
/// internal edges. Supersets only add edges, so the smallest size suffices.
fn exact_sparse_set(g: &Graph, b: Bounds, exec: Execution) -> Option<VertexSet> {
    let n = g.n();
    let k = b.min_size;
    if k > n {
        return None;
    }
    if k == 0 {
        return Some(VertexSet::new(n));
    }
    find_first_range(exec, n - k + 1, |first| {
        let mut chosen = VertexSet::new(n);
        chosen.insert(first);
        set_dfs(g, b, &mut chosen, 0, first + 1).then_some(chosen)
    })
}

fn set_dfs(g: &Graph, b: Bounds, chosen: &mut VertexSet, edges: usize, next: usize) -> bool {
    let n = g.n();
    let need = b.min_size - chosen.len();
    if need == 0 {
        return true;
    }
    if n - next < need {
        return false;
    }
    let mut into: Vec<usize> = (next..n).map(|v| g.degree_into(v, chosen)).collect();
    let mut sorted = into.clone();
    sorted.select_nth_unstable(need - 1);
    let bound: usize = sorted[..need].iter().sum();
    if edges + bound > b.max_edges {
        return false;
    }
    for v in next..=n - need {
        let e = edges + into[v - next];
        if e > b.max_edges {
            continue;
        }
        chosen.insert(v);
        if set_dfs(g, b, chosen, e, v + 1) {
            return true;
        }
        chosen.remove(v);
    }
    into.clear();
    false
}

/// First bipartition (vertex 0 on the first side, earlier vertices preferring
/// the first side) with both sides at least `min_size` and a sparse cut.
fn exact_sparse_cut(g: &Graph, b: Bounds, exec: Execution) -> Option<VertexSet> {
    let n = g.n();
    if n < 2 * b.min_size || n < 2 {
        return None;
    }
    let prefix = (n - 1).min(6);
    find_first_range(exec, 1 << prefix, |mask| {
        let mut s1 = VertexSet::new(n);
        let mut s2 = VertexSet::new(n);
        s1.insert(0);
        let mut cut = 0;
        for i in 0..prefix {
            let v = i + 1;
            let second = mask >> (prefix - 1 - i) & 1 == 1;
            if second {
                cut += g.degree_into(v, &s1);
                s2.insert(v);
            } else {
                cut += g.degree_into(v, &s2);
                s1.insert(v);
            }
        }
        cut_dfs(g, b, &mut s1, &mut s2, cut, prefix + 1).then_some(s1)
    })
}

fn cut_dfs(g: &Graph, b: Bounds, s1: &mut VertexSet, s2: &mut VertexSet, cut: usize, next: usize) -> bool {
    let n = g.n();
    let rest = n - next;
    if s1.len() + rest < b.min_size || s2.len() + rest < b.min_size {
        return false;
    }
    let bound: usize = (next..n).map(|v| g.degree_into(v, s1).min(g.degree_into(v, s2))).sum();
    if cut + bound > b.max_edges {
        return false;
    }
    if next == n {
        return true;
    }
    let v = next;
    let to1 = g.degree_into(v, s1);
    let to2 = g.degree_into(v, s2);
    s1.insert(v);
    if cut_dfs(g, b, s1, s2, cut + to2, v + 1) {
        return true;
    }
    s1.remove(v);
    s2.insert(v);
    if cut_dfs(g, b, s1, s2, cut + to1, v + 1) {
        return true;
    }
    s2.remove(v);
    false
}

// ---------------------------------------------------------- local search

fn bfs_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut seen = VertexSet::new(n);
    let mut order = Vec::with_capacity(n);
    for s in 0..n {
        if !seen.insert(s) {
            continue;
        }
        let mut head = order.len();
        order.push(s);
        while head < order.len() {
            let v = order[head];
            head += 1;
            for w in g.neighbors(v).iter() {
                if seen.insert(w) {
                    order.push(w);
                }
            }
        }
    }
    order
}

/// Restart 0 splits a breadth-first order in half; later restarts split a
/// random permutation. Single moves and pair swaps then run to a local optimum.
fn local_cut(g: &Graph, b: Bounds, seed: u64, restart: usize) -> Option<VertexSet> {
    let n = g.n();
    if n < 2 * b.min_size || n < 2 {
        return None;
    }
    let order = if restart == 0 {
        bfs_order(g)
    } else {
        let mut rng = stream(seed, restart as u64);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        perm
    };
    let mut side = vec![false; n];
    for &v in &order[n / 2..] {
        side[v] = true;
    }
    let mut sets = [VertexSet::new(n), VertexSet::new(n)];
    for v in 0..n {
        sets[side[v] as usize].insert(v);
    }
    let mut cut = g.edges_between(&sets[0], &sets[1]);
    for _ in 0..10 * n {
        if cut <= b.max_edges {
            break;
        }
        let gain = |v: usize, sets: &[VertexSet; 2], side: &[bool]| -> i64 {
            let own = g.degree_into(v, &sets[side[v] as usize]) as i64;
            let other = g.degree_into(v, &sets[!side[v] as usize]) as i64;
            other - own
        };
        // best single move
        let mut best: Option<(i64, usize, Option<usize>)> = None;
        for v in 0..n {
            if sets[side[v] as usize].len() <= b.min_size {
                continue;
            }
            let gv = gain(v, &sets, &side);
            if gv > 0 && best.is_none_or(|(bg, _, _)| gv > bg) {
                best = Some((gv, v, None));
            }
        }
        if best.is_none() {
            let gains: Vec<i64> = (0..n).map(|v| gain(v, &sets, &side)).collect();
            for u in sets[0].iter() {
                for v in sets[1].iter() {
                    let gv = gains[u] + gains[v] - 2 * g.has_edge(u, v) as i64;
                    if gv > 0 && best.is_none_or(|(bg, _, _)| gv > bg) {
                        best = Some((gv, u, Some(v)));
                    }
                }
            }
        }
        let Some((gv, u, v)) = best else { break };
        for w in std::iter::once(u).chain(v) {
            sets[side[w] as usize].remove(w);
            side[w] = !side[w];
            sets[side[w] as usize].insert(w);
        }
        cut -= gv as usize;
    }
    debug_assert_eq!(cut, g.edges_between(&sets[0], &sets[1]));
    let [s0, s1] = sets;
    let (v1, v2) = if s0.contains(0) { (s0, s1) } else { (s1, s0) };
    b.certifies_cut(g, &v1, &v2).then_some(v1)
}

/// Greedy growth of a low-density set (restart 0 from a minimum-degree
/// vertex with index tie-breaks, later restarts randomized), then swaps.
fn local_set(g: &Graph, b: Bounds, seed: u64, restart: usize) -> Option<VertexSet> {
    let n = g.n();
    let k = b.min_size;
    if k > n {
        return None;
    }
    let mut rng = stream(seed ^ 0x5e7, restart as u64);
    let noise: Vec<u32> = (0..n).map(|_| if restart == 0 { 0 } else { rng.random() }).collect();
    let start = (0..n).min_by_key(|&v| (g.degree(v), noise[v], v))?;
    let mut w = VertexSet::new(n);
    if k > 0 {
        w.insert(start);
    }
    while w.len() < k {
        let v = (0..n)
            .filter(|&v| !w.contains(v))
            .min_by_key(|&v| (g.degree_into(v, &w), noise[v], v))
            .expect("enough vertices");
        w.insert(v);
    }
    let mut edges = g.internal_edges(&w);
    for _ in 0..10 * n {
        if edges <= b.max_edges {
            break;
        }
        let mut best: Option<(usize, usize, usize)> = None;
        for u in w.iter() {
            let du = g.degree_into(u, &w);
            for v in (0..n).filter(|&v| !w.contains(v)) {
                let dv = g.degree_into(v, &w) - g.has_edge(u, v) as usize;
                if dv < du && best.is_none_or(|(bg, _, _)| du - dv > bg) {
                    best = Some((du - dv, u, v));
                }
            }
        }
        let Some((gain, u, v)) = best else { break };
        w.remove(u);
        w.insert(v);
        edges -= gain;
    }
    b.certifies_set(g, &w).then_some(w)
}
