//! The extension loop for non-extremal graphs: grow a caterpillar in
//! `G' = G − Z − V(P_abs)` (coverage targets also held back) until almost
//! everything is covered, then glue in the absorber and swallow the rest.
//!
//! Every iteration either glues a dense caterpillar found among the
//! uncovered vertices, replaces a block that many uncovered vertices see,
//! re-splices a pair of good blocks, or performs a local insertion.
//! Reservoir bridges join the pieces. The working caterpillar strictly
//! grows in every iteration.

use std::ops::Range;

use serde::Serialize;

use super::absorber::{bridge, Absorber};
use super::grow::{any_edge, extend_both, greedy_caterpillar, insert_interior, swap_insert};
use super::reservoir::{glue, Reservoir};
use super::trace::{Trace, TraceEvent};
use super::{dense_caterpillar_in, failed, precondition, SolverError};
use crate::caterpillar::{is_valid, link, Caterpillar};
use crate::graph::{Graph, VertexSet};
use crate::rational::{int, to_f64, Rational};

const GREEDY_STARTS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtendParams {
    /// Target block size `C`.
    pub block_size: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub delta: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub gamma: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub beta: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IterationCase {
    /// Uncovered vertices span a dense graph; a caterpillar among them is glued on.
    DenseLeftover,
    /// One block is seen by many uncovered vertices and is replaced.
    HeavyBlock,
    /// Two good blocks are re-spliced with caterpillars into the uncovered set.
    GoodBlockPair,
    /// Local move: end extension, interior or spike-exchange insertion.
    Insertion,
}

impl IterationCase {
    pub fn as_str(self) -> &'static str {
        match self {
            IterationCase::DenseLeftover => "dense_leftover",
            IterationCase::HeavyBlock => "heavy_block",
            IterationCase::GoodBlockPair => "good_block_pair",
            IterationCase::Insertion => "insertion",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IterationRecord {
    pub index: usize,
    pub case: IterationCase,
    /// Vertex count after the iteration.
    pub size: usize,
    /// Reservoir vertices consumed by bridges in this iteration.
    pub z_used: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtendReport {
    pub caterpillar: Caterpillar,
    pub iterations: Vec<IterationRecord>,
    pub z_used: usize,
    pub absorbed_targets: usize,
    /// Vertices covered by local moves after absorption.
    pub inserted_at_end: usize,
}

/// Consecutive blocks of a caterpillar's spine, each with at least
/// `⌈C/(p+1)⌉` spine vertices (the last takes any shorter remainder), and
/// no block starting or ending at a reservoir vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Range<usize>>,
    pub block_size: usize,
}

impl BlockDecomposition {
    pub fn new(cat: &Caterpillar, block_size: usize, z: &VertexSet) -> Self {
        let q = cat.q();
        let k = block_size.div_ceil(cat.p() + 1).max(1);
        let spine = cat.spine();
        let mut blocks = Vec::new();
        let mut i = 0;
        while i < q {
            let mut end = (i + k).min(q);
            while end < q && (z.contains(spine[end - 1]) || z.contains(spine[end])) {
                end += 1;
            }
            if q - end < k {
                end = q;
            }
            blocks.push(i..end);
            i = end;
        }
        BlockDecomposition { blocks, block_size }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Spine range covering blocks `range`.
    fn span(&self, range: Range<usize>) -> Range<usize> {
        if range.is_empty() {
            return 0..0;
        }
        self.blocks[range.start].start..self.blocks[range.end - 1].end
    }
}

/// Joins `parts` in order. Each junction is a direct edge when one exists,
/// else a reservoir bridge, else a two-vertex bridge through `spare`; a part
/// is reversed when only that orientation joins. Returns the result and the
/// number of reservoir vertices consumed.
fn glue_chain(
    g: &Graph,
    parts: &[Caterpillar],
    reservoir: &Reservoir,
    spare: &VertexSet,
) -> Result<(Caterpillar, usize), SolverError> {
    let n = g.n();
    let mut taken = VertexSet::new(n);
    for part in parts {
        taken.union_with(&part.vertex_set(n));
    }
    let mut acc = parts.first().ok_or_else(|| failed("nothing to glue"))?.clone();
    let mut consumed = 0;
    for next in &parts[1..] {
        let options = [next.clone(), next.reversed()];
        if let Some(joined) = options.iter().find_map(|c| link(g, &acc, &[], &[], Some(c)).ok()) {
            acc = joined;
            continue;
        }
        let used_z = reservoir.z.intersection(&taken);
        if let Some((joined, spent)) = options.iter().find_map(|c| glue(g, &acc, c, reservoir, &used_z).ok()) {
            for &z in &spent {
                taken.insert(z);
            }
            consumed += spent.len();
            acc = joined;
            continue;
        }
        let blocked = taken.union(&spare.complement());
        let joined = options.iter().find_map(|c| bridge(g, &acc, c, &blocked)).ok_or(SolverError::NoBridge)?;
        taken.union_with(&joined.vertex_set(n));
        acc = joined;
    }
    Ok((acc, consumed))
}

struct State<'a> {
    g: &'a Graph,
    p: usize,
    params: &'a ExtendParams,
    reservoir: &'a Reservoir,
    /// Vertices the loop must eventually cover: `V(G')`.
    target: VertexSet,
}

impl State<'_> {
    fn uncovered(&self, cat: &Caterpillar) -> VertexSet {
        self.target.difference(&cat.vertex_set(self.g.n()))
    }

    fn dense_leftover(&self, cat: &Caterpillar, w: &VertexSet) -> Result<(Caterpillar, usize), SolverError> {
        let size = int(w.len());
        if int(self.g.internal_edges(w)) < self.params.gamma * size * size {
            return Err(precondition("uncovered set is sparse"));
        }
        let q = dense_caterpillar_in(self.g, w, self.params.gamma, self.p)?;
        glue_chain(self.g, &[cat.clone(), q], self.reservoir, w)
    }

    fn heavy_block(&self, cat: &Caterpillar, w: &VertexSet) -> Result<(Caterpillar, usize), SolverError> {
        let g = self.g;
        let n = g.n();
        let z = &self.reservoir.z;
        let blocks = BlockDecomposition::new(cat, self.params.block_size, z);
        let half = Rational::new(1, 2);
        let delta = self.params.delta;
        for i in 0..blocks.len() {
            let b = cat.segment(blocks.blocks[i].clone()).vertex_set(n);
            let (bl, wl) = (int(b.len()), int(w.len()));
            if int(g.edges_between(&b, w)) < (half + delta) * bl * wl {
                continue;
            }
            let need = (half + delta / 2) * bl;
            let w_prime = VertexSet::from_iter_in(n, w.iter().filter(|&v| int(g.degree_into(v, &b)) >= need));
            let mut cand: Vec<usize> = b.difference(z).iter().collect();
            cand.sort_by_key(|&v| (std::cmp::Reverse(g.degree_into(v, &w_prime)), v));
            let d = crate::rational::ceil_usize(&need);
            if cand.len() < d || d == 0 {
                continue;
            }
            let x = VertexSet::from_slice(n, &cand[..d]);
            let shared = VertexSet::from_iter_in(n, w_prime.iter().filter(|&v| x.is_subset(g.neighbors(v))));
            let Some(q) = greedy_caterpillar(g, &x.union(&shared), self.p, GREEDY_STARTS, &any_edge) else {
                continue;
            };
            if q.vertex_count() <= b.len() {
                continue;
            }
            let parts: Vec<Caterpillar> = [blocks.span(0..i), usize::MAX..usize::MAX, blocks.span(i + 1..blocks.len())]
                .into_iter()
                .filter_map(|r| {
                    if r.start == usize::MAX {
                        Some(q.clone())
                    } else {
                        (!r.is_empty()).then(|| cat.segment(r))
                    }
                })
                .collect();
            if let Ok(hit) = glue_chain(g, &parts, self.reservoir, w) {
                return Ok(hit);
            }
        }
        Err(failed("no heavy block"))
    }

    fn good_block_pair(&self, cat: &Caterpillar, w: &VertexSet) -> Result<(Caterpillar, usize), SolverError> {
        let g = self.g;
        let n = g.n();
        let z = &self.reservoir.z;
        let blocks = BlockDecomposition::new(cat, self.params.block_size, z);
        let sd = to_f64(&self.params.delta).sqrt();
        let wl = w.len() as f64;
        struct Good {
            index: usize,
            set: VertexSet,
            c: VertexSet,
            d: VertexSet,
        }
        let good: Vec<Good> = (0..blocks.len())
            .filter_map(|i| {
                let set = cat.segment(blocks.blocks[i].clone()).vertex_set(n);
                if (g.edges_between(&set, w) as f64) < (0.5 - 2.0 * sd) * wl * set.len() as f64 {
                    return None;
                }
                let mut cand: Vec<usize> = set.difference(z).iter().collect();
                cand.sort_by_key(|&v| (std::cmp::Reverse(g.degree_into(v, w)), v));
                let k = (((0.5 - 3.0 * sd) * set.len() as f64).ceil() as usize).clamp(1, cand.len().max(1));
                let c = VertexSet::from_slice(n, &cand[..k.min(cand.len())]);
                let mut d = w.clone();
                for v in c.iter() {
                    d.intersect_with(g.neighbors(v));
                }
                (!c.is_empty() && !d.is_empty()).then_some(Good { index: i, set, c, d })
            })
            .collect();
        let c_size = self.params.block_size as f64;
        let beta = to_f64(&self.params.beta);
        for (a, gs) in good.iter().enumerate() {
            for gt in &good[a + 1..] {
                let mut u = gs.set.difference(&gs.c).union(&gt.set.difference(&gt.c));
                u.difference_with(z);
                let edges = g.internal_edges(&u);
                if u.is_empty() || (edges as f64) < beta * c_size * c_size / 2.0 {
                    continue;
                }
                let ul = u.len() as i64;
                let Ok(s) = dense_caterpillar_in(g, &u, Rational::new(edges as i64, ul * ul), self.p) else {
                    continue;
                };
                let Some(s1) = greedy_caterpillar(g, &gs.c.union(&gs.d), self.p, GREEDY_STARTS, &any_edge) else {
                    continue;
                };
                let d2 = gt.d.difference(&s1.vertex_set(n));
                let Some(s2) = greedy_caterpillar(g, &gt.c.union(&d2), self.p, GREEDY_STARTS, &any_edge) else {
                    continue;
                };
                let gain = (s.vertex_count() + s1.vertex_count() + s2.vertex_count()) as i64
                    - (gs.set.len() + gt.set.len()) as i64;
                if gain <= 0 {
                    continue;
                }
                let (si, ti) = (gs.index, gt.index);
                let mut parts = Vec::new();
                let before = blocks.span(0..si);
                if !before.is_empty() {
                    parts.push(cat.segment(before));
                }
                parts.push(s);
                let middle = blocks.span(si + 1..ti);
                if !middle.is_empty() {
                    parts.push(cat.segment(middle).reversed());
                }
                parts.push(s1);
                parts.push(s2);
                let after = blocks.span(ti + 1..blocks.len());
                if !after.is_empty() {
                    parts.push(cat.segment(after));
                }
                if let Ok(hit) = glue_chain(g, &parts, self.reservoir, w) {
                    return Ok(hit);
                }
            }
        }
        Err(failed("no good block pair"))
    }

    fn insertion(&self, cat: &Caterpillar, w: &VertexSet) -> Result<(Caterpillar, usize), SolverError> {
        let mut c = cat.clone();
        let mut free = w.clone();
        let moved = extend_both(self.g, &mut c, &mut free, &any_edge) > 0
            || insert_interior(self.g, &mut c, &mut free)
            || swap_insert(self.g, &mut c, &mut free);
        if moved {
            Ok((c, 0))
        } else {
            Err(failed("no local insertion"))
        }
    }
}

/// Runs the extension loop and the final absorption. Coverage targets of
/// `absorber` are kept out of the loop and absorbed at the end; the rest
/// (unused reservoir vertices and stragglers) is inserted by local moves.
pub fn extend_loop(
    g: &Graph,
    p: usize,
    absorber: &Absorber,
    reservoir: &Reservoir,
    params: &ExtendParams,
    trace: &mut Trace,
) -> Result<ExtendReport, SolverError> {
    let n = g.n();
    if p == 0 || absorber.p != p {
        return Err(precondition("p must be positive and match the absorber"));
    }
    let mut held = reservoir.z.union(&absorber.vertex_set(n));
    for t in &absorber.coverage {
        for &v in t {
            held.insert(v);
        }
    }
    let target = held.complement();
    let state = State { g, p, params, reservoir, target: target.clone() };
    let mut cat = greedy_caterpillar(g, &target, p, GREEDY_STARTS, &any_edge)
        .ok_or_else(|| failed("no p-star outside the reservoir and absorber"))?;
    // a remainder below p + 1 cannot be covered by any growth step
    let stop = (to_f64(&(params.delta * params.delta)) * n as f64 / 2.0).max(p as f64);
    let mut iterations = Vec::new();
    let mut z_used = 0;
    loop {
        let w = state.uncovered(&cat);
        if w.is_empty() {
            break;
        }
        let before = cat.vertex_count();
        let attempt = [
            IterationCase::DenseLeftover,
            IterationCase::HeavyBlock,
            IterationCase::GoodBlockPair,
            IterationCase::Insertion,
        ]
        .into_iter()
        .find_map(|case| {
            let r = match case {
                IterationCase::DenseLeftover => state.dense_leftover(&cat, &w),
                IterationCase::HeavyBlock => state.heavy_block(&cat, &w),
                IterationCase::GoodBlockPair => state.good_block_pair(&cat, &w),
                IterationCase::Insertion => state.insertion(&cat, &w),
            };
            r.ok().filter(|(c, _)| c.vertex_count() > before).map(|hit| (case, hit))
        });
        let Some((case, (next, spent))) = attempt else {
            if (w.len() as f64) <= stop {
                break;
            }
            return Err(SolverError::StalledProgress { size: before });
        };
        debug_assert!(is_valid(g, &next));
        cat = next;
        z_used += spent;
        let record = IterationRecord { index: iterations.len(), case, size: cat.vertex_count(), z_used: spent };
        trace.push(TraceEvent::Iteration {
            index: record.index,
            case: case.as_str().to_string(),
            size: record.size,
            z_used: spent,
        });
        iterations.push(record);
    }

    if let Some(pabs) = &absorber.p_abs {
        let mut spare = cat.vertex_set(n).union(&pabs.vertex_set(n)).complement();
        for t in &absorber.coverage {
            for &v in t {
                spare.remove(v);
            }
        }
        let (joined, spent) = glue_chain(g, &[cat, pabs.clone()], reservoir, &spare)?;
        z_used += spent;
        cat = joined;
    }
    let on = cat.vertex_set(n);
    let targets: Vec<Vec<usize>> =
        absorber.coverage.iter().filter(|t| t.iter().all(|&v| !on.contains(v))).cloned().collect();
    if !targets.is_empty() {
        cat = absorber.absorb_into(g, &cat, &targets)?;
    }
    let mut free = cat.vertex_set(n).complement();
    let start = free.len();
    while !free.is_empty() {
        let moved = extend_both(g, &mut cat, &mut free, &any_edge) > 0
            || insert_interior(g, &mut cat, &mut free)
            || swap_insert(g, &mut cat, &mut free);
        if !moved {
            return Err(SolverError::AbsorptionOverflow { leftover: free.len(), capacity: absorber.capacity });
        }
    }
    Ok(ExtendReport { caterpillar: cat, iterations, z_used, absorbed_targets: targets.len(), inserted_at_end: start })
}
