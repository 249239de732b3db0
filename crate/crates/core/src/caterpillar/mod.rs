//! The p-caterpillar certificate, its validator, and the surgeries used by
//! the constructions: linking, reversal and absorption insertion.

mod absorb;

pub use absorb::{absorb_insert, absorb_insert_with, find_absorption, AbsorbError, AbsorptionSite};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CaterpillarError {
    #[error("p must be at least 1")]
    ZeroP,
    #[error("spine has {spine} vertices but {spikes} spike lists were given")]
    ShapeMismatch { spine: usize, spikes: usize },
    #[error("caterpillars with p = {0} and p = {1} cannot be joined")]
    PMismatch(usize, usize),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("vertex {0} used twice")]
    Collision(usize),
    #[error("bridge vertex {vertex} carries {found} spikes, expected {expected}")]
    SpikeCount { vertex: usize, expected: usize, found: usize },
}

/// First violated clause found by [`validate`].
#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    #[error("spine is empty")]
    EmptySpine,
    #[error("spine vertex {vertex} (index {index}) has {found} spikes, expected {expected}")]
    SpikeCount { index: usize, vertex: usize, expected: usize, found: usize },
    #[error("vertex {vertex} out of range for n = {n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("vertex {vertex} appears more than once")]
    Repeated { vertex: usize },
    #[error("spine vertices {from} and {to} (index {index}) are not adjacent")]
    SpineGap { index: usize, from: usize, to: usize },
    #[error("spike {spike} is not adjacent to its spine vertex {vertex}")]
    DetachedSpike { vertex: usize, spike: usize },
}

#[derive(Deserialize)]
struct RawCaterpillar {
    p: usize,
    spine: Vec<usize>,
    spikes: Vec<Vec<usize>>,
}

impl TryFrom<RawCaterpillar> for Caterpillar {
    type Error = CaterpillarError;

    fn try_from(raw: RawCaterpillar) -> Result<Self, Self::Error> {
        Caterpillar::new(raw.p, raw.spine, raw.spikes)
    }
}

/// A p-caterpillar: an ordered spine `u_1 … u_q` and, for each spine vertex,
/// its list of spikes (leaves).
///
/// Construction only enforces the graph-independent shape (`p ≥ 1`, one spike
/// list per spine vertex); everything else is checked by [`validate`] so that
/// malformed certificates can still be loaded and diagnosed.
///
/// Equality ignores the order inside spike lists.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "RawCaterpillar")]
pub struct Caterpillar {
    p: usize,
    spine: Vec<usize>,
    spikes: Vec<Vec<usize>>,
}

impl PartialEq for Caterpillar {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.spine == other.spine
            && self.spikes.len() == other.spikes.len()
            && self.spikes.iter().zip(&other.spikes).all(|(a, b)| {
                let (mut a, mut b) = (a.clone(), b.clone());
                a.sort_unstable();
                b.sort_unstable();
                a == b
            })
    }
}

impl Eq for Caterpillar {}

impl Caterpillar {
    pub fn new(p: usize, spine: Vec<usize>, spikes: Vec<Vec<usize>>) -> Result<Self, CaterpillarError> {
        if p == 0 {
            return Err(CaterpillarError::ZeroP);
        }
        if spine.len() != spikes.len() {
            return Err(CaterpillarError::ShapeMismatch { spine: spine.len(), spikes: spikes.len() });
        }
        Ok(Self { p, spine, spikes })
    }

    /// A single spine vertex with its `p` leaves.
    pub fn star(p: usize, center: usize, leaves: Vec<usize>) -> Result<Self, CaterpillarError> {
        Self::new(p, vec![center], vec![leaves])
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn spine(&self) -> &[usize] {
        &self.spine
    }

    pub fn spikes(&self) -> &[Vec<usize>] {
        &self.spikes
    }

    /// Number of spine vertices.
    pub fn q(&self) -> usize {
        self.spine.len()
    }

    /// Spine length in edges.
    pub fn length(&self) -> usize {
        self.spine.len().saturating_sub(1)
    }

    pub fn vertex_count(&self) -> usize {
        self.spine.len() + self.spikes.iter().map(Vec::len).sum::<usize>()
    }

    pub fn first(&self) -> usize {
        self.spine[0]
    }

    pub fn last(&self) -> usize {
        *self.spine.last().expect("validated caterpillars have a spine")
    }

    /// Spine vertices followed by spikes, in spine order.
    pub fn vertices(&self) -> Vec<usize> {
        let mut out = self.spine.clone();
        for s in &self.spikes {
            out.extend_from_slice(s);
        }
        out
    }

    pub fn vertex_set(&self, n: usize) -> VertexSet {
        VertexSet::from_iter_in(n, self.vertices())
    }

    pub fn reversed(&self) -> Caterpillar {
        let mut spine = self.spine.clone();
        let mut spikes = self.spikes.clone();
        spine.reverse();
        spikes.reverse();
        Caterpillar { p: self.p, spine, spikes }
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.spine.iter().position(|&s| s == v)
    }

    /// Spine index whose spike list contains `v`.
    pub fn spike_owner(&self, v: usize) -> Option<usize> {
        self.spikes.iter().position(|s| s.contains(&v))
    }

    /// Contiguous sub-caterpillar on spine indices `range`.
    pub fn segment(&self, range: std::ops::Range<usize>) -> Caterpillar {
        Caterpillar { p: self.p, spine: self.spine[range.clone()].to_vec(), spikes: self.spikes[range].to_vec() }
    }

    pub(crate) fn from_parts_unchecked(p: usize, spine: Vec<usize>, spikes: Vec<Vec<usize>>) -> Self {
        debug_assert!(p >= 1 && spine.len() == spikes.len());
        Caterpillar { p, spine, spikes }
    }

    pub(crate) fn spine_mut(&mut self) -> &mut Vec<usize> {
        &mut self.spine
    }

    pub(crate) fn spikes_mut(&mut self) -> &mut Vec<Vec<usize>> {
        &mut self.spikes
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("caterpillar serializes")
    }
}

/// Checks every caterpillar invariant against `g`, reporting the first
/// violation in this order: empty spine, spike counts, index range,
/// distinctness, spine adjacency, spike adjacency.
pub fn validate(g: &Graph, c: &Caterpillar) -> Result<(), Violation> {
    if c.spine.is_empty() {
        return Err(Violation::EmptySpine);
    }
    for (index, (v, s)) in c.spine.iter().zip(&c.spikes).enumerate() {
        if s.len() != c.p {
            return Err(Violation::SpikeCount { index, vertex: *v, expected: c.p, found: s.len() });
        }
    }
    let n = g.n();
    let mut seen = VertexSet::new(n);
    for v in c.vertices() {
        if v >= n {
            return Err(Violation::OutOfRange { vertex: v, n });
        }
        if !seen.insert(v) {
            return Err(Violation::Repeated { vertex: v });
        }
    }
    for (index, w) in c.spine.windows(2).enumerate() {
        if !g.has_edge(w[0], w[1]) {
            return Err(Violation::SpineGap { index, from: w[0], to: w[1] });
        }
    }
    for (v, s) in c.spine.iter().zip(&c.spikes) {
        if let Some(&spike) = s.iter().find(|&&x| !g.has_edge(*v, x)) {
            return Err(Violation::DetachedSpike { vertex: *v, spike });
        }
    }
    Ok(())
}

pub fn is_valid(g: &Graph, c: &Caterpillar) -> bool {
    validate(g, c).is_ok()
}

/// Whether a (validated) caterpillar covers every vertex of `g`.
pub fn is_spanning(g: &Graph, c: &Caterpillar) -> bool {
    c.vertex_count() == g.n()
}

/// Joins `c1`, a bridge of extra spine vertices with their spikes, and
/// optionally `c2`, into one caterpillar running from `c1.first()` to
/// `c2.last()` (or to the bridge end when `c2` is absent).
///
/// The inputs are assumed valid; only the junction adjacencies, the bridge
/// spikes and vertex-disjointness are checked.
pub fn link(
    g: &Graph,
    c1: &Caterpillar,
    bridge_spine: &[usize],
    bridge_spikes: &[Vec<usize>],
    c2: Option<&Caterpillar>,
) -> Result<Caterpillar, CaterpillarError> {
    let p = c1.p;
    if bridge_spine.len() != bridge_spikes.len() {
        return Err(CaterpillarError::ShapeMismatch { spine: bridge_spine.len(), spikes: bridge_spikes.len() });
    }
    if let Some(c2) = c2 {
        if c2.p != p {
            return Err(CaterpillarError::PMismatch(p, c2.p));
        }
    }
    let mut spine_seq: Vec<usize> = vec![c1.last()];
    spine_seq.extend_from_slice(bridge_spine);
    if let Some(c2) = c2 {
        spine_seq.push(c2.first());
    }
    for w in spine_seq.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(CaterpillarError::NotAdjacent(w[0], w[1]));
        }
    }
    for (&v, s) in bridge_spine.iter().zip(bridge_spikes) {
        if s.len() != p {
            return Err(CaterpillarError::SpikeCount { vertex: v, expected: p, found: s.len() });
        }
        if let Some(&x) = s.iter().find(|&&x| !g.has_edge(v, x)) {
            return Err(CaterpillarError::NotAdjacent(v, x));
        }
    }
    let mut seen = VertexSet::new(g.n());
    let bridge_vertices = bridge_spine.iter().chain(bridge_spikes.iter().flatten()).copied();
    let c2_vertices = c2.map(Caterpillar::vertices).unwrap_or_default();
    for v in c1.vertices().into_iter().chain(bridge_vertices).chain(c2_vertices) {
        if !seen.insert(v) {
            return Err(CaterpillarError::Collision(v));
        }
    }
    let mut spine = c1.spine.clone();
    let mut spikes = c1.spikes.clone();
    spine.extend_from_slice(bridge_spine);
    spikes.extend(bridge_spikes.iter().cloned());
    if let Some(c2) = c2 {
        spine.extend_from_slice(&c2.spine);
        spikes.extend(c2.spikes.iter().cloned());
    }
    Ok(Caterpillar { p, spine, spikes })
}
