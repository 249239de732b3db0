//! Capacitated bipartite matching (b-matching) by augmenting paths, and the
//! star systems built on top of it.
//!
//! A *star system* gives every center a prescribed number of private leaves
//! drawn from a pool; Hall's condition for the replicated centers is exactly
//! what decides its existence.

use crate::graph::{Graph, VertexSet};

/// Result of a maximum b-matching: `leaf_center[l]` is the center matched to
/// leaf `l`, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BMatching {
    pub leaf_center: Vec<Option<usize>>,
    pub size: usize,
}

impl BMatching {
    /// Leaves grouped by center, ascending within each group.
    pub fn groups(&self, centers: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); centers];
        for (leaf, c) in self.leaf_center.iter().enumerate() {
            if let Some(c) = c {
                out[*c].push(leaf);
            }
        }
        out
    }
}

/// Maximum b-matching where leaf `l` may use any center in `adj[l]` and
/// center `c` accepts at most `capacity[c]` leaves.
///
/// Leaves are processed in index order and centers are tried in the order
/// given, so the result is deterministic.
pub fn max_b_matching(adj: &[Vec<usize>], capacity: &[usize]) -> BMatching {
    let centers = capacity.len();
    let mut leaf_center: Vec<Option<usize>> = vec![None; adj.len()];
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); centers];
    let mut size = 0;
    let mut visited = vec![0usize; centers];
    let mut stamp = 0usize;
    for leaf in 0..adj.len() {
        stamp += 1;
        if augment(leaf, adj, capacity, &mut leaf_center, &mut members, &mut visited, stamp) {
            size += 1;
        }
    }
    BMatching { leaf_center, size }
}

fn augment(
    leaf: usize,
    adj: &[Vec<usize>],
    capacity: &[usize],
    leaf_center: &mut [Option<usize>],
    members: &mut [Vec<usize>],
    visited: &mut [usize],
    stamp: usize,
) -> bool {
    for &c in &adj[leaf] {
        if capacity[c] == 0 || visited[c] == stamp {
            continue;
        }
        visited[c] = stamp;
        if members[c].len() < capacity[c] {
            members[c].push(leaf);
            leaf_center[leaf] = Some(c);
            return true;
        }
        for k in 0..members[c].len() {
            let other = members[c][k];
            if augment(other, adj, capacity, leaf_center, members, visited, stamp) {
                members[c][k] = leaf;
                leaf_center[leaf] = Some(c);
                return true;
            }
        }
    }
    false
}

/// Assigns `needs[i]` private leaves from `pool` to each `centers[i]`, every
/// leaf adjacent to its center. Returns the leaves per center, or `None` when
/// no such system exists.
pub fn star_system(g: &Graph, centers: &[usize], needs: &[usize], pool: &VertexSet) -> Option<Vec<Vec<usize>>> {
    debug_assert_eq!(centers.len(), needs.len());
    let total: usize = needs.iter().sum();
    if total == 0 {
        return Some(vec![Vec::new(); centers.len()]);
    }
    // only pool vertices adjacent to some needy center matter
    let mut reach = VertexSet::new(g.n());
    for (&c, &k) in centers.iter().zip(needs) {
        if k > 0 {
            reach.union_with(g.neighbors(c));
        }
    }
    reach.intersect_with(pool);
    for &c in centers {
        reach.remove(c);
    }
    let leaves: Vec<usize> = reach.iter().collect();
    if leaves.len() < total {
        return None;
    }
    let adj: Vec<Vec<usize>> = leaves
        .iter()
        .map(|&l| {
            centers.iter().enumerate().filter(|&(i, &c)| needs[i] > 0 && g.has_edge(c, l)).map(|(i, _)| i).collect()
        })
        .collect();
    let m = max_b_matching(&adj, needs);
    if m.size < total {
        return None;
    }
    Some(
        m.groups(centers.len())
            .into_iter()
            .map(|grp| {
                let mut g: Vec<usize> = grp.into_iter().map(|l| leaves[l]).collect();
                g.sort_unstable();
                g
            })
            .collect(),
    )
}

/// Whether every vertex of `leaves` can be attached to a distinct slot among
/// `centers`, each center offering `cap` slots.
pub fn saturates_leaves(g: &Graph, leaves: &[usize], centers: &[usize], cap: usize) -> bool {
    if leaves.len() > centers.len() * cap {
        return false;
    }
    let adj: Vec<Vec<usize>> = leaves
        .iter()
        .map(|&l| centers.iter().enumerate().filter(|&(_, &c)| g.has_edge(c, l)).map(|(i, _)| i).collect())
        .collect();
    if adj.iter().any(Vec::is_empty) {
        return false;
    }
    max_b_matching(&adj, &vec![cap; centers.len()]).size == leaves.len()
}

/// Maximum matching in the general graph `G[set]`, as vertex pairs.
pub fn maximum_matching_in(g: &Graph, set: &VertexSet) -> Vec<(usize, usize)> {
    use petgraph::graph::UnGraph;
    let verts: Vec<usize> = set.iter().collect();
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in verts.iter().enumerate() {
        index[v] = i;
    }
    let mut h: UnGraph<(), ()> = UnGraph::with_capacity(verts.len(), 0);
    for _ in &verts {
        h.add_node(());
    }
    for (i, &v) in verts.iter().enumerate() {
        for w in g.neighbors(v).intersection(set).iter() {
            let j = index[w];
            if i < j {
                h.add_edge((i as u32).into(), (j as u32).into(), ());
            }
        }
    }
    let m = petgraph::algo::matching::maximum_matching(&h);
    let mut pairs: Vec<(usize, usize)> = m
        .edges()
        .map(|(a, b)| {
            let (a, b) = (verts[a.index()], verts[b.index()]);
            (a.min(b), a.max(b))
        })
        .collect();
    pairs.sort_unstable();
    pairs
}
