use super::{precondition, SolverError};
use crate::caterpillar::Caterpillar;
use crate::graph::{Graph, VertexSet};
use crate::matching::star_system;

/// First u,v-caterpillar with spine `u, x, y, v` (ascending `x`, then `y`)
/// whose vertices other than `u, v` avoid `forbidden`.
pub fn connect3(g: &Graph, u: usize, v: usize, p: usize, forbidden: &VertexSet) -> Result<Caterpillar, SolverError> {
    let n = g.n();
    if p == 0 || u == v || u >= n || v >= n {
        return Err(precondition("connect3 needs p ≥ 1 and distinct in-range endpoints"));
    }
    if forbidden.contains(u) || forbidden.contains(v) {
        return Err(precondition("connector endpoints must not be forbidden"));
    }
    let mut avail = forbidden.complement();
    avail.remove(u);
    avail.remove(v);
    for x in g.neighbors(u).intersection(&avail).iter() {
        let mut ys = g.neighbors(v).intersection(g.neighbors(x));
        ys.intersect_with(&avail);
        for y in ys.iter() {
            let mut pool = avail.clone();
            pool.remove(x);
            pool.remove(y);
            let spine = [u, x, y, v];
            if let Some(spikes) = star_system(g, &spine, &[p; 4], &pool) {
                return Ok(Caterpillar::from_parts_unchecked(p, spine.to_vec(), spikes));
            }
        }
    }
    Err(SolverError::NoConnector(u, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caterpillar::validate;
    use crate::graph::generators::{complete, two_cliques};

    #[test]
    fn complete_graph_connector() {
        let g = complete(12);
        let c = connect3(&g, 0, 11, 1, &VertexSet::new(12)).unwrap();
        assert_eq!(c.spine(), &[0, 1, 2, 11]);
        assert_eq!(c.vertex_count(), 8);
        assert!(validate(&g, &c).is_ok());
    }

    #[test]
    fn forbidden_respected_and_components() {
        let g = complete(16);
        let forbidden = VertexSet::from_slice(16, &[1, 2, 3]);
        let c = connect3(&g, 0, 11, 2, &forbidden).unwrap();
        assert!(c.vertices().iter().all(|&w| !forbidden.contains(w)));
        assert_eq!(c.vertex_count(), 12);
        assert_eq!(connect3(&two_cliques(12), 0, 11, 1, &VertexSet::new(12)), Err(SolverError::NoConnector(0, 11)));
    }
}
