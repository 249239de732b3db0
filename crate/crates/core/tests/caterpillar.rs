mod common;

use common::{random_graph, reference_is_caterpillar, rng};
use pcat_core::caterpillar::CaterpillarError;
use pcat_core::graph::generators::{complete, path};
use pcat_core::{is_spanning, link, validate, Caterpillar, Graph, Violation};
use proptest::prelude::*;

/// A graph plus a candidate shape: mostly distinct in-range vertices, with
/// occasional repeats, out-of-range ids and short spike lists.
fn arb_candidate() -> impl Strategy<Value = (Graph, usize, Vec<usize>, Vec<Vec<usize>>)> {
    (2usize..12, 0.3f64..1.0, any::<u64>(), 1usize..4).prop_flat_map(|(n, dens, seed, p)| {
        let g = random_graph(n, dens, &mut rng(seed));
        let q_max = (n / (p + 1)).max(1);
        (Just(g), Just(p), 1..=q_max, Just(n))
            .prop_flat_map(|(g, p, q, n)| {
                let order = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
                let noise = proptest::collection::vec((0usize..q * (p + 1), 0usize..n + 2), 0..2);
                let short = proptest::option::weighted(0.1, 0usize..q);
                (Just(g), Just(p), Just(q), order, noise, short)
            })
            .prop_map(|(g, p, q, order, noise, short)| {
                let mut pool: Vec<usize> = order.into_iter().cycle().take(q * (p + 1)).collect();
                for (slot, v) in noise {
                    pool[slot] = v;
                }
                let spine = pool[..q].to_vec();
                let mut spikes: Vec<Vec<usize>> = pool[q..].chunks(p).map(<[usize]>::to_vec).collect();
                if let Some(i) = short {
                    spikes[i].pop();
                }
                (g, p, spine, spikes)
            })
    })
}

proptest! {
    #[test]
    fn validate_agrees_with_reference((g, p, spine, spikes) in arb_candidate()) {
        let c = Caterpillar::new(p, spine.clone(), spikes.clone()).unwrap();
        prop_assert_eq!(validate(&g, &c).is_ok(), reference_is_caterpillar(&g, p, &spine, &spikes));
    }

    #[test]
    fn reversal_and_serde_preserve_validity((g, p, spine, spikes) in arb_candidate()) {
        let c = Caterpillar::new(p, spine, spikes).unwrap();
        let r = c.reversed();
        prop_assert_eq!(validate(&g, &c).is_ok(), validate(&g, &r).is_ok());
        prop_assert_eq!(r.reversed(), c.clone());
        let back: Caterpillar = serde_json::from_str(&c.to_json()).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn valid_caterpillars_have_expected_size((g, p, spine, spikes) in arb_candidate()) {
        let c = Caterpillar::new(p, spine, spikes).unwrap();
        if validate(&g, &c).is_ok() {
            prop_assert_eq!(c.vertex_count(), c.q() * (p + 1));
            prop_assert_eq!(is_spanning(&g, &c), c.vertex_count() == g.n());
        }
    }
}

#[test]
fn shape_errors() {
    assert_eq!(Caterpillar::new(0, vec![0], vec![vec![]]), Err(CaterpillarError::ZeroP));
    assert!(matches!(
        Caterpillar::new(1, vec![0, 1], vec![vec![2]]),
        Err(CaterpillarError::ShapeMismatch { spine: 2, spikes: 1 })
    ));
    assert!(serde_json::from_str::<Caterpillar>(r#"{"p":0,"spine":[0],"spikes":[[]]}"#).is_err());
}

#[test]
fn violations_are_reported_in_order() {
    let g = path(6);
    let v = |spine: Vec<usize>, spikes: Vec<Vec<usize>>| validate(&g, &Caterpillar::new(1, spine, spikes).unwrap());
    assert_eq!(v(vec![], vec![]), Err(Violation::EmptySpine));
    assert!(matches!(v(vec![1], vec![vec![]]), Err(Violation::SpikeCount { index: 0, .. })));
    assert_eq!(v(vec![1], vec![vec![9]]), Err(Violation::OutOfRange { vertex: 9, n: 6 }));
    assert_eq!(v(vec![1, 1], vec![vec![0], vec![2]]), Err(Violation::Repeated { vertex: 1 }));
    assert!(matches!(v(vec![1, 4], vec![vec![0], vec![5]]), Err(Violation::SpineGap { index: 0, .. })));
    assert_eq!(v(vec![1], vec![vec![3]]), Err(Violation::DetachedSpike { vertex: 1, spike: 3 }));
    assert_eq!(v(vec![1, 2], vec![vec![0], vec![3]]), Ok(()));
}

#[test]
fn link_joins_through_a_bridge() {
    let g = complete(8);
    let a = Caterpillar::star(1, 0, vec![1]).unwrap();
    let b = Caterpillar::star(1, 6, vec![7]).unwrap();
    let joined = link(&g, &a, &[2, 4], &[vec![3], vec![5]], Some(&b)).unwrap();
    assert_eq!(joined.spine(), &[0, 2, 4, 6]);
    assert!(validate(&g, &joined).is_ok() && is_spanning(&g, &joined));

    let sparse = path(8);
    assert!(matches!(link(&sparse, &a, &[], &[], Some(&b)), Err(CaterpillarError::NotAdjacent(0, 6))));
    let p2 = Caterpillar::star(2, 6, vec![5, 7]).unwrap();
    assert!(matches!(link(&g, &a, &[], &[], Some(&p2)), Err(CaterpillarError::PMismatch(1, 2))));
}
