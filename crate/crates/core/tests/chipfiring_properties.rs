use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use hyperres::chipfiring::{
    critical_configs_complete, fire_graph, fire_hyper, is_stable_hyper, stabilize, stabilize_with, SimpleGraph,
};
use hyperres::hypergraph::make_hyperpath;
use hyperres::Configuration;

fn random_config(rng: &mut StdRng, k: usize) -> Configuration {
    let vals: Vec<i64> = (0..k - 1).map(|_| rng.gen_range(0..3 * k as i64)).collect();
    Configuration::with_omitted_bank(0, &vals).unwrap()
}

#[test]
fn stabilization_ignores_firing_order() {
    let mut rng = StdRng::seed_from_u64(11);
    for k in 2..=5 {
        let g = SimpleGraph::complete(k).unwrap();
        for _ in 0..200 {
            let c = random_config(&mut rng, k);
            let reference = stabilize(&g, &c).unwrap();
            for _ in 0..5 {
                let mut local = StdRng::seed_from_u64(rng.gen());
                let other = stabilize_with(&g, &c, |u| local.gen_range(0..u.len())).unwrap();
                assert_eq!(other, reference, "k={k} from {c}");
            }
        }
    }
}

#[test]
fn bank_firing_permutes_critical_configurations() {
    for k in 2..=5 {
        let g = SimpleGraph::complete(k).unwrap();
        let critical: BTreeSet<_> = critical_configs_complete(k).unwrap().into_iter().collect();
        let image: BTreeSet<_> = critical
            .iter()
            .map(|c| stabilize(&g, &fire_graph(&g, c, 0).unwrap()).unwrap())
            .collect();
        assert_eq!(image, critical, "k={k}");
    }
}

proptest! {
    #[test]
    fn any_choice_sequence_reaches_the_same_stable_configuration(
        k in 2usize..=5,
        vals in prop::collection::vec(0i64..15, 4),
        choices in prop::collection::vec(any::<usize>(), 64),
    ) {
        let g = SimpleGraph::complete(k).unwrap();
        let c = Configuration::with_omitted_bank(0, &vals[..k - 1]).unwrap();
        let mut i = 0;
        let got = stabilize_with(&g, &c, |_| {
            i += 1;
            choices[i % choices.len()]
        }).unwrap();
        prop_assert_eq!(got, stabilize(&g, &c).unwrap());
    }

    #[test]
    fn hyper_firing_conserves_tracked_chips(
        n in 1usize..=3,
        seed in any::<u64>(),
    ) {
        let k = 3;
        let h = make_hyperpath(n, k).unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        let mut values: Vec<i64> = (0..h.num_vertices()).map(|_| rng.gen_range(0..4)).collect();
        values[0] = 0;
        let c = Configuration::with_tracked_bank(0, values).unwrap();
        let total = c.total();
        for v in 1..h.num_vertices() {
            for e in h.incident_edges(v) {
                if let Ok(next) = fire_hyper(&h, &c, v, e) {
                    prop_assert_eq!(next.total(), total);
                }
            }
        }
        if is_stable_hyper(&h, &c) {
            for e in h.incident_edges(0) {
                prop_assert_eq!(fire_hyper(&h, &c, 0, e).unwrap().total(), total);
            }
        }
    }
}
