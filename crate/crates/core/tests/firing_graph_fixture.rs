use std::collections::BTreeSet;

use hyperres::chipfiring::{stable_configs_hyperpath, Configuration, StrataClassifier};
use hyperres::firing_graph::{build_firing_graph, check_firing_invariants, validate_structure};
use hyperres::hypergraph::make_hyperpath;

fn cfg(vals: &[i64]) -> Configuration {
    Configuration::with_omitted_bank(0, vals).unwrap()
}

const NODES: [[i64; 6]; 13] = [
    [1, 1, 1, 1, 0, 0],
    [2, 2, 1, 1, 0, 0],
    [3, 0, 1, 1, 0, 0],
    [2, 0, 2, 2, 0, 0],
    [2, 1, 3, 0, 0, 0],
    [2, 0, 2, 0, 1, 1],
    [2, 1, 0, 1, 1, 1],
    [0, 2, 0, 1, 1, 1],
    [1, 0, 0, 1, 1, 1],
    [0, 0, 1, 2, 1, 1],
    [0, 1, 2, 0, 1, 1],
    [0, 0, 1, 0, 2, 2],
    [0, 0, 1, 1, 3, 0],
];

#[test]
fn p33_graph_matches_the_worked_example() {
    let h = make_hyperpath(3, 3).unwrap();
    let g = build_firing_graph(&h, &cfg(&NODES[0])).unwrap();
    let got: BTreeSet<Vec<i64>> = g.nodes().iter().map(|c| c.non_bank_values()).collect();
    let want: BTreeSet<Vec<i64>> = NODES.iter().map(|n| n.to_vec()).collect();
    assert_eq!(got, want);

    let id = |vals: &[i64]| g.node_id(&cfg(vals)).unwrap();
    let has = |from: &[i64], to: &[i64], vertex: usize, edge: usize| {
        g.arrows()
            .iter()
            .any(|a| a.from == id(from) && a.to == id(to) && a.vertex == vertex && a.edge == edge)
    };
    // First cycle on e1, second on e2, then the tail entered by firing 4 on e3.
    assert!(has(&NODES[0], &NODES[1], 0, 0));
    assert!(has(&NODES[1], &NODES[2], 2, 0));
    assert!(has(&NODES[2], &NODES[0], 1, 0));
    assert!(has(&NODES[1], &NODES[3], 2, 1));
    assert!(has(&NODES[3], &NODES[4], 4, 1));
    assert!(has(&NODES[4], &NODES[1], 3, 1));
    assert!(has(&NODES[3], &NODES[5], 4, 2));

    let r = validate_structure(&g, 2);
    assert!(r.ok(), "{:?}", r.violations);
    assert_eq!(r.cycles.len(), 2);
    assert!(r.cycles.iter().all(|c| c.len() == 3));
    let tail: BTreeSet<Vec<i64>> = r.g_prime.iter().map(|&i| g.nodes()[i].non_bank_values()).collect();
    let want_tail: BTreeSet<Vec<i64>> = NODES[5..].iter().map(|n| n.to_vec()).collect();
    assert_eq!(tail, want_tail);
    assert!(r.root_precedes_all_tail);
    assert!(check_firing_invariants(&g).ok());
}

#[test]
fn root_precedes_whole_tail_on_small_paths() {
    for (n, k) in [(2, 3), (3, 3), (2, 4), (4, 3)] {
        let h = make_hyperpath(n, k).unwrap();
        let cls = StrataClassifier::new(n, k).unwrap();
        for c0 in stable_configs_hyperpath(n, k).unwrap() {
            let g = build_firing_graph(&h, &c0).unwrap();
            let r = validate_structure(&g, cls.classify(&c0).unwrap());
            assert!(r.root_precedes_stable_tail && r.root_precedes_all_tail, "root {c0}");
            assert!(r.ok(), "root {c0}: {:?}", r.violations);
        }
    }
}
