mod common;

use common::{graph_classes, has_clique};
use sbo::cli::verify_reduction;
use sbo::gen::{gen_clique_reduction, Graph};
use sbo::{ClickModel, ModelKind};

#[test]
fn graph_class_counts() {
    let all: Vec<usize> = (1..=5).map(|n| graph_classes(n, false).len()).collect();
    assert_eq!(all, vec![1, 2, 4, 11, 34]);
    assert_eq!(graph_classes(6, true).len(), 112);
}

#[test]
fn reduction_is_sound_on_small_graphs() {
    let mut checked = 0;
    for n in 2..=6 {
        for graph in graph_classes(n, false) {
            if graph.edges().is_empty() {
                continue;
            }
            for k in [2, 3] {
                if k > n {
                    continue;
                }
                let verdict = verify_reduction(&graph, k).unwrap();
                assert_eq!(
                    verdict.has_clique,
                    has_clique(&graph, k),
                    "n={n} k={k} edges={:?}: optimum {} vs V {}",
                    graph.edges(),
                    verdict.optimum,
                    verdict.target
                );
                checked += 1;
            }
        }
    }
    assert!(checked > 300);
}

#[test]
fn reduction_layout() {
    let path = Graph::new(3, vec![(1, 2), (2, 3)]).unwrap();
    let red = gen_clique_reduction(&path, 2).unwrap();
    let inst = &red.instance;
    assert_eq!(inst.model().kind(), ModelKind::Scenario);
    assert_eq!(inst.n(), 5);
    assert_eq!(inst.budget(), 1.0);
    let ids: Vec<&str> = inst.keywords().iter().map(|k| k.id.as_str()).collect();
    assert_eq!(ids, ["v1", "v2", "v3", "e1-2", "e2-3"]);
    let ClickModel::Scenario { scenarios } = inst.model() else {
        unreachable!()
    };
    assert_eq!(scenarios.len(), 4);
    assert_eq!(scenarios[0].clicks, vec![0.0, 0.0, 0.0, 1.0, 1.0]);
    let p = red.params;
    assert_eq!(scenarios[2].clicks, vec![0.0, p.budget / p.epsilon, 0.0, p.t, p.t]);
    let total: f64 = scenarios.iter().map(|s| s.prob).sum();
    assert!((total - 1.0).abs() < 1e-12);
}
