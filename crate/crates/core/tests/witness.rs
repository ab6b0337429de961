use reebpair_core::conditioning::condition;
use reebpair_core::diagram::diagram_diff;
use reebpair_core::generators::{generate, GenSpec};
use reebpair_core::oracle::{oracle_diagram, OracleOptions};
use reebpair_core::singlepass::{pair_singlepass, SinglePassOptions, SweepMode};
use reebpair_core::ReebGraph;

fn disabled(mode: SweepMode) -> SinglePassOptions {
    SinglePassOptions {
        mode,
        virtual_edges: false,
    }
}

/// True when the label-list sweep without virtual edges gets `g` wrong.
fn fails_without_virtual_edges(g: &ReebGraph) -> bool {
    let oracle = oracle_diagram(g, OracleOptions::default()).unwrap();
    match pair_singlepass(g, disabled(SweepMode::Ascending)) {
        Ok(d) => !diagram_diff(&d, &oracle).is_empty(),
        Err(_) => true,
    }
}

#[test]
fn virtual_edges_are_necessary() {
    let mut witnesses = Vec::new();
    for seed in 0..400u64 {
        let n = 2 + (seed as usize % 12);
        let g = condition(&generate(&GenSpec::graph(n, seed, 0.5)).unwrap()).unwrap().0;
        let oracle = oracle_diagram(&g, OracleOptions::default()).unwrap();
        for mode in [SweepMode::Ascending, SweepMode::Descending] {
            let d = pair_singlepass(&g, SinglePassOptions::with_mode(mode)).unwrap();
            assert!(diagram_diff(&d, &oracle).is_empty(), "seed {seed} {mode:?}");
        }
        if fails_without_virtual_edges(&g) {
            witnesses.push((g.node_count(), seed));
        }
    }
    witnesses.sort();
    println!("witnesses (nodes, seed): {:?}", &witnesses[..witnesses.len().min(5)]);
    assert!(!witnesses.is_empty());
}

#[test]
fn fixed_witness() {
    use reebpair_core::diagram::PairClass;
    use reebpair_core::fixtures::virtual_edge_witness;
    let g = virtual_edge_witness();
    assert!(g.validate_conditioned().is_ok());
    let oracle = oracle_diagram(&g, OracleOptions::default()).unwrap();
    let cycle = oracle.extended().next().unwrap();
    assert_eq!((cycle.birth.as_str(), cycle.death.as_str()), ("g", "c"));
    let with = pair_singlepass(&g, SinglePassOptions::with_mode(SweepMode::Ascending)).unwrap();
    assert!(diagram_diff(&with, &oracle).is_empty());
    let without = pair_singlepass(&g, disabled(SweepMode::Ascending)).unwrap();
    assert!(!diagram_diff(&without, &oracle).is_empty());
    assert_eq!(without.count(PairClass::Cycle), 0);
}
