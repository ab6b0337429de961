use reebpair_core::conditioning::condition;
use reebpair_core::diagram::{check_matching, diagram_diff, PairClass};
use reebpair_core::generators::{generate, GenSpec, TreeMode};
use reebpair_core::multipass::pair_multipass;
use reebpair_core::oracle::{oracle_diagram, OracleOptions};
use reebpair_core::singlepass::{pair_singlepass, singlepass_pairs, SinglePassOptions, SweepMode};
use reebpair_core::{PersistenceDiagram, ReebGraph};

fn conditioned(spec: GenSpec) -> ReebGraph {
    condition(&generate(&spec).unwrap()).unwrap().0
}

fn assert_same(a: &PersistenceDiagram, b: &PersistenceDiagram, what: &str) {
    let d = diagram_diff(a, b);
    assert!(d.is_empty(), "{what}: {d:?}");
}

#[test]
fn engines_agree_on_small_random_graphs() {
    for seed in 0..300u64 {
        let n = 1 + (seed as usize % 30);
        let g = conditioned(GenSpec::graph(n, seed, 0.5));
        let oracle = oracle_diagram(&g, OracleOptions::default()).unwrap();
        let mp = pair_multipass(&g).unwrap();
        assert_same(&oracle, &mp, &format!("multipass seed {seed}"));
        for mode in [SweepMode::Ascending, SweepMode::Descending] {
            let out = singlepass_pairs(&g, SinglePassOptions::with_mode(mode)).unwrap();
            check_matching(&g, &out.pairs).unwrap();
            let sp = PersistenceDiagram::from_node_pairs(&g, "singlepass", &out.pairs);
            assert_same(&oracle, &sp, &format!("singlepass {mode:?} seed {seed}"));
        }
        assert_eq!(oracle.count(PairClass::Cycle), g.cycle_rank());
    }
}

#[test]
fn engines_agree_on_trees() {
    for seed in 0..50u64 {
        for mode in [TreeMode::Split, TreeMode::Join] {
            let g = conditioned(GenSpec::tree(1 + seed as usize, seed, mode));
            let mp = pair_multipass(&g).unwrap();
            let sp = pair_singlepass(&g, SinglePassOptions::default()).unwrap();
            assert_same(&mp, &sp, &format!("tree seed {seed}"));
        }
    }
}
