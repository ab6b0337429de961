use proptest::prelude::*;
use reebpair::formats::{diagram_to_string, graph_to_string, parse_graph, read_diagram};
use reebpair_core::conditioning::condition;
use reebpair_core::diagram::diagram_diff;
use reebpair_core::generators::{generate, GenSpec};
use reebpair_core::multipass::pair_multipass;
use reebpair_core::ReebGraph;

type Named = (Vec<(String, u64, u32, bool)>, Vec<(String, String)>);

/// Ids, ordinals and offsets are reassigned on load, so compare names,
/// values and positions in the total order.
fn by_name(g: &ReebGraph) -> Named {
    let mut nodes: Vec<_> = g
        .nodes()
        .map(|v| {
            (g.name(v).to_string(), g.value(v).to_bits(), g.rank(v), g.is_synthetic(v))
        })
        .collect();
    nodes.sort();
    let mut edges: Vec<_> = g
        .edges()
        .iter()
        .map(|&[a, b]| {
            let (a, b) = (g.name(a).to_string(), g.name(b).to_string());
            if a <= b { (a, b) } else { (b, a) }
        })
        .collect();
    edges.sort();
    (nodes, edges)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph_file_round_trip(n in 1usize..30, seed in any::<u64>(), p2 in 0.0f64..=1.0, cond in any::<bool>()) {
        let mut g = generate(&GenSpec::graph(n, seed, p2)).unwrap();
        if cond {
            g = condition(&g).unwrap().0;
        }
        let text = graph_to_string(&g);
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(by_name(&back), by_name(&g));
        // a file written from a reloaded graph is byte-identical
        prop_assert_eq!(graph_to_string(&back), text);
    }

    #[test]
    fn diagram_file_round_trip(n in 1usize..30, seed in any::<u64>()) {
        let g = condition(&generate(&GenSpec::graph(n, seed, 0.5)).unwrap()).unwrap().0;
        let d = pair_multipass(&g).unwrap();
        let text = diagram_to_string(&d);
        let back = read_diagram(text.as_bytes()).unwrap();
        prop_assert!(diagram_diff(&d, &back).is_empty());
        prop_assert_eq!(diagram_to_string(&back), text);
    }
}
