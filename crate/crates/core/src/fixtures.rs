//! Small hand-built graphs used in tests, examples and the CLI.

use crate::model::ReebGraph;

/// The 16-node example graph with nodes `A..P` at values `1..16`.
///
/// Join pairs: B/C, E/G, H/K. Split pair: O/N. Global: A/P.
/// Cycle pairs: L/D, J/F, M/I.
pub fn sixteen_node() -> ReebGraph {
    const NAMES: [&str; 16] = [
        "A", "B", "C", "D", "E", "F", "G", "H", "I", "J", "K", "L", "M", "N", "O", "P",
    ];
    const EDGES: [(&str, &str); 18] = [
        ("A", "C"),
        ("B", "C"),
        ("C", "D"),
        ("D", "F"),
        ("D", "G"),
        ("E", "G"),
        ("F", "I"),
        ("F", "J"),
        ("G", "L"),
        ("H", "K"),
        ("I", "J"),
        ("I", "M"),
        ("J", "K"),
        ("K", "L"),
        ("L", "M"),
        ("M", "N"),
        ("N", "O"),
        ("N", "P"),
    ];
    ReebGraph::from_parts(
        NAMES.iter().enumerate().map(|(i, &n)| (n, (i + 1) as f64)),
        EDGES,
    )
    .expect("fixture is well formed")
}

/// Two nodes joined by a double edge: `A` is a degenerate minimum, `B` a
/// degenerate maximum.
pub fn double_edge() -> ReebGraph {
    ReebGraph::from_parts([("A", 0.0), ("B", 1.0)], [("A", "B"), ("A", "B")])
        .expect("fixture is well formed")
}

/// Single edge `A(0) - B(1)`.
pub fn single_edge() -> ReebGraph {
    ReebGraph::from_parts([("A", 0.0), ("B", 1.0)], [("A", "B")]).expect("fixture is well formed")
}

/// Eight-node graph that the sweep gets wrong without virtual edges.
///
/// Up-forks `c` and `d` both send a leg to down-fork `e` and one to
/// down-fork `g`. The maximum `f` above `e` ends the pending edge that
/// carries `c`'s left leg, so only a virtual edge lets `g` see both legs of
/// `c`. Correct pairs: (b,e), (f,d), global (a,h), cycle (g,c).
pub fn virtual_edge_witness() -> ReebGraph {
    ReebGraph::from_parts(
        [
            ("a", 1.0),
            ("b", 2.0),
            ("c", 3.0),
            ("d", 4.0),
            ("e", 5.0),
            ("f", 6.0),
            ("g", 7.0),
            ("h", 8.0),
        ],
        [
            ("d", "e"),
            ("c", "g"),
            ("c", "a"),
            ("e", "f"),
            ("g", "h"),
            ("b", "d"),
            ("d", "g"),
            ("c", "e"),
        ],
    )
    .expect("fixture is well formed")
}
