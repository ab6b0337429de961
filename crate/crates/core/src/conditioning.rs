//! Normalization of arbitrary graphs into canonical form, where every node
//! is a minimum, a maximum, a binary up-fork or a binary down-fork.
//!
//! Four corrections, applied in this order until nothing changes:
//!
//! 1. complex forks (down- or up-degree above 2) become chains of binary forks;
//! 2. double forks (2 down, 2 up) become a down-fork with an up-fork above it;
//! 3. degenerate extrema (2 down and 0 up, or the reverse) get a new extremum;
//! 4. regular nodes (1 down, 1 up) are removed and their neighbors joined.
//!
//! Inserted nodes keep the nominal value of their source and differ only in
//! the order offset, so they sit immediately above or below it.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{GraphBuilder, NodeId, OrderKey, ReebGraph};

const OFFSET_STEP: i64 = 1 << 20;

/// What conditioning changed.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConditioningReport {
    /// Synthetic nodes, as ids of the output graph.
    pub inserted: Vec<NodeId>,
    /// Removed regular nodes, as ids of the input graph.
    pub removed: Vec<NodeId>,
    /// For every input node, its surviving id in the output graph.
    pub mapping: Vec<Option<NodeId>>,
}

impl ConditioningReport {
    pub fn is_empty(&self) -> bool {
        self.inserted.is_empty() && self.removed.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rule {
    ComplexFork,
    DoubleFork,
    DegenerateExtremum,
    Regular,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Below,
    Above,
}

struct Work {
    names: Vec<String>,
    keys: Vec<OrderKey>,
    synthetic: Vec<bool>,
    alive: Vec<bool>,
    original: Vec<Option<NodeId>>,
    edges: Vec<[u32; 2]>,
    edge_alive: Vec<bool>,
    adj: Vec<Vec<u32>>,
    groups: BTreeMap<(u64, i64), BTreeMap<i64, u32>>,
    taken: BTreeSet<String>,
    inserted: usize,
    removed: Vec<NodeId>,
}

impl Work {
    fn new(graph: &ReebGraph) -> Self {
        let n = graph.node_count();
        let mut w = Work {
            names: Vec::with_capacity(n),
            keys: Vec::with_capacity(n),
            synthetic: Vec::with_capacity(n),
            alive: vec![true; n],
            original: Vec::with_capacity(n),
            edges: Vec::with_capacity(graph.edge_count()),
            edge_alive: vec![true; graph.edge_count()],
            adj: vec![Vec::new(); n],
            groups: BTreeMap::new(),
            taken: BTreeSet::new(),
            inserted: 0,
            removed: Vec::new(),
        };
        for v in graph.nodes() {
            w.names.push(graph.name(v).to_string());
            w.keys.push(graph.key(v));
            w.synthetic.push(graph.is_synthetic(v));
            w.original.push(Some(v));
            w.taken.insert(graph.name(v).to_string());
            let key = graph.key(v);
            w.groups
                .entry(group_of(&key))
                .or_default()
                .insert(key.offset(), v.0);
        }
        for (i, &[a, b]) in graph.edges().iter().enumerate() {
            w.edges.push([a.0, b.0]);
            w.adj[a.index()].push(i as u32);
            w.adj[b.index()].push(i as u32);
        }
        w
    }

    fn other(&self, e: u32, v: u32) -> u32 {
        let [a, b] = self.edges[e as usize];
        if a == v {
            b
        } else {
            a
        }
    }

    fn below(&self, a: u32, b: u32) -> bool {
        self.keys[a as usize] < self.keys[b as usize]
    }

    /// Incident edges split into (down, up).
    fn split_edges(&self, v: u32) -> (Vec<u32>, Vec<u32>) {
        let mut down = Vec::new();
        let mut up = Vec::new();
        for &e in &self.adj[v as usize] {
            if self.below(self.other(e, v), v) {
                down.push(e);
            } else {
                up.push(e);
            }
        }
        (down, up)
    }

    fn fresh_name(&mut self, base: &str, side: Side) -> String {
        let sign = if side == Side::Above { '+' } else { '-' };
        let mut k = 1u32;
        loop {
            let candidate = format!("{base}{sign}{k}");
            if !self.taken.contains(&candidate) {
                self.taken.insert(candidate.clone());
                return candidate;
            }
            k += 1;
        }
    }

    /// Adds a synthetic node immediately above or below `src` in the order.
    fn insert_next_to(&mut self, src: u32, side: Side) -> u32 {
        let key = self.keys[src as usize];
        let gk = group_of(&key);
        let offset = loop {
            let group = self.groups.get(&gk).expect("every node is in its group");
            let off = key_offset(&self.keys[src as usize]);
            let neighbor = match side {
                Side::Above => group.range(off + 1..).next().map(|(&o, _)| o),
                Side::Below => group.range(..off).next_back().map(|(&o, _)| o),
            };
            let candidate = match (side, neighbor) {
                (Side::Above, None) => Some(off + OFFSET_STEP),
                (Side::Below, None) => Some(off - OFFSET_STEP),
                (_, Some(n)) if (n - off).abs() >= 2 => Some(off + (n - off) / 2),
                _ => None,
            };
            match candidate {
                Some(c) => break c,
                None => self.respace(gk),
            }
        };
        let name = {
            let base = self.names[src as usize].clone();
            self.fresh_name(&base, side)
        };
        let k = self.keys[src as usize];
        let id = self.names.len() as u32;
        self.names.push(name);
        self.keys
            .push(OrderKey::with_offset(k.value(), k.ordinal(), offset));
        self.synthetic.push(true);
        self.alive.push(true);
        self.original.push(None);
        self.adj.push(Vec::new());
        self.groups.get_mut(&gk).expect("group exists").insert(offset, id);
        self.inserted += 1;
        id
    }

    fn respace(&mut self, gk: (u64, i64)) {
        let group = self.groups.get_mut(&gk).expect("group exists");
        let members: Vec<u32> = group.values().copied().collect();
        group.clear();
        for (i, &v) in members.iter().enumerate() {
            let off = i as i64 * OFFSET_STEP;
            let k = self.keys[v as usize];
            self.keys[v as usize] = OrderKey::with_offset(k.value(), k.ordinal(), off);
            group.insert(off, v);
        }
    }

    fn add_edge(&mut self, a: u32, b: u32) -> u32 {
        let e = self.edges.len() as u32;
        self.edges.push([a, b]);
        self.edge_alive.push(true);
        self.adj[a as usize].push(e);
        self.adj[b as usize].push(e);
        e
    }

    /// Moves the `from` endpoint of edge `e` to `to`.
    fn reattach(&mut self, e: u32, from: u32, to: u32) {
        let slot = &mut self.edges[e as usize];
        if slot[0] == from {
            slot[0] = to;
        } else {
            slot[1] = to;
        }
        self.adj[from as usize].retain(|&x| x != e);
        self.adj[to as usize].push(e);
    }

    fn remove_edge(&mut self, e: u32) {
        let [a, b] = self.edges[e as usize];
        self.edge_alive[e as usize] = false;
        self.adj[a as usize].retain(|&x| x != e);
        self.adj[b as usize].retain(|&x| x != e);
    }

    fn remove_node(&mut self, v: u32) {
        self.alive[v as usize] = false;
        let key = self.keys[v as usize];
        if let Some(g) = self.groups.get_mut(&group_of(&key)) {
            g.remove(&key.offset());
        }
        if self.synthetic[v as usize] && self.original[v as usize].is_none() {
            self.inserted -= 1;
        }
        if let Some(orig) = self.original[v as usize] {
            self.removed.push(orig);
        }
    }

    fn check_isolated(&self) -> Result<()> {
        for v in 0..self.names.len() {
            if self.alive[v] && self.adj[v].is_empty() {
                return Err(Error::IsolatedNode(self.names[v].clone()));
            }
        }
        Ok(())
    }

    fn apply(&mut self, rule: Rule) -> bool {
        let mut changed = false;
        let mut v = 0u32;
        // new nodes are appended, so they are visited in the same pass
        while (v as usize) < self.names.len() {
            if self.alive[v as usize] {
                changed |= match rule {
                    Rule::ComplexFork => self.split_complex(v),
                    Rule::DoubleFork => self.split_double(v),
                    Rule::DegenerateExtremum => self.split_degenerate(v),
                    Rule::Regular => self.remove_if_regular(v),
                };
            }
            v += 1;
        }
        changed
    }

    fn split_complex(&mut self, v: u32) -> bool {
        let mut changed = false;
        // Down side: the upper fork keeps the down edge whose lower end is
        // highest; a new fork just below takes the rest.
        let mut x = v;
        loop {
            let (down, _) = self.split_edges(x);
            if down.len() <= 2 {
                break;
            }
            let keep = *down
                .iter()
                .max_by(|&&a, &&b| {
                    let (oa, ob) = (self.other(a, x), self.other(b, x));
                    self.keys[oa as usize].cmp(&self.keys[ob as usize])
                })
                .expect("non-empty");
            let y = self.insert_next_to(x, Side::Below);
            for e in down {
                if e != keep {
                    self.reattach(e, x, y);
                }
            }
            self.add_edge(y, x);
            x = y;
            changed = true;
        }
        let mut x = v;
        loop {
            let (_, up) = self.split_edges(x);
            if up.len() <= 2 {
                break;
            }
            let keep = *up
                .iter()
                .min_by(|&&a, &&b| {
                    let (oa, ob) = (self.other(a, x), self.other(b, x));
                    self.keys[oa as usize].cmp(&self.keys[ob as usize])
                })
                .expect("non-empty");
            let y = self.insert_next_to(x, Side::Above);
            for e in up {
                if e != keep {
                    self.reattach(e, x, y);
                }
            }
            self.add_edge(x, y);
            x = y;
            changed = true;
        }
        changed
    }

    fn split_double(&mut self, v: u32) -> bool {
        let (down, up) = self.split_edges(v);
        if down.len() != 2 || up.len() != 2 {
            return false;
        }
        let y = self.insert_next_to(v, Side::Above);
        for e in up {
            self.reattach(e, v, y);
        }
        self.add_edge(v, y);
        true
    }

    fn split_degenerate(&mut self, v: u32) -> bool {
        let (down, up) = self.split_edges(v);
        match (down.len(), up.len()) {
            (2, 0) => {
                let y = self.insert_next_to(v, Side::Above);
                self.add_edge(v, y);
                true
            }
            (0, 2) => {
                let y = self.insert_next_to(v, Side::Below);
                self.add_edge(y, v);
                true
            }
            _ => false,
        }
    }

    fn remove_if_regular(&mut self, v: u32) -> bool {
        let (down, up) = self.split_edges(v);
        if down.len() != 1 || up.len() != 1 {
            return false;
        }
        let a = self.other(down[0], v);
        let b = self.other(up[0], v);
        self.remove_edge(down[0]);
        self.remove_edge(up[0]);
        self.remove_node(v);
        self.add_edge(a, b);
        true
    }

    fn finish(self, input_len: usize) -> (ReebGraph, ConditioningReport) {
        let mut b = GraphBuilder::new();
        let mut map = vec![None; self.names.len()];
        let mut inserted = Vec::new();
        for v in 0..self.names.len() {
            if !self.alive[v] {
                continue;
            }
            let id = b
                .add_node_with_key(self.names[v].clone(), self.keys[v], self.synthetic[v])
                .expect("names are unique");
            map[v] = Some(id);
            if self.original[v].is_none() {
                inserted.push(id);
            }
        }
        for (e, &[x, y]) in self.edges.iter().enumerate() {
            if self.edge_alive[e] {
                let (x, y) = (map[x as usize].expect("alive"), map[y as usize].expect("alive"));
                b.add_edge(x, y).expect("no self-loops arise");
            }
        }
        let mut mapping = vec![None; input_len];
        for v in 0..self.names.len() {
            if let Some(orig) = self.original[v] {
                mapping[orig.index()] = map[v];
            }
        }
        let mut removed = self.removed;
        removed.sort_unstable();
        (
            b.build(),
            ConditioningReport {
                inserted,
                removed,
                mapping,
            },
        )
    }
}

fn group_of(key: &OrderKey) -> (u64, i64) {
    (key.value().to_bits(), key.ordinal())
}

fn key_offset(key: &OrderKey) -> i64 {
    key.offset()
}

fn run(graph: &ReebGraph, rules: &[Rule], fixpoint: bool) -> Result<(ReebGraph, ConditioningReport)> {
    if graph.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut w = Work::new(graph);
    w.check_isolated()?;
    loop {
        let mut changed = false;
        for &rule in rules {
            changed |= w.apply(rule);
        }
        if !changed || !fixpoint {
            break;
        }
    }
    Ok(w.finish(graph.node_count()))
}

/// Removes every regular node, joining its two neighbors by one edge.
pub fn remove_regular(graph: &ReebGraph) -> Result<(ReebGraph, ConditioningReport)> {
    run(graph, &[Rule::Regular], true)
}

/// Gives every degenerate maximum (2 down, 0 up) a new maximum just above,
/// and every degenerate minimum a new minimum just below.
pub fn split_degenerate_extremum(graph: &ReebGraph) -> Result<(ReebGraph, ConditioningReport)> {
    run(graph, &[Rule::DegenerateExtremum], false)
}

/// Splits every double fork into a down-fork and an up-fork just above it.
pub fn split_double_fork(graph: &ReebGraph) -> Result<(ReebGraph, ConditioningReport)> {
    run(graph, &[Rule::DoubleFork], false)
}

/// Splits every fork of down- or up-degree above 2 into a chain of binary forks.
pub fn split_complex_fork(graph: &ReebGraph) -> Result<(ReebGraph, ConditioningReport)> {
    run(graph, &[Rule::ComplexFork], false)
}

/// Applies all four corrections to a fixpoint. The result passes
/// [`ReebGraph::validate_conditioned`] except possibly for connectivity.
pub fn condition(graph: &ReebGraph) -> Result<(ReebGraph, ConditioningReport)> {
    run(
        graph,
        &[
            Rule::ComplexFork,
            Rule::DoubleFork,
            Rule::DegenerateExtremum,
            Rule::Regular,
        ],
        true,
    )
}

/// Conditions each connected component separately.
pub fn condition_components(graph: &ReebGraph) -> Result<Vec<(ReebGraph, ConditioningReport)>> {
    graph
        .components()
        .iter()
        .map(|c| condition(&graph.induced_subgraph(c)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::{CriticalKind, ViolationRule};

    fn kinds(g: &ReebGraph) -> Vec<(String, CriticalKind)> {
        g.order()
            .iter()
            .map(|&v| (g.name(v).to_string(), g.kind(v)))
            .collect()
    }

    #[test]
    fn path_collapses_to_one_edge() {
        let g = ReebGraph::from_parts(
            [("A", 1.0), ("B", 2.0), ("C", 3.0)],
            [("A", "B"), ("B", "C")],
        )
        .unwrap();
        let (c, report) = remove_regular(&g).unwrap();
        assert_eq!(c.node_count(), 2);
        assert_eq!(c.edge_count(), 1);
        let [a, b] = c.edges()[0];
        let mut names = [c.name(a), c.name(b)];
        names.sort();
        assert_eq!(names, ["A", "C"]);
        assert_eq!(report.removed, vec![g.node("B").unwrap()]);
        assert_eq!(report.mapping[1], None);
    }

    #[test]
    fn regular_chain_between_forks() {
        // down-fork X at 0.5 (below: two minima), five regular nodes, up-fork Y
        let mut nodes = vec![("m1", 0.0), ("m2", 0.1), ("X", 0.5)];
        let chain = ["r1", "r2", "r3", "r4", "r5"];
        for (i, r) in chain.iter().enumerate() {
            nodes.push((r, 1.0 + i as f64));
        }
        nodes.extend([("Y", 10.0), ("M1", 11.0), ("M2", 12.0)]);
        let mut edges = vec![("m1", "X"), ("m2", "X"), ("X", "r1")];
        for w in chain.windows(2) {
            edges.push((w[0], w[1]));
        }
        edges.extend([("r5", "Y"), ("Y", "M1"), ("Y", "M2")]);
        let g = ReebGraph::from_parts(nodes, edges).unwrap();
        let (c, report) = remove_regular(&g).unwrap();
        assert_eq!(report.removed.len(), 5);
        assert!(c.validate_conditioned().is_ok());
        assert_eq!(c.edge_count(), 5);
    }

    #[test]
    fn no_regular_nodes_is_identity() {
        let g = fixtures::sixteen_node();
        let (c, report) = remove_regular(&g).unwrap();
        assert_eq!(c, g);
        assert!(report.is_empty());
    }

    #[test]
    fn double_edge_gets_both_extrema() {
        let g = fixtures::double_edge();
        let (c, report) = split_degenerate_extremum(&g).unwrap();
        assert_eq!(c.node_count(), 4);
        assert_eq!(report.inserted.len(), 2);
        assert_eq!(
            kinds(&c),
            vec![
                ("A-1".to_string(), CriticalKind::Minimum),
                ("A".to_string(), CriticalKind::UpFork),
                ("B".to_string(), CriticalKind::DownFork),
                ("B+1".to_string(), CriticalKind::Maximum),
            ]
        );
        assert!(c.validate_conditioned().is_ok());
        assert_eq!(c.cycle_rank(), 1);
        for &v in &report.inserted {
            assert!(c.is_synthetic(v));
            assert_eq!(c.value(v), g.value(g.node(&c.name(v)[..1]).unwrap()));
        }
    }

    #[test]
    fn double_fork_splits() {
        let g = ReebGraph::from_parts(
            [("A", 0.0), ("B", 1.0), ("X", 2.0), ("C", 3.0), ("D", 4.0)],
            [("A", "X"), ("B", "X"), ("X", "C"), ("X", "D")],
        )
        .unwrap();
        let (c, report) = split_double_fork(&g).unwrap();
        assert_eq!(report.inserted.len(), 1);
        let x = c.node("X").unwrap();
        let up = c.node("X+1").unwrap();
        assert_eq!(c.kind(x), CriticalKind::DownFork);
        assert_eq!(c.kind(up), CriticalKind::UpFork);
        let up_nbrs: Vec<&str> = c.neighbors(up).iter().map(|&(w, _)| c.name(w)).collect();
        assert!(up_nbrs.contains(&"C") && up_nbrs.contains(&"D") && up_nbrs.contains(&"X"));
        assert!(c.precedes(x, up));
        assert!(c.precedes(up, c.node("C").unwrap()));
    }

    #[test]
    fn figure_eight_waist_preserves_cycle_rank() {
        // two loops hanging below and above a 2:2 waist X
        let g = ReebGraph::from_parts(
            [("a", 0.0), ("X", 5.0), ("b", 10.0)],
            [("a", "X"), ("a", "X"), ("X", "b"), ("X", "b")],
        )
        .unwrap();
        assert_eq!(g.cycle_rank(), 2);
        let (c, _) = condition(&g).unwrap();
        assert!(c.validate_conditioned().is_ok());
        assert_eq!(c.cycle_rank(), 2);
        assert_eq!(c.count_kind(CriticalKind::DownFork), 2);
        assert_eq!(c.count_kind(CriticalKind::UpFork), 2);
    }

    #[test]
    fn monkey_saddle_becomes_two_forks() {
        // one down edge, three up edges
        let g = ReebGraph::from_parts(
            [("m", 0.0), ("S", 1.0), ("p", 2.0), ("q", 3.0), ("r", 4.0)],
            [("m", "S"), ("S", "p"), ("S", "q"), ("S", "r")],
        )
        .unwrap();
        let (c, report) = split_complex_fork(&g).unwrap();
        assert_eq!(report.inserted.len(), 1);
        assert_eq!(c.count_kind(CriticalKind::UpFork), 2);
        assert!(c.validate_conditioned().is_ok());
        // the lower fork keeps the up edge with the lowest upper endpoint
        let s = c.node("S").unwrap();
        let nbrs: Vec<&str> = c.neighbors(s).iter().map(|&(w, _)| c.name(w)).collect();
        assert!(nbrs.contains(&"p"));
    }

    #[test]
    fn five_way_fork_becomes_chain() {
        let mut nodes = vec![("S", 10.0), ("top", 20.0)];
        let lows = ["l1", "l2", "l3", "l4", "l5"];
        for (i, l) in lows.iter().enumerate() {
            nodes.push((l, i as f64));
        }
        let mut edges = vec![("S", "top")];
        for l in lows {
            edges.push((l, "S"));
        }
        let g = ReebGraph::from_parts(nodes, edges).unwrap();
        let (c, report) = split_complex_fork(&g).unwrap();
        assert_eq!(report.inserted.len(), 3);
        assert_eq!(c.count_kind(CriticalKind::DownFork), 4);
        assert!(c.validate_conditioned().is_ok());
        let s = c.node("S").unwrap();
        let kept: Vec<&str> = c
            .neighbors(s)
            .iter()
            .map(|&(w, _)| c.name(w))
            .filter(|n| n.starts_with('l'))
            .collect();
        assert_eq!(kept, ["l5"]);
    }

    #[test]
    fn node_with_three_up_and_no_down() {
        // a 0:3 node (three up, none down) needs a complex split then a
        // degenerate split
        let g = ReebGraph::from_parts(
            [("S", 0.0), ("p", 1.0), ("q", 2.0), ("r", 3.0)],
            [("S", "p"), ("S", "q"), ("S", "r")],
        )
        .unwrap();
        let (c, report) = condition(&g).unwrap();
        assert!(c.validate_conditioned().is_ok());
        assert_eq!(report.inserted.len(), 2);
        assert_eq!(c.cycle_rank(), 0);
    }

    #[test]
    fn conditioned_fixture_is_unchanged() {
        let g = fixtures::sixteen_node();
        let (c, report) = condition(&g).unwrap();
        assert_eq!(c, g);
        assert!(report.is_empty());
    }

    #[test]
    fn degenerate_inputs_are_errors() {
        let g = ReebGraph::from_parts([("A", 0.0)], []).unwrap();
        assert!(matches!(condition(&g), Err(Error::IsolatedNode(_))));
        let empty = GraphBuilder::new().build();
        assert!(matches!(condition(&empty), Err(Error::EmptyGraph)));
    }

    #[test]
    fn disconnected_input_conditions_per_component() {
        let g = ReebGraph::from_parts(
            [("A", 0.0), ("B", 1.0), ("C", 2.0), ("D", 3.0), ("E", 4.0)],
            [("A", "B"), ("B", "C"), ("D", "E")],
        )
        .unwrap();
        let (c, _) = condition(&g).unwrap();
        let v = c.validate_conditioned().unwrap_err();
        assert!(v.iter().all(|x| matches!(x.rule, ViolationRule::Disconnected { .. })));
        let parts = condition_components(&g).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|(p, _)| p.validate_conditioned().is_ok()));
    }

    #[test]
    fn offsets_respace_when_crowded() {
        // a node with many down and many up edges forces repeated insertions
        // on both sides of the same source
        let mut nodes = vec![("S", 50.0)];
        let names: Vec<String> = (0..30).map(|i| format!("n{i}")).collect();
        for (i, n) in names.iter().enumerate() {
            let v = if i < 15 { i as f64 } else { 60.0 + i as f64 };
            nodes.push((n.as_str(), v));
        }
        let edges: Vec<(&str, &str)> = names.iter().map(|n| ("S", n.as_str())).collect();
        let g = ReebGraph::from_parts(nodes, edges).unwrap();
        let (c, _) = condition(&g).unwrap();
        assert!(c.validate_conditioned().is_ok());
        assert_eq!(c.cycle_rank(), 0);
    }
}
