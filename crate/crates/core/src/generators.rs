//! Synthetic inputs: random split/join trees, random cyclic graphs, and
//! cycle cutting.
//!
//! Growth starts from one seed node. Each iteration adds a fork (a hub with
//! three tips) and glues one or two tips to existing 1-valent nodes by
//! inserting an edge, so `n` iterations give `4n + 1` nodes. Randomness comes
//! from ChaCha8 seeded with `seed_from_u64`, which is stable across
//! platforms and releases.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conditioning::condition;
use crate::error::{Error, Result};
use crate::model::{GraphBuilder, ReebGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenKind {
    Tree,
    Graph,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TreeMode {
    /// Values grow away from the seed; every hub is an up-fork.
    #[default]
    Split,
    /// Mirror of `Split`; every hub is a down-fork.
    Join,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenSpec {
    pub kind: GenKind,
    pub n: usize,
    pub seed: u64,
    /// Probability of gluing two tips (graph kind only).
    pub p2: f64,
    pub tree_mode: TreeMode,
}

impl GenSpec {
    pub fn tree(n: usize, seed: u64, mode: TreeMode) -> Self {
        GenSpec {
            kind: GenKind::Tree,
            n,
            seed,
            p2: 0.0,
            tree_mode: mode,
        }
    }

    pub fn graph(n: usize, seed: u64, p2: f64) -> Self {
        GenSpec {
            kind: GenKind::Graph,
            n,
            seed,
            p2,
            tree_mode: TreeMode::Split,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidSpec("n must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.p2) {
            return Err(Error::InvalidSpec(format!("p2 = {} is not a probability", self.p2)));
        }
        Ok(())
    }
}

/// Generates an unconditioned graph.
pub fn generate(spec: &GenSpec) -> Result<ReebGraph> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let total = 4 * spec.n + 1;
    let mut values = vec![0.0f64; total];
    let mut valence = vec![0u32; total];
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(5 * spec.n);
    // nodes with valence <= 1 that may receive a glued tip
    let mut open: Vec<usize> = vec![0];
    let tree = spec.kind == GenKind::Tree;
    if !tree {
        values[0] = rng.gen::<f64>();
    }
    for it in 0..spec.n {
        let hub = 1 + 4 * it;
        let tips = [hub + 1, hub + 2, hub + 3];
        for t in tips {
            edges.push((hub, t));
        }
        valence[hub] = 3;
        let glue_two = !tree && open.len() >= 2 && rng.gen_bool(spec.p2);
        let count = if glue_two { 2 } else { 1 };
        let mut targets = Vec::with_capacity(2);
        for _ in 0..count {
            let i = rng.gen_range(0..open.len());
            targets.push(open.swap_remove(i));
        }
        for (k, &x) in targets.iter().enumerate() {
            let t = tips[k];
            edges.push((x, t));
            valence[x] += 1;
            valence[t] = 2;
            if valence[x] <= 1 {
                open.push(x);
            }
        }
        if tree {
            // the glued tip sits above its anchor, the hub above the tip and
            // the free tips above the hub
            let base = values[targets[0]];
            values[tips[0]] = base + step(&mut rng);
            values[hub] = values[tips[0]] + step(&mut rng);
            values[tips[1]] = values[hub] + step(&mut rng);
            values[tips[2]] = values[hub] + step(&mut rng);
        } else {
            values[hub] = rng.gen::<f64>();
            for t in tips {
                values[t] = rng.gen::<f64>();
            }
        }
        for &t in &tips[count..] {
            valence[t] = 1;
            open.push(t);
        }
    }
    if tree && spec.tree_mode == TreeMode::Join {
        for v in &mut values {
            *v = -*v;
        }
    }
    let mut b = GraphBuilder::new();
    for (i, &f) in values.iter().enumerate() {
        b.add_node(format!("v{i}"), f)?;
    }
    for (a, c) in edges {
        b.add_edge(crate::model::NodeId(a as u32), crate::model::NodeId(c as u32))?;
    }
    Ok(b.build())
}

fn step(rng: &mut ChaCha8Rng) -> f64 {
    // strictly positive increment
    1.0 - rng.gen::<f64>()
}

/// Indices of bridge edges. Parallel edges are never bridges.
pub fn bridges(graph: &ReebGraph) -> Vec<bool> {
    let adj: Vec<Vec<(u32, u32)>> = graph
        .nodes()
        .map(|v| graph.neighbors(v).iter().map(|&(w, e)| (w.0, e.0)).collect())
        .collect();
    bridges_of(&adj, &vec![true; graph.edge_count()])
}

/// Iterative DFS low-link over the live edges of an adjacency list.
fn bridges_of(adj: &[Vec<(u32, u32)>], alive: &[bool]) -> Vec<bool> {
    let n = adj.len();
    let mut is_bridge = vec![false; alive.len()];
    let mut disc = vec![u32::MAX; n];
    let mut low = vec![0u32; n];
    let mut time = 0u32;
    // (node, parent edge, next neighbor index)
    let mut stack: Vec<(usize, u32, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != u32::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        stack.push((root, u32::MAX, 0));
        while let Some(&mut (v, pe, ref mut next)) = stack.last_mut() {
            if *next < adj[v].len() {
                let (w, e) = adj[v][*next];
                *next += 1;
                if e == pe || !alive[e as usize] {
                    continue;
                }
                let w = w as usize;
                if disc[w] == u32::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, e, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] > disc[p] {
                        is_bridge[pe as usize] = true;
                    }
                }
            }
        }
    }
    is_bridge
}

/// Removes `k` non-bridge edges chosen uniformly (bridges recomputed after
/// each removal) and reconditions. The cycle rank drops by exactly `k`.
pub fn cut_cycles(graph: &ReebGraph, k: usize, seed: u64) -> Result<ReebGraph> {
    let available = graph.cycle_rank();
    if k > available {
        return Err(Error::TooManyCuts { requested: k, available });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let adj: Vec<Vec<(u32, u32)>> = graph
        .nodes()
        .map(|v| graph.neighbors(v).iter().map(|&(w, e)| (w.0, e.0)).collect())
        .collect();
    let mut alive = vec![true; graph.edge_count()];
    let mut candidates = Vec::new();
    for _ in 0..k {
        let br = bridges_of(&adj, &alive);
        candidates.clear();
        candidates.extend((0..alive.len()).filter(|&e| alive[e] && !br[e]));
        let &cut = candidates
            .choose(&mut rng)
            .expect("positive cycle rank implies a non-bridge edge");
        alive[cut] = false;
    }
    let mut b = GraphBuilder::new();
    for v in graph.nodes() {
        b.add_node_with_key(graph.name(v).into(), graph.key(v), graph.is_synthetic(v))
            .expect("names are unique");
    }
    for (e, &[a, c]) in graph.edges().iter().enumerate() {
        if alive[e] {
            b.add_edge(a, c).expect("edge was valid");
        }
    }
    Ok(condition(&b.build())?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::CriticalKind;

    #[test]
    fn node_counts() {
        for n in [1, 7, 100] {
            let t = generate(&GenSpec::tree(n, 3, TreeMode::Split)).unwrap();
            assert_eq!(t.node_count(), 4 * n + 1);
            assert_eq!(t.cycle_rank(), 0);
            assert!(t.is_connected());
            let g = generate(&GenSpec::graph(n, 3, 0.5)).unwrap();
            assert_eq!(g.node_count(), 4 * n + 1);
            assert!(g.is_connected());
        }
    }

    #[test]
    fn smallest_tree() {
        let t = generate(&GenSpec::tree(1, 0, TreeMode::Split)).unwrap();
        assert_eq!(t.node_count(), 5);
        assert_eq!(t.edge_count(), 4);
    }

    #[test]
    fn hub_kinds_follow_mode() {
        for (mode, kind) in [(TreeMode::Split, CriticalKind::UpFork), (TreeMode::Join, CriticalKind::DownFork)] {
            let t = generate(&GenSpec::tree(50, 9, mode)).unwrap();
            for it in 0..50 {
                let hub = t.node(&format!("v{}", 1 + 4 * it)).unwrap();
                assert_eq!(t.kind(hub), kind);
            }
        }
    }

    #[test]
    fn deterministic() {
        let a = generate(&GenSpec::graph(40, 11, 0.5)).unwrap();
        let b = generate(&GenSpec::graph(40, 11, 0.5)).unwrap();
        assert_eq!(a, b);
        let c = generate(&GenSpec::graph(40, 12, 0.5)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn probability_extremes() {
        let g = generate(&GenSpec::graph(30, 1, 0.0)).unwrap();
        assert_eq!(g.cycle_rank(), 0);
        let g = generate(&GenSpec::graph(30, 1, 1.0)).unwrap();
        // a double gluing consumes one open node net, so the pool of 1-valent
        // nodes forces single gluings once it runs low
        let r = g.cycle_rank();
        assert!(r > 10 && r < 30, "{r}");
    }

    #[test]
    fn invalid_specs() {
        assert!(generate(&GenSpec::tree(0, 0, TreeMode::Split)).is_err());
        assert!(generate(&GenSpec::graph(3, 0, 1.5)).is_err());
    }

    #[test]
    fn bridges_of_fixture() {
        let g = fixtures::sixteen_node();
        let br = bridges(&g);
        let names: Vec<(&str, &str)> = g
            .edges()
            .iter()
            .enumerate()
            .filter(|&(e, _)| br[e])
            .map(|(_, &[a, b])| (g.name(a), g.name(b)))
            .collect();
        assert_eq!(
            names,
            [("A", "C"), ("B", "C"), ("C", "D"), ("E", "G"), ("H", "K"), ("M", "N"), ("N", "O"), ("N", "P")]
        );
        assert!(bridges(&fixtures::double_edge()).iter().all(|&b| !b));
    }

    #[test]
    fn cutting_reduces_cycle_rank() {
        let g = fixtures::sixteen_node();
        for k in 0..=3 {
            let c = cut_cycles(&g, k, 5).unwrap();
            assert_eq!(c.cycle_rank(), 3 - k);
            assert!(c.validate_conditioned().is_ok());
        }
        assert!(matches!(
            cut_cycles(&g, 4, 5),
            Err(Error::TooManyCuts { requested: 4, available: 3 })
        ));
    }
}
