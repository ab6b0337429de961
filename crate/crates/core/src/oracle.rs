//! Brute-force pairing straight from the definitions, for cross-checking.
//!
//! Ordinary pairs come from plain union-find sweeps applying the elder rule.
//! Cycle pairs come from exhaustive simple-cycle enumeration: an essential
//! down-fork `s` is paired with the minimum of the cycle topped at `s` whose
//! minimum is highest. Meant for graphs of a few hundred nodes.

use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::{check_matching, NodePair, PersistenceDiagram};
use crate::error::{Error, Result};
use crate::model::{CriticalKind, EdgeId, NodeId, ReebGraph};
use crate::unionfind::UnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    /// Refuse graphs with more nodes than this.
    pub max_nodes: usize,
    /// Total number of path extensions allowed during cycle search.
    pub budget: u64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            max_nodes: 1_000,
            budget: 1_000_000,
        }
    }
}

/// A simple cycle as a closed node sequence (first node not repeated).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleCycle {
    pub nodes: Vec<NodeId>,
    pub edges: Vec<EdgeId>,
    pub max: NodeId,
    pub min: NodeId,
}

/// Sublevel sweep: each down-fork merging two components pairs with the
/// younger creator; mirrored for up-forks; plus the global pair.
pub fn oracle_ordinary(graph: &ReebGraph) -> Result<Vec<NodePair>> {
    graph.require_conditioned()?;
    let mut pairs = elder_sweep(graph, false);
    pairs.extend(elder_sweep(graph, true));
    let order = graph.order();
    pairs.push(NodePair::global(order[0], order[order.len() - 1]));
    Ok(pairs)
}

fn elder_sweep(graph: &ReebGraph, descending: bool) -> Vec<NodePair> {
    let n = graph.node_count();
    let mut uf = UnionFind::new(n);
    let mut creator = vec![NodeId(0); n];
    let mut done = vec![false; n];
    let mut pairs = Vec::new();
    let order: Vec<NodeId> = if descending {
        graph.order().iter().rev().copied().collect()
    } else {
        graph.order().to_vec()
    };
    // "elder" = earlier in the sweep
    let sweep_pos = |v: NodeId| -> u32 {
        if descending {
            n as u32 - 1 - graph.rank(v)
        } else {
            graph.rank(v)
        }
    };
    for &v in &order {
        let mut roots: Vec<u32> = Vec::new();
        for &(w, _) in graph.neighbors(v) {
            if done[w.index()] {
                let r = uf.find(w.0);
                if !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
        let merging_fork = if descending {
            CriticalKind::UpFork
        } else {
            CriticalKind::DownFork
        };
        if roots.len() == 2 && graph.kind(v) == merging_fork {
            let (c0, c1) = (creator[roots[0] as usize], creator[roots[1] as usize]);
            let (elder, younger) = if sweep_pos(c0) < sweep_pos(c1) {
                (c0, c1)
            } else {
                (c1, c0)
            };
            pairs.push(if descending {
                NodePair::saddle_max(younger, v)
            } else {
                NodePair::min_saddle(younger, v)
            });
            let r = uf.union(roots[0], roots[1]);
            let r = uf.union(r, v.0);
            creator[r as usize] = elder;
        } else if roots.is_empty() {
            creator[v.index()] = v;
        } else {
            let c = creator[roots[0] as usize];
            let mut r = v.0;
            for root in roots {
                r = uf.union(r, root);
            }
            creator[r as usize] = c;
        }
        done[v.index()] = true;
    }
    pairs
}

/// Down-forks whose two lower branches already share a sublevel component.
pub fn essential_down_forks(graph: &ReebGraph) -> Vec<NodeId> {
    let mut uf = UnionFind::new(graph.node_count());
    let mut out = Vec::new();
    for &v in graph.order() {
        let r = graph.rank(v);
        let lower: Vec<NodeId> = graph
            .neighbors(v)
            .iter()
            .filter(|(w, _)| graph.rank(*w) < r)
            .map(|&(w, _)| w)
            .collect();
        if graph.kind(v) == CriticalKind::DownFork && uf.find(lower[0].0) == uf.find(lower[1].0) {
            out.push(v);
        }
        for w in lower {
            uf.union(v.0, w.0);
        }
    }
    out
}

struct CycleSearch<'a> {
    graph: &'a ReebGraph,
    top: NodeId,
    on_path: Vec<bool>,
    path: Vec<NodeId>,
    path_edges: Vec<EdgeId>,
    spent: u64,
    budget: u64,
}

impl CycleSearch<'_> {
    /// Depth-first search for simple paths from `v` back to `top` through
    /// nodes below `top`, leaving by `last_edge` at the end. `visit` sees
    /// every closed cycle; it returns a bound, and subtrees whose running
    /// minimum cannot beat the bound are skipped.
    fn extend(
        &mut self,
        v: NodeId,
        min_rank: u32,
        closing: EdgeId,
        bound: &mut Option<u32>,
        visit: &mut dyn FnMut(&[NodeId], &[EdgeId], Option<u32>) -> Option<u32>,
    ) -> Result<()> {
        self.spent += 1;
        if self.spent > self.budget {
            return Err(Error::CycleBudgetExceeded(self.budget));
        }
        let top_rank = self.graph.rank(self.top);
        for &(w, e) in self.graph.neighbors(v) {
            if Some(&e) == self.path_edges.last() {
                continue;
            }
            if w == self.top {
                if e == closing {
                    self.path_edges.push(e);
                    *bound = visit(&self.path, &self.path_edges, *bound);
                    self.path_edges.pop();
                }
                continue;
            }
            if self.on_path[w.index()] || self.graph.rank(w) > top_rank {
                continue;
            }
            let m = min_rank.min(self.graph.rank(w));
            if matches!(*bound, Some(b) if m <= b) {
                continue;
            }
            self.on_path[w.index()] = true;
            self.path.push(w);
            self.path_edges.push(e);
            self.extend(w, m, closing, bound, visit)?;
            self.path_edges.pop();
            self.path.pop();
            self.on_path[w.index()] = false;
        }
        Ok(())
    }
}

/// Runs the search for cycles whose highest node is the down-fork `top`.
fn search_topped(
    graph: &ReebGraph,
    top: NodeId,
    budget: &mut u64,
    prune: bool,
    visit: &mut dyn FnMut(&[NodeId], &[EdgeId], Option<u32>) -> Option<u32>,
) -> Result<()> {
    let r = graph.rank(top);
    let down: Vec<(NodeId, EdgeId)> = graph
        .neighbors(top)
        .iter()
        .copied()
        .filter(|(w, _)| graph.rank(*w) < r)
        .collect();
    let mut search = CycleSearch {
        graph,
        top,
        on_path: vec![false; graph.node_count()],
        path: Vec::new(),
        path_edges: Vec::new(),
        spent: 0,
        budget: *budget,
    };
    // Every cycle topped at `top` leaves by one down edge and returns by
    // another; fixing `i < j` counts each cycle once.
    for i in 0..down.len() {
        for j in i + 1..down.len() {
            let (start, e_out) = down[i];
            let closing = down[j].1;
            search.on_path[top.index()] = true;
            search.on_path[start.index()] = true;
            search.path.clear();
            search.path.push(top);
            search.path.push(start);
            search.path_edges.clear();
            search.path_edges.push(e_out);
            let mut bound = None;
            let mut wrapped = |p: &[NodeId], e: &[EdgeId], b: Option<u32>| {
                let out = visit(p, e, b);
                if prune {
                    out
                } else {
                    None
                }
            };
            search.extend(start, graph.rank(start), closing, &mut bound, &mut wrapped)?;
            search.on_path[start.index()] = false;
        }
    }
    *budget -= search.spent.min(*budget);
    Ok(())
}

/// Every simple cycle of the graph, each reported once.
pub fn enumerate_simple_cycles(graph: &ReebGraph, budget: u64) -> Result<Vec<SimpleCycle>> {
    let mut remaining = budget;
    let mut cycles = Vec::new();
    for &top in graph.order() {
        let mut visit = |p: &[NodeId], e: &[EdgeId], _b: Option<u32>| {
            let min = *p
                .iter()
                .min_by_key(|v| graph.rank(**v))
                .expect("cycle has nodes");
            cycles.push(SimpleCycle {
                nodes: p.to_vec(),
                edges: e.to_vec(),
                max: top,
                min,
            });
            None
        };
        search_topped(graph, top, &mut remaining, false, &mut visit).map_err(|_| {
            Error::CycleBudgetExceeded(budget)
        })?;
    }
    Ok(cycles)
}

/// Cycle pairs: each essential down-fork with the highest minimum over the
/// simple cycles it tops.
pub fn oracle_essential(graph: &ReebGraph, options: OracleOptions) -> Result<Vec<NodePair>> {
    graph.require_conditioned()?;
    guard(graph, options)?;
    let mut remaining = options.budget;
    let mut pairs = Vec::new();
    for s in essential_down_forks(graph) {
        let mut best: Option<u32> = None;
        let mut visit = |p: &[NodeId], _e: &[EdgeId], _b: Option<u32>| {
            let m = p.iter().map(|&v| graph.rank(v)).min().expect("cycle has nodes");
            if best.is_none_or(|b| m > b) {
                best = Some(m);
            }
            best
        };
        search_topped(graph, s, &mut remaining, true, &mut visit)
            .map_err(|_| Error::CycleBudgetExceeded(options.budget))?;
        let m = best.ok_or_else(|| Error::NoCandidate(graph.name(s).into()))?;
        pairs.push(NodePair::cycle(s, graph.node_at_rank(m)));
    }
    Ok(pairs)
}

fn guard(graph: &ReebGraph, options: OracleOptions) -> Result<()> {
    if graph.node_count() > options.max_nodes {
        return Err(Error::TooLarge {
            nodes: graph.node_count(),
            limit: options.max_nodes,
        });
    }
    Ok(())
}

pub fn oracle_pairs(graph: &ReebGraph, options: OracleOptions) -> Result<Vec<NodePair>> {
    guard(graph, options)?;
    let mut pairs = oracle_ordinary(graph)?;
    pairs.extend(oracle_essential(graph, options)?);
    if let Err(msg) = check_matching(graph, &pairs) {
        panic!("oracle produced an invalid matching: {msg}");
    }
    Ok(pairs)
}

pub fn oracle_diagram(graph: &ReebGraph, options: OracleOptions) -> Result<PersistenceDiagram> {
    let pairs = oracle_pairs(graph, options)?;
    Ok(PersistenceDiagram::from_node_pairs(graph, "oracle", &pairs))
}
