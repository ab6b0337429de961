//! Single-pass pairing.
//!
//! One sweep in total order. Every pending edge (one endpoint swept, one not)
//! carries labels naming unpaired minima and up-fork legs below it. Up-forks
//! also create virtual edges: a virtual edge between two pending edges with
//! threshold `t` says they are joined through the swept region by a path
//! whose lowest node is the up-fork of rank `t`. A label may be read across
//! a chain of virtual edges only while its rank is below every threshold on
//! the chain.
//!
//! Down-forks contract their two incoming pending edges into the outgoing
//! one. Maxima remove their pending edge from the virtual graph by
//! rewiring its neighbors through the one with the highest threshold.

use alloc::collections::{BTreeMap, BinaryHeap};
use alloc::vec;
use alloc::vec::Vec;
use core::mem;

use crate::diagram::{NodePair, PersistenceDiagram};
use crate::error::{Error, Result};
use crate::model::{CriticalKind, Direction, NodeId, Oriented, ReebGraph};
use crate::unionfind::UnionFind;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SweepMode {
    /// Descending when the graph has more up-forks than down-forks.
    #[default]
    Auto,
    Ascending,
    Descending,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SinglePassOptions {
    pub mode: SweepMode,
    /// Disabling virtual edges reduces the sweep to plain label lists. Only
    /// useful for showing that they are needed.
    pub virtual_edges: bool,
}

impl Default for SinglePassOptions {
    fn default() -> Self {
        SinglePassOptions {
            mode: SweepMode::Auto,
            virtual_edges: true,
        }
    }
}

impl SinglePassOptions {
    pub fn with_mode(mode: SweepMode) -> Self {
        SinglePassOptions {
            mode,
            ..Default::default()
        }
    }
}

/// Counters collected during a sweep.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SweepStats {
    pub label_insertions: u64,
    pub virtual_edges_created: u64,
    /// Labels read from a pending edge other than the ones being processed.
    pub crossings: u64,
    /// Labels read across a chain whose bottleneck did not exceed them.
    /// Always zero; kept so tests can assert it.
    pub threshold_violations: u64,
    pub max_front: usize,
    pub max_virtual_degree: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Leg {
    None,
    Left,
    Right,
}

impl Leg {
    fn bit(self) -> u8 {
        match self {
            Leg::None => 0,
            Leg::Left => 1,
            Leg::Right => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Label {
    pub node: NodeId,
    /// Rank of `node` in sweep order.
    pub rank: u32,
    pub leg: Leg,
}

impl Label {
    fn slot(&self) -> usize {
        self.rank as usize * 3 + self.leg as usize
    }
}

pub fn choose_sweep_direction(graph: &ReebGraph, mode: SweepMode) -> Direction {
    match mode {
        SweepMode::Ascending => Direction::Ascending,
        SweepMode::Descending => Direction::Descending,
        SweepMode::Auto => {
            if graph.count_kind(CriticalKind::UpFork) > graph.count_kind(CriticalKind::DownFork) {
                Direction::Descending
            } else {
                Direction::Ascending
            }
        }
    }
}

/// State of one sweep. Pairs are reported in sweep terms: for a descending
/// sweep a "minimum" is a maximum of the graph.
pub struct SweepState<'a> {
    view: Oriented<'a>,
    virtual_edges: bool,
    next: u32,
    labels: Vec<Vec<Label>>,
    vadj: Vec<BTreeMap<u32, u32>>,
    paired: Vec<bool>,
    pairs: Vec<NodePair>,
    uf: UnionFind,
    creator: Vec<NodeId>,
    stats: SweepStats,
    front: usize,
    // scratch, reset by epoch
    epoch: u32,
    label_stamp: Vec<u32>,
    edge_stamp: Vec<u32>,
    edge_done: Vec<u32>,
    bottleneck: Vec<u32>,
    leg_stamp: Vec<u32>,
    leg_mask: Vec<u8>,
    heap: BinaryHeap<(u32, u32)>,
}

impl<'a> SweepState<'a> {
    pub fn new(graph: &'a ReebGraph, direction: Direction, virtual_edges: bool) -> Result<Self> {
        graph.require_conditioned()?;
        let n = graph.node_count();
        let m = graph.edge_count();
        Ok(SweepState {
            view: Oriented::new(graph, direction),
            virtual_edges,
            next: 0,
            labels: vec![Vec::new(); m],
            vadj: vec![BTreeMap::new(); m],
            paired: vec![false; n],
            pairs: Vec::with_capacity(n / 2 + 1),
            uf: UnionFind::new(n),
            creator: (0..n as u32).map(NodeId).collect(),
            stats: SweepStats::default(),
            front: 0,
            epoch: 0,
            label_stamp: vec![0; 3 * n],
            edge_stamp: vec![0; m],
            edge_done: vec![0; m],
            bottleneck: vec![0; m],
            leg_stamp: vec![0; n],
            leg_mask: vec![0; n],
            heap: BinaryHeap::new(),
        })
    }

    pub fn direction(&self) -> Direction {
        self.view.direction()
    }

    pub fn stats(&self) -> SweepStats {
        self.stats
    }

    pub fn pairs(&self) -> &[NodePair] {
        &self.pairs
    }

    pub fn is_paired(&self, v: NodeId) -> bool {
        self.paired[v.index()]
    }

    /// Unpaired labels currently stored on a graph edge.
    pub fn labels_on(&self, edge: crate::model::EdgeId) -> Vec<Label> {
        self.labels[edge.index()]
            .iter()
            .filter(|l| !self.paired[l.node.index()])
            .copied()
            .collect()
    }

    /// Virtual edges incident to a pending edge, as (other edge, threshold node).
    pub fn virtual_edges_of(&self, edge: crate::model::EdgeId) -> Vec<(crate::model::EdgeId, NodeId)> {
        self.vadj[edge.index()]
            .iter()
            .map(|(&x, &t)| (crate::model::EdgeId(x), self.view.node_at(t)))
            .collect()
    }

    /// Processes the next node in sweep order; `None` once all are done.
    pub fn step(&mut self) -> Result<Option<NodeId>> {
        if self.next as usize >= self.view.len() {
            return Ok(None);
        }
        let v = self.view.node_at(self.next);
        self.next += 1;
        match self.view.kind(v) {
            CriticalKind::Minimum => self.process_minimum(v),
            CriticalKind::UpFork => self.process_upfork(v),
            CriticalKind::DownFork => self.process_downfork(v)?,
            CriticalKind::Maximum => self.process_maximum(v)?,
            _ => unreachable!("conditioned graphs have canonical nodes only"),
        }
        Ok(Some(v))
    }

    pub fn run(mut self) -> Result<(Vec<NodePair>, SweepStats)> {
        while self.step()?.is_some() {}
        if let Some(v) = self.view.sweep().find(|v| !self.paired[v.index()]) {
            return Err(Error::NoCandidate(self.view.graph().name(v).into()));
        }
        Ok((self.pairs, self.stats))
    }

    /// Incoming and outgoing edges of `v` in sweep terms. Outgoing edges are
    /// ordered by the rank of their upper endpoint, then by edge id.
    fn edges_of(&mut self, v: NodeId) -> (Vec<(NodeId, u32)>, Vec<(NodeId, u32)>) {
        let r = self.view.rank(v);
        let mut inc = Vec::with_capacity(2);
        let mut out = Vec::with_capacity(2);
        for &(w, e) in self.view.neighbors(v) {
            if self.view.rank(w) < r {
                inc.push((w, e.0));
            } else {
                out.push((w, e.0));
            }
        }
        out.sort_by_key(|&(w, e)| (self.view.rank(w), e));
        self.front = self.front + out.len() - inc.len();
        self.stats.max_front = self.stats.max_front.max(self.front);
        (inc, out)
    }

    fn label(&self, v: NodeId, leg: Leg) -> Label {
        Label {
            node: v,
            rank: self.view.rank(v),
            leg,
        }
    }

    fn component_creator(&mut self, v: NodeId) -> NodeId {
        let r = self.uf.find(v.0);
        self.creator[r as usize]
    }

    fn absorb(&mut self, v: NodeId, inc: &[(NodeId, u32)]) {
        let c = self.component_creator(inc[0].0);
        let mut r = v.0;
        for &(w, _) in inc {
            r = self.uf.union(r, w.0);
        }
        self.creator[r as usize] = c;
    }

    fn pair(&mut self, p: NodePair) {
        debug_assert!(!self.paired[p.birth.index()] && !self.paired[p.death.index()]);
        self.paired[p.birth.index()] = true;
        self.paired[p.death.index()] = true;
        self.pairs.push(p);
    }

    fn process_minimum(&mut self, v: NodeId) {
        let (_, out) = self.edges_of(v);
        let l = self.label(v, Leg::None);
        self.labels[out[0].1 as usize].push(l);
        self.stats.label_insertions += 1;
    }

    fn process_upfork(&mut self, y: NodeId) {
        let (inc, out) = self.edges_of(y);
        let i = inc[0].1 as usize;
        let (o1, o2) = (out[0].1 as usize, out[1].1 as usize);
        let mut base = mem::take(&mut self.labels[i]);
        base.retain(|l| !self.paired[l.node.index()]);
        let mut right = base.clone();
        base.push(self.label(y, Leg::Left));
        right.push(self.label(y, Leg::Right));
        self.stats.label_insertions += (base.len() + right.len()) as u64;
        self.labels[o1] = base;
        self.labels[o2] = right;
        if self.virtual_edges {
            // Thresholds below y are at most rank(y), so reaching o2 through
            // o1 and the new edge is never tighter than a direct copy.
            let moved = mem::take(&mut self.vadj[i]);
            for (x, t) in moved {
                self.vadj[x as usize].remove(&(i as u32));
                self.upsert(o1 as u32, x, t);
            }
            let t = self.view.rank(y);
            self.upsert(o1 as u32, o2 as u32, t);
            self.stats.virtual_edges_created += 1;
        }
        self.absorb(y, &inc);
    }

    fn process_downfork(&mut self, v: NodeId) -> Result<()> {
        let (inc, out) = self.edges_of(v);
        let (i1, i2) = (inc[0].1 as usize, inc[1].1 as usize);
        let o = out[0].1 as usize;
        let r1 = self.uf.find(inc[0].0 .0);
        let r2 = self.uf.find(inc[1].0 .0);
        if self.virtual_edges {
            if r1 != r2 {
                let (c1, c2) = (self.creator[r1 as usize], self.creator[r2 as usize]);
                let (elder, younger) = if self.view.rank(c1) < self.view.rank(c2) {
                    (c1, c2)
                } else {
                    (c2, c1)
                };
                self.pair(NodePair::min_saddle(younger, v));
                let r = self.uf.union(r1, r2);
                let r = self.uf.union(r, v.0);
                self.creator[r as usize] = elder;
            } else {
                let u = self
                    .search(&[i1 as u32, i2 as u32], true)
                    .ok_or_else(|| Error::NoCandidate(self.view.graph().name(v).into()))?;
                self.pair(NodePair::cycle(v, u));
                self.absorb(v, &inc);
            }
        } else {
            self.literal_downfork(v, i1, i2)?;
            if r1 != r2 {
                let (c1, c2) = (self.creator[r1 as usize], self.creator[r2 as usize]);
                let elder = if self.view.rank(c1) < self.view.rank(c2) { c1 } else { c2 };
                let r = self.uf.union(r1, r2);
                let r = self.uf.union(r, v.0);
                self.creator[r as usize] = elder;
            } else {
                self.absorb(v, &inc);
            }
        }
        // contract i1 and i2 into o
        let mut merged = mem::take(&mut self.labels[i1]);
        let second = mem::take(&mut self.labels[i2]);
        self.epoch += 1;
        let epoch = self.epoch;
        merged.retain(|l| {
            let keep = !self.paired[l.node.index()] && self.label_stamp[l.slot()] != epoch;
            self.label_stamp[l.slot()] = epoch;
            keep
        });
        for l in second {
            if !self.paired[l.node.index()] && self.label_stamp[l.slot()] != epoch {
                self.label_stamp[l.slot()] = epoch;
                merged.push(l);
            }
        }
        self.labels[o] = merged;
        if self.virtual_edges {
            for i in [i1, i2] {
                let moved = mem::take(&mut self.vadj[i]);
                for (x, t) in moved {
                    self.vadj[x as usize].remove(&(i as u32));
                    if x as usize != i1 && x as usize != i2 {
                        self.upsert(o as u32, x, t);
                    }
                }
            }
        }
        Ok(())
    }

    /// Down-fork rule without virtual edges: largest up-fork with both legs
    /// in the union of the two lists, else the highest minimum.
    fn literal_downfork(&mut self, v: NodeId, i1: usize, i2: usize) -> Result<()> {
        self.epoch += 1;
        let epoch = self.epoch;
        let mut best_fork: Option<Label> = None;
        let mut best_min: Option<Label> = None;
        for i in [i1, i2] {
            for idx in 0..self.labels[i].len() {
                let l = self.labels[i][idx];
                if self.paired[l.node.index()] {
                    continue;
                }
                if l.leg == Leg::None {
                    if best_min.is_none_or(|b| l.rank > b.rank) {
                        best_min = Some(l);
                    }
                    continue;
                }
                let k = l.node.index();
                if self.leg_stamp[k] != epoch {
                    self.leg_stamp[k] = epoch;
                    self.leg_mask[k] = 0;
                }
                self.leg_mask[k] |= l.leg.bit();
                if self.leg_mask[k] == 3 && best_fork.is_none_or(|b| l.rank > b.rank) {
                    best_fork = Some(l);
                }
            }
        }
        match (best_fork, best_min) {
            (Some(u), _) => self.pair(NodePair::cycle(v, u.node)),
            (None, Some(m)) => self.pair(NodePair::min_saddle(m.node, v)),
            (None, None) => return Err(Error::NoCandidate(self.view.graph().name(v).into())),
        }
        Ok(())
    }

    fn process_maximum(&mut self, v: NodeId) -> Result<()> {
        let (inc, _) = self.edges_of(v);
        let i = inc[0].1 as usize;
        let found = if self.virtual_edges {
            self.search(&[i as u32], false)
        } else {
            self.labels[i]
                .iter()
                .filter(|l| l.leg != Leg::None && !self.paired[l.node.index()])
                .max_by_key(|l| l.rank)
                .map(|l| l.node)
        };
        match found {
            Some(u) => self.pair(NodePair::saddle_max(v, u)),
            None => {
                let c = if self.virtual_edges {
                    self.component_creator(inc[0].0)
                } else {
                    self.labels[i]
                        .iter()
                        .filter(|l| l.leg == Leg::None && !self.paired[l.node.index()])
                        .max_by_key(|l| l.rank)
                        .map(|l| l.node)
                        .ok_or_else(|| Error::NoCandidate(self.view.graph().name(v).into()))?
                };
                if self.paired[c.index()] {
                    return Err(Error::NoCandidate(self.view.graph().name(v).into()));
                }
                self.pair(NodePair::global(c, v));
            }
        }
        self.absorb(v, &inc);
        let dying = mem::take(&mut self.labels[i]);
        if !self.virtual_edges {
            return Ok(());
        }
        let mut nbrs: Vec<(u32, u32)> = mem::take(&mut self.vadj[i]).into_iter().collect();
        for &(x, _) in &nbrs {
            self.vadj[x as usize].remove(&(i as u32));
        }
        if nbrs.is_empty() {
            return Ok(());
        }
        nbrs.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        let (hub, top) = nbrs[0];
        for &(x, t) in &nbrs[1..] {
            self.upsert(hub, x, t);
        }
        // labels only visible through this edge move to the hub
        self.epoch += 1;
        let epoch = self.epoch;
        for l in &self.labels[hub as usize] {
            self.label_stamp[l.slot()] = epoch;
        }
        for l in dying {
            if l.rank < top && !self.paired[l.node.index()] && self.label_stamp[l.slot()] != epoch {
                self.label_stamp[l.slot()] = epoch;
                self.labels[hub as usize].push(l);
                self.stats.label_insertions += 1;
            }
        }
        Ok(())
    }

    fn upsert(&mut self, a: u32, b: u32, t: u32) {
        debug_assert_ne!(a, b);
        let e = self.vadj[a as usize].entry(b).or_insert(t);
        *e = (*e).max(t);
        let e = self.vadj[b as usize].entry(a).or_insert(t);
        *e = (*e).max(t);
        let d = self.vadj[a as usize].len().max(self.vadj[b as usize].len());
        self.stats.max_virtual_degree = self.stats.max_virtual_degree.max(d);
    }

    /// Largest unpaired up-fork visible from `starts` through the virtual
    /// graph. With `both_legs`, both of its legs must be visible.
    ///
    /// Pending edges are explored in decreasing order of path bottleneck,
    /// so each edge is reached with its best bottleneck, and the search can
    /// stop once the bottleneck falls to the best rank found.
    fn search(&mut self, starts: &[u32], both_legs: bool) -> Option<NodeId> {
        self.epoch += 1;
        let epoch = self.epoch;
        self.heap.clear();
        for &s in starts {
            self.edge_stamp[s as usize] = epoch;
            self.bottleneck[s as usize] = u32::MAX;
            self.heap.push((u32::MAX, s));
        }
        let mut best: Option<Label> = None;
        while let Some((b, e)) = self.heap.pop() {
            let eu = e as usize;
            if self.edge_done[eu] == epoch {
                continue;
            }
            self.edge_done[eu] = epoch;
            if best.is_some_and(|l| b <= l.rank) {
                break;
            }
            let crossing = b != u32::MAX;
            for idx in 0..self.labels[eu].len() {
                let l = self.labels[eu][idx];
                if l.leg == Leg::None || self.paired[l.node.index()] || l.rank >= b {
                    continue;
                }
                if crossing {
                    self.stats.crossings += 1;
                }
                let candidate = if both_legs {
                    let k = l.node.index();
                    if self.leg_stamp[k] != epoch {
                        self.leg_stamp[k] = epoch;
                        self.leg_mask[k] = 0;
                    }
                    self.leg_mask[k] |= l.leg.bit();
                    self.leg_mask[k] == 3
                } else {
                    true
                };
                if candidate && best.is_none_or(|x| l.rank > x.rank) {
                    best = Some(l);
                }
            }
            for (&x, &t) in &self.vadj[eu] {
                let nb = b.min(t);
                let xu = x as usize;
                if self.edge_done[xu] == epoch {
                    continue;
                }
                if self.edge_stamp[xu] != epoch || nb > self.bottleneck[xu] {
                    self.edge_stamp[xu] = epoch;
                    self.bottleneck[xu] = nb;
                    self.heap.push((nb, x));
                }
            }
        }
        best.map(|l| l.node)
    }
}

/// Pairs of a single-pass run, mapped back to graph terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SinglePassOutput {
    pub pairs: Vec<NodePair>,
    pub direction: Direction,
    pub stats: SweepStats,
}

pub fn singlepass_pairs(graph: &ReebGraph, options: SinglePassOptions) -> Result<SinglePassOutput> {
    let direction = choose_sweep_direction(graph, options.mode);
    let (mut pairs, stats) = SweepState::new(graph, direction, options.virtual_edges)?.run()?;
    if direction == Direction::Descending {
        for p in &mut pairs {
            *p = p.mirrored();
        }
    }
    Ok(SinglePassOutput {
        pairs,
        direction,
        stats,
    })
}

pub fn pair_singlepass(graph: &ReebGraph, options: SinglePassOptions) -> Result<PersistenceDiagram> {
    let out = singlepass_pairs(graph, options)?;
    Ok(PersistenceDiagram::from_node_pairs(graph, "singlepass", &out.pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{check_matching, diagram_diff};
    use crate::fixtures;
    use crate::model::EdgeId;
    use crate::multipass::pair_multipass;
    use alloc::string::String;

    fn edge_between(g: &ReebGraph, a: &str, b: &str) -> EdgeId {
        let (a, b) = (g.node(a).unwrap(), g.node(b).unwrap());
        g.neighbors(a).iter().find(|(w, _)| *w == b).unwrap().1
    }

    fn label_names(g: &ReebGraph, ls: &[Label]) -> Vec<String> {
        let mut v: Vec<String> = ls
            .iter()
            .map(|l| {
                let suffix = match l.leg {
                    Leg::None => "",
                    Leg::Left => "_L",
                    Leg::Right => "_R",
                };
                alloc::format!("{}{}", g.name(l.node), suffix)
            })
            .collect();
        v.sort();
        v
    }

    fn run_until(state: &mut SweepState<'_>, g: &ReebGraph, name: &str) {
        let target = g.node(name).unwrap();
        while let Some(v) = state.step().unwrap() {
            if v == target {
                return;
            }
        }
        panic!("node {name} never processed");
    }

    #[test]
    fn direction_choice() {
        let g = fixtures::sixteen_node();
        assert_eq!(choose_sweep_direction(&g, SweepMode::Auto), Direction::Ascending);
        assert_eq!(
            choose_sweep_direction(&g.negated(), SweepMode::Auto),
            Direction::Descending
        );
        assert_eq!(
            choose_sweep_direction(&g, SweepMode::Descending),
            Direction::Descending
        );
    }

    #[test]
    fn minimum_labels_its_edge() {
        let g = fixtures::sixteen_node();
        let mut s = SweepState::new(&g, Direction::Ascending, true).unwrap();
        run_until(&mut s, &g, "A");
        assert_eq!(label_names(&g, &s.labels_on(edge_between(&g, "A", "C"))), ["A"]);
    }

    #[test]
    fn downfork_takes_highest_minimum() {
        let g = fixtures::sixteen_node();
        let mut s = SweepState::new(&g, Direction::Ascending, true).unwrap();
        run_until(&mut s, &g, "C");
        let p = s.pairs()[0];
        assert_eq!((g.name(p.birth), g.name(p.death)), ("B", "C"));
        assert_eq!(label_names(&g, &s.labels_on(edge_between(&g, "C", "D"))), ["A"]);
    }

    #[test]
    fn upfork_splits_labels_by_leg() {
        let g = fixtures::sixteen_node();
        let mut s = SweepState::new(&g, Direction::Ascending, true).unwrap();
        run_until(&mut s, &g, "D");
        // F is below G, so the edge towards F carries the left leg
        assert_eq!(label_names(&g, &s.labels_on(edge_between(&g, "D", "F"))), ["A", "D_L"]);
        assert_eq!(label_names(&g, &s.labels_on(edge_between(&g, "D", "G"))), ["A", "D_R"]);
        let v = s.virtual_edges_of(edge_between(&g, "D", "F"));
        assert_eq!(v, [(edge_between(&g, "D", "G"), g.node("D").unwrap())]);
    }

    #[test]
    fn fixture_matches_multipass() {
        let g = fixtures::sixteen_node();
        for mode in [SweepMode::Ascending, SweepMode::Descending] {
            let out = singlepass_pairs(&g, SinglePassOptions::with_mode(mode)).unwrap();
            check_matching(&g, &out.pairs).unwrap();
            assert_eq!(out.stats.threshold_violations, 0);
            let a = PersistenceDiagram::from_node_pairs(&g, "singlepass", &out.pairs);
            let b = pair_multipass(&g).unwrap();
            assert!(diagram_diff(&a, &b).is_empty(), "{mode:?}");
        }
    }

    #[test]
    fn fixture_cycle_pairs_in_sweep() {
        let g = fixtures::sixteen_node();
        let mut s = SweepState::new(&g, Direction::Ascending, true).unwrap();
        run_until(&mut s, &g, "M");
        let names: Vec<(&str, &str)> = s
            .pairs()
            .iter()
            .map(|p| (g.name(p.birth), g.name(p.death)))
            .collect();
        assert!(names.contains(&("M", "I")));
        assert!(names.contains(&("L", "D")));
        assert!(names.contains(&("J", "F")));
    }

    #[test]
    fn global_pair_at_last_maximum() {
        let g = fixtures::single_edge();
        let out = singlepass_pairs(&g, SinglePassOptions::default()).unwrap();
        assert_eq!(out.pairs, [NodePair::global(g.node("A").unwrap(), g.node("B").unwrap())]);
    }

    #[test]
    fn double_edge_has_one_cycle() {
        let (g, _) = crate::conditioning::condition(&fixtures::double_edge()).unwrap();
        let d = pair_singlepass(&g, SinglePassOptions::default()).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.count(crate::diagram::PairClass::Cycle), 1);
    }

    #[test]
    fn unconditioned_input_is_rejected() {
        let g = fixtures::double_edge();
        assert!(matches!(
            pair_singlepass(&g, SinglePassOptions::default()),
            Err(Error::Unconditioned(_))
        ));
    }
}
