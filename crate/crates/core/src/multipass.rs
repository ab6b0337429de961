//! Multipass pairing: join and split trees reduced by a stack machine, the
//! global min/max pair, and one superlevel sweep per essential up-fork.

use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::{NodePair, PersistenceDiagram};
use crate::error::{Error, Result};
use crate::model::{CriticalKind, Direction, NodeId, Oriented, ReebGraph};
use crate::unionfind::UnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TreeKind {
    /// Sublevel merges: leaves are minima, interior nodes down-forks.
    Join,
    /// Superlevel merges: leaves are maxima, interior nodes up-forks.
    Split,
}

impl TreeKind {
    pub fn direction(self) -> Direction {
        match self {
            TreeKind::Join => Direction::Ascending,
            TreeKind::Split => Direction::Descending,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub node: NodeId,
    /// Empty for leaves, two entries for forks, in adjacency order of the
    /// fork's lower neighbors.
    pub children: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeTree {
    pub kind: TreeKind,
    pub nodes: Vec<TreeNode>,
    pub root: u32,
}

impl MergeTree {
    pub fn root_node(&self) -> NodeId {
        self.nodes[self.root as usize].node
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|t| t.children.is_empty()).count()
    }

    pub fn fork_count(&self) -> usize {
        self.nodes.len() - self.leaf_count()
    }

    /// Graph ids of the children of the tree node holding `v`.
    pub fn children_of(&self, v: NodeId) -> Option<Vec<NodeId>> {
        self.nodes
            .iter()
            .find(|t| t.node == v)
            .map(|t| t.children.iter().map(|&c| self.nodes[c as usize].node).collect())
    }
}

/// Builds the join or split tree of a conditioned graph.
pub fn build_merge_tree(graph: &ReebGraph, kind: TreeKind) -> Result<MergeTree> {
    graph.require_conditioned()?;
    Ok(build_oriented(Oriented::new(graph, kind.direction()), kind))
}

fn build_oriented(view: Oriented<'_>, kind: TreeKind) -> MergeTree {
    let n = view.len();
    let mut uf = UnionFind::new(n);
    // tree node currently topping each component, indexed by root
    let mut top = vec![u32::MAX; n];
    let mut nodes: Vec<TreeNode> = Vec::new();
    let mut root = 0u32;
    let mut roots: Vec<u32> = Vec::with_capacity(2);
    for v in view.sweep() {
        let r = view.rank(v);
        roots.clear();
        for &(w, _) in view.neighbors(v) {
            if view.rank(w) < r {
                let c = uf.find(w.0);
                if !roots.contains(&c) {
                    roots.push(c);
                }
            }
        }
        let kind_v = view.kind(v);
        if kind_v == CriticalKind::Minimum {
            top[v.index()] = nodes.len() as u32;
            root = nodes.len() as u32;
            nodes.push(TreeNode { node: v, children: Vec::new() });
        } else if kind_v == CriticalKind::DownFork && roots.len() == 2 {
            let children = vec![top[roots[0] as usize], top[roots[1] as usize]];
            let id = nodes.len() as u32;
            nodes.push(TreeNode { node: v, children });
            let c = uf.union(roots[0], roots[1]);
            let c = uf.union(c, v.0);
            top[c as usize] = id;
            root = id;
        } else if let Some(&first) = roots.first() {
            let t = top[first as usize];
            let mut c = v.0;
            for &x in &roots {
                c = uf.union(c, x);
            }
            top[c as usize] = t;
        }
    }
    MergeTree { kind, nodes, root }
}

/// Stack configurations encountered while reducing a merge tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StackOp {
    /// Top is an unexpanded fork: its children are pushed.
    Expand,
    /// Top is a leaf over an unexpanded fork: the two swap.
    Swap,
    /// Two leaves over their parent fork: the younger pairs with the fork.
    Pair,
}

/// Which child of a fork ends on top of the stack after expansion.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ChildOrder {
    /// The first child in adjacency order ends on top.
    #[default]
    Adjacency,
    /// The child with the lower (elder) representative is pushed first,
    /// so the younger subtree ends on top.
    ElderFirst,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreePairing {
    pub pairs: Vec<NodePair>,
    /// The extremum left on the stack: global min for a join tree, global
    /// max for a split tree.
    pub survivor: NodeId,
    pub trace: Vec<StackOp>,
}

#[derive(Clone, Copy, Debug)]
enum Frame {
    Fork { tree: u32, expanded: bool },
    Leaf { rep: NodeId },
}

/// Reduces a merge tree with the stack machine, pairing every fork.
pub fn pair_merge_tree(graph: &ReebGraph, tree: &MergeTree, order: ChildOrder) -> Result<TreePairing> {
    if tree.nodes.is_empty() {
        return Err(Error::MalformedTree("empty tree".into()));
    }
    for t in &tree.nodes {
        if !t.children.is_empty() && t.children.len() != 2 {
            return Err(Error::MalformedTree(alloc::format!(
                "fork {} has {} children",
                graph.name(t.node),
                t.children.len()
            )));
        }
    }
    let view = Oriented::new(graph, tree.kind.direction());
    let reps = if order == ChildOrder::ElderFirst {
        representatives(&view, tree)
    } else {
        Vec::new()
    };
    let frame_of = |i: u32| {
        let t = &tree.nodes[i as usize];
        if t.children.is_empty() {
            Frame::Leaf { rep: t.node }
        } else {
            Frame::Fork { tree: i, expanded: false }
        }
    };
    let mut stack = vec![frame_of(tree.root)];
    let mut pairs = Vec::new();
    let mut trace = Vec::new();
    loop {
        let len = stack.len();
        match stack[len - 1] {
            Frame::Fork { tree: i, expanded: false } => {
                stack[len - 1] = Frame::Fork { tree: i, expanded: true };
                let mut ch = [tree.nodes[i as usize].children[0], tree.nodes[i as usize].children[1]];
                if order == ChildOrder::ElderFirst
                    && view.rank(reps[ch[0] as usize]) < view.rank(reps[ch[1] as usize])
                {
                    ch.swap(0, 1);
                }
                stack.push(frame_of(ch[1]));
                stack.push(frame_of(ch[0]));
                trace.push(StackOp::Expand);
            }
            Frame::Leaf { rep } if len == 1 => {
                return Ok(TreePairing { pairs, survivor: rep, trace });
            }
            Frame::Leaf { rep: a } => match stack[len - 2] {
                Frame::Fork { expanded: false, .. } => {
                    stack.swap(len - 1, len - 2);
                    trace.push(StackOp::Swap);
                }
                Frame::Leaf { rep: b } => {
                    let Frame::Fork { tree: f, expanded: true } = stack[len - 3] else {
                        return Err(Error::MalformedTree("two leaves without parent".into()));
                    };
                    let fork = tree.nodes[f as usize].node;
                    let (elder, younger) = if view.rank(a) < view.rank(b) { (a, b) } else { (b, a) };
                    debug_assert!(view.rank(elder) < view.rank(younger));
                    pairs.push(match tree.kind {
                        TreeKind::Join => NodePair::min_saddle(younger, fork),
                        TreeKind::Split => NodePair::saddle_max(younger, fork),
                    });
                    stack.truncate(len - 3);
                    stack.push(Frame::Leaf { rep: elder });
                    trace.push(StackOp::Pair);
                }
                Frame::Fork { expanded: true, .. } => {
                    return Err(Error::MalformedTree("leaf alone over expanded fork".into()));
                }
            },
            Frame::Fork { expanded: true, .. } => {
                return Err(Error::MalformedTree("expanded fork on top".into()));
            }
        }
    }
}

/// Elder extremum of every subtree. Children precede parents in `nodes`.
fn representatives(view: &Oriented<'_>, tree: &MergeTree) -> Vec<NodeId> {
    let mut reps: Vec<NodeId> = Vec::with_capacity(tree.nodes.len());
    for t in &tree.nodes {
        let rep = t
            .children
            .iter()
            .map(|&c| reps[c as usize])
            .min_by_key(|&r| view.rank(r))
            .unwrap_or(t.node);
        reps.push(rep);
    }
    reps
}

/// The global pair from the join and split survivors.
pub fn pair_global(min_survivor: NodeId, max_survivor: NodeId) -> NodePair {
    NodePair::global(min_survivor, max_survivor)
}

/// Reusable state for essential up-fork sweeps.
struct SuperlevelSweep {
    uf: UnionFind,
}

impl SuperlevelSweep {
    fn new(n: usize) -> Self {
        // two extra slots for the halves of the split up-fork
        SuperlevelSweep { uf: UnionFind::new(n + 2) }
    }

    fn partner(&mut self, graph: &ReebGraph, s: NodeId) -> Result<NodeId> {
        let n = graph.node_count() as u32;
        let (left, right) = (n, n + 1);
        let rs = graph.rank(s);
        let left_edge = graph
            .neighbors(s)
            .iter()
            .find(|(w, _)| graph.rank(*w) > rs)
            .map(|&(_, e)| e)
            .ok_or_else(|| Error::SweepExhausted(graph.name(s).into()))?;
        self.uf.reset();
        for r in rs + 1..n {
            let v = graph.node_at_rank(r);
            for &(w, e) in graph.neighbors(v) {
                let rw = graph.rank(w);
                if w == s {
                    let half = if e == left_edge { left } else { right };
                    self.uf.union(v.0, half);
                } else if rw > rs && rw < r {
                    self.uf.union(v.0, w.0);
                }
                // edges reaching below f(s) are truncated stubs that belong
                // to v's component already
            }
            if self.uf.find(left) == self.uf.find(right) {
                return Ok(v);
            }
        }
        Err(Error::SweepExhausted(graph.name(s).into()))
    }
}

/// Down-fork partner of one essential up-fork.
pub fn pair_essential_upfork(graph: &ReebGraph, s: NodeId) -> Result<NodeId> {
    SuperlevelSweep::new(graph.node_count()).partner(graph, s)
}

/// Up-forks that are not interior nodes of the split tree, ascending.
pub fn essential_up_forks(graph: &ReebGraph, split: &MergeTree) -> Vec<NodeId> {
    let mut ordinary = vec![false; graph.node_count()];
    for t in &split.nodes {
        ordinary[t.node.index()] = true;
    }
    graph
        .order()
        .iter()
        .copied()
        .filter(|&v| graph.kind(v) == CriticalKind::UpFork && !ordinary[v.index()])
        .collect()
}

/// All pairs of a conditioned graph, computed by the multipass pipeline.
pub fn multipass_pairs(graph: &ReebGraph) -> Result<Vec<NodePair>> {
    graph.require_conditioned()?;
    let join = build_oriented(Oriented::new(graph, Direction::Ascending), TreeKind::Join);
    let split = build_oriented(Oriented::new(graph, Direction::Descending), TreeKind::Split);
    let jp = pair_merge_tree(graph, &join, ChildOrder::Adjacency)?;
    let sp = pair_merge_tree(graph, &split, ChildOrder::Adjacency)?;
    let mut pairs = jp.pairs;
    pairs.extend(sp.pairs);
    pairs.push(pair_global(jp.survivor, sp.survivor));
    let mut sweep = SuperlevelSweep::new(graph.node_count());
    for s in essential_up_forks(graph, &split) {
        let d = sweep.partner(graph, s)?;
        pairs.push(NodePair::cycle(d, s));
    }
    Ok(pairs)
}

/// Ordinary and extended diagram of a conditioned graph.
pub fn pair_multipass(graph: &ReebGraph) -> Result<PersistenceDiagram> {
    let pairs = multipass_pairs(graph)?;
    Ok(PersistenceDiagram::from_node_pairs(graph, "multipass", &pairs))
}
