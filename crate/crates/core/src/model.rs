//! Reeb graph data model.
//!
//! A [`ReebGraph`] is an undirected multigraph whose nodes carry a scalar
//! value. Every comparison between nodes goes through [`OrderKey`], which
//! breaks ties in the value by a per-node ordinal so that the order is
//! strict. Engines never compare raw values.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Dense node index, unique within one graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Key of the strict total order: value first, then the node's ordinal,
/// then an offset used for nodes inserted next to an existing one.
#[derive(Clone, Copy, Debug)]
pub struct OrderKey {
    value: f64,
    ordinal: i64,
    offset: i64,
}

impl OrderKey {
    pub fn new(value: f64, ordinal: i64) -> Self {
        Self::with_offset(value, ordinal, 0)
    }

    pub(crate) fn with_offset(value: f64, ordinal: i64, offset: i64) -> Self {
        // -0.0 and 0.0 must compare equal so that ties fall through to the ordinal.
        let value = if value == 0.0 { 0.0 } else { value };
        OrderKey {
            value,
            ordinal,
            offset,
        }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn ordinal(&self) -> i64 {
        self.ordinal
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Key of the same node under `-f`; reverses the order exactly.
    pub fn negated(&self) -> Self {
        OrderKey::with_offset(-self.value, -self.ordinal, -self.offset)
    }
}

impl PartialEq for OrderKey {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for OrderKey {}

impl PartialOrd for OrderKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrderKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value
            .total_cmp(&other.value)
            .then(self.ordinal.cmp(&other.ordinal))
            .then(self.offset.cmp(&other.offset))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DegreeSignature {
    pub down: u32,
    pub up: u32,
}

impl DegreeSignature {
    pub fn total(&self) -> u32 {
        self.down + self.up
    }

    pub fn kind(&self) -> CriticalKind {
        match (self.down, self.up) {
            (0, 1) => CriticalKind::Minimum,
            (1, 0) => CriticalKind::Maximum,
            (1, 2) => CriticalKind::UpFork,
            (2, 1) => CriticalKind::DownFork,
            (1, 1) => CriticalKind::Regular,
            _ => CriticalKind::Degenerate,
        }
    }

    pub fn mirrored(&self) -> Self {
        DegreeSignature {
            down: self.up,
            up: self.down,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CriticalKind {
    Minimum,
    Maximum,
    UpFork,
    DownFork,
    Regular,
    Degenerate,
}

impl CriticalKind {
    /// Kind of the same node when the order is reversed.
    pub fn mirrored(self) -> Self {
        match self {
            CriticalKind::Minimum => CriticalKind::Maximum,
            CriticalKind::Maximum => CriticalKind::Minimum,
            CriticalKind::UpFork => CriticalKind::DownFork,
            CriticalKind::DownFork => CriticalKind::UpFork,
            other => other,
        }
    }

    pub fn is_canonical(self) -> bool {
        !matches!(self, CriticalKind::Regular | CriticalKind::Degenerate)
    }
}

impl fmt::Display for CriticalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CriticalKind::Minimum => "minimum",
            CriticalKind::Maximum => "maximum",
            CriticalKind::UpFork => "up-fork",
            CriticalKind::DownFork => "down-fork",
            CriticalKind::Regular => "regular",
            CriticalKind::Degenerate => "degenerate",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ViolationRule {
    Regular,
    Degenerate(DegreeSignature),
    Disconnected { components: usize },
    DuplicateKey { other: String },
}

/// One reason a graph is not in canonical form.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub node: Option<String>,
    pub rule: ViolationRule,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let node = self.node.as_deref().unwrap_or("<graph>");
        match &self.rule {
            ViolationRule::Regular => write!(f, "{node}: regular node (1 down, 1 up)"),
            ViolationRule::Degenerate(sig) => write!(
                f,
                "{node}: degenerate node ({} down, {} up)",
                sig.down, sig.up
            ),
            ViolationRule::Disconnected { components } => {
                write!(f, "{node}: graph has {components} connected components")
            }
            ViolationRule::DuplicateKey { other } => {
                write!(f, "{node}: order key collides with `{other}`")
            }
        }
    }
}

/// Immutable Reeb graph. Build one with [`GraphBuilder`].
#[derive(Clone, Debug)]
pub struct ReebGraph {
    names: Vec<String>,
    keys: Vec<OrderKey>,
    synthetic: Vec<bool>,
    edges: Vec<[NodeId; 2]>,
    adjacency: Vec<Vec<(NodeId, EdgeId)>>,
    order: Vec<NodeId>,
    rank: Vec<u32>,
    index: BTreeMap<String, NodeId>,
}

impl PartialEq for ReebGraph {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
            && self.keys == other.keys
            && self.synthetic == other.synthetic
            && self.edges == other.edges
    }
}

#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    names: Vec<String>,
    keys: Vec<OrderKey>,
    synthetic: Vec<bool>,
    edges: Vec<[NodeId; 2]>,
    index: BTreeMap<String, NodeId>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a node whose tie-break ordinal is its insertion position.
    pub fn add_node(&mut self, name: impl Into<String>, value: f64) -> Result<NodeId> {
        let ordinal = self.names.len() as i64;
        self.add_node_with_key(name.into(), OrderKey::new(value, ordinal), false)
    }

    /// Like [`add_node`](Self::add_node) but flags the node as inserted by
    /// conditioning, as when reloading a conditioned graph from disk.
    pub fn add_synthetic_node(&mut self, name: impl Into<String>, value: f64) -> Result<NodeId> {
        let ordinal = self.names.len() as i64;
        self.add_node_with_key(name.into(), OrderKey::new(value, ordinal), true)
    }

    pub(crate) fn add_node_with_key(
        &mut self,
        name: String,
        key: OrderKey,
        synthetic: bool,
    ) -> Result<NodeId> {
        if !key.value().is_finite() {
            return Err(Error::NonFiniteValue {
                node: name,
                value: key.value(),
            });
        }
        if self.index.contains_key(&name) {
            return Err(Error::DuplicateNode(name));
        }
        let id = NodeId(self.names.len() as u32);
        self.index.insert(name.clone(), id);
        self.names.push(name);
        self.keys.push(key);
        self.synthetic.push(synthetic);
        Ok(id)
    }

    pub fn add_edge(&mut self, a: NodeId, b: NodeId) -> Result<EdgeId> {
        for n in [a, b] {
            if n.index() >= self.names.len() {
                return Err(Error::UnknownNode(format!("#{}", n.0)));
            }
        }
        if a == b {
            return Err(Error::SelfLoop(self.names[a.index()].clone()));
        }
        let id = EdgeId(self.edges.len() as u32);
        self.edges.push([a, b]);
        Ok(id)
    }

    pub fn add_edge_by_name(&mut self, a: &str, b: &str) -> Result<EdgeId> {
        let a = self.lookup(a)?;
        let b = self.lookup(b)?;
        self.add_edge(a, b)
    }

    pub fn lookup(&self, name: &str) -> Result<NodeId> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownNode(name.to_string()))
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn build(self) -> ReebGraph {
        let n = self.names.len();
        let mut adjacency = vec![Vec::new(); n];
        for (i, &[a, b]) in self.edges.iter().enumerate() {
            let e = EdgeId(i as u32);
            adjacency[a.index()].push((b, e));
            adjacency[b.index()].push((a, e));
        }
        let mut order: Vec<NodeId> = (0..n as u32).map(NodeId).collect();
        order.sort_by(|x, y| self.keys[x.index()].cmp(&self.keys[y.index()]));
        let mut rank = vec![0u32; n];
        for (r, v) in order.iter().enumerate() {
            rank[v.index()] = r as u32;
        }
        ReebGraph {
            names: self.names,
            keys: self.keys,
            synthetic: self.synthetic,
            edges: self.edges,
            adjacency,
            order,
            rank,
            index: self.index,
        }
    }
}

impl ReebGraph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::new()
    }

    /// Convenience constructor from `(name, value)` nodes and named edges.
    pub fn from_parts<'a>(
        nodes: impl IntoIterator<Item = (&'a str, f64)>,
        edges: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self> {
        let mut b = GraphBuilder::new();
        for (name, value) in nodes {
            b.add_node(name, value)?;
        }
        for (x, y) in edges {
            b.add_edge_by_name(x, y)?;
        }
        Ok(b.build())
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = NodeId> + '_ {
        (0..self.names.len() as u32).map(NodeId)
    }

    pub fn name(&self, v: NodeId) -> &str {
        &self.names[v.index()]
    }

    pub fn value(&self, v: NodeId) -> f64 {
        self.keys[v.index()].value()
    }

    pub fn key(&self, v: NodeId) -> OrderKey {
        self.keys[v.index()]
    }

    pub fn is_synthetic(&self, v: NodeId) -> bool {
        self.synthetic[v.index()]
    }

    pub fn find(&self, name: &str) -> Option<NodeId> {
        self.index.get(name).copied()
    }

    pub fn node(&self, name: &str) -> Result<NodeId> {
        self.find(name)
            .ok_or_else(|| Error::UnknownNode(name.to_string()))
    }

    pub fn edges(&self) -> &[[NodeId; 2]] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> [NodeId; 2] {
        self.edges[e.index()]
    }

    /// Incident `(neighbor, edge)` pairs in edge insertion order.
    pub fn neighbors(&self, v: NodeId) -> &[(NodeId, EdgeId)] {
        &self.adjacency[v.index()]
    }

    /// Position of `v` in ascending total order.
    #[inline]
    pub fn rank(&self, v: NodeId) -> u32 {
        self.rank[v.index()]
    }

    #[inline]
    pub fn node_at_rank(&self, r: u32) -> NodeId {
        self.order[r as usize]
    }

    /// Nodes in ascending total order.
    pub fn order(&self) -> &[NodeId] {
        &self.order
    }

    pub fn precedes(&self, a: NodeId, b: NodeId) -> bool {
        self.rank(a) < self.rank(b)
    }

    pub fn degree_signature(&self, v: NodeId) -> DegreeSignature {
        let r = self.rank(v);
        let mut sig = DegreeSignature { down: 0, up: 0 };
        for &(w, _) in self.neighbors(v) {
            if self.rank(w) < r {
                sig.down += 1;
            } else {
                sig.up += 1;
            }
        }
        sig
    }

    pub fn kind(&self, v: NodeId) -> CriticalKind {
        self.degree_signature(v).kind()
    }

    /// Classifies a node by name.
    pub fn classify_node(&self, name: &str) -> Result<CriticalKind> {
        Ok(self.kind(self.node(name)?))
    }

    pub fn count_kind(&self, kind: CriticalKind) -> usize {
        self.nodes().filter(|&v| self.kind(v) == kind).count()
    }

    /// The same graph under `-f`, with the total order exactly reversed.
    pub fn negated(&self) -> ReebGraph {
        let mut g = self.clone();
        for k in g.keys.iter_mut() {
            *k = k.negated();
        }
        g.order.reverse();
        let n = g.order.len() as u32;
        for r in g.rank.iter_mut() {
            *r = n - 1 - *r;
        }
        g
    }

    /// Connected components, each sorted by node id; ordered by smallest id.
    pub fn components(&self) -> Vec<Vec<NodeId>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in self.nodes() {
            if seen[s.index()] {
                continue;
            }
            seen[s.index()] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &(w, _) in self.neighbors(v) {
                    if !seen[w.index()] {
                        seen[w.index()] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.node_count() > 0 && self.components().len() == 1
    }

    /// `E - V + C`; equals `E - V + 1` on connected graphs.
    pub fn cycle_rank(&self) -> usize {
        let c = self.components().len();
        self.edge_count() + c - self.node_count()
    }

    /// Checks the canonical form the pairing engines require.
    pub fn validate_conditioned(&self) -> core::result::Result<(), Vec<Violation>> {
        let mut violations = Vec::new();
        for v in self.nodes() {
            let sig = self.degree_signature(v);
            let rule = match sig.kind() {
                CriticalKind::Regular => Some(ViolationRule::Regular),
                CriticalKind::Degenerate => Some(ViolationRule::Degenerate(sig)),
                _ => None,
            };
            if let Some(rule) = rule {
                violations.push(Violation {
                    node: Some(self.name(v).to_string()),
                    rule,
                });
            }
        }
        for pair in self.order.windows(2) {
            if self.key(pair[0]) == self.key(pair[1]) {
                violations.push(Violation {
                    node: Some(self.name(pair[1]).to_string()),
                    rule: ViolationRule::DuplicateKey {
                        other: self.name(pair[0]).to_string(),
                    },
                });
            }
        }
        let components = self.components().len();
        if components != 1 {
            violations.push(Violation {
                node: None,
                rule: ViolationRule::Disconnected { components },
            });
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    pub(crate) fn require_conditioned(&self) -> Result<()> {
        self.validate_conditioned().map_err(Error::Unconditioned)
    }

    /// Graph induced on `nodes`, keeping their order keys and names.
    pub fn induced_subgraph(&self, nodes: &[NodeId]) -> ReebGraph {
        let mut map = vec![None; self.node_count()];
        let mut b = GraphBuilder::new();
        for &v in nodes {
            let id = b
                .add_node_with_key(self.name(v).to_string(), self.key(v), self.is_synthetic(v))
                .expect("names are unique in the source graph");
            map[v.index()] = Some(id);
        }
        for &[x, y] in &self.edges {
            if let (Some(a), Some(c)) = (map[x.index()], map[y.index()]) {
                b.add_edge(a, c).expect("endpoints exist and differ");
            }
        }
        b.build()
    }

    /// Rebuilds the graph with ordinals equal to total-order position, so that
    /// a listing of nodes in that order reproduces the order from values alone.
    pub fn canonicalized(&self) -> ReebGraph {
        let mut b = GraphBuilder::new();
        let mut map = vec![NodeId(0); self.node_count()];
        for (r, &v) in self.order.iter().enumerate() {
            map[v.index()] = b
                .add_node_with_key(
                    self.name(v).to_string(),
                    OrderKey::new(self.value(v), r as i64),
                    self.is_synthetic(v),
                )
                .expect("names are unique in the source graph");
        }
        for &[x, y] in &self.edges {
            b.add_edge(map[x.index()], map[y.index()])
                .expect("endpoints exist and differ");
        }
        b.build()
    }

    /// Hex SHA-256 over names, value bits and edges.
    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        for v in self.nodes() {
            h.update(self.name(v).as_bytes());
            h.update([0u8]);
            h.update(self.value(v).to_bits().to_le_bytes());
            h.update(self.rank(v).to_le_bytes());
        }
        for &[a, b] in &self.edges {
            h.update(a.0.to_le_bytes());
            h.update(b.0.to_le_bytes());
        }
        let digest = h.finalize();
        let mut s = String::with_capacity(16);
        for byte in digest.iter().take(8) {
            s.push_str(&format!("{byte:02x}"));
        }
        s
    }
}

/// Sweep direction over a graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Ascending,
    Descending,
}

impl Direction {
    pub fn reversed(self) -> Self {
        match self {
            Direction::Ascending => Direction::Descending,
            Direction::Descending => Direction::Ascending,
        }
    }
}

/// A graph seen through a sweep direction. Descending views behave exactly
/// like the graph under `-f`: ranks are reversed and kinds are mirrored.
#[derive(Clone, Copy, Debug)]
pub struct Oriented<'a> {
    graph: &'a ReebGraph,
    direction: Direction,
}

impl<'a> Oriented<'a> {
    pub fn new(graph: &'a ReebGraph, direction: Direction) -> Self {
        Oriented { graph, direction }
    }

    pub fn graph(&self) -> &'a ReebGraph {
        self.graph
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn len(&self) -> usize {
        self.graph.node_count()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    #[inline]
    pub fn rank(&self, v: NodeId) -> u32 {
        match self.direction {
            Direction::Ascending => self.graph.rank(v),
            Direction::Descending => self.graph.node_count() as u32 - 1 - self.graph.rank(v),
        }
    }

    #[inline]
    pub fn node_at(&self, r: u32) -> NodeId {
        match self.direction {
            Direction::Ascending => self.graph.node_at_rank(r),
            Direction::Descending => {
                self.graph.node_at_rank(self.graph.node_count() as u32 - 1 - r)
            }
        }
    }

    /// Nodes in sweep order.
    pub fn sweep(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.len() as u32).map(move |r| self.node_at(r))
    }

    pub fn kind(&self, v: NodeId) -> CriticalKind {
        match self.direction {
            Direction::Ascending => self.graph.kind(v),
            Direction::Descending => self.graph.kind(v).mirrored(),
        }
    }

    pub fn neighbors(&self, v: NodeId) -> &'a [(NodeId, EdgeId)] {
        self.graph.neighbors(v)
    }
}
