//! Persistence pairs and diagrams.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::model::{CriticalKind, NodeId, ReebGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairClass {
    /// Minimum paired with the down-fork that merges its component away.
    MinSaddle,
    /// Maximum paired with an up-fork, stored as (maximum, up-fork).
    SaddleMax,
    /// Essential down-fork paired with the up-fork that closes its cycle.
    Cycle,
}

impl PairClass {
    pub fn as_str(self) -> &'static str {
        match self {
            PairClass::MinSaddle => "min-saddle",
            PairClass::SaddleMax => "saddle-max",
            PairClass::Cycle => "cycle",
        }
    }
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PairClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "min-saddle" => Ok(PairClass::MinSaddle),
            "saddle-max" => Ok(PairClass::SaddleMax),
            "cycle" => Ok(PairClass::Cycle),
            other => Err(alloc::format!("unknown pair class `{other}`")),
        }
    }
}

/// A pair expressed in node ids of one graph; what the engines produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodePair {
    pub class: PairClass,
    pub birth: NodeId,
    pub death: NodeId,
    pub global: bool,
}

impl NodePair {
    pub fn min_saddle(min: NodeId, down_fork: NodeId) -> Self {
        NodePair {
            class: PairClass::MinSaddle,
            birth: min,
            death: down_fork,
            global: false,
        }
    }

    pub fn saddle_max(max: NodeId, up_fork: NodeId) -> Self {
        NodePair {
            class: PairClass::SaddleMax,
            birth: max,
            death: up_fork,
            global: false,
        }
    }

    pub fn cycle(down_fork: NodeId, up_fork: NodeId) -> Self {
        NodePair {
            class: PairClass::Cycle,
            birth: down_fork,
            death: up_fork,
            global: false,
        }
    }

    pub fn global(min: NodeId, max: NodeId) -> Self {
        NodePair {
            class: PairClass::MinSaddle,
            birth: min,
            death: max,
            global: true,
        }
    }

    /// Converts a pair computed on the reversed order back to the original
    /// order: min-saddle and saddle-max trade classes, cycle and global
    /// pairs trade endpoints.
    pub fn mirrored(self) -> Self {
        if self.global {
            return NodePair::global(self.death, self.birth);
        }
        match self.class {
            PairClass::MinSaddle => NodePair::saddle_max(self.birth, self.death),
            PairClass::SaddleMax => NodePair::min_saddle(self.birth, self.death),
            PairClass::Cycle => NodePair::cycle(self.death, self.birth),
        }
    }
}

/// Sorts node pairs into a canonical multiset order.
pub fn sort_node_pairs(pairs: &mut [NodePair]) {
    pairs.sort_unstable();
}

/// Checks that `pairs` is a perfect matching of the graph's nodes with
/// endpoint kinds consistent with each class.
pub fn check_matching(graph: &ReebGraph, pairs: &[NodePair]) -> Result<(), String> {
    let mut seen = vec![false; graph.node_count()];
    let mut globals = 0;
    for p in pairs {
        for v in [p.birth, p.death] {
            if seen[v.index()] {
                return Err(alloc::format!("node `{}` paired twice", graph.name(v)));
            }
            seen[v.index()] = true;
        }
        let (bk, dk) = (graph.kind(p.birth), graph.kind(p.death));
        let ok = if p.global {
            globals += 1;
            bk == CriticalKind::Minimum && dk == CriticalKind::Maximum
        } else {
            match p.class {
                PairClass::MinSaddle => {
                    bk == CriticalKind::Minimum
                        && dk == CriticalKind::DownFork
                        && graph.precedes(p.birth, p.death)
                }
                PairClass::SaddleMax => {
                    bk == CriticalKind::Maximum
                        && dk == CriticalKind::UpFork
                        && graph.precedes(p.death, p.birth)
                }
                PairClass::Cycle => {
                    bk == CriticalKind::DownFork
                        && dk == CriticalKind::UpFork
                        && graph.precedes(p.death, p.birth)
                }
            }
        };
        if !ok {
            return Err(alloc::format!(
                "pair ({}, {}) of class {} has inconsistent endpoints",
                graph.name(p.birth),
                graph.name(p.death),
                p.class
            ));
        }
    }
    if let Some(v) = graph.nodes().find(|v| !seen[v.index()]) {
        return Err(alloc::format!("node `{}` left unpaired", graph.name(v)));
    }
    if globals != 1 {
        return Err(alloc::format!("expected one global pair, found {globals}"));
    }
    Ok(())
}

/// One resolved diagram entry, independent of any graph.
#[derive(Clone, Debug, PartialEq)]
pub struct PersistencePair {
    pub class: PairClass,
    pub birth: String,
    pub death: String,
    pub birth_value: f64,
    pub death_value: f64,
    pub synthetic: bool,
    pub global: bool,
}

impl PersistencePair {
    pub fn resolve(graph: &ReebGraph, pair: NodePair) -> Self {
        PersistencePair {
            class: pair.class,
            birth: graph.name(pair.birth).to_string(),
            death: graph.name(pair.death).to_string(),
            birth_value: graph.value(pair.birth),
            death_value: graph.value(pair.death),
            synthetic: graph.is_synthetic(pair.birth) || graph.is_synthetic(pair.death),
            global: pair.global,
        }
    }

    /// Canonical order: class, birth value, death value, birth id, death id.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.class
            .cmp(&other.class)
            .then(self.birth_value.total_cmp(&other.birth_value))
            .then(self.death_value.total_cmp(&other.death_value))
            .then_with(|| self.birth.cmp(&other.birth))
            .then_with(|| self.death.cmp(&other.death))
            .then(self.global.cmp(&other.global))
            .then(self.synthetic.cmp(&other.synthetic))
    }

    /// Absolute difference of the nominal values.
    pub fn persistence(&self) -> f64 {
        (self.death_value - self.birth_value).abs()
    }
}

impl fmt::Display for PersistencePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({}, {}) [{}, {}]",
            self.class, self.birth, self.death, self.birth_value, self.death_value
        )?;
        if self.global {
            f.write_str(" global")?;
        }
        if self.synthetic {
            f.write_str(" synthetic")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct PersistenceDiagram {
    pub pairs: Vec<PersistencePair>,
    pub algorithm: String,
    pub input_hash: String,
}

impl PersistenceDiagram {
    pub fn new(pairs: Vec<PersistencePair>, algorithm: impl Into<String>, input_hash: impl Into<String>) -> Self {
        let mut d = PersistenceDiagram {
            pairs,
            algorithm: algorithm.into(),
            input_hash: input_hash.into(),
        };
        d.canonicalize();
        d
    }

    pub fn from_node_pairs(graph: &ReebGraph, algorithm: &str, pairs: &[NodePair]) -> Self {
        let resolved = pairs
            .iter()
            .map(|&p| PersistencePair::resolve(graph, p))
            .collect();
        PersistenceDiagram::new(resolved, algorithm, graph.content_hash())
    }

    pub fn canonicalize(&mut self) {
        self.pairs.sort_by(|a, b| a.canonical_cmp(b));
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn count(&self, class: PairClass) -> usize {
        self.pairs.iter().filter(|p| p.class == class && !p.global).count()
    }

    /// Pairs of the ordinary diagram (min-saddle, saddle-max and global).
    pub fn ordinary(&self) -> impl Iterator<Item = &PersistencePair> {
        self.pairs.iter().filter(|p| p.class != PairClass::Cycle)
    }

    /// Pairs of the extended diagram (cycles).
    pub fn extended(&self) -> impl Iterator<Item = &PersistencePair> {
        self.pairs.iter().filter(|p| p.class == PairClass::Cycle)
    }
}

/// Multiset symmetric difference of two diagrams.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DiagramDiff {
    pub only_left: Vec<PersistencePair>,
    pub only_right: Vec<PersistencePair>,
}

impl DiagramDiff {
    pub fn is_empty(&self) -> bool {
        self.only_left.is_empty() && self.only_right.is_empty()
    }
}

pub fn diagram_diff(left: &PersistenceDiagram, right: &PersistenceDiagram) -> DiagramDiff {
    let mut a: Vec<&PersistencePair> = left.pairs.iter().collect();
    let mut b: Vec<&PersistencePair> = right.pairs.iter().collect();
    a.sort_by(|x, y| x.canonical_cmp(y));
    b.sort_by(|x, y| x.canonical_cmp(y));
    let mut diff = DiagramDiff::default();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].canonical_cmp(b[j]) {
            Ordering::Less => {
                diff.only_left.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                diff.only_right.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    diff.only_left.extend(a[i..].iter().map(|&p| p.clone()));
    diff.only_right.extend(b[j..].iter().map(|&p| p.clone()));
    diff
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(class: PairClass, b: &str, d: &str, bv: f64, dv: f64) -> PersistencePair {
        PersistencePair {
            class,
            birth: b.into(),
            death: d.into(),
            birth_value: bv,
            death_value: dv,
            synthetic: false,
            global: false,
        }
    }

    #[test]
    fn diff_of_itself_is_empty() {
        let d = PersistenceDiagram::new(
            vec![
                pair(PairClass::MinSaddle, "B", "C", 2.0, 3.0),
                pair(PairClass::Cycle, "L", "D", 12.0, 4.0),
            ],
            "test",
            "",
        );
        assert!(diagram_diff(&d, &d).is_empty());
    }

    #[test]
    fn diff_reports_both_sides() {
        let a = PersistenceDiagram::new(
            vec![
                pair(PairClass::MinSaddle, "B", "C", 2.0, 3.0),
                pair(PairClass::MinSaddle, "E", "G", 5.0, 7.0),
            ],
            "a",
            "",
        );
        let b = PersistenceDiagram::new(
            vec![
                pair(PairClass::MinSaddle, "B", "C", 2.0, 3.0),
                pair(PairClass::MinSaddle, "E", "K", 5.0, 11.0),
            ],
            "b",
            "",
        );
        let diff = diagram_diff(&a, &b);
        assert_eq!(diff.only_left, vec![pair(PairClass::MinSaddle, "E", "G", 5.0, 7.0)]);
        assert_eq!(diff.only_right, vec![pair(PairClass::MinSaddle, "E", "K", 5.0, 11.0)]);
        assert_eq!(diagram_diff(&b, &a).only_left, diff.only_right);
    }

    #[test]
    fn diff_respects_multiplicity() {
        let p = pair(PairClass::Cycle, "X", "Y", 1.0, 0.0);
        let a = PersistenceDiagram::new(vec![p.clone(), p.clone()], "a", "");
        let b = PersistenceDiagram::new(vec![p.clone()], "b", "");
        let diff = diagram_diff(&a, &b);
        assert_eq!(diff.only_left.len(), 1);
        assert!(diff.only_right.is_empty());
    }

    #[test]
    fn mirroring_is_an_involution() {
        let (a, b) = (NodeId(0), NodeId(1));
        for p in [
            NodePair::min_saddle(a, b),
            NodePair::saddle_max(a, b),
            NodePair::cycle(a, b),
            NodePair::global(a, b),
        ] {
            assert_eq!(p.mirrored().mirrored(), p);
        }
        assert_eq!(NodePair::cycle(a, b).mirrored(), NodePair::cycle(b, a));
        assert_eq!(NodePair::min_saddle(a, b).mirrored().class, PairClass::SaddleMax);
    }

    #[test]
    fn class_round_trips_through_text() {
        for c in [PairClass::MinSaddle, PairClass::SaddleMax, PairClass::Cycle] {
            assert_eq!(c.as_str().parse::<PairClass>().unwrap(), c);
        }
        assert!("saddle".parse::<PairClass>().is_err());
    }
}
