//! Timing harness. Inputs are generated and conditioned up front; only the
//! pairing call is timed.

use std::hint::black_box;
use std::io::Write;
use std::time::Instant;

use reebpair_core::conditioning::condition;
use reebpair_core::generators::{cut_cycles, generate, GenSpec, TreeMode};
use reebpair_core::multipass::multipass_pairs;
use reebpair_core::singlepass::{singlepass_pairs, SinglePassOptions, SweepMode};
use reebpair_core::ReebGraph;
use serde::{Deserialize, Serialize};

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Engine {
    Multipass,
    Singlepass,
    SinglepassAsc,
    SinglepassDesc,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Multipass => "multipass",
            Engine::Singlepass => "singlepass",
            Engine::SinglepassAsc => "singlepass-asc",
            Engine::SinglepassDesc => "singlepass-desc",
        }
    }

    /// Runs the engine once and returns the number of pairs.
    pub fn run(self, graph: &ReebGraph) -> Result<usize> {
        let sp = |mode| singlepass_pairs(graph, SinglePassOptions::with_mode(mode)).map(|o| o.pairs.len());
        Ok(match self {
            Engine::Multipass => multipass_pairs(graph)?.len(),
            Engine::Singlepass => sp(SweepMode::Auto)?,
            Engine::SinglepassAsc => sp(SweepMode::Ascending)?,
            Engine::SinglepassDesc => sp(SweepMode::Descending)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub algo: String,
    pub input: String,
    pub n: usize,
    pub nodes: usize,
    pub cycles: usize,
    pub cuts: usize,
    pub reps: usize,
    pub mean_ms: f64,
    pub stddev_ms: f64,
    pub median_ms: f64,
}

/// Wall-clock samples in milliseconds, after one untimed warm-up run.
pub fn time_engine(engine: Engine, graph: &ReebGraph, reps: usize) -> Result<Vec<f64>> {
    black_box(engine.run(graph)?);
    let mut samples = Vec::with_capacity(reps);
    for _ in 0..reps.max(1) {
        let start = Instant::now();
        black_box(engine.run(black_box(graph))?);
        samples.push(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(samples)
}

/// (mean, sample standard deviation, median).
pub fn summarize(samples: &[f64]) -> (f64, f64, f64) {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = if samples.len() > 1 {
        samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    let median = if sorted.len().is_multiple_of(2) {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    } else {
        sorted[mid]
    };
    (mean, var.sqrt(), median)
}

pub fn measure(engine: Engine, input: &str, n: usize, cuts: usize, graph: &ReebGraph, reps: usize) -> Result<BenchRecord> {
    let samples = time_engine(engine, graph, reps)?;
    let (mean_ms, stddev_ms, median_ms) = summarize(&samples);
    Ok(BenchRecord {
        algo: engine.name().into(),
        input: input.into(),
        n,
        nodes: graph.node_count(),
        cycles: graph.cycle_rank(),
        cuts,
        reps: samples.len(),
        mean_ms,
        stddev_ms,
        median_ms,
    })
}

fn conditioned(spec: GenSpec) -> Result<ReebGraph> {
    Ok(condition(&generate(&spec)?)?.0)
}

/// Split tree and its negation (a join tree), each under multipass and
/// both single-pass directions.
pub fn trees_suite(sizes: &[usize], reps: usize, seed: u64) -> Result<Vec<BenchRecord>> {
    let mut out = Vec::new();
    for &n in sizes {
        let split = conditioned(GenSpec::tree(n, seed, TreeMode::Split))?;
        let join = split.negated();
        for (label, g) in [("split", &split), ("join", &join)] {
            let input = format!("random_tree_{n}_{label}");
            for e in [Engine::Multipass, Engine::SinglepassAsc, Engine::SinglepassDesc] {
                out.push(measure(e, &input, n, 0, g, reps)?);
            }
        }
    }
    Ok(out)
}

pub fn graphs_suite(sizes: &[usize], reps: usize, seed: u64, p2: f64) -> Result<Vec<BenchRecord>> {
    let mut out = Vec::new();
    for &n in sizes {
        let g = conditioned(GenSpec::graph(n, seed, p2))?;
        let input = format!("random_graph_{n}");
        for e in [Engine::Multipass, Engine::Singlepass] {
            out.push(measure(e, &input, n, 0, &g, reps)?);
        }
    }
    Ok(out)
}

/// One random graph with an increasing number of cycles cut. Cut counts
/// above the cycle rank are clamped.
pub fn cut_suite(n: usize, cuts: &[usize], reps: usize, seed: u64) -> Result<Vec<BenchRecord>> {
    let base = conditioned(GenSpec::graph(n, seed, 0.5))?;
    let mut out = Vec::new();
    for &k in cuts {
        let k = k.min(base.cycle_rank());
        let g = cut_cycles(&base, k, seed ^ 0x5eed)?;
        let input = format!("random_graph_{n}_cut_{k}");
        for e in [Engine::Multipass, Engine::Singlepass] {
            out.push(measure(e, &input, n, k, &g, reps)?);
        }
    }
    Ok(out)
}

/// Smallest cut count from which single-pass is never slower than
/// multipass (by median) for every later cut count in the records.
pub fn crossover(records: &[BenchRecord]) -> Option<usize> {
    let mut rows: Vec<(usize, f64, f64)> = Vec::new();
    for r in records.iter().filter(|r| r.algo == Engine::Multipass.name()) {
        if let Some(s) = records
            .iter()
            .find(|s| s.algo == Engine::Singlepass.name() && s.cuts == r.cuts && s.input == r.input)
        {
            rows.push((r.cuts, r.median_ms, s.median_ms));
        }
    }
    rows.sort_by_key(|r| r.0);
    let mut k_star = None;
    for &(k, mp, sp) in rows.iter().rev() {
        if sp <= mp {
            k_star = Some(k);
        } else {
            break;
        }
    }
    k_star
}

pub fn write_records(records: &[BenchRecord], writer: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(algo: Engine, cuts: usize, median: f64) -> BenchRecord {
        BenchRecord {
            algo: algo.name().into(),
            input: format!("g_cut_{cuts}"),
            n: 10,
            nodes: 0,
            cycles: 0,
            cuts,
            reps: 1,
            mean_ms: median,
            stddev_ms: 0.0,
            median_ms: median,
        }
    }

    #[test]
    fn summary_statistics() {
        let (m, s, med) = summarize(&[1.0, 2.0, 3.0, 10.0]);
        assert_eq!(m, 4.0);
        assert!((s - 4.0825).abs() < 1e-3);
        assert_eq!(med, 2.5);
        assert_eq!(summarize(&[7.0]), (7.0, 0.0, 7.0));
    }

    #[test]
    fn crossover_is_last_switch() {
        let rows = [
            rec(Engine::Multipass, 0, 1.0),
            rec(Engine::Singlepass, 0, 2.0),
            rec(Engine::Multipass, 5, 3.0),
            rec(Engine::Singlepass, 5, 1.0),
            rec(Engine::Multipass, 9, 3.0),
            rec(Engine::Singlepass, 9, 3.0),
        ];
        assert_eq!(crossover(&rows), Some(5));
        assert_eq!(crossover(&rows[..2]), None);
    }

    #[test]
    fn smoke_csv() {
        let records = trees_suite(&[5], 1, 1).unwrap();
        assert_eq!(records.len(), 6);
        let mut buf = Vec::new();
        write_records(&records, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("algo,input,n,nodes,cycles,cuts,reps,mean_ms,stddev_ms,median_ms\n"));
        assert_eq!(text.lines().count(), 7);
    }
}
