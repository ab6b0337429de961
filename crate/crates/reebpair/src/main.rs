use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use reebpair::bench::{self, BenchRecord};
use reebpair::formats::{self, ReportFile};
use reebpair::svg::render_svg;
use reebpair::{CliError, Result};
use reebpair_core::conditioning::{condition, condition_components};
use reebpair_core::diagram::diagram_diff;
use reebpair_core::generators::{cut_cycles, generate, GenSpec, TreeMode};
use reebpair_core::multipass::pair_multipass;
use reebpair_core::oracle::{oracle_diagram, OracleOptions};
use reebpair_core::singlepass::{pair_singlepass, SinglePassOptions, SweepMode};
use reebpair_core::{PersistenceDiagram, ReebGraph};

const EXIT_DIFF: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INPUT: u8 = 3;

/// Critical point pairing and persistence diagrams for Reeb graphs.
#[derive(Parser)]
#[command(name = "reebpair", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bring a graph into canonical form.
    Condition {
        /// Graph JSON, or - for stdin.
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the JSON report here instead of stderr.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Write one file per connected component, named OUTPUT.<i>.json.
        #[arg(long)]
        split_components: bool,
    },
    /// Compute the persistence diagram of a graph.
    Pair {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::Multipass)]
        algo: Algo,
        #[arg(long, value_enum, default_value_t = Sweep::Auto)]
        sweep: Sweep,
        /// Single-pass without virtual edges (for testing only).
        #[arg(long)]
        no_virtual_edges: bool,
        /// Largest graph the oracle accepts.
        #[arg(long, default_value_t = 1000)]
        oracle_max_nodes: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Compare two diagram files; exit code 1 if they differ.
    Diff { left: PathBuf, right: PathBuf },
    /// Generate a random tree or graph.
    Generate {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        p2: f64,
        #[arg(long, value_enum, default_value_t = Mode::Split)]
        mode: Mode,
        /// Condition the result before writing.
        #[arg(long)]
        condition: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Remove K cycles at random and recondition.
    CutCycles {
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Time the engines on generated inputs.
    Bench {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Iteration counts (trees, graphs) or the base graph size (cut).
        #[arg(long, value_delimiter = ',', default_values_t = [100, 500, 1000])]
        sizes: Vec<usize>,
        /// Cut counts for the cut suite.
        #[arg(long, value_delimiter = ',', default_values_t = [0, 300, 600, 900, 1200, 1500, 1800, 2100, 2400])]
        cuts: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Render a diagram file as SVG.
    Plot {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Multipass,
    Singlepass,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sweep {
    Auto,
    Asc,
    Desc,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Tree,
    Graph,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Split,
    Join,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Trees,
    Graphs,
    Cut,
}

enum Failure {
    Usage(String),
    Input(CliError),
}

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        Failure::Input(e)
    }
}

impl From<reebpair_core::Error> for Failure {
    fn from(e: reebpair_core::Error) -> Self {
        Failure::Input(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Condition {
            input,
            output,
            report,
            split_components,
        } => {
            let g = read_graph(&input)?;
            if split_components {
                let Some(base) = output else {
                    return Err(Failure::Usage("--split-components needs --output".into()));
                };
                let parts = condition_components(&g)?;
                let mut reports = Vec::new();
                for (i, (part, rep)) in parts.iter().enumerate() {
                    let path = base.with_extension(format!("{i}.json"));
                    formats::save_graph(part, &path)?;
                    let source = g.induced_subgraph(&g.components()[i]);
                    reports.push(ReportFile::new(&source, part, rep));
                }
                emit_report(&serde_json::to_string_pretty(&reports).map_err(CliError::from)?, report.as_deref())?;
            } else {
                let (c, rep) = condition(&g)?;
                write_output(output.as_deref(), &formats::graph_to_string(&c))?;
                let file = ReportFile::new(&g, &c, &rep);
                emit_report(&serde_json::to_string_pretty(&file).map_err(CliError::from)?, report.as_deref())?;
            }
            Ok(0)
        }
        Command::Pair {
            input,
            algo,
            sweep,
            no_virtual_edges,
            oracle_max_nodes,
            output,
            svg,
        } => {
            let mut g = read_graph(&input)?;
            if g.validate_conditioned().is_err() {
                eprintln!("warning: input is not conditioned; conditioning it first");
                g = condition(&g)?.0;
            }
            let d = pair(&g, algo, sweep, no_virtual_edges, oracle_max_nodes)?;
            write_output(output.as_deref(), &formats::diagram_to_string(&d))?;
            if let Some(path) = svg {
                write_output(Some(&path), &render_svg(&d))?;
            }
            Ok(0)
        }
        Command::Diff { left, right } => {
            let a = formats::load_diagram(&left)?;
            let b = formats::load_diagram(&right)?;
            let d = diagram_diff(&a, &b);
            if d.is_empty() {
                return Ok(0);
            }
            let mut out = io::stdout().lock();
            for p in &d.only_left {
                let _ = writeln!(out, "< {p}");
            }
            for p in &d.only_right {
                let _ = writeln!(out, "> {p}");
            }
            Ok(EXIT_DIFF)
        }
        Command::Generate {
            kind,
            n,
            seed,
            p2,
            mode,
            condition: cond,
            output,
        } => {
            let spec = match kind {
                Kind::Tree => GenSpec::tree(
                    n,
                    seed,
                    match mode {
                        Mode::Split => TreeMode::Split,
                        Mode::Join => TreeMode::Join,
                    },
                ),
                Kind::Graph => GenSpec::graph(n, seed, p2),
            };
            if let Err(e) = spec.validate() {
                return Err(Failure::Usage(e.to_string()));
            }
            let mut g = generate(&spec)?;
            if cond {
                g = condition(&g)?.0;
            }
            write_output(output.as_deref(), &formats::graph_to_string(&g))?;
            Ok(0)
        }
        Command::CutCycles { input, k, seed, output } => {
            let mut g = read_graph(&input)?;
            if g.validate_conditioned().is_err() {
                g = condition(&g)?.0;
            }
            let c = cut_cycles(&g, k, seed)?;
            write_output(output.as_deref(), &formats::graph_to_string(&c))?;
            Ok(0)
        }
        Command::Bench {
            suite,
            sizes,
            cuts,
            reps,
            seed,
            output,
        } => {
            if reps == 0 || sizes.is_empty() {
                return Err(Failure::Usage("need at least one size and one rep".into()));
            }
            let records: Vec<BenchRecord> = match suite {
                Suite::Trees => bench::trees_suite(&sizes, reps, seed)?,
                Suite::Graphs => bench::graphs_suite(&sizes, reps, seed, 0.5)?,
                Suite::Cut => {
                    let mut all = Vec::new();
                    for &n in &sizes {
                        let r = bench::cut_suite(n, &cuts, reps, seed)?;
                        match bench::crossover(&r) {
                            Some(k) => eprintln!("n={n}: single-pass not slower from {k} cuts on"),
                            None => eprintln!("n={n}: no crossover in the tested range"),
                        }
                        all.extend(r);
                    }
                    all
                }
            };
            let mut buf = Vec::new();
            bench::write_records(&records, &mut buf)?;
            write_output(output.as_deref(), &String::from_utf8_lossy(&buf))?;
            Ok(0)
        }
        Command::Plot { input, output } => {
            let d = if input.as_os_str() == "-" {
                formats::read_diagram(io::stdin().lock())?
            } else {
                formats::load_diagram(&input)?
            };
            write_output(output.as_deref(), &render_svg(&d))?;
            Ok(0)
        }
    }
}

fn pair(g: &ReebGraph, algo: Algo, sweep: Sweep, no_virtual_edges: bool, oracle_max_nodes: usize) -> Result<PersistenceDiagram, Failure> {
    Ok(match algo {
        Algo::Multipass => pair_multipass(g)?,
        Algo::Singlepass => pair_singlepass(
            g,
            SinglePassOptions {
                mode: match sweep {
                    Sweep::Auto => SweepMode::Auto,
                    Sweep::Asc => SweepMode::Ascending,
                    Sweep::Desc => SweepMode::Descending,
                },
                virtual_edges: !no_virtual_edges,
            },
        )?,
        Algo::Oracle => oracle_diagram(
            g,
            OracleOptions {
                max_nodes: oracle_max_nodes,
                ..Default::default()
            },
        )?,
    })
}

fn read_graph(path: &Path) -> Result<ReebGraph> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        formats::parse_graph(&text)
    } else {
        formats::load_graph(path)
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) if p.as_os_str() != "-" => formats::save_text(p, text),
        _ => {
            io::stdout().lock().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn emit_report(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => formats::save_text(p, &format!("{text}\n")),
        None => {
            eprintln!("{text}");
            Ok(())
        }
    }
}
