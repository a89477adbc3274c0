//! Command-line front end.
//!
//! Exit codes: `0` embeddable (or success), `1` not embeddable (or a failed
//! cross-check), `2` usage or input error.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::classifier::ForbiddenTriple;
use crate::graph::{Graph, Vertex};
use crate::group::{emit_presentation, verdict, Verdict};
use crate::harness::{
    cross_check, random_graph, random_nb_graph, CrossCheckReport, HarnessError, MAX_ENUMERATION_N,
};
use crate::io::{classify_json, emit_dot, emit_edge_list, parse_edge_list, parse_graph6, LabelMap};
use crate::partition::CommutingPartition;
use crate::word::{Word, WordError, WordProblem};

pub const EXIT_EMBEDDABLE: i32 = 0;
pub const EXIT_NOT_EMBEDDABLE: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "raag-embed",
    version,
    about = "Decide whether the right-angled Artin group of a graph embeds in Thompson's group V"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Edgelist,
    Graph6,
}

#[derive(Debug, clap::Args)]
struct Input {
    /// Graph file, or `-` for standard input
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Edgelist)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the embeddability verdict
    Classify {
        #[command(flatten)]
        input: Input,
        /// Emit a JSON record instead of text
        #[arg(long)]
        json: bool,
    },
    /// Print the commuting partition, or a forbidden triple
    Partition {
        #[command(flatten)]
        input: Input,
        /// Emit Graphviz with one cluster per block
        #[arg(long)]
        dot: bool,
    },
    /// Print the direct-product decomposition and the group presentation
    Decompose {
        #[command(flatten)]
        input: Input,
    },
    /// Decide whether a word is trivial, e.g. `word g.txt 1 2 -1 -2`
    Word {
        #[command(flatten)]
        input: Input,
        /// Signed 1-based generator numbers; negative means inverse
        #[arg(allow_negative_numbers = true, num_args = 0..)]
        generators: Vec<String>,
    },
    /// Cross-check every labeled graph up to the given size
    Enumerate {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Emit a random graph in edge-list format
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample a graph with a commuting partition instead
        #[arg(long)]
        nb: bool,
    },
}

struct Failure(i32, String);

impl Failure {
    fn input(msg: impl Into<String>) -> Self {
        Failure(EXIT_INPUT_ERROR, msg.into())
    }
}

/// Runs the CLI on `args` (including the program name), writing to the given
/// streams, and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT_ERROR } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut buf = String::new();
    let code = match command {
        Command::Classify { input, json } => {
            let (g, labels) = load(&input)?;
            let v = verdict(&g);
            if json {
                buf.push_str(&classify_json(&v));
                buf.push('\n');
            } else {
                render_verdict(&mut buf, &v, &labels);
            }
            exit_for(&v)
        }
        Command::Partition { input, dot } => {
            let (g, labels) = load(&input)?;
            let v = verdict(&g);
            match (&v, dot) {
                (Verdict::Embeddable { partition, .. }, true) => {
                    buf.push_str(&emit_dot(&g, Some(&labels), Some(partition)));
                }
                (Verdict::Embeddable { partition, .. }, false) => {
                    buf.push_str(&render_partition(partition, &labels));
                    buf.push('\n');
                }
                (Verdict::NotEmbeddable { witness }, _) => {
                    buf.push_str("no commuting partition\n");
                    buf.push_str(&render_witness(witness, &labels));
                    buf.push('\n');
                }
            }
            exit_for(&v)
        }
        Command::Decompose { input } => {
            let (g, labels) = load(&input)?;
            let v = verdict(&g);
            match &v {
                Verdict::Embeddable { group, .. } => buf.push_str(&format!("{group}\n")),
                Verdict::NotEmbeddable { witness } => {
                    buf.push_str("not a direct product of free groups\n");
                    buf.push_str(&render_witness(witness, &labels));
                    buf.push('\n');
                }
            }
            buf.push_str(&emit_presentation(&g));
            buf.push('\n');
            exit_for(&v)
        }
        Command::Word { input, generators } => {
            let (g, _) = load(&input)?;
            let word = Word::parse_signed(&generators.join(" "), g.vertex_count())
                .map_err(|e| Failure::input(e.to_string()))?;
            let solver = WordProblem::new(&g).map_err(|e| match e {
                WordError::NotEmbeddable(_) => Failure(EXIT_NOT_EMBEDDABLE, e.to_string()),
                other => Failure::input(other.to_string()),
            })?;
            let nf = solver
                .normal_form(&word)
                .map_err(|e| Failure::input(e.to_string()))?;
            buf.push_str(if nf.is_identity() {
                "trivial\n"
            } else {
                "nontrivial\n"
            });
            buf.push_str(&format!("normal form: {nf}\n"));
            EXIT_EMBEDDABLE
        }
        Command::Enumerate { max_n, json } => {
            if max_n > MAX_ENUMERATION_N {
                return Err(Failure::input(HarnessError::TooLarge(max_n).to_string()));
            }
            let reports = (1..=max_n)
                .map(cross_check)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::input(e.to_string()))?;
            if json {
                buf.push_str(&serde_json::to_string(&reports).expect("reports serialize"));
                buf.push('\n');
            } else {
                render_reports(&mut buf, &reports);
            }
            if reports.iter().all(|r| r.mismatches.is_empty()) {
                0
            } else {
                1
            }
        }
        Command::Random { n, p, seed, nb } => {
            let g = if nb {
                random_nb_graph(n, seed)
            } else {
                random_graph(n, p, seed).map_err(|e| Failure::input(e.to_string()))?
            };
            buf.push_str(&emit_edge_list(&g, None));
            0
        }
    };
    out.write_all(buf.as_bytes())
        .map_err(|e| Failure::input(format!("writing output: {e}")))?;
    Ok(code)
}

fn exit_for(v: &Verdict) -> i32 {
    if v.is_embeddable() {
        EXIT_EMBEDDABLE
    } else {
        EXIT_NOT_EMBEDDABLE
    }
}

fn read_input(path: &Path) -> Result<Vec<u8>, Failure> {
    if path == Path::new("-") {
        let mut bytes = Vec::new();
        io::stdin()
            .read_to_end(&mut bytes)
            .map_err(|e| Failure::input(format!("reading standard input: {e}")))?;
        Ok(bytes)
    } else {
        fs::read(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
    }
}

fn load(input: &Input) -> Result<(Graph, LabelMap), Failure> {
    let bytes = read_input(&input.file)?;
    let name = input.file.display();
    match input.format {
        Format::Edgelist => {
            let text = String::from_utf8(bytes)
                .map_err(|_| Failure::input(format!("{name}: not valid UTF-8")))?;
            parse_edge_list(&text).map_err(|e| Failure::input(format!("{name}: {e}")))
        }
        Format::Graph6 => {
            let trimmed = bytes.trim_ascii();
            let g = parse_graph6(trimmed).map_err(|e| Failure::input(format!("{name}: {e}")))?;
            let labels = LabelMap::numeric(g.vertex_count());
            Ok((g, labels))
        }
    }
}

fn render_set(vertices: &[Vertex], labels: &LabelMap) -> String {
    let names: Vec<&str> = vertices.iter().map(|&v| labels.label(v)).collect();
    format!("{{{}}}", names.join(", "))
}

fn render_partition(p: &CommutingPartition, labels: &LabelMap) -> String {
    let mut blocks = vec![format!("P0 = {}", render_set(p.p0(), labels))];
    for (i, part) in p.parts().iter().enumerate() {
        blocks.push(format!("P{} = {}", i + 1, render_set(part, labels)));
    }
    blocks.join("; ")
}

fn render_witness(t: &ForbiddenTriple, labels: &LabelMap) -> String {
    format!(
        "witness: edge ({}, {}) with {} adjacent to neither",
        labels.label(t.a),
        labels.label(t.b),
        labels.label(t.c)
    )
}

fn render_verdict(buf: &mut String, v: &Verdict, labels: &LabelMap) {
    match v {
        Verdict::Embeddable { partition, group } => {
            buf.push_str("embeddable\n");
            buf.push_str(&format!("group: {group}\n"));
            buf.push_str(&format!(
                "partition: {}\n",
                render_partition(partition, labels)
            ));
        }
        Verdict::NotEmbeddable { witness } => {
            buf.push_str("not embeddable\n");
            buf.push_str(&render_witness(witness, labels));
            buf.push('\n');
        }
    }
}

fn render_reports(buf: &mut String, reports: &[CrossCheckReport]) {
    buf.push_str(&format!(
        "{:>2} {:>12} {:>8} {:>8} {:>10} {:>10}\n",
        "n", "graphs", "nb", "gp", "recognized", "mismatches"
    ));
    for r in reports {
        buf.push_str(&format!(
            "{:>2} {:>12} {:>8} {:>8} {:>10} {:>10}\n",
            r.n,
            r.total_graphs,
            r.nb_count,
            r.gp_count,
            r.recognized_count,
            r.mismatches.len()
        ));
        for g6 in &r.mismatches {
            buf.push_str(&format!("   mismatch: {g6}\n"));
        }
    }
}
