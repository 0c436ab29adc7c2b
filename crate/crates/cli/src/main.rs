//! `graphalg`: graph-level analysis of graph C*-algebras from the command line.
//!
//! Exit codes: 0 success or positive verdict, 1 negative verdict, 2 usage or
//! input error.

mod commands;
mod input;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use graphalg::structure::DEFAULT_CYCLE_CAP;
use rayon::prelude::*;
use serde_json::json;

use commands::{Report, SkewArgs};
use input::{Failure, Result};

#[derive(Parser, Debug)]
#[command(
    name = "graphalg",
    version,
    about = "Analyze directed multigraphs as graph C*-algebra presentations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug)]
struct Global {
    /// Print a human-readable summary instead of JSON.
    #[arg(long, global = true)]
    text: bool,
    /// Run the subcommand on every `*.g` file in a directory.
    #[arg(long, global = true, value_name = "DIR")]
    batch: Option<PathBuf>,
    /// Worker threads for --batch (default: available cores, at most 8).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    /// Also write a Graphviz rendering of the main graph to this file.
    #[arg(long, global = true, value_name = "FILE")]
    emit_dot: Option<PathBuf>,
    /// Maximum number of simple loops enumerated for condition (K).
    #[arg(long, global = true, default_value_t = DEFAULT_CYCLE_CAP)]
    cycle_cap: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simplicity of C*(E) and of its AF core, periods and decompositions.
    Analyze {
        graph: Option<PathBuf>,
        /// Emit JSON (the default; kept for explicitness).
        #[arg(long)]
        json: bool,
        /// Levels of the Bratteli diagram reported for strongly connected graphs.
        #[arg(long, value_name = "L")]
        bratteli: Option<usize>,
    },
    /// Period and residue classes at a base vertex.
    Period {
        graph: Option<PathBuf>,
        #[arg(long, value_name = "V")]
        base: Option<String>,
    },
    /// Hereditary and saturated closure of a vertex set.
    Closure {
        graph: Option<PathBuf>,
        /// Comma-separated vertex ids.
        #[arg(long, value_name = "V1,V2,...")]
        set: String,
    },
    /// Relative skew product, or a window of the integer skew product.
    Skew {
        graph: Option<PathBuf>,
        /// Z, Zn:<n> or perm:<m>:<gen>,...
        #[arg(long)]
        group: String,
        /// File of `label <edge-id> <element>` lines.
        #[arg(long)]
        labels: PathBuf,
        /// Comma-separated generators of the subgroup H (default: trivial).
        #[arg(long)]
        subgroup: Option<String>,
        /// Levels a..b of E x_c Z (group Z only).
        #[arg(long, value_name = "A..B", allow_hyphen_values = true)]
        window: Option<String>,
        /// Report the connected components of the product.
        #[arg(long)]
        components: bool,
    },
    /// T-voltage and local voltage group of a labelling.
    Voltage {
        graph: Option<PathBuf>,
        #[arg(long)]
        group: String,
        #[arg(long)]
        labels: PathBuf,
        #[arg(long, value_name = "V")]
        base: Option<String>,
    },
    /// Decide whether two labellings are cohomologous.
    Cohomologous {
        graph: Option<PathBuf>,
        #[arg(long)]
        group: String,
        #[arg(long)]
        labels1: PathBuf,
        #[arg(long)]
        labels2: PathBuf,
    },
    /// Verify or decompose a covering map F -> E.
    Cover {
        #[command(subcommand)]
        action: CoverAction,
    },
    /// Simplicity of the AF core, with an optional Bratteli diagram.
    Afcore {
        graph: Option<PathBuf>,
        #[arg(long, value_name = "L")]
        bratteli: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum CoverAction {
    /// Check that the map is a covering.
    Verify {
        covering: PathBuf,
        base: PathBuf,
        /// File of `vmap <F-vertex> <E-vertex>` and `emap <F-edge> <E-edge>` lines.
        #[arg(long)]
        map: PathBuf,
    },
    /// Present a connected covering as a relative skew product.
    Decompose {
        covering: PathBuf,
        base: PathBuf,
        #[arg(long)]
        map: PathBuf,
        /// Root of the spanning tree of E.
        #[arg(long = "base", value_name = "V")]
        root: Option<String>,
        /// Decompose each component of a disconnected covering graph.
        #[arg(long)]
        per_component: bool,
    },
}

impl Command {
    /// The single graph operand, when the subcommand takes one.
    fn graph(&self) -> Option<Option<&Path>> {
        match self {
            Command::Analyze { graph, .. }
            | Command::Period { graph, .. }
            | Command::Closure { graph, .. }
            | Command::Skew { graph, .. }
            | Command::Voltage { graph, .. }
            | Command::Cohomologous { graph, .. }
            | Command::Afcore { graph, .. } => Some(graph.as_deref()),
            Command::Cover { .. } => None,
        }
    }

    fn run(&self, path: &Path, cap: usize) -> Result<Report> {
        match self {
            Command::Analyze { bratteli, .. } => commands::analyze(path, cap, *bratteli),
            Command::Period { base, .. } => commands::period_cmd(path, base.as_deref()),
            Command::Closure { set, .. } => commands::closure(path, set),
            Command::Skew {
                group,
                labels,
                subgroup,
                window,
                components,
                ..
            } => commands::skew(
                path,
                &SkewArgs {
                    group,
                    labels,
                    subgroup: subgroup.as_deref(),
                    window: window.as_deref(),
                    components: *components,
                },
            ),
            Command::Voltage {
                group,
                labels,
                base,
                ..
            } => commands::voltage(path, group, labels, base.as_deref()),
            Command::Cohomologous {
                group,
                labels1,
                labels2,
                ..
            } => commands::cohomologous(path, group, labels1, labels2),
            Command::Afcore { bratteli, .. } => commands::afcore(path, cap, *bratteli),
            Command::Cover { .. } => unreachable!("cover takes two graphs"),
        }
    }
}

fn exit_code(r: &Result<Report>) -> u8 {
    match r {
        Ok(report) if report.positive => 0,
        Ok(_) => 1,
        Err(_) => 2,
    }
}

fn render(report: &Report, text: bool) -> String {
    if text {
        report.text.clone()
    } else {
        let mut s = serde_json::to_string_pretty(&report.json).expect("json values serialize");
        s.push('\n');
        s
    }
}

fn graph_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries = fs::read_dir(dir).map_err(|e| Failure(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "g"))
        .collect();
    files.sort();
    Ok(files)
}

fn batch(cli: &Cli, dir: &Path) -> Result<(String, u8)> {
    if cli.global.emit_dot.is_some() {
        return Err(Failure("--emit-dot is not available with --batch".into()));
    }
    if cli.command.graph().is_none() {
        return Err(Failure("--batch is not available for cover".into()));
    }
    if let Some(Some(_)) = cli.command.graph() {
        return Err(Failure(
            "pass either a graph file or --batch, not both".into(),
        ));
    }
    let files = graph_files(dir)?;
    let threads = cli
        .global
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get().min(8)))
        .max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure(e.to_string()))?;
    let results: Vec<Result<Report>> = pool.install(|| {
        files
            .par_iter()
            .map(|f| cli.command.run(f, cli.global.cycle_cap))
            .collect()
    });

    let code = results.iter().map(exit_code).max().unwrap_or(0);
    let name = |f: &PathBuf| {
        f.file_name()
            .map_or_else(String::new, |n| n.to_string_lossy().into_owned())
    };
    let out = if cli.global.text {
        let mut s = String::new();
        for (f, r) in files.iter().zip(&results) {
            s.push_str(&format!("== {} (exit {}) ==\n", name(f), exit_code(r)));
            match r {
                Ok(report) => s.push_str(&report.text),
                Err(e) => s.push_str(&format!("error: {e}\n")),
            }
        }
        s
    } else {
        let reports: Vec<_> = files
            .iter()
            .zip(&results)
            .map(|(f, r)| {
                json!({
                    "file": name(f),
                    "exit_code": exit_code(r),
                    "report": r.as_ref().ok().map(|x| &x.json),
                    "error": r.as_ref().err().map(ToString::to_string),
                })
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&json!({ "reports": reports }))
            .expect("json values serialize");
        s.push('\n');
        s
    };
    Ok((out, code))
}

fn single(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Cover { action } => match action {
            CoverAction::Verify {
                covering,
                base,
                map,
            } => commands::cover_verify(covering, base, map),
            CoverAction::Decompose {
                covering,
                base,
                map,
                root,
                per_component,
            } => commands::cover_decompose(covering, base, map, root.as_deref(), *per_component),
        },
        other => {
            let path = other
                .graph()
                .flatten()
                .ok_or_else(|| Failure("missing graph file (or --batch DIR)".into()))?;
            other.run(path, cli.global.cycle_cap)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut stdout = std::io::stdout().lock();
    if let Some(dir) = &cli.global.batch {
        return match batch(&cli, dir) {
            Ok((out, code)) => {
                let _ = stdout.write_all(out.as_bytes());
                ExitCode::from(code)
            }
            Err(e) => {
                eprintln!("graphalg: {e}");
                ExitCode::from(2)
            }
        };
    }
    let result = single(&cli);
    let code = exit_code(&result);
    match result {
        Ok(report) => {
            if let (Some(path), Some(dot)) = (&cli.global.emit_dot, &report.dot) {
                if let Err(e) = fs::write(path, dot) {
                    eprintln!("graphalg: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            let _ = stdout.write_all(render(&report, cli.global.text).as_bytes());
        }
        Err(e) => eprintln!("graphalg: {e}"),
    }
    ExitCode::from(code)
}
