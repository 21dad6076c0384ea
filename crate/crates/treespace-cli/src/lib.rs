//! Command-line surface over the treespace library: analyze, reconstruct,
//! compare, verify, enumerate, and kx. Every command reads files, writes
//! deterministic output to stdout, and reports timing on stderr.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use treespace::{
    analyze, augment, check_pointed, check_pointed_with, complex_parts_from_json, complex_to_json,
    corollary_sweep, enumerate_pointed, enumerate_trees, free_code, free_tree_from_json,
    hasse_to_dot, homogeneity_degree, kx_size, normalize, pointed_sweep, reconstruct, report_table,
    report_to_json, signature, tree_from_json, tree_to_dot, tree_to_json, uniqueness_sweep,
    CellComplex, Error, VerificationReport, DEFAULT_CELL_CAP,
};

#[derive(Parser)]
#[command(
    name = "treespace",
    version,
    about = "Cell complexes of basepointed tree hyperspaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Build the cell complex of a pointed tree (dot emits the covering diagram)
    Analyze {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Refuse complexes with more cells than this
        #[arg(long, default_value_t = DEFAULT_CELL_CAP)]
        cap: usize,
    },
    /// Rebuild the pointed tree from a complex document
    Reconstruct {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Decide whether two pointed trees have the same hyperspace
    Compare {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check the structural laws on one tree, on a foreign complex, or
    /// sweep every class up to an edge bound
    Verify {
        /// Pointed tree to check; without it, run the full sweeps
        #[arg(long)]
        input: Option<PathBuf>,
        /// Complex document to check against --input instead of a fresh one
        #[arg(long, requires = "input")]
        complex: Option<PathBuf>,
        /// Edge bound for the sweeps (defaults: 9 per-tree, 8 pairwise)
        #[arg(long)]
        max_edges: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Sweep worker threads (defaults to all cores)
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// List every tree class (or pointed class) up to an edge bound
    Enumerate {
        #[arg(long, default_value_t = 9)]
        max_edges: usize,
        /// Enumerate pointed classes instead of unrooted trees
        #[arg(long)]
        pointed: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Count distinct hyperspaces over the points of an unrooted tree
    Kx {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

/// Parses `args` and executes the command, writing results to `out` and
/// diagnostics to `err`. Returns the process exit code: 0 on success, 1 when
/// verification finds a counterexample, 2 on bad input.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{rendered}");
                0
            } else {
                let _ = write!(err, "{rendered}");
                2
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Error> {
    match command {
        Command::Analyze { input, format, cap } => {
            let t = tree_from_json(&read(&input)?)?;
            let c = analyze(&t, cap)?;
            let text = match format {
                Format::Json => complex_to_json(&c),
                Format::Dot => hasse_to_dot(&c)?,
                Format::Table => complex_table(&c),
            };
            let _ = write!(out, "{text}");
            Ok(0)
        }
        Command::Reconstruct { input, format } => {
            let a = treespace::abstract_complex_from_json(&read(&input)?)?;
            let t = reconstruct(&a)?;
            let text = match format {
                Format::Json => tree_to_json(&t),
                Format::Dot => tree_to_dot(&t),
                Format::Table => {
                    return Err(Error::InvalidInput("reconstruct emits json or dot".into()))
                }
            };
            let _ = write!(out, "{text}");
            Ok(0)
        }
        Command::Compare {
            left,
            right,
            format,
        } => {
            let a = tree_from_json(&read(&left)?)?;
            let b = tree_from_json(&read(&right)?)?;
            let (sa, sb) = (signature(&a)?, signature(&b)?);
            let equivalent = sa == sb;
            match format {
                Format::Json => {
                    let doc = json!({
                        "equivalent": equivalent,
                        "left": treespace::io::signature_json_value(&sa),
                        "right": treespace::io::signature_json_value(&sb),
                    });
                    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap());
                }
                Format::Table | Format::Dot => {
                    let _ = writeln!(
                        out,
                        "{}",
                        if equivalent { "equivalent" } else { "distinct" }
                    );
                    let _ = writeln!(out, "left:  {}", treespace::io::signature_json_value(&sa));
                    let _ = writeln!(out, "right: {}", treespace::io::signature_json_value(&sb));
                }
            }
            Ok(0)
        }
        Command::Verify {
            input,
            complex,
            max_edges,
            format,
            jobs,
        } => {
            let report = run_verify(input, complex, max_edges, jobs)?;
            let text = match format {
                Format::Json => report_to_json(&report),
                Format::Table | Format::Dot => report_table(&report),
            };
            let _ = write!(out, "{text}");
            let _ = writeln!(err, "elapsed: {}ms", report.elapsed.as_millis());
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Enumerate {
            max_edges,
            pointed,
            format,
        } => {
            let text = if pointed {
                enumerate_pointed_text(max_edges, format)?
            } else {
                enumerate_trees_text(max_edges, format)?
            };
            let _ = write!(out, "{text}");
            Ok(0)
        }
        Command::Kx { input, format } => {
            let t = free_tree_from_json(&read(&input)?)?;
            let k = kx_size(&t)?;
            let h = homogeneity_degree(&t);
            match format {
                Format::Json => {
                    let doc = json!({"distinct_hyperspaces": k, "homogeneity_degree": h});
                    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap());
                }
                Format::Table | Format::Dot => {
                    let _ = writeln!(out, "distinct_hyperspaces: {k}");
                    let _ = writeln!(out, "homogeneity_degree: {h}");
                }
            }
            Ok(0)
        }
    }
}

fn run_verify(
    input: Option<PathBuf>,
    complex: Option<PathBuf>,
    max_edges: Option<usize>,
    jobs: Option<usize>,
) -> Result<VerificationReport, Error> {
    match (input, complex) {
        (Some(tree_path), Some(complex_path)) => {
            let t = tree_from_json(&read(&tree_path)?)?;
            let parts = complex_parts_from_json(&read(&complex_path)?)?;
            let (source, _) = augment(&normalize(&t));
            let c = CellComplex::from_parts(
                source,
                parts.ord_basepoint,
                parts.attached,
                parts.cells,
                parts.intersections,
            )?;
            Ok(check_pointed_with(&t, &c))
        }
        (Some(tree_path), None) => {
            let t = tree_from_json(&read(&tree_path)?)?;
            Ok(check_pointed(&t))
        }
        (None, _) => {
            let sweeps = move || {
                let mut report = pointed_sweep(max_edges.unwrap_or(9));
                report.merge(uniqueness_sweep(max_edges.unwrap_or(8)));
                report.merge(corollary_sweep(max_edges.unwrap_or(9)));
                report
            };
            match jobs {
                None => Ok(sweeps()),
                Some(n) => {
                    let pool = rayon::ThreadPoolBuilder::new()
                        .num_threads(n)
                        .build()
                        .map_err(|e| {
                            Error::InvalidInput(format!("cannot build thread pool: {e}"))
                        })?;
                    Ok(pool.install(sweeps))
                }
            }
        }
    }
}

fn complex_table(c: &CellComplex) -> String {
    let mut out = format!(
        "cells: {}  ord_basepoint: {}  attached: {}\n",
        c.cells().len(),
        c.ord_basepoint(),
        c.attached()
    );
    for (i, cell) in c.cells().iter().enumerate() {
        let names: Vec<String> = cell
            .subtree
            .edges()
            .iter()
            .map(|&(u, v)| {
                format!(
                    "{}-{}",
                    c.source().tree().name(u),
                    c.source().tree().name(v)
                )
            })
            .collect();
        out.push_str(&format!(
            "cell {i}: dim {} [{}]\n",
            cell.dimension,
            names.join(" ")
        ));
    }
    for (&(i, j), d) in c.intersections() {
        out.push_str(&format!("meet {i} {j}: dim {d}\n"));
    }
    out
}

fn enumerate_trees_text(max_edges: usize, format: Format) -> Result<String, Error> {
    let trees = enumerate_trees(max_edges);
    match format {
        Format::Json => {
            let docs: Vec<serde_json::Value> = trees
                .iter()
                .map(|t| {
                    let mut edges = t.edge_names();
                    edges.sort();
                    json!({"edges": edges})
                })
                .collect();
            let mut text = serde_json::to_string_pretty(&docs).unwrap();
            text.push('\n');
            Ok(text)
        }
        Format::Table => {
            let mut out = String::new();
            for (i, t) in trees.iter().enumerate() {
                out.push_str(&format!("{i}\t{}\t{}\n", t.edge_count(), free_code(t)));
            }
            Ok(out)
        }
        Format::Dot => Err(Error::InvalidInput("enumerate emits json or table".into())),
    }
}

fn enumerate_pointed_text(max_edges: usize, format: Format) -> Result<String, Error> {
    let classes = enumerate_pointed(max_edges);
    match format {
        Format::Json => {
            let docs: Vec<serde_json::Value> =
                classes.iter().map(treespace::io::tree_json_value).collect();
            let mut text = serde_json::to_string_pretty(&docs).unwrap();
            text.push('\n');
            Ok(text)
        }
        Format::Table => {
            let mut out = String::new();
            for (i, t) in classes.iter().enumerate() {
                out.push_str(&format!(
                    "{i}\t{}\t{}\n",
                    t.tree().edge_count(),
                    treespace::canonical_code(t).as_str()
                ));
            }
            Ok(out)
        }
        Format::Dot => Err(Error::InvalidInput("enumerate emits json or table".into())),
    }
}
