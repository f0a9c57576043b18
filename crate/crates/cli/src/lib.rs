//! Command-line front end for the swarmlab benchmark harness.
//!
//! Writes `traces.csv` (long-format mean best-so-far traces) and
//! `summary.json` or `summary.csv` into the output directory.

pub mod config;
pub mod emit;

use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};

use swarmlab::experiments::{build_table, AggregateResult, run_batch, ComparisonTable, Parallelism};

pub use config::{parse_cli, CliConfig, Format, SubcommandKind};

#[derive(Debug)]
pub struct Outputs {
    pub traces: PathBuf,
    pub summary: PathBuf,
    pub tables: Vec<ComparisonTable>,
}

pub fn trace_path(config: &CliConfig) -> PathBuf {
    config.out_dir.join("traces.csv")
}

pub fn summary_path(config: &CliConfig) -> PathBuf {
    config.out_dir.join(format!("summary.{}", config.format.name()))
}

/// Table rows in the order the variants were requested (tables themselves are sorted by result).
fn in_request_order<'a>(table: &'a ComparisonTable, config: &CliConfig) -> Vec<&'a AggregateResult> {
    let mut rows: Vec<_> = table.rows.iter().collect();
    rows.sort_by_key(|r| config.variants.iter().position(|v| *v == r.variant.kind));
    rows
}

/// Runs every requested experiment, grouped by (objective, dims), and writes
/// the outputs once at the end. If a group fails, the groups completed so far
/// are still written and the summary is marked incomplete.
pub fn execute<W: Write>(config: &CliConfig, mut out: W) -> Result<Outputs> {
    std::fs::create_dir_all(&config.out_dir)
        .with_context(|| format!("cannot create output directory {}", config.out_dir.display()))?;
    let specs = config.experiment_specs();
    let parallelism = Parallelism::Threads(config.jobs);

    let mut tables = Vec::new();
    let mut failure = None;
    for group in specs.chunks(config.variants.len()) {
        match run_batch(group, parallelism) {
            Ok(rows) => {
                let table = build_table(&group[0], rows);
                emit::render_table(&mut out, &table)?;
                tables.push(table);
            }
            Err(e) => {
                failure = Some(anyhow::Error::new(e).context(format!(
                    "experiment {}-{} failed",
                    group[0].objective_name, group[0].n_dims
                )));
                break;
            }
        }
    }

    let traces = trace_path(config);
    emit::emit_trace(&traces, tables.iter().flat_map(|t| in_request_order(t, config)))?;
    let summary = summary_path(config);
    let message = failure.as_ref().map(|e| format!("{e:#}"));
    emit::emit_summary(&summary, &tables, config, config.format, message.as_deref())?;

    match failure {
        Some(e) => Err(e.context(format!("partial results written to {}", config.out_dir.display()))),
        None => Ok(Outputs { traces, summary, tables }),
    }
}
