//! Trace and summary writers.
//!
//! Floats are written in Rust's shortest round-trip form, so every emitted
//! number parses back to the identical `f64`.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::{json, Map, Value};

use swarmlab::experiments::{AggregateResult, ComparisonTable};
use swarmlab::variants::MPSO_MUTATION_RULE;

use crate::config::{CliConfig, Format};

pub const TRACE_HEADER: &str = "objective,dims,variant,iteration,mean_best_fitness";

pub fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

/// Long-format mean traces, one row per (experiment, iteration), in the given order.
pub fn write_traces<'a, W: Write>(mut w: W, results: impl IntoIterator<Item = &'a AggregateResult>) -> io::Result<()> {
    writeln!(w, "{TRACE_HEADER}")?;
    for r in results {
        for (k, v) in r.mean_trace.iter().enumerate() {
            writeln!(
                w,
                "{},{},{},{},{}",
                r.objective_name,
                r.n_dims,
                r.variant.kind.name(),
                k,
                fmt_f64(*v)
            )?;
        }
    }
    w.flush()
}

pub fn emit_trace<'a>(path: &Path, results: impl IntoIterator<Item = &'a AggregateResult>) -> Result<()> {
    let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    write_traces(BufWriter::new(file), results).with_context(|| format!("cannot write {}", path.display()))
}

fn config_block(config: &CliConfig) -> Value {
    json!({
        "subcommand": config.subcommand.name(),
        "objectives": config.objectives,
        "dims": config.dims,
        "variants": config.variants.iter().map(|v| v.name()).collect::<Vec<_>>(),
        "particles": config.particles,
        "iterations": config.iterations,
        "repetitions": config.repetitions,
        "seed": config.seed,
        "seed_rule": "run r uses seed + r",
        "snapshots": config.snapshots,
        "epsilon": config.epsilon,
        "mu": config.mu,
        "p": config.p,
        "ne": config.ne,
        "a": config.a,
        "w_max": config.w_max,
        "w_min": config.w_min,
        "c1": config.c1,
        "c2": config.c2,
        "lower": config.lower,
        "upper": config.upper,
        "boundary": config.boundary.name(),
        "mpso_mutation_rule": MPSO_MUTATION_RULE,
        "argv": config.to_args(),
    })
}

fn result_entry(r: &AggregateResult, config: &CliConfig) -> Value {
    let snapshots: Map<String, Value> = r
        .snapshots
        .iter()
        .map(|s| (s.iteration.to_string(), json!(s.mean)))
        .collect();
    let snapshot_stats: Vec<Value> = r
        .snapshots
        .iter()
        .map(|s| json!({"iteration": s.iteration, "mean": s.mean, "std": s.std, "min": s.min, "max": s.max}))
        .collect();
    json!({
        "objective": r.objective_name,
        "dims": r.n_dims,
        "variant": r.variant.kind.name(),
        "snapshots": snapshots,
        "snapshot_stats": snapshot_stats,
        "iters_to_epsilon_mean": r.mean_iterations_to_threshold,
        "runs_reaching_epsilon": r.runs_reaching_threshold(),
        "epsilon": r.epsilon,
        "seed": config.seed,
        "seeds": r.seeds,
        "parameters": {
            "mu": r.variant.mpso_mu,
            "p": r.variant.tpme_p,
            "ne": r.variant.tpme_ne,
            "a": r.variant.tpme_a,
            "particles": config.particles,
            "iterations": config.iterations,
            "repetitions": config.repetitions,
            "w_max": config.w_max,
            "w_min": config.w_min,
            "c1": config.c1,
            "c2": config.c2,
            "lower": config.lower,
            "upper": config.upper,
            "boundary": config.boundary.name(),
            "mpso_mutation_rule": MPSO_MUTATION_RULE,
        },
    })
}

/// Summary document; `error` marks an incomplete run.
pub fn summary_json(tables: &[ComparisonTable], config: &CliConfig, error: Option<&str>) -> Value {
    let results: Vec<Value> = tables
        .iter()
        .flat_map(|t| t.rows.iter().map(|r| result_entry(r, config)))
        .collect();
    let mut doc = json!({
        "config": config_block(config),
        "complete": error.is_none(),
        "results": results,
    });
    if let Some(e) = error {
        doc["error"] = json!(e);
    }
    doc
}

pub fn write_summary_csv<W: Write>(w: W, tables: &[ComparisonTable], config: &CliConfig) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let mut header: Vec<String> = ["objective", "dims", "variant", "seed", "epsilon", "iters_to_epsilon_mean", "runs_reaching_epsilon"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    header.extend(config.snapshots.iter().map(|s| format!("snapshot_{s}")));
    header.extend(
        ["mu", "p", "ne", "a", "particles", "iterations", "repetitions", "w_max", "w_min", "c1", "c2", "lower", "upper", "boundary", "mpso_mutation_rule"]
            .iter()
            .map(|s| s.to_string()),
    );
    out.write_record(&header)?;
    for r in tables.iter().flat_map(|t| &t.rows) {
        let mut row = vec![
            r.objective_name.clone(),
            r.n_dims.to_string(),
            r.variant.kind.name().to_string(),
            config.seed.to_string(),
            fmt_f64(r.epsilon),
            r.mean_iterations_to_threshold.map(fmt_f64).unwrap_or_default(),
            r.runs_reaching_threshold().to_string(),
        ];
        row.extend(
            config
                .snapshots
                .iter()
                .map(|&k| r.snapshot(k).map(|s| fmt_f64(s.mean)).unwrap_or_default()),
        );
        row.extend([
            fmt_f64(r.variant.mpso_mu),
            fmt_f64(r.variant.tpme_p),
            r.variant.tpme_ne.to_string(),
            fmt_f64(r.variant.tpme_a),
            config.particles.to_string(),
            config.iterations.to_string(),
            config.repetitions.to_string(),
            fmt_f64(config.w_max),
            fmt_f64(config.w_min),
            fmt_f64(config.c1),
            fmt_f64(config.c2),
            fmt_f64(config.lower),
            fmt_f64(config.upper),
            config.boundary.name().to_string(),
            MPSO_MUTATION_RULE.to_string(),
        ]);
        out.write_record(&row)?;
    }
    out.flush()?;
    Ok(())
}

pub fn emit_summary(path: &Path, tables: &[ComparisonTable], config: &CliConfig, format: Format, error: Option<&str>) -> Result<()> {
    let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    let mut w = BufWriter::new(file);
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, &summary_json(tables, config, error))?;
            writeln!(w)?;
        }
        Format::Csv => write_summary_csv(&mut w, tables, config)?,
    }
    w.flush().with_context(|| format!("cannot write {}", path.display()))
}

/// Human-readable comparison table.
pub fn render_table<W: Write>(mut w: W, table: &ComparisonTable) -> io::Result<()> {
    writeln!(w, "{}-{}", table.objective_name, table.n_dims)?;
    write!(w, "  {:<8}", "variant")?;
    for s in &table.snapshot_iterations {
        write!(w, " {:>14}", format!("it {s}"))?;
    }
    writeln!(w, " {:>14}", "iters-to-eps")?;
    for r in &table.rows {
        write!(w, "  {:<8}", r.variant.kind.name())?;
        for s in &r.snapshots {
            write!(w, " {:>14.6e}", s.mean)?;
        }
        match r.mean_iterations_to_threshold {
            Some(m) => writeln!(w, " {:>14.1}", m)?,
            None => writeln!(w, " {:>14}", "-")?,
        }
    }
    Ok(())
}
