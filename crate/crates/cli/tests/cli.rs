use std::path::Path;
use std::process::Command;

use serde_json::Value;
use swarmlab_cli::{execute, parse_cli};

fn swarmlab(args: &[&str], out: &Path) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_swarmlab"))
        .args(args)
        .arg("--out-dir")
        .arg(out)
        .env_remove("SWARMLAB_SEED")
        .output()
        .unwrap()
}

fn config(line: &str, out: &Path) -> swarmlab_cli::CliConfig {
    let mut args: Vec<String> = std::iter::once("swarmlab")
        .chain(line.split_whitespace())
        .map(String::from)
        .collect();
    args.push("--out-dir".into());
    args.push(out.display().to_string());
    parse_cli(args).unwrap()
}

#[test]
fn trace_rows_follow_iterations() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config("run --iterations 2 --repetitions 2 --seed 1", dir.path());
    let out = execute(&cfg, std::io::sink()).unwrap();
    let text = std::fs::read_to_string(out.traces).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "objective,dims,variant,iteration,mean_best_fitness");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("griewank,30,tpme,0,"));
    assert!(lines[3].starts_with("griewank,30,tpme,2,"));
    assert!(!text.contains('\r'));
}

#[test]
fn five_variant_compare_row_count() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config("compare --repetitions 1", dir.path());
    let out = execute(&cfg, std::io::sink()).unwrap();
    let text = std::fs::read_to_string(out.traces).unwrap();
    assert_eq!(text.lines().count(), 1 + 5 * 2001);
}

#[test]
fn trace_values_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config("compare --iterations 50 --repetitions 3 --objective rastrigin --dims 7", dir.path());
    let out = execute(&cfg, std::io::sink()).unwrap();
    let text = std::fs::read_to_string(&out.traces).unwrap();
    let mut rows = text.lines().skip(1);
    // Rows are in requested variant order: epsom, ldw, psom, mpso, tpme.
    let epsom = out.tables[0].rows.iter().find(|r| r.variant.kind.name() == "epsom").unwrap();
    for (k, expected) in epsom.mean_trace.iter().enumerate() {
        let row = rows.next().unwrap();
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields[2], "epsom");
        assert_eq!(fields[3], k.to_string());
        let parsed: f64 = fields[4].parse().unwrap();
        assert_eq!(parsed.to_bits(), expected.to_bits());
        assert_eq!(format!("{parsed:?}"), fields[4]);
    }
}

#[test]
fn json_summary_schema() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config("compare --iterations 30 --repetitions 2 --snapshots 10,30 --variants tpme,ldw --seed 9", dir.path());
    let out = execute(&cfg, std::io::sink()).unwrap();
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(out.summary).unwrap()).unwrap();
    assert_eq!(doc["complete"], true);
    assert_eq!(doc["config"]["mpso_mutation_rule"], "threshold-scaled-uniform-offset");
    assert_eq!(doc["config"]["seed"], 9);
    let results = doc["results"].as_array().unwrap();
    assert_eq!(results.len(), 2);
    for r in results {
        for key in ["objective", "dims", "variant", "snapshots", "iters_to_epsilon_mean", "epsilon"] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
        let snaps = r["snapshots"].as_object().unwrap();
        assert_eq!(snaps.keys().collect::<Vec<_>>(), vec!["10", "30"]);
        assert_eq!(r["epsilon"], 1e-15);
    }

    // The echoed argv parses back to the same configuration.
    let argv: Vec<String> = doc["config"]["argv"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    assert_eq!(parse_cli(argv).unwrap(), cfg);
}

#[test]
fn csv_summary_one_row_per_experiment() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config("compare --iterations 20 --repetitions 1 --dims 5,6 --format csv", dir.path());
    let out = execute(&cfg, std::io::sink()).unwrap();
    assert!(out.summary.ends_with("summary.csv"));
    let mut reader = csv::Reader::from_path(&out.summary).unwrap();
    let headers = reader.headers().unwrap().clone();
    assert!(headers.iter().any(|h| h == "snapshot_20"));
    assert!(headers.iter().any(|h| h == "mpso_mutation_rule"));
    assert_eq!(reader.records().count(), 10);
}

#[test]
fn paper_repro_smoke_cardinality() {
    let dir = tempfile::tempdir().unwrap();
    let started = std::time::Instant::now();
    let output = swarmlab(&["paper-repro", "--repetitions", "1", "--iterations", "10"], dir.path());
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
    assert!(started.elapsed().as_secs_f64() < 5.0);
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("rosenbrock-90"));
    let doc: Value = serde_json::from_slice(&std::fs::read(dir.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(doc["results"].as_array().unwrap().len(), 45);
}

#[test]
fn usage_errors_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let output = swarmlab(&["run", "--particles", "0"], dir.path());
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("--particles"));
    let output = swarmlab(&["run", "--frobnicate"], dir.path());
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn seed_env_fallback() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_swarmlab"))
        .args(["run", "--iterations", "5", "--repetitions", "2", "--out-dir"])
        .arg(dir.path())
        .env("SWARMLAB_SEED", "4242")
        .status()
        .unwrap();
    assert!(status.success());
    let doc: Value = serde_json::from_slice(&std::fs::read(dir.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(doc["config"]["seed"], 4242);
    assert_eq!(doc["results"][0]["seeds"], serde_json::json!([4242, 4243]));
}

#[test]
fn failed_experiment_marks_partial_output() {
    // mpso needs at least two iterations, so the first group already fails.
    let dir = tempfile::tempdir().unwrap();
    let output = swarmlab(&["compare", "--iterations", "1", "--repetitions", "1", "--variants", "ldw,mpso"], dir.path());
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("seed"));
    let doc: Value = serde_json::from_slice(&std::fs::read(dir.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(doc["complete"], false);
    assert!(doc["error"].as_str().unwrap().contains("griewank-30"));
}

#[test]
fn unwritable_destination_names_path() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let cfg = config("run --iterations 2 --repetitions 1", &blocker.join("sub"));
    let err = execute(&cfg, std::io::sink()).unwrap_err();
    assert!(format!("{err:#}").contains("sub"), "{err:#}");
}
