//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
//!
//! Criteria 8-12 share one full-scale grid (5 variants x 3 objectives x
//! 30/60/90 dimensions x 20 runs x 2000 iterations x 40 particles).

use std::process::{Command, ExitCode};
use std::time::Instant;

use swarmlab::benchmarks::{griewank, lookup, rastrigin, rosenbrock, BenchmarkKind, Objective};
use swarmlab::experiments::{run_batch, run_single, AggregateResult, ExperimentSpec, Parallelism};
use swarmlab::swarm::{inertia_weight, init_swarm};
use swarmlab::variants::{elite_multiplier, mpso_threshold, step_classified, step_ldw, step_tpme};
use swarmlab::{ClassLabel, RandomStream, SwarmConfig, UniformSource, VariantKind, VariantSpec};

const OBJECTIVES: [&str; 3] = ["griewank", "rastrigin", "rosenbrock"];
const DIMS: [usize; 3] = [30, 60, 90];

struct Outcome {
    id: u32,
    title: &'static str,
    passed: bool,
    detail: String,
}

fn check(id: u32, title: &'static str, f: impl FnOnce() -> Result<String, String>) -> Outcome {
    let start = Instant::now();
    let (passed, detail) = match f() {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    let o = Outcome { id, title, passed, detail };
    println!(
        "[{}] criterion {:>2}: {} ({:.1}s) - {}",
        if o.passed { "PASS" } else { "FAIL" },
        o.id,
        o.title,
        start.elapsed().as_secs_f64(),
        o.detail
    );
    o
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn spec(objective: &str, n: usize, variant: VariantSpec, it_max: usize) -> ExperimentSpec {
    let mut swarm = SwarmConfig::default_for(n);
    swarm.it_max = it_max;
    ExperimentSpec::new(objective, variant, swarm)
}

fn monotone_traces() -> Result<String, String> {
    let mut specs = Vec::new();
    for obj in OBJECTIVES {
        for kind in VariantKind::ALL {
            specs.push(spec(obj, 30, VariantSpec::new(kind), 2000).with_repetitions(5).with_seed(1000));
        }
    }
    let mut checked = 0;
    for s in &specs {
        for r in 0..s.repetitions {
            let t = run_single(s, s.run_seed(r)).map_err(|e| e.to_string())?;
            let trace = &t.best_fitness_per_iteration;
            if let Some(k) = (1..trace.len()).find(|&k| trace[k] > trace[k - 1]) {
                return Err(format!(
                    "{} on {} seed {}: trace rises at iteration {k}",
                    s.variant.kind, s.objective_name, t.seed
                ));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} traces non-increasing"))
}

fn reduction_equivalence() -> Result<String, String> {
    let obj = lookup("griewank", 30).unwrap();
    let mut cfg = SwarmConfig::default_for(30);
    cfg.it_max = 200;
    let wide = VariantSpec { tpme_p: 1e9, ..VariantSpec::tpme() };
    let trace = |stepper: &dyn Fn(&mut swarmlab::SwarmState, &mut RandomStream)| {
        let mut rng = RandomStream::new(77);
        let mut s = init_swarm(&cfg, &obj, &mut rng).unwrap();
        let mut out = vec![s.global_best_fit.to_bits()];
        for _ in 0..cfg.it_max {
            stepper(&mut s, &mut rng);
            out.push(s.global_best_fit.to_bits());
        }
        (out, s)
    };
    let (ldw, ldw_state) = trace(&|s, r| step_ldw(s, &cfg, &obj, r).unwrap());
    let (tpme, tpme_state) = trace(&|s, r| step_tpme(s, &cfg, &wide, &obj, r).unwrap());
    let fair = vec![ClassLabel::Fair; cfg.n_particles];
    let (psom, psom_state) = trace(&|s, r| step_classified(s, &cfg, &obj, r, &fair).unwrap());
    if tpme != ldw || tpme_state != ldw_state {
        return Err("tpme with p = 1e9 diverges from ldw".into());
    }
    if psom != ldw || psom_state != ldw_state {
        return Err("forced-fair psom diverges from ldw".into());
    }
    Ok("tpme(p=1e9) and forced-fair psom bit-match ldw over 200 iterations".into())
}

fn inertia_closed_form() -> Result<String, String> {
    let cfg = SwarmConfig::default_for(30);
    for it in 0..=2000usize {
        let expected = 0.9 - it as f64 * (0.9 - 0.1) / 2000.0;
        let got = inertia_weight(it, &cfg);
        if got.to_bits() != expected.to_bits() {
            return Err(format!("it {it}: {got} != {expected}"));
        }
    }
    Ok("2001 iterations exact".into())
}

fn threshold_schedule() -> Result<String, String> {
    let th: Vec<f64> = (1..=2000).map(|i| mpso_threshold(i, 2000, 0.05).unwrap()).collect();
    if th[0] != 1.0 || th[1999] != 0.0 {
        return Err(format!("endpoints {} and {}", th[0], th[1999]));
    }
    if let Some(i) = th.windows(2).position(|w| !(w[1] < w[0])) {
        return Err(format!("not strictly decreasing at i = {}", i + 2));
    }
    Ok("TH(1) = 1, TH(2000) = 0, strictly decreasing".into())
}

fn benchmark_oracles() -> Result<String, String> {
    for kind in [BenchmarkKind::Griewank, BenchmarkKind::Rastrigin, BenchmarkKind::Rosenbrock] {
        for n in DIMS {
            let b = lookup(kind.name(), n).unwrap();
            let v = b.evaluate(&b.known_optimizer());
            if (v - b.known_optimum_value()).abs() > 1e-12 {
                return Err(format!("{kind}-{n} at optimizer: {v}"));
            }
        }
    }
    let mut rng = RandomStream::new(5);
    for _ in 0..10_000 {
        let x: Vec<f64> = (0..30).map(|_| -100.0 + 200.0 * rng.next_uniform()).collect();
        for (name, v) in [("griewank", griewank(&x)), ("rastrigin", rastrigin(&x)), ("rosenbrock", rosenbrock(&x))] {
            if !(v >= 0.0) {
                return Err(format!("{name} negative: {v}"));
            }
        }
    }
    let mut x = vec![0.0; 30];
    x[0] = 100.0;
    let g = griewank(&x);
    if (g - 2.63774).abs() > 1e-4 {
        return Err(format!("griewank(100, 0, ...) = {g}"));
    }
    Ok(format!("optima exact, 3 x 1e4 points nonnegative, griewank(100,0..) = {g:.6}"))
}

fn elite_multiplier_samples() -> Result<String, String> {
    let mut rng = RandomStream::new(2024);
    let n = 100_000;
    let mut sum = 0.0;
    for _ in 0..n {
        let m = elite_multiplier(0.5, rng.next_uniform());
        if !(0.5..=1.5).contains(&m) {
            return Err(format!("multiplier {m} outside [0.5, 1.5]"));
        }
        sum += m;
    }
    let mean = sum / n as f64;
    if (mean - 1.0).abs() > 0.01 {
        return Err(format!("mean {mean}"));
    }
    Ok(format!("1e5 samples in [0.5, 1.5], mean {mean:.5}"))
}

fn cli_determinism() -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |name: &str, jobs: &str| -> Result<Vec<u8>, String> {
        let out = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_swarmlab"))
            .args(["compare", "--objective", "griewank,rastrigin", "--dims", "30", "--iterations", "300", "--repetitions", "4"])
            .args(["--seed", "11", "--jobs", jobs, "--out-dir"])
            .arg(&out)
            .output()
            .map_err(|e| e.to_string())?;
        if !status.status.success() {
            return Err(String::from_utf8_lossy(&status.stderr).into_owned());
        }
        std::fs::read(out.join("traces.csv")).map_err(|e| e.to_string())
    };
    let a = run("a", "1")?;
    let b = run("b", "1")?;
    let c = run("c", "8")?;
    if a != b {
        return Err("repeated serial runs differ".into());
    }
    if a != c {
        return Err("--jobs 8 output differs from serial".into());
    }
    Ok(format!("{} bytes identical across two serial runs and --jobs 8", a.len()))
}

struct Grid(Vec<AggregateResult>);

impl Grid {
    fn compute() -> Self {
        let mut specs = Vec::new();
        for obj in OBJECTIVES {
            for n in DIMS {
                for kind in VariantKind::ALL {
                    specs.push(spec(obj, n, VariantSpec::new(kind), 2000).with_snapshots(vec![10, 2000]));
                }
            }
        }
        Grid(run_batch(&specs, Parallelism::Threads(jobs())).expect("grid runs"))
    }

    fn get(&self, obj: &str, n: usize, kind: VariantKind) -> &AggregateResult {
        self.0
            .iter()
            .find(|r| r.objective_name == obj && r.n_dims == n && r.variant.kind == kind)
            .unwrap()
    }
}

fn first_at_or_below(trace: &[f64], eps: f64) -> Option<usize> {
    trace.iter().position(|&v| v <= eps)
}

fn tpme_reaches(grid: &Grid, obj: &str, early: f64, late: f64) -> Result<String, String> {
    let r = grid.get(obj, 30, VariantKind::Tpme);
    let at50 = r.mean_trace[50];
    let final_mean = r.mean_trace[2000];
    let hit = first_at_or_below(&r.mean_trace, early);
    let detail = format!(
        "mean at it 50 = {at50:.3e}, first it <= {early:e}: {hit:?}, mean at 2000 = {final_mean:.3e}"
    );
    if hit.is_some_and(|k| k <= 50) && final_mean <= late {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn ordering(grid: &Grid) -> Result<String, String> {
    let mut problems = Vec::new();
    for obj in OBJECTIVES {
        for n in DIMS {
            let tpme = grid.get(obj, n, VariantKind::Tpme);
            for snap in [10, 2000] {
                let t = tpme.snapshot(snap).unwrap().mean;
                for kind in VariantKind::ALL.into_iter().filter(|k| *k != VariantKind::Tpme) {
                    let b = grid.get(obj, n, kind).snapshot(snap).unwrap().mean;
                    if !(t < b) {
                        problems.push(format!("{obj}-{n} it {snap}: tpme {t:.3e} vs {kind} {b:.3e}"));
                    }
                }
            }
        }
    }
    for obj in ["griewank", "rastrigin"] {
        let t = grid.get(obj, 30, VariantKind::Tpme).snapshot(2000).unwrap().mean;
        for kind in VariantKind::ALL.into_iter().filter(|k| *k != VariantKind::Tpme) {
            let b = grid.get(obj, 30, kind).snapshot(2000).unwrap().mean;
            if !(t * 1e3 <= b) {
                problems.push(format!("{obj}-30 it 2000 margin: tpme {t:.3e} vs {kind} {b:.3e} (< 3 orders)"));
            }
        }
    }
    if problems.is_empty() {
        Ok("tpme strictly lowest at it 10 and 2000 on all 9 cases; >= 1e3 margin on griewank-30 and rastrigin-30".into())
    } else {
        Err(problems.join("; "))
    }
}

fn baselines_slow(grid: &Grid) -> Result<String, String> {
    let mut lines = Vec::new();
    for kind in [VariantKind::Epsom, VariantKind::Ldw, VariantKind::Psom, VariantKind::Mpso] {
        let r = grid.get("griewank", 30, kind);
        let best_by_100 = r.mean_trace[..=100].iter().copied().fold(f64::INFINITY, f64::min);
        if best_by_100 <= 1e-6 {
            return Err(format!("{kind} reaches {best_by_100:.3e} within 100 iterations"));
        }
        lines.push(format!("{kind} {best_by_100:.3e}"));
    }
    Ok(format!("mean at it 100: {}", lines.join(", ")))
}

fn rosenbrock_ordering(grid: &Grid) -> Result<String, String> {
    let mut lines = Vec::new();
    for n in DIMS {
        let t = grid.get("rosenbrock", n, VariantKind::Tpme);
        for snap in [10, 2000] {
            let tm = t.snapshot(snap).unwrap().mean;
            let best_other = VariantKind::ALL
                .into_iter()
                .filter(|k| *k != VariantKind::Tpme)
                .map(|k| grid.get("rosenbrock", n, k).snapshot(snap).unwrap().mean)
                .fold(f64::INFINITY, f64::min);
            if !(tm < best_other) {
                return Err(format!("rosenbrock-{n} it {snap}: tpme {tm:.3e} vs best baseline {best_other:.3e}"));
            }
        }
        lines.push(format!("{n}D final {:.3e}", t.snapshot(2000).unwrap().mean));
    }
    Ok(format!("ordering holds; tpme {}", lines.join(", ")))
}

fn main() -> ExitCode {
    let started = Instant::now();
    let mut outcomes = vec![
        check(1, "best-so-far traces non-increasing", monotone_traces),
        check(2, "reduction equivalence", reduction_equivalence),
        check(3, "inertia weight closed form", inertia_closed_form),
        check(4, "mutation threshold schedule", threshold_schedule),
        check(5, "benchmark oracles", benchmark_oracles),
        check(6, "elite mutation multiplier", elite_multiplier_samples),
        check(7, "CLI determinism", cli_determinism),
    ];

    let grid_start = Instant::now();
    let grid = Grid::compute();
    println!("full grid: {} experiments in {:.1}s", grid.0.len(), grid_start.elapsed().as_secs_f64());

    outcomes.push(check(8, "tpme griewank-30 reaches the optimum", || tpme_reaches(&grid, "griewank", 1e-6, 1e-12)));
    outcomes.push(check(9, "tpme rastrigin-30 reaches the optimum", || tpme_reaches(&grid, "rastrigin", 1e-6, 1e-10)));
    outcomes.push(check(10, "tpme ranks first everywhere", || ordering(&grid)));
    outcomes.push(check(11, "baselines slow on griewank-30", || baselines_slow(&grid)));
    outcomes.push(check(12, "rosenbrock ordering only", || rosenbrock_ordering(&grid)));

    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    println!(
        "acceptance: {}/{} passed in {:.1}s{}",
        outcomes.len() - failed.len(),
        outcomes.len(),
        started.elapsed().as_secs_f64(),
        if failed.is_empty() { String::new() } else { format!("; failed: {failed:?}") }
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
