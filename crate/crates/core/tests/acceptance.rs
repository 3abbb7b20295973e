//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qubit_entangle::linalg::jacobi_eigen;
use qubit_entangle::model::{analytic_eigensystem, build_degenerate_hamiltonian, Couplings};
use qubit_entangle::sweep::{argmax_diagonal_check, AxisValues, THREADS_ENV};
use qubit_entangle::thermal::{closed_form_density, gibbs_state, Temperature};
use qubit_entangle::{ground_state_concurrence, pure_state_concurrence, thermal_concurrence};

const SAMPLES: usize = 1000;
const SEED: u64 = 0x5eed_c0de;
const BIN: &str = env!("CARGO_BIN_EXE_qubit-ent");

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

#[derive(Clone, Copy)]
struct Sample {
    e_j1: f64,
    e_j2: f64,
    e_m: f64,
    t: f64,
}

impl Sample {
    fn couplings(&self) -> Couplings {
        Couplings::new(self.e_j1, self.e_j2, self.e_m).unwrap()
    }

    fn temperature(&self) -> Temperature {
        Temperature::new(self.t).unwrap()
    }
}

fn random_samples() -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..SAMPLES)
        .map(|_| Sample {
            e_j1: rng.gen_range(-20.0..=20.0),
            e_j2: rng.gen_range(-20.0..=20.0),
            e_m: rng.gen_range(0.1..=5.0),
            t: rng.gen_range(0.01..=100.0),
        })
        .collect()
}

fn median_time<F: FnMut()>(mut f: F) -> Duration {
    f();
    let mut times: Vec<Duration> = (0..21)
        .map(|_| {
            let start = Instant::now();
            f();
            start.elapsed()
        })
        .collect();
    times.sort();
    times[times.len() / 2]
}

fn ground_point(e_j1: f64, e_j2: f64, want: f64, tol: f64) -> Outcome {
    let c = Couplings::new(e_j1, e_j2, 1.0).unwrap();
    let value = ground_state_concurrence(&c).unwrap().value();
    let elapsed = median_time(|| {
        std::hint::black_box(ground_state_concurrence(std::hint::black_box(&c)).unwrap());
    });
    let pass = (value - want).abs() <= tol && elapsed < Duration::from_millis(1);
    outcome(
        pass,
        format!("C = {value:.9} (target {want} ± {tol:e}), median runtime {elapsed:?}"),
    )
}

fn criterion_1() -> Outcome {
    ground_point(3.625, 3.625, 0.26593, 1e-4)
}

fn criterion_2() -> Outcome {
    ground_point(13.6, 17.2, 0.064, 1e-3)
}

fn criterion_3() -> Outcome {
    let c = Couplings::new(0.0, 0.0, 1.0).unwrap();
    let values: Vec<f64> = [0.01, 1.0, 100.0]
        .iter()
        .map(|&t| {
            thermal_concurrence(&c, Temperature::new(t).unwrap())
                .unwrap()
                .value()
        })
        .collect();
    outcome(
        values.iter().all(|&v| v == 0.0),
        format!("C at t = 0.01, 1, 100: {values:?}"),
    )
}

fn criterion_4() -> Outcome {
    let sys = analytic_eigensystem(&Couplings::identical(0.5, 1.0).unwrap());
    let c = pure_state_concurrence(&sys.states[3]).unwrap().value();
    outcome(
        (c - 0.8944).abs() <= 0.01,
        format!("C(psi4, E_J = 0.5) = {c:.6} (target 0.8944 ± 0.01)"),
    )
}

fn criterion_5(samples: &[Sample]) -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for s in samples {
        let c = s.couplings();
        let spectral = gibbs_state(&build_degenerate_hamiltonian(&c), s.temperature()).unwrap();
        let closed = closed_form_density(&c, s.temperature()).unwrap();
        worst = worst.max(spectral.matrix().max_abs_diff(closed.matrix()));
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-10 && elapsed < Duration::from_secs(5),
        format!(
            "max |closed - spectral| = {worst:.3e} over {} samples in {elapsed:?}",
            samples.len()
        ),
    )
}

fn eigen_residual(c: &Couplings) -> f64 {
    let h = build_degenerate_hamiltonian(c);
    let sys = analytic_eigensystem(c);
    let mut worst = 0.0f64;
    for (state, &e) in sys.states.iter().zip(&sys.energies) {
        let hv = h.mul_vec(state);
        for k in 0..4 {
            worst = worst.max((hv[k] - e * state[k]).abs());
        }
    }
    worst
}

fn criterion_6(samples: &[Sample]) -> Outcome {
    let mut spectrum = 0.0f64;
    let mut residual = 0.0f64;
    let mut near = 0.0f64;
    for s in samples {
        let c = s.couplings();
        let values = jacobi_eigen(&build_degenerate_hamiltonian(&c))
            .unwrap()
            .values;
        let (ra, rb) = (c.a_big().sqrt() / 2.0, c.b_big().sqrt() / 2.0);
        let mut want = [-ra, ra, -rb, rb];
        want.sort_by(f64::total_cmp);
        for (a, b) in values.iter().zip(&want) {
            spectrum = spectrum.max((a - b).abs());
        }
        residual = residual.max(eigen_residual(&c));
        let degenerate = Couplings::new(s.e_j1, s.e_j1 + 1e-9, s.e_m).unwrap();
        near = near.max(eigen_residual(&degenerate));
    }
    outcome(
        spectrum <= 1e-12 && residual <= 1e-12 && near <= 1e-12,
        format!(
            "spectrum err {spectrum:.3e}, eigen residual {residual:.3e}, near-degenerate residual {near:.3e}"
        ),
    )
}

fn criterion_7(samples: &[Sample]) -> Outcome {
    let mut exchange = 0.0f64;
    let mut flip = 0.0f64;
    let mut scaling = 0.0f64;
    for s in samples {
        let t = s.temperature();
        let base = thermal_concurrence(&s.couplings(), t).unwrap().value();
        let at = |a: f64, b: f64| {
            thermal_concurrence(&Couplings::new(a, b, s.e_m).unwrap(), t)
                .unwrap()
                .value()
        };
        exchange = exchange.max((at(s.e_j2, s.e_j1) - base).abs());
        flip = flip
            .max((at(-s.e_j1, s.e_j2) - base).abs())
            .max((at(s.e_j1, -s.e_j2) - base).abs());
        for k in [0.1, 3.0, 100.0] {
            let c = s.couplings().scaled(k).unwrap();
            let v = thermal_concurrence(&c, Temperature::new(k * s.t).unwrap())
                .unwrap()
                .value();
            scaling = scaling.max((v - base).abs());
        }
    }
    outcome(
        exchange <= 1e-10 && flip <= 1e-10 && scaling <= 1e-10,
        format!(
            "max deviation: exchange {exchange:.3e}, sign flip {flip:.3e}, scaling {scaling:.3e}"
        ),
    )
}

fn criterion_8() -> Outcome {
    let grid = AxisValues::linear(0.5, 30.0, 591);
    let report = argmax_diagonal_check(
        Temperature::new(0.01).unwrap(),
        &[2.0, 5.0, 10.0, 17.2],
        &grid,
    )
    .unwrap();
    let detail = report
        .entries
        .iter()
        .map(|e| {
            format!(
                "e_j2={} argmax e_j1={} (C {:.4} vs {:.4} on diagonal)",
                e.e_j2, e.argmax_e_j1, e.max_c, e.c_on_diagonal
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    outcome(report.all_within(), detail)
}

fn run_figures(dir: &Path, threads: &str) -> Duration {
    let start = Instant::now();
    let out = Command::new(BIN)
        .args(["figures", "--out-dir"])
        .arg(dir)
        .env(THREADS_ENV, threads)
        .output()
        .expect("spawn qubit-ent");
    assert!(
        out.status.success(),
        "figures failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    start.elapsed()
}

fn criterion_9() -> Outcome {
    let runs: Vec<(tempfile::TempDir, Duration)> = ["1", "1", "4"]
        .iter()
        .map(|threads| {
            let dir = tempfile::tempdir().unwrap();
            let elapsed = run_figures(dir.path(), threads);
            (dir, elapsed)
        })
        .collect();
    let slowest = runs.iter().map(|r| r.1).max().unwrap();
    let mut identical = true;
    for n in 1..=5 {
        let name = format!("fig{n}.csv");
        let reference = std::fs::read(runs[0].0.path().join(&name)).unwrap();
        for (dir, _) in &runs[1..] {
            identical &= std::fs::read(dir.path().join(&name)).unwrap() == reference;
        }
    }
    outcome(
        identical && slowest < Duration::from_secs(60),
        format!("5 CSVs byte-identical across 3 runs (threads 1, 1, 4): {identical}; slowest run {slowest:?}"),
    )
}

fn criterion_10() -> Outcome {
    let out = Command::new(BIN)
        .arg("verify")
        .output()
        .expect("spawn qubit-ent");
    let stdout = String::from_utf8_lossy(&out.stdout);
    let pass_rows = stdout.lines().filter(|l| l.contains("PASS")).count();
    let fail_rows = stdout.lines().filter(|l| l.contains("FAIL")).count();
    outcome(
        out.status.code() == Some(0) && pass_rows == 2 && fail_rows == 0,
        format!(
            "exit {:?}, {pass_rows} PASS rows, {fail_rows} FAIL rows",
            out.status.code()
        ),
    )
}

type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() -> ExitCode {
    let samples = random_samples();
    let criteria: Vec<(&str, Check)> = vec![
        ("identical-qubit ground concurrence", Box::new(criterion_1)),
        ("distinct-qubit ground concurrence", Box::new(criterion_2)),
        ("zero coupling gives no entanglement", Box::new(criterion_3)),
        ("low-coupling ground state intercept", Box::new(criterion_4)),
        (
            "closed-form density equals spectral Gibbs state",
            Box::new(|| criterion_5(&samples)),
        ),
        (
            "numerical and analytic spectra",
            Box::new(|| criterion_6(&samples)),
        ),
        (
            "exchange, sign-flip and scaling invariance",
            Box::new(|| criterion_7(&samples)),
        ),
        ("maximum on the E_J1 = E_J2 diagonal", Box::new(criterion_8)),
        ("deterministic figure export", Box::new(criterion_9)),
        ("verify subcommand", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {}: {name}: {}", i + 1, o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
