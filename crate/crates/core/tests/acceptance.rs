//! Acceptance gate: every criterion runs at its stated size, tolerance and time
//! budget, prints one PASS/FAIL line, and the test fails if any criterion does.

use std::process::Command;
use std::time::{Duration, Instant};

use affine_dunkl::validate::{
    alternating_sum_check, compensator_test, confinement_test, density_gof, density_sanity,
    generator_identity_check, generator_limit_test, jump_law_test, legendre_cross_check,
    martingale_test, orthogonality_check, sampler_binomial_test, sampler_test, sub_seed,
    weight_integral_check, IdentityCheck, MonteCarlo, ValidationReport, Verdict, DEFAULT_SEED,
    DEFAULT_K_LIST,
};
use num_bigint::BigInt;
use num_rational::BigRational;

struct Outcome {
    ok: bool,
    detail: String,
}

fn checks(list: &[IdentityCheck]) -> Outcome {
    let shown = list
        .iter()
        .filter(|c| !c.passed())
        .chain(list.iter())
        .map(|c| format!("{} err {:.2e} tol {:.0e}", c.name, c.max_error, c.tolerance))
        .next()
        .unwrap_or_default();
    Outcome { ok: !list.is_empty() && list.iter().all(IdentityCheck::passed), detail: shown }
}

fn reports(list: &[ValidationReport]) -> Outcome {
    let detail = list
        .iter()
        .map(|r| format!("{} {:.4}/{:.4} {:?}", r.name, r.statistic, r.threshold, r.verdict))
        .collect::<Vec<_>>()
        .join("; ");
    Outcome { ok: !list.is_empty() && list.iter().all(ValidationReport::passed), detail }
}

fn mc(tag: u64, paths: u64) -> MonteCarlo {
    MonteCarlo::new(paths, sub_seed(DEFAULT_SEED, tag))
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn identical_reruns(args: &[&str], files: &[&str]) -> Result<(), String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for round in 0..2 {
        let sub = dir.path().join(round.to_string());
        std::fs::create_dir(&sub).map_err(|e| e.to_string())?;
        let out = Command::new(env!("CARGO_BIN_EXE_affine-dunkl"))
            .args(args)
            .current_dir(&sub)
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("{args:?} exited with {:?}", out.status.code()));
        }
        let mut bytes = vec![out.stdout];
        for f in files {
            bytes.push(std::fs::read(sub.join(f)).map_err(|e| format!("{f}: {e}"))?);
        }
        outputs.push(bytes);
    }
    if outputs[0] == outputs[1] {
        Ok(())
    } else {
        Err(format!("{args:?} differs between runs"))
    }
}

fn determinism() -> Outcome {
    let runs: [(&[&str], &[&str]); 7] = [
        (&["simulate-radial", "--k", "0.5", "--x0", "0.3", "--t-end", "1"], &[]),
        (&["simulate-radial", "--k", "2", "--x0=-3.4", "--format", "json", "--path", "5"], &[]),
        (&["simulate-dunkl", "--k", "1", "--t-end", "2", "-o", "y.csv"], &["y.csv", "y.csv.jumps.csv"]),
        (&["simulate-dunkl", "--k", "0.75", "--format", "json", "-o", "y.json"], &["y.json"]),
        (&["density", "--k", "0.5", "--x", "0.3", "--t", "0.1"], &[]),
        (&["density", "--k", "2", "--x", "4.2", "--t", "0.5", "--format", "json"], &[]),
        (&["validate", "--suite", "identities", "-o", "v.json"], &["v.json"]),
    ];
    let mut failures = Vec::new();
    for (args, files) in runs {
        if let Err(e) = identical_reruns(args, files) {
            failures.push(e);
        }
    }
    // a Monte Carlo suite, shrunk so the budget holds
    if let Err(e) = identical_reruns(&["validate", "--suite", "martingale", "--paths", "500"], &[]) {
        failures.push(e);
    }
    Outcome { ok: failures.is_empty(), detail: failures.join("; ") }
}

type Criterion = (&'static str, u64, fn() -> Outcome);

const CRITERIA: [Criterion; 12] = [
    ("1 Gegenbauer orthogonality", 10, || {
        let list: Result<Vec<_>, _> = DEFAULT_K_LIST.iter().map(|&k| orthogonality_check(k, 20)).collect();
        checks(&list.unwrap())
    }),
    ("2 weight integral", 10, || {
        let list: Result<Vec<_>, _> = [0.75, 1.0, 2.0].iter().map(|&k| weight_integral_check(k, 16)).collect();
        checks(&list.unwrap())
    }),
    ("3 alternating sum", 1, || {
        let ks = [rational(1, 2), rational(3, 4), rational(1, 1), rational(3, 2), rational(7, 3)];
        checks(&ks.iter().map(|k| alternating_sum_check(k, 12)).collect::<Vec<_>>())
    }),
    ("4 density sanity", 30, || reports(&[density_sanity(&DEFAULT_K_LIST).unwrap()])),
    ("5 k=1 closed form", 5, || checks(&[legendre_cross_check(0.2, 32).unwrap()])),
    ("6 radial law", 180, || {
        reports(&[
            density_gof(0.5, 0.3, 0.5, &mc(2, 100_000)).unwrap(),
            density_gof(1.0, 0.5, 0.5, &mc(1, 100_000)).unwrap(),
        ])
    }),
    ("7 confinement", 120, || {
        let list: Result<Vec<_>, _> = [0.5, 1.0, 2.0]
            .iter()
            .enumerate()
            .map(|(i, &k)| confinement_test(k, 0.5, 1.0, &mc(12 + i as u64, 10_000)))
            .collect();
        reports(&list.unwrap())
    }),
    ("8 local martingale", 300, || {
        reports(&[martingale_test(1.0, 0.5, &[0.1, 0.25, 0.5], &mc(3, 100_000)).unwrap()])
    }),
    ("9 compensator", 180, || {
        let main = compensator_test(1.0, 0.5, 1.0, &mc(5, 10_000)).unwrap();
        let half = compensator_test(0.5, 0.5, 1.0, &mc(7, 10_000)).unwrap();
        let mut o = reports(&[main]);
        o.ok &= half.verdict == Verdict::Refused;
        o.detail.push_str(&format!("; k=1/2 {:?}", half.verdict));
        o
    }),
    ("10 jump law", 120, || {
        reports(&[
            sampler_test(0.37, 1_000_000, sub_seed(DEFAULT_SEED, 9)).unwrap(),
            sampler_binomial_test(0.5, 1_000_000, sub_seed(DEFAULT_SEED, 8)).unwrap(),
            jump_law_test(1.0, 0.5, 1.0, &mc(10, 10_000)).unwrap(),
        ])
    }),
    ("11 generator", 300, || {
        reports(&[
            generator_identity_check(1.0, &[0.1, 0.25, 0.5, 0.77, 2.3], 100_000).unwrap(),
            generator_limit_test(1.0, 0.25, &[0.02, 0.01, 0.005], &mc(11, 100_000)).unwrap(),
        ])
    }),
    ("12 determinism", 60, determinism),
];

#[test]
fn acceptance_criteria() {
    let mut failed = Vec::new();
    for (name, budget, run) in CRITERIA {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(budget);
        let ok = outcome.ok && in_time;
        println!(
            "{} {name} ({:.1}s of {budget}s): {}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            outcome.detail
        );
        if !ok {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
