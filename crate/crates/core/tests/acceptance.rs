//! The nine acceptance criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test -p branchkit-core --test acceptance -- --nocapture`.

use std::process::Command;
use std::time::{Duration, Instant};

use branchkit_core::character::{decompose, restrict, TorusEmbedding};
use branchkit_core::harmonics::{harmonic_character, HarmonicLabel};
use branchkit_core::verify::{
    run_suite, tally, verify_h3_split, verify_harmonic_split, verify_o2_spaces, verify_param_sets,
    verify_sp1_bundle, verify_sp_multiplicity, verify_thm_k, Grid, Report, RunOptions, Suite,
};

struct Outcome {
    ok: bool,
    detail: String,
}

fn all_pass(reports: &[Report]) -> Outcome {
    let (pass, fail, skipped) = tally(reports);
    let first_bad = reports
        .iter()
        .find(|r| !r.passed())
        .map(|r| format!("; first: {r}"));
    Outcome {
        ok: fail == 0 && skipped == 0 && pass > 0,
        detail: format!(
            "{pass} pass, {fail} fail, {skipped} skipped{}",
            first_bad.unwrap_or_default()
        ),
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let reports: Vec<Report> = (2..=4)
        .flat_map(|n| (-3..=3).map(move |k| verify_thm_k(n, k, 6)))
        .collect();
    let elapsed = start.elapsed();
    let mut out = all_pass(&reports);
    out.ok &= elapsed < Duration::from_secs(60);
    out.detail = format!("{} in {:.2?}", out.detail, elapsed);
    out
}

fn criterion_2() -> Outcome {
    all_pass(
        &(1..=4)
            .map(|n| verify_harmonic_split(n, 6))
            .collect::<Vec<_>>(),
    )
}

fn criterion_3() -> Outcome {
    let mut out = all_pass(
        &(1..=3)
            .map(|m| verify_sp_multiplicity(m, 6))
            .collect::<Vec<_>>(),
    );
    let chi = harmonic_character(HarmonicLabel::Real { n: 8, j: 2 }).unwrap();
    let emb = TorusEmbedding::sp_in_so(2).unwrap();
    let d = decompose(&restrict(&chi, &emb).unwrap(), &emb.sub).unwrap();
    let spot = d.total_dimension().unwrap();
    out.ok &= spot == 35 && d.to_string() == "Sp(2): {(1,1):1, (2,0):3}";
    out.detail = format!("{}; m=2, j=2: {d}, dimension {spot}", out.detail);
    out
}

fn criterion_4() -> Outcome {
    let reports = verify_h3_split(2, 6);
    let (pass, fail, skipped) = tally(&reports);
    Outcome {
        ok: fail == 0 && pass > 0,
        detail: format!(
            "{pass} types pass, {fail} fail, skipped fraction {skipped}/{}",
            reports.len()
        ),
    }
}

fn criterion_5() -> Outcome {
    all_pass(
        &(-6..=6)
            .map(|k| verify_sp1_bundle(k, 12))
            .collect::<Vec<_>>(),
    )
}

fn criterion_6() -> Outcome {
    all_pass(&verify_o2_spaces(12))
}

fn criterion_7() -> Outcome {
    all_pass(&verify_param_sets())
}

fn criterion_8() -> Outcome {
    let reports = run_suite(Suite::Support, &Grid::default(), &RunOptions::default()).unwrap();
    let mut out = all_pass(&reports);
    for tag in ["support-H1", "support-H2", "support-H4", "support-H5"] {
        let n = reports.iter().filter(|r| r.claim == tag).count();
        out.ok &= n > 0;
        out.detail.push_str(&format!("; {tag}: {n} cells"));
    }
    out
}

fn criterion_9() -> Outcome {
    let run = |jobs: &str| {
        let output = Command::new(env!("CARGO_BIN_EXE_branchkit"))
            .args(["verify", "--suite", "all", "--emit", "json", "--jobs", jobs])
            .output()
            .expect("run branchkit");
        (output.status.code(), output.stdout)
    };
    let (code1, one) = run("1");
    let (code8, eight) = run("8");
    let parsed: Result<serde_json::Value, _> = serde_json::from_slice(&one);
    Outcome {
        ok: code1 == Some(0) && code8 == Some(0) && one == eight && parsed.is_ok(),
        detail: format!(
            "exit codes {code1:?}/{code8:?}, {} vs {} bytes, identical: {}",
            one.len(),
            eight.len(),
            one == eight
        ),
    }
}

type Criterion = (&'static str, fn() -> Outcome);

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        (
            "U(n)-types of the principal series, n in 2..4, k in -3..3, degree <= 6",
            criterion_1,
        ),
        (
            "H^j(R^2n) splits by bidegree with dimensions, n <= 4, j <= 6",
            criterion_2,
        ),
        (
            "Sp(m)-multiplicities in H^j(R^4m), m <= 3, j <= 6",
            criterion_3,
        ),
        (
            "pi_00 on Sp(2) splits into the 4Z and 2+4Z families, degree <= 6",
            criterion_4,
        ),
        ("L2(Sp(1)/U(1), L_k), |k| <= 6, j <= 12", criterion_5),
        ("L2(X1), L2(X2) under O(2), j <= 12", criterion_6),
        ("parameter sets against direct enumeration", criterion_7),
        (
            "support consistency for H1, H2, H4, H5 at degree <= 4",
            criterion_8,
        ),
        (
            "verify --suite all is byte-identical for --jobs 1 and 8",
            criterion_9,
        ),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = check();
        let status = if outcome.ok { "PASS" } else { "FAIL" };
        println!("criterion {}: {status} {name} ({})", i + 1, outcome.detail);
        if !outcome.ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
