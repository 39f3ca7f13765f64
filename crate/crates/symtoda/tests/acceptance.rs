//! Acceptance suite: every criterion runs at its stated tolerance over
//! n ∈ {2, 3, 4, 5} and prints one PASS/FAIL line (visible with
//! `cargo test --test acceptance -- --nocapture`).

use symtoda::bruhat::{predicted_leaf_dimension, WeylElement};
use symtoda::report::Report;
use symtoda::suites::run_suite;

const NS: [usize; 4] = [2, 3, 4, 5];
const SEED: u64 = 7;

fn criterion(id: &str, description: &str, reports: &[Report]) {
    let pass = reports.iter().all(|r| r.pass());
    let max_residual = reports.iter().fold(0.0f64, |m, r| m.max(r.max_residual()));
    println!(
        "{} criterion {id}: {description} (max residual {max_residual:.3e})",
        if pass { "PASS" } else { "FAIL" },
    );
    for report in reports {
        for check in report.checks().iter().filter(|c| !c.pass) {
            println!(
                "    offending check {}/{} at n={:?}: residual {:.3e} > tol {:.3e}",
                report.suite, check.name, report.n, check.residual, check.tol
            );
        }
    }
    assert!(pass, "criterion {id} failed");
}

fn suite_over_ns(name: &str) -> Vec<Report> {
    NS.iter()
        .map(|&n| run_suite(name, n, SEED).expect(name))
        .collect()
}

#[test]
fn criterion_1_algebraic_identities() {
    // σ⊗σ(r) = −r, both sides of the reflection equation vanish,
    // r = Σ E_α ∧ Y_α, CYBE for the quasitriangular r: residuals < 1e-12.
    let reports = suite_over_ns("r-identities");
    for report in &reports {
        for check in report.checks() {
            assert!(check.tol <= 1e-12, "{} runs at {:.0e}", check.name, check.tol);
        }
    }
    criterion(
        "1",
        "r-matrix involution, reflection-equation and CYBE identities < 1e-12 for n <= 5",
        &reports,
    );
}

#[test]
fn criterion_2_bracket_structure() {
    // antisymmetry exact; Jacobi < 1e-6 on 50 coordinate triples per n;
    // η = 0 on the torus; AN tangency < 1e-10 at 20 points per n.
    let mut reports = suite_over_ns("bracket-axioms");
    reports.extend(suite_over_ns("an-tangency"));
    criterion(
        "2",
        "bracket antisymmetry/Jacobi/torus-kernel and AN tangency",
        &reports,
    );
}

#[test]
fn criterion_3_reflection_hamiltonians_commute() {
    // |{H_j, H_k}| < 1e-6 for all j < k at 20 random AN points per n.
    criterion(
        "3",
        "Poisson commutativity of reflection Hamiltonians",
        &suite_over_ns("kgk-commutativity"),
    );
}

#[test]
fn criterion_4_monodromy_bracket_identity() {
    // the rm-pb identity to 1e-6 relative on 20 function pairs/points per
    // n, and the factor-2 corollary for τ-symmetrized pairs.
    let mut reports = suite_over_ns("rm-pb");
    reports.extend(suite_over_ns("factor2"));
    criterion(
        "4",
        "monodromy bracket identity and its factor-2 corollary",
        &reports,
    );
}

#[test]
fn criterion_5_pushforward_identities() {
    // analytic T-differentials match finite differences to 1e-7;
    // T_* Y_α^L = 0 exactly in the analytic form.
    criterion(
        "5",
        "monodromy pushforward identities (analytic vs finite differences)",
        &suite_over_ns("t-pushforward"),
    );
}

#[test]
fn criterion_6_flow_dynamics() {
    // isospectral to 1e-9 over [0, 2]; matches the RK4 bracket-field
    // integrator to 1e-5 entrywise with a time constant invariant to
    // 1e-4; flows of H₁ and H₂ commute to 1e-7.
    criterion(
        "6",
        "factorization flow: isospectrality, cross-validation, commuting flows",
        &suite_over_ns("flow-crossvalidation"),
    );
}

#[test]
fn criterion_7_action_angle() {
    // Σ r_α = 1 to 1e-10; angle log-ratios linear with residual < 1e-6;
    // slope ratios match (h_α^k − h_β^k) to 1e-6 relative for k ∈ {1, 2}
    // (k = 2 needs n ≥ 3).
    let reports = suite_over_ns("angle-linearity");
    for (report, &n) in reports.iter().zip(NS.iter()) {
        let has_k2 = report.checks().iter().any(|c| c.name.contains("k2"));
        assert_eq!(has_k2, n >= 3, "k = 2 requires rank >= 2");
    }
    criterion(
        "7",
        "angle-variable normalization, linear evolution, slope ratios",
        &reports,
    );
}

#[test]
fn criterion_8_dimension_balance() {
    // orbit/level-set tangent intersection has dimension n−1 at 20
    // generic points per n; level-set translation preserves spectra to
    // 1e-9 and is the identity at D = I.
    criterion(
        "8",
        "orbit/level-set dimension balance and torus translation",
        &suite_over_ns("orbit-intersection"),
    );
}

#[test]
fn criterion_9_leaf_classification() {
    // measured bivector rank equals l(u) + rank(u − id) on sampled cells —
    // all 2 cells at n = 2 (S₂ only has two elements), ≥ 3 cells for
    // n ≥ 3 including the Coxeter cell — and the prediction is even for
    // every u, exhaustively through n = 5.
    let reports = suite_over_ns("leaf-dimensions");
    for &n in &NS {
        assert_eq!(
            predicted_leaf_dimension(&WeylElement::coxeter(n)).unwrap(),
            2 * (n - 1),
            "Coxeter cell carries the 2(n-1)-dimensional Liouville system"
        );
    }
    for (report, &n) in reports.iter().zip(NS.iter()) {
        let cells = report
            .checks()
            .iter()
            .filter(|c| c.name.ends_with("-rank"))
            .count();
        assert!(cells >= if n == 2 { 2 } else { 3 }, "n={n}: {cells} cells");
        assert!(report
            .checks()
            .iter()
            .any(|c| c.name.contains("coxeter")));
    }
    criterion(
        "9",
        "bivector rank equals predicted leaf dimension across cells; predictions even",
        &reports,
    );
}

#[test]
fn criterion_10_cli_contract() {
    use std::process::Command;
    let bin = env!("CARGO_BIN_EXE_symtoda");
    let dir = std::env::temp_dir().join(format!("symtoda-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();

    // a full verify at n = 3 exits 0 and writes a complete JSON report
    let report_path = dir.join("report.json");
    let status = Command::new(bin)
        .args(["verify", "--n", "3", "--seed", "7", "--out"])
        .arg(&report_path)
        .status()
        .unwrap();
    let ok_full = status.code() == Some(0);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    let ok_json = report["pass"].as_bool() == Some(true)
        && report["schema_version"].as_u64() == Some(1)
        && report["checks"].as_array().map(|c| c.len() >= 40) == Some(true);

    // corrupt input exits 2
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{ this is not json").unwrap();
    let status = Command::new(bin)
        .args(["leaf", "--input"])
        .arg(&bad)
        .status()
        .unwrap();
    let ok_corrupt = status.code() == Some(2);

    // an intentionally broken tolerance exits 1
    let status = Command::new(bin)
        .args([
            "verify",
            "--n",
            "2",
            "--suite",
            "bracket-axioms",
            "--tol",
            "jacobi=1e-300",
            "--out",
        ])
        .arg(dir.join("broken.json"))
        .status()
        .unwrap();
    let ok_broken = status.code() == Some(1);

    let pass = ok_full && ok_json && ok_corrupt && ok_broken;
    println!(
        "{} criterion 10: CLI contract (verify exit 0 + JSON: {}, corrupt exit 2: {}, broken tol exit 1: {})",
        if pass { "PASS" } else { "FAIL" },
        ok_full && ok_json,
        ok_corrupt,
        ok_broken
    );
    std::fs::remove_dir_all(&dir).ok();
    assert!(pass, "criterion 10 failed");
}
