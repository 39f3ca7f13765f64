//! Command implementations behind the `symtoda` binary: run verification
//! suites, simulate flows, classify leaves, translate along orbits. Exit
//! codes are part of the contract: 0 success, 1 verification or
//! degeneracy failure, 2 input error.
//!
//! File formats: matrices as JSON `{"n": 2, "rows": [[...], [...]]}`,
//! trajectories as CSV with a header row plus a JSON sidecar of
//! conserved-quantity drift statistics, reports as JSON with a
//! `schema_version` field.

use serde::{Deserialize, Serialize};

use crate::actionangle::spectral_decomposition;
use crate::bruhat::{bruhat_cell, length, predicted_leaf_dimension, torus_fixed_dimension};
use crate::dynamics::{simulate_trajectory, ReflectionHamiltonian, Trajectory};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::poisson::{bivector_rank, Chart, GroupElement};
use crate::report::{merge, Report, SCHEMA_VERSION};
use crate::sampling::Sampler;
use crate::suites::{run_all, run_suite, SUITE_NAMES};
use crate::symspace::AnElement;

/// JSON on-disk matrix: `{"n": 2, "rows": [[1.0, 1.0], [0.0, 1.0]]}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct MatrixFile {
    pub n: usize,
    pub rows: Vec<Vec<f64>>,
}

impl MatrixFile {
    pub fn parse(text: &str) -> Result<Mat> {
        let file: MatrixFile = serde_json::from_str(text)?;
        if file.rows.len() != file.n || file.rows.iter().any(|r| r.len() != file.n) {
            return Err(Error::invalid("matrix rows do not match declared n"));
        }
        let flat: Vec<f64> = file.rows.iter().flatten().copied().collect();
        Ok(Mat::from_row_slice(file.n, file.n, &flat))
    }

    pub fn render(m: &Mat) -> MatrixFile {
        MatrixFile {
            n: m.nrows(),
            rows: (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
                .collect(),
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if !(2..=8).contains(&n) {
        return Err(Error::invalid(format!("n out of range: {n} (need 2..=8)")));
    }
    Ok(())
}

/// Configuration of the `verify` command.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub n: usize,
    pub seed: u64,
    /// Run a single suite instead of all of them.
    pub suite: Option<String>,
    /// `(name, tol)` overrides, matched against check or suite names.
    pub tol_overrides: Vec<(String, f64)>,
}

/// Run the verification suites and merge them into one report.
pub fn cmd_verify(config: &VerifyConfig) -> Result<Report> {
    check_n(config.n)?;
    for (name, tol) in &config.tol_overrides {
        if *tol <= 0.0 {
            return Err(Error::invalid(format!(
                "tolerance override {name} must be positive"
            )));
        }
    }
    let reports = match &config.suite {
        Some(name) => {
            if !SUITE_NAMES.contains(&name.as_str()) {
                return Err(Error::invalid(format!(
                    "unknown suite `{name}`; available: {}",
                    SUITE_NAMES.join(", ")
                )));
            }
            vec![run_suite(name, config.n, config.seed)?]
        }
        None => run_all(config.n, config.seed)?,
    };
    let mut merged = merge("verify", reports);
    merged.n = Some(config.n);
    merged.seed = Some(config.seed);
    // overrides match either the bare name or the suite-qualified one
    let expanded: Vec<(String, f64)> = config
        .tol_overrides
        .iter()
        .flat_map(|(name, tol)| {
            let mut keys = vec![(name.clone(), *tol)];
            for suite in SUITE_NAMES {
                keys.push((format!("{suite}/{name}"), *tol));
                if name == suite {
                    // suite-level override: apply to every check of that suite
                    keys.extend(
                        merged
                            .checks()
                            .iter()
                            .filter(|c| c.name.starts_with(&format!("{suite}/")))
                            .map(|c| (c.name.clone(), *tol)),
                    );
                }
            }
            keys
        })
        .collect();
    merged.apply_tolerance_overrides(&expanded);
    Ok(merged)
}

/// Configuration of the `simulate` command.
#[derive(Debug, Clone)]
pub struct SimulateConfig {
    pub n: usize,
    pub seed: u64,
    /// Trace powers with coefficients, e.g. `[(1, 1.0)]` for H₁.
    pub hamiltonian: Vec<(u32, f64)>,
    /// Initial point; a seeded generic point is drawn when absent.
    pub b0: Option<Mat>,
    pub t0: f64,
    pub t1: f64,
    pub steps: usize,
}

/// Sidecar statistics accompanying a trajectory CSV.
#[derive(Debug, Serialize, Deserialize)]
pub struct SimulateSummary {
    pub schema_version: u32,
    pub n: usize,
    pub seed: u64,
    pub hamiltonian: Vec<(u32, f64)>,
    pub samples: usize,
    pub action_drift_max: f64,
    pub hamiltonian_drift_max: f64,
    /// Max deviation of any angle log-ratio from its least-squares line.
    pub angle_fit_residual_max: f64,
    /// Fitted slope per pair (alpha, beta, slope), 1-based indices.
    pub angle_slopes: Vec<(usize, usize, f64)>,
    pub b0: MatrixFile,
}

/// Run a flow and render the trajectory as CSV plus drift statistics.
pub fn cmd_simulate(config: &SimulateConfig) -> Result<(String, SimulateSummary)> {
    check_n(config.n)?;
    let h = ReflectionHamiltonian::from_coeffs(config.hamiltonian.iter().copied())?;
    h.check_rank(config.n)?;
    let b0 = match &config.b0 {
        Some(m) => AnElement::new(m.clone())?,
        None => Sampler::new(config.seed).generic_an(config.n),
    };
    let traj = simulate_trajectory(&h, &b0, config.t0, config.t1, config.steps)?;
    let csv = trajectory_csv(&traj, config.n);

    let pair_count = config.n * (config.n - 1) / 2;
    let mut angle_slopes = Vec::with_capacity(pair_count);
    let mut fit_residual = 0.0f64;
    if traj.len() >= 3 {
        for idx in 0..pair_count {
            let (a, b, _) = traj.angles[0].log_ratios[idx];
            let thetas: Vec<f64> = traj
                .angles
                .iter()
                .map(|ang| ang.log_ratios[idx].2)
                .collect();
            let (slope, dev) = fit_line(&traj.times, &thetas);
            fit_residual = fit_residual.max(dev);
            angle_slopes.push((a + 1, b + 1, slope));
        }
    }

    let summary = SimulateSummary {
        schema_version: SCHEMA_VERSION,
        n: config.n,
        seed: config.seed,
        hamiltonian: config.hamiltonian.clone(),
        samples: traj.len(),
        action_drift_max: traj.action_drift(),
        hamiltonian_drift_max: traj.hamiltonian_drift(),
        angle_fit_residual_max: fit_residual,
        angle_slopes,
        b0: MatrixFile::render(b0.matrix()),
    };
    Ok((csv, summary))
}

fn fit_line(ts: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = ts.len() as f64;
    let tbar = ts.iter().sum::<f64>() / n;
    let ybar = ys.iter().sum::<f64>() / n;
    let sxx: f64 = ts.iter().map(|t| (t - tbar) * (t - tbar)).sum();
    if sxx == 0.0 {
        return (0.0, 0.0);
    }
    let sxy: f64 = ts.iter().zip(ys).map(|(t, y)| (t - tbar) * (y - ybar)).sum();
    let slope = sxy / sxx;
    let intercept = ybar - slope * tbar;
    let dev = ts
        .iter()
        .zip(ys)
        .map(|(t, y)| (y - (intercept + slope * t)).abs())
        .fold(0.0, f64::max);
    (slope, dev)
}

/// CSV columns: t, the row-major upper triangle of b, the Hamiltonian
/// value, actions h_1..h_n, angles r_1..r_n, and the log-ratios θ_{αβ}.
pub fn trajectory_csv(traj: &Trajectory, n: usize) -> String {
    let mut header: Vec<String> = vec!["t".into()];
    for i in 0..n {
        for j in i..n {
            header.push(format!("b_{}_{}", i + 1, j + 1));
        }
    }
    header.push("H".into());
    for i in 1..=n {
        header.push(format!("h_{i}"));
    }
    for i in 1..=n {
        header.push(format!("r_{i}"));
    }
    for a in 1..=n {
        for b in (a + 1)..=n {
            header.push(format!("theta_{a}_{b}"));
        }
    }
    let mut out = header.join(",");
    out.push('\n');
    for row in 0..traj.len() {
        let mut fields: Vec<String> = vec![format!("{:.17e}", traj.times[row])];
        let b = traj.points[row].matrix();
        for i in 0..n {
            for j in i..n {
                fields.push(format!("{:.17e}", b[(i, j)]));
            }
        }
        fields.push(format!("{:.17e}", traj.hamiltonian[row]));
        for h in &traj.actions[row] {
            fields.push(format!("{h:.17e}"));
        }
        for r in &traj.angles[row].r {
            fields.push(format!("{r:.17e}"));
        }
        for &(_, _, theta) in &traj.angles[row].log_ratios {
            fields.push(format!("{theta:.17e}"));
        }
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// Output of the `leaf` command.
#[derive(Debug, Serialize, Deserialize)]
pub struct LeafSummary {
    pub schema_version: u32,
    pub n: usize,
    /// One-line permutation, 1-based images.
    pub weyl_element: String,
    pub length: usize,
    pub torus_fixed_dimension: usize,
    pub predicted_dimension: usize,
    pub measured_rank: usize,
    pub pass: bool,
}

/// Classify the cell of an AN point and compare predicted and measured
/// leaf dimension.
pub fn cmd_leaf(matrix: Mat) -> Result<LeafSummary> {
    let b = AnElement::new(matrix)?;
    let u = bruhat_cell(&b)?;
    let predicted = predicted_leaf_dimension(&u)?;
    let measured = bivector_rank(&GroupElement::from(&b), Chart::An)?;
    Ok(LeafSummary {
        schema_version: SCHEMA_VERSION,
        n: b.n(),
        weyl_element: u.one_line(),
        length: length(&u),
        torus_fixed_dimension: torus_fixed_dimension(&u),
        predicted_dimension: predicted,
        measured_rank: measured,
        pass: measured == predicted,
    })
}

/// Configuration of the `orbit-flow` command.
#[derive(Debug, Clone)]
pub struct OrbitFlowConfig {
    pub n: usize,
    pub seed: u64,
    pub b0: Option<Mat>,
    /// Explicit diagonals; when empty, `num_random_d` seeded ones are drawn.
    pub diagonals: Vec<Vec<f64>>,
    pub num_random_d: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct OrbitTranslation {
    pub d: Vec<f64>,
    pub translated: MatrixFile,
    pub witness: MatrixFile,
    pub spectrum_residual: f64,
    pub symmetry_residual: f64,
}

/// Output of the `orbit-flow` command.
#[derive(Debug, Serialize, Deserialize)]
pub struct OrbitFlowOutput {
    pub schema_version: u32,
    pub n: usize,
    pub seed: u64,
    pub b0: MatrixFile,
    pub translations: Vec<OrbitTranslation>,
    /// Residual of translating by D₁ then D₂ against translating by D₁D₂.
    pub composition_residual: f64,
    pub pass: bool,
}

/// Translate b along its orbit for each D and report residuals.
pub fn cmd_orbit_flow(config: &OrbitFlowConfig) -> Result<OrbitFlowOutput> {
    check_n(config.n)?;
    let mut sampler = Sampler::new(config.seed);
    let b0 = match &config.b0 {
        Some(m) => AnElement::new(m.clone())?,
        None => sampler.generic_an(config.n),
    };
    let mut diagonals = config.diagonals.clone();
    for d in &diagonals {
        if d.len() != config.n {
            return Err(Error::invalid("diagonal length must equal n"));
        }
        let det: f64 = d.iter().product();
        if d.iter().any(|&x| x <= 0.0) || (det - 1.0).abs() > 1e-6 {
            return Err(Error::invalid(format!(
                "D must be positive with det 1, got det {det:.6e}"
            )));
        }
    }
    for _ in 0..config.num_random_d {
        diagonals.push(sampler.positive_diagonal_det1(config.n));
    }
    if diagonals.is_empty() {
        return Err(Error::invalid("no diagonals to translate by"));
    }

    let spec0 = spectral_decomposition(&b0.monodromy())?;
    let mut translations = Vec::with_capacity(diagonals.len());
    let mut pass = true;
    for d in &diagonals {
        let moved = crate::actionangle::level_set_translate(&b0, d)?;
        let spec1 = spectral_decomposition(&moved.translated.monodromy())?;
        let spectrum_residual = spec0
            .eigenvalues
            .iter()
            .zip(&spec1.eigenvalues)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        pass &= spectrum_residual < 1e-9;
        translations.push(OrbitTranslation {
            d: d.clone(),
            translated: MatrixFile::render(moved.translated.matrix()),
            witness: MatrixFile::render(moved.witness.matrix()),
            spectrum_residual,
            symmetry_residual: moved.symmetry_residual,
        });
    }

    let d1 = sampler.positive_diagonal_det1(config.n);
    let d2 = sampler.positive_diagonal_det1(config.n);
    let d12: Vec<f64> = d1.iter().zip(&d2).map(|(a, b)| a * b).collect();
    let via_two = crate::actionangle::level_set_translate(
        &crate::actionangle::level_set_translate(&b0, &d1)?.translated,
        &d2,
    )?;
    let via_one = crate::actionangle::level_set_translate(&b0, &d12)?;
    let composition_residual =
        (via_two.translated.matrix() - via_one.translated.matrix()).norm();

    Ok(OrbitFlowOutput {
        schema_version: SCHEMA_VERSION,
        n: config.n,
        seed: config.seed,
        b0: MatrixFile::render(b0.matrix()),
        translations,
        composition_residual,
        pass,
    })
}

/// Map an error to the stable exit-code contract: input problems exit 2,
/// numerical/degeneracy/verification problems exit 1.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::InvalidInput(_) | Error::Json(_) | Error::Io(_) => 2,
        Error::Numerical(_) | Error::Degenerate(_) | Error::Verification { .. } => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_file_round_trip_and_validation() {
        let text = r#"{"n": 2, "rows": [[1.0, 1.0], [0.0, 1.0]]}"#;
        let m = MatrixFile::parse(text).unwrap();
        assert_eq!(m[(0, 1)], 1.0);
        assert!(MatrixFile::parse(r#"{"n": 2, "rows": [[1.0]]}"#).is_err());
        assert!(MatrixFile::parse("not json").is_err());
        let rendered = serde_json::to_string(&MatrixFile::render(&m)).unwrap();
        let back = MatrixFile::parse(&rendered).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn verify_single_suite_and_overrides() {
        let report = cmd_verify(&VerifyConfig {
            n: 2,
            seed: 7,
            suite: Some("r-identities".into()),
            tol_overrides: vec![],
        })
        .unwrap();
        assert!(report.pass());
        assert!(report.checks().iter().all(|c| c.name.starts_with("r-identities/")));

        // an absurd tolerance flips a residual check to failure
        let report = cmd_verify(&VerifyConfig {
            n: 2,
            seed: 7,
            suite: Some("bracket-axioms".into()),
            tol_overrides: vec![("jacobi".into(), 1e-300)],
        })
        .unwrap();
        assert!(!report.pass());

        assert!(cmd_verify(&VerifyConfig {
            n: 99,
            seed: 0,
            suite: None,
            tol_overrides: vec![],
        })
        .is_err());
    }

    #[test]
    fn simulate_produces_consistent_csv() {
        let config = SimulateConfig {
            n: 2,
            seed: 3,
            hamiltonian: vec![(1, 1.0)],
            b0: Some(Mat::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0])),
            t0: 0.0,
            t1: 2.0,
            steps: 50,
        };
        let (csv, summary) = cmd_simulate(&config).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 51);
        let header = lines[0];
        assert_eq!(
            header,
            "t,b_1_1,b_1_2,b_2_2,H,h_1,h_2,r_1,r_2,theta_1_2"
        );
        assert!(summary.action_drift_max < 1e-9);
        assert!(summary.hamiltonian_drift_max < 1e-9);
        assert!(summary.angle_fit_residual_max < 1e-6);
        // the single slope matches the closed form −4√5 up to sign
        assert!((summary.angle_slopes[0].2.abs() - 4.0 * 5.0f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn simulate_single_row() {
        let config = SimulateConfig {
            n: 2,
            seed: 3,
            hamiltonian: vec![(1, 1.0)],
            b0: Some(Mat::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0])),
            t0: 0.0,
            t1: 0.0,
            steps: 1,
        };
        let (csv, summary) = cmd_simulate(&config).unwrap();
        assert_eq!(csv.lines().count(), 2);
        assert_eq!(summary.samples, 1);
        assert_eq!(summary.action_drift_max, 0.0);
    }

    #[test]
    fn simulate_rejects_degenerate_start() {
        let config = SimulateConfig {
            n: 2,
            seed: 3,
            hamiltonian: vec![(1, 1.0)],
            b0: Some(Mat::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 0.5])),
            t0: 0.0,
            t1: 1.0,
            steps: 5,
        };
        assert!(matches!(cmd_simulate(&config), Err(Error::Degenerate(_))));
    }

    #[test]
    fn leaf_classification_examples() {
        let diag = Mat::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 0.5]);
        let summary = cmd_leaf(diag).unwrap();
        assert_eq!(summary.weyl_element, "[1 2]");
        assert_eq!(summary.predicted_dimension, 0);
        assert_eq!(summary.measured_rank, 0);
        assert!(summary.pass);

        let b = Mat::from_row_slice(2, 2, &[2.0, 0.7, 0.0, 0.5]);
        let summary = cmd_leaf(b).unwrap();
        assert_eq!(summary.weyl_element, "[2 1]");
        assert_eq!(summary.predicted_dimension, 2);
        assert_eq!(summary.measured_rank, 2);
        assert!(summary.pass);

        assert!(cmd_leaf(Mat::from_row_slice(2, 2, &[1.0, 0.0, 1.0, 1.0])).is_err());
    }

    #[test]
    fn orbit_flow_identity_and_random() {
        let out = cmd_orbit_flow(&OrbitFlowConfig {
            n: 3,
            seed: 5,
            b0: None,
            diagonals: vec![vec![1.0, 1.0, 1.0]],
            num_random_d: 2,
        })
        .unwrap();
        assert!(out.pass);
        assert_eq!(out.translations.len(), 3);
        // D = I echoes b0
        let echo = MatrixFile::parse(&serde_json::to_string(&out.translations[0].translated).unwrap())
            .unwrap();
        let b0 = MatrixFile::parse(&serde_json::to_string(&out.b0).unwrap()).unwrap();
        assert!((echo - b0).norm() < 1e-9);
        assert!(out.composition_residual < 1e-6);

        // det ≠ 1 rejected
        assert!(cmd_orbit_flow(&OrbitFlowConfig {
            n: 2,
            seed: 5,
            b0: None,
            diagonals: vec![vec![2.0, 2.0]],
            num_random_d: 0,
        })
        .is_err());
    }
}
