//! Action and angle variables of the reflection flows.
//!
//! Actions are the (descending) eigenvalues of b bᵀ. Angles come from
//! pairing eigenprojectors against the spherical vector in Sym²ℝⁿ: with
//! spherical vector I and extremal weight vector e_n e_nᵀ the pairing
//! collapses to r_α = (v_α · e_n)², and the log-ratios
//! θ_{αβ} = log(r_α / r_β) evolve linearly along every reflection flow,
//! with slope Δ·(h_α^k − h_β^k) for H_k and a single rate constant Δ = 4k
//! shared by all pairs (measured, then asserted).

use crate::dynamics::{factorization_flow, GradientSide, ReflectionHamiltonian};
use crate::error::{Error, Result};
use crate::linalg::{symmetry_residual, Mat};
use crate::report::Report;
use crate::sampling::Sampler;
use crate::symspace::{cholesky_upper, reverse_cholesky, AnElement};

/// Relative eigenvalue-gap floor below which a point is non-generic.
const GAP_FLOOR: f64 = 1e-8;
/// Angle coordinates below this floor break the angle chart.
const ANGLE_FLOOR: f64 = 1e-12;

/// Spectral data of a symmetric positive-definite matrix with descending
/// simple spectrum: eigenvalues h₁ > … > h_n > 0 and rank-1 projectors
/// Q_α = v_α v_αᵀ.
#[derive(Debug, Clone)]
pub struct SpectralData {
    pub eigenvalues: Vec<f64>,
    pub projectors: Vec<Mat>,
    /// Orthogonal eigenvector matrix (columns ordered with the eigenvalues,
    /// det +1, sign convention: largest-magnitude component positive).
    pub vectors: Mat,
}

impl SpectralData {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    /// ‖Σ h_α Q_α − M‖ for the matrix this was computed from.
    pub fn reconstruction_residual(&self, m: &Mat) -> f64 {
        let mut acc = Mat::zeros(self.n(), self.n());
        for (h, q) in self.eigenvalues.iter().zip(&self.projectors) {
            acc += q.scale(*h);
        }
        (acc - m).norm()
    }
}

/// Spectral decomposition of a symmetric positive-definite matrix with a
/// generic (simple, well separated) spectrum.
pub fn spectral_decomposition(m: &Mat) -> Result<SpectralData> {
    let n = m.nrows();
    if symmetry_residual(m) > 1e-9 * m.norm().max(1.0) {
        return Err(Error::invalid("spectral decomposition needs a symmetric matrix"));
    }
    let eig = (0.5 * (m + m.transpose())).symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap());

    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    if eigenvalues[n - 1] <= 0.0 {
        return Err(Error::invalid("matrix is not positive definite"));
    }
    let top = eigenvalues[0];
    for w in eigenvalues.windows(2) {
        if (w[0] - w[1]) / top <= GAP_FLOOR {
            return Err(Error::degenerate(format!(
                "eigenvalue gap {:.3e} below genericity floor {GAP_FLOOR:.0e}",
                w[0] - w[1]
            )));
        }
    }

    let mut vectors = Mat::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        let mut v: Vec<f64> = (0..n).map(|r| eig.eigenvectors[(r, i)]).collect();
        // deterministic sign: largest-magnitude component positive
        let lead = (0..n)
            .max_by(|&a, &b| v[a].abs().partial_cmp(&v[b].abs()).unwrap())
            .unwrap();
        if v[lead] < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        for r in 0..n {
            vectors[(r, col)] = v[r];
        }
    }
    let projectors: Vec<Mat> = (0..n)
        .map(|col| {
            let v = vectors.column(col).clone_owned();
            &v * v.transpose()
        })
        .collect();
    Ok(SpectralData {
        eigenvalues,
        projectors,
        vectors,
    })
}

/// The K-fixed vector of Sym²ℝⁿ under S ↦ kSkᵀ: the identity matrix.
pub fn spherical_vector(n: usize) -> Mat {
    Mat::identity(n, n)
}

/// Contravariance of the trace form on Sym²ℝⁿ under the action
/// X·S = XS + SXᵀ with τ(X) = Xᵀ:
/// ⟨τ(X)·S, S′⟩ = ⟨S, X·S′⟩, sampled (tolerance 1e-10).
pub fn shapovalov_check(n: usize, samples: usize, seed: u64) -> Report {
    let mut sampler = Sampler::new(seed);
    let mut report = Report::new("shapovalov").with_n(n).with_seed(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let x = Mat::from_fn(n, n, |_, _| sampler.uniform(-1.0, 1.0));
        let sym = |s: &mut Sampler| {
            let raw = Mat::from_fn(n, n, |_, _| s.uniform(-1.0, 1.0));
            0.5 * (&raw + raw.transpose())
        };
        let s = sym(&mut sampler);
        let sp = sym(&mut sampler);
        let act = |x: &Mat, s: &Mat| x * s + s * x.transpose();
        let lhs = (act(&x.transpose(), &s) * &sp).trace();
        let rhs = (s.clone() * act(&x, &sp)).trace();
        let scale = lhs.abs().max(rhs.abs()).max(1.0);
        worst = worst.max((lhs - rhs).abs() / scale);
    }
    report.push("contravariance", worst, 1e-10);
    // spherical vector is K-fixed, and moved by AN
    let mut invariance = 0.0f64;
    for _ in 0..20 {
        let k = sampler.rotation(n);
        invariance = invariance
            .max((k.matrix() * spherical_vector(n) * k.matrix().transpose() - spherical_vector(n)).norm());
    }
    report.push("spherical-invariance", invariance, 1e-12);
    let b = sampler.an_element(n);
    let moved = (b.matrix() * spherical_vector(n) * b.matrix().transpose() - spherical_vector(n)).norm();
    report.push_detailed(
        "spherical-moved-by-an",
        if moved > 1e-6 { 0.0 } else { 1.0 },
        0.5,
        Some(format!("displacement {moved:.3e}")),
    );
    report.finish()
}

/// Angle coordinates at a generic point: r_α = (v_α · e_n)² with
/// Σ r_α = 1, and the log-ratios θ_{αβ} = log(r_α / r_β) for α < β.
#[derive(Debug, Clone)]
pub struct AngleData {
    pub r: Vec<f64>,
    /// (α, β, θ_{αβ}) for α < β, 0-based, lexicographic.
    pub log_ratios: Vec<(usize, usize, f64)>,
}

pub fn angle_variables(b: &AnElement) -> Result<AngleData> {
    let spec = spectral_decomposition(&b.monodromy())?;
    let n = spec.n();
    let r: Vec<f64> = (0..n)
        .map(|col| {
            let c = spec.vectors[(n - 1, col)];
            c * c
        })
        .collect();
    if let Some((idx, &bad)) = r.iter().enumerate().find(|(_, &v)| v <= ANGLE_FLOOR) {
        return Err(Error::degenerate(format!(
            "angle coordinate r_{} = {bad:.3e} vanishes; angle chart breaks down",
            idx + 1
        )));
    }
    let mut log_ratios = Vec::with_capacity(n * (n - 1) / 2);
    for a in 0..n {
        for b in (a + 1)..n {
            log_ratios.push((a, b, (r[a] / r[b]).ln()));
        }
    }
    Ok(AngleData { r, log_ratios })
}

/// Least-squares line fit; returns (slope, max absolute deviation).
fn linear_fit(ts: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = ts.len() as f64;
    let tbar = ts.iter().sum::<f64>() / n;
    let ybar = ys.iter().sum::<f64>() / n;
    let sxx: f64 = ts.iter().map(|t| (t - tbar) * (t - tbar)).sum();
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

/// Along the flow of H_k the angle log-ratios are affine in time, the
/// slopes are Δ·(h_α^k − h_β^k) with one shared constant Δ, the slopes
/// match twice the gradient-eigenvalue differences, and Δ = 4k under this
/// crate's conventions. All four statements are checked, none assumed.
pub fn verify_angle_linearity(k: u32, b0: &AnElement, grid: &[f64]) -> Result<Report> {
    if grid.len() < 3 {
        return Err(Error::invalid("need at least 3 grid points for a fit"));
    }
    let n = b0.n();
    let h = ReflectionHamiltonian::power(k)?;
    h.check_rank(n)?;
    let spec0 = spectral_decomposition(&b0.monodromy())?;

    // gradient eigenvalues f_α = v_αᵀ ∇⁺H v_α (diagonal on the projectors)
    let grad = h.gradient(b0.matrix(), GradientSide::Plus);
    let f_alpha: Vec<f64> = (0..n)
        .map(|col| {
            let v = spec0.vectors.column(col);
            (v.transpose() * grad.matrix() * v)[(0, 0)]
        })
        .collect();

    let mut theta_series: Vec<Vec<f64>> = vec![Vec::new(); n * (n - 1) / 2];
    let mut b = b0.clone();
    let mut last_t = 0.0;
    for &t in grid {
        b = factorization_flow(&h, &b, t - last_t)?;
        last_t = t;
        let angles = angle_variables(&b)?;
        for (idx, &(_, _, theta)) in angles.log_ratios.iter().enumerate() {
            theta_series[idx].push(theta);
        }
    }

    let mut report = Report::new("angle-linearity").with_n(n);
    let mut deltas = Vec::new();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
        .collect();
    for (idx, &(a, bb)) in pairs.iter().enumerate() {
        let (slope, dev) = linear_fit(grid, &theta_series[idx]);
        report.push(format!("fit-linearity-{}-{}", a + 1, bb + 1), dev, 1e-6);
        let gap = spec0.eigenvalues[a].powi(k as i32) - spec0.eigenvalues[bb].powi(k as i32);
        deltas.push(slope / gap);
        let predicted = 2.0 * (f_alpha[a] - f_alpha[bb]);
        report.push(
            format!("gradient-eigenvalue-slope-{}-{}", a + 1, bb + 1),
            (slope - predicted).abs() / slope.abs().max(1.0),
            1e-6,
        );
    }
    let mean = deltas.iter().sum::<f64>() / deltas.len() as f64;
    let spread = deltas
        .iter()
        .map(|d| (d - mean).abs())
        .fold(0.0, f64::max)
        / mean.abs();
    if deltas.len() > 1 {
        report.push("rate-constant-shared", spread, 1e-6);
    }
    report.push_detailed(
        "rate-constant-value",
        (mean - 4.0 * k as f64).abs() / (4.0 * k as f64),
        1e-6,
        Some(format!("measured Δ = {mean:.12}")),
    );
    Ok(report.finish())
}

/// A fit grid for `verify_angle_linearity` sized so the fastest log-ratio
/// moves by at most ~2 over the window (stays inside the angle chart).
pub fn angle_grid(k: u32, b0: &AnElement, points: usize) -> Result<Vec<f64>> {
    if points < 3 {
        return Err(Error::invalid("need at least 3 grid points"));
    }
    let spec = spectral_decomposition(&b0.monodromy())?;
    let h_top = spec.eigenvalues[0];
    let h_bot = *spec.eigenvalues.last().expect("nonempty spectrum");
    let slope_bound = 4.0 * k as f64 * (h_top.powi(k as i32) - h_bot.powi(k as i32)).max(1e-6);
    let t_max = (2.0 / slope_bound).min(0.4);
    Ok((0..points)
        .map(|i| t_max * i as f64 / (points - 1) as f64)
        .collect())
}

/// Result of translating b along the orbit by a torus element D.
#[derive(Debug, Clone)]
pub struct LevelSetTranslation {
    pub translated: AnElement,
    /// The witness β ∈ AN with b′ b′ᵀ = β (b bᵀ) β⁻¹.
    pub witness: AnElement,
    pub symmetry_residual: f64,
}

/// Translate b along the intersection of its orbit with the level set:
/// with b bᵀ = U Λ Uᵀ, set P = U D Uᵀ, factor P = βᵀβ, and return
/// b′ = reverse_cholesky(β (b bᵀ) β⁻¹). D = I returns b; the spectrum is
/// preserved for every admissible D.
pub fn level_set_translate(b: &AnElement, d: &[f64]) -> Result<LevelSetTranslation> {
    let n = b.n();
    if d.len() != n {
        return Err(Error::invalid("diagonal length must match n"));
    }
    if d.iter().any(|&x| x <= 0.0) {
        return Err(Error::invalid("D must be a positive diagonal"));
    }
    let det: f64 = d.iter().product();
    if (det - 1.0).abs() > 1e-6 {
        return Err(Error::invalid(format!(
            "D must have det 1 (within 1e-6), got {det:.6e}"
        )));
    }
    let scale = det.powf(-1.0 / n as f64);
    let d: Vec<f64> = d.iter().map(|x| x * scale).collect();

    let m = b.monodromy();
    let spec = spectral_decomposition(&m)?;
    let u = &spec.vectors;
    let p = u * Mat::from_diagonal(&crate::linalg::Vec64::from_vec(d)) * u.transpose();
    let beta = cholesky_upper(&(0.5 * (&p + p.transpose())))?;
    let beta_inv = crate::linalg::inverse(beta.matrix())?;
    let conjugated = beta.matrix() * &m * beta_inv;
    let sym_res = symmetry_residual(&conjugated);
    if sym_res > 1e-9 * conjugated.norm().max(1.0) {
        return Err(Error::numerical(format!(
            "conjugated monodromy lost symmetry: residual {sym_res:.3e}"
        )));
    }
    let translated = reverse_cholesky(&(0.5 * (&conjugated + conjugated.transpose())))?;
    Ok(LevelSetTranslation {
        translated,
        witness: beta,
        symmetry_residual: sym_res,
    })
}

/// Dimension of T_M(orbit) ∩ T_M(monodromy image of AN) at M = b bᵀ,
/// where the orbit tangent is {ξM − Mξ : ξ ∈ a ⊕ n} and the image tangent
/// is {XM + MXᵀ : X ∈ a ⊕ n}; computed by rank arithmetic with threshold
/// 1e-8. Expected value: n − 1 at generic points.
pub fn orbit_leaf_intersection_dim(b: &AnElement) -> Result<usize> {
    let n = b.n();
    let m = b.monodromy();
    // generic-point guard
    spectral_decomposition(&m)?;

    let mut basis: Vec<Mat> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut x = Mat::zeros(n, n);
            x[(i, j)] = 1.0;
            basis.push(x);
        }
    }
    for i in 0..n - 1 {
        let mut x = Mat::zeros(n, n);
        x[(i, i)] = 1.0;
        x[(i + 1, i + 1)] = -1.0;
        basis.push(x);
    }
    let d = basis.len();

    let mut orbit = Mat::zeros(n * n, d);
    let mut image = Mat::zeros(n * n, d);
    for (col, x) in basis.iter().enumerate() {
        let o = x * &m - &m * x;
        let t = x * &m + &m * x.transpose();
        for a in 0..n {
            for bb in 0..n {
                orbit[(a * n + bb, col)] = o[(a, bb)];
                image[(a * n + bb, col)] = t[(a, bb)];
            }
        }
    }
    let dim_orbit = crate::linalg::rank_with_gap(&orbit, 1e-8)?;
    let dim_image = crate::linalg::rank_with_gap(&image, 1e-8)?;
    let mut joint = Mat::zeros(n * n, 2 * d);
    joint.view_mut((0, 0), (n * n, d)).copy_from(&orbit);
    joint.view_mut((0, d), (n * n, d)).copy_from(&image);
    let dim_sum = crate::linalg::rank_with_gap(&joint, 1e-8)?;
    Ok(dim_orbit + dim_image - dim_sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn spectral_rejects_degenerate_and_accepts_generic() {
        assert!(matches!(
            spectral_decomposition(&Mat::identity(2, 2)),
            Err(Error::Degenerate(_))
        ));

        let m = Mat::from_row_slice(2, 2, &[4.0, 0.0, 0.0, 0.25]);
        let spec = spectral_decomposition(&m).unwrap();
        assert_eq!(spec.eigenvalues, vec![4.0, 0.25]);
        assert!((spec.projectors[0].clone()
            - Mat::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0]))
        .norm()
            .abs()
            < 1e-14);
    }

    #[test]
    fn spectral_matches_quadratic_formula() {
        // eigenvalues of [[2,1],[1,1]] are (3 ± √5)/2
        let m = Mat::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 1.0]);
        let spec = spectral_decomposition(&m).unwrap();
        let sqrt5 = 5.0f64.sqrt();
        assert_relative_eq!(spec.eigenvalues[0], (3.0 + sqrt5) / 2.0, epsilon = 1e-12);
        assert_relative_eq!(spec.eigenvalues[1], (3.0 - sqrt5) / 2.0, epsilon = 1e-12);
        // eigenvectors proportional to (1, h − 2)
        for (h, q) in spec.eigenvalues.iter().zip(&spec.projectors) {
            let v = nalgebra::DVector::from_vec(vec![1.0, h - 2.0]).normalize();
            let expected = &v * v.transpose();
            assert!((q - expected).norm() < 1e-10);
        }
        assert!(spec.reconstruction_residual(&m) < 1e-12);
    }

    #[test]
    fn spectral_invariants_hold_at_random_points() {
        let mut sampler = Sampler::new(7);
        for n in [3usize, 5] {
            let b = sampler.generic_an(n);
            let m = b.monodromy();
            let spec = spectral_decomposition(&m).unwrap();
            let sum: Mat = spec.projectors.iter().sum();
            assert!((sum - Mat::identity(n, n)).norm() < 1e-10);
            for (i, qi) in spec.projectors.iter().enumerate() {
                for (j, qj) in spec.projectors.iter().enumerate() {
                    let prod = qi * qj;
                    let expected = if i == j { qi.clone() } else { Mat::zeros(n, n) };
                    assert!((prod - expected).norm() < 1e-10);
                }
            }
            assert!(spec.reconstruction_residual(&m) < 1e-10);
            let prod: f64 = spec.eigenvalues.iter().product();
            assert_relative_eq!(prod, 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn shapovalov_form_is_contravariant() {
        for n in [2usize, 4] {
            let report = shapovalov_check(n, 20, 99);
            assert!(report.pass(), "{report:?}");
            assert!(report.checks()[0].residual < 1e-12);
        }
    }

    #[test]
    fn angle_variables_on_the_worked_example() {
        let b = AnElement::new(Mat::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0])).unwrap();
        let angles = angle_variables(&b).unwrap();
        // closed form: r for the top eigenvalue is ((√5−1)/2)²/(1+((√5−1)/2)²)
        assert_relative_eq!(angles.r[0], 0.27639320225002106, epsilon = 1e-12);
        assert_relative_eq!(angles.r[1], 0.7236067977499789, epsilon = 1e-12);
        assert_relative_eq!(angles.r.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
        assert_eq!(angles.log_ratios.len(), 1);
    }

    #[test]
    fn angle_variables_reject_diagonal_points() {
        let b = AnElement::new(Mat::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 0.5])).unwrap();
        assert!(matches!(angle_variables(&b), Err(Error::Degenerate(_))));
    }

    #[test]
    fn angle_sums_to_one_at_random_points() {
        let mut sampler = Sampler::new(11);
        for _ in 0..5 {
            let b = sampler.generic_an(4);
            let angles = angle_variables(&b).unwrap();
            assert_relative_eq!(angles.r.iter().sum::<f64>(), 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn angle_log_ratios_are_linear_in_time() {
        let b0 = AnElement::new(Mat::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0])).unwrap();
        let grid: Vec<f64> = (0..9).map(|i| 0.05 * i as f64).collect();
        let report = verify_angle_linearity(1, &b0, &grid).unwrap();
        assert!(report.pass(), "{report:?}");

        let mut sampler = Sampler::new(13);
        let b3 = sampler.generic_an(3);
        let grid1 = angle_grid(1, &b3, 9).unwrap();
        let report = verify_angle_linearity(1, &b3, &grid1).unwrap();
        assert!(report.pass(), "{report:?}");
        let grid2 = angle_grid(2, &b3, 9).unwrap();
        let report = verify_angle_linearity(2, &b3, &grid2).unwrap();
        assert!(report.pass(), "{report:?}");
    }

    #[test]
    fn measured_slope_matches_closed_form_on_sl2() {
        let b0 = AnElement::new(Mat::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0])).unwrap();
        let h = ReflectionHamiltonian::power(1).unwrap();
        let grid: Vec<f64> = (0..9).map(|i| 0.05 * i as f64).collect();
        let mut thetas = Vec::new();
        for &t in &grid {
            let bt = factorization_flow(&h, &b0, t).unwrap();
            thetas.push(angle_variables(&bt).unwrap().log_ratios[0].2);
        }
        let (slope, _) = linear_fit(&grid, &thetas);
        assert_relative_eq!(slope.abs(), 4.0 * 5.0f64.sqrt(), epsilon = 1e-8);
    }

    #[test]
    fn level_set_translate_identity_and_spectrum() {
        let mut sampler = Sampler::new(17);
        let b = sampler.generic_an(3);
        let identity = level_set_translate(&b, &[1.0, 1.0, 1.0]).unwrap();
        assert!((identity.translated.matrix() - b.matrix()).norm() < 1e-9);
        assert!((identity.witness.matrix() - Mat::identity(3, 3)).norm() < 1e-9);

        let spec0 = spectral_decomposition(&b.monodromy()).unwrap();
        for _ in 0..3 {
            let d = sampler.positive_diagonal_det1(3);
            let moved = level_set_translate(&b, &d).unwrap();
            let spec1 = spectral_decomposition(&moved.translated.monodromy()).unwrap();
            for (a, bb) in spec0.eigenvalues.iter().zip(&spec1.eigenvalues) {
                assert!((a - bb).abs() < 1e-9);
            }
            // by-construction witness: b′ b′ᵀ = β (b bᵀ) β⁻¹
            let beta = moved.witness.matrix();
            let lhs = moved.translated.monodromy();
            let rhs = beta * b.monodromy() * crate::linalg::inverse(beta).unwrap();
            assert!((lhs - rhs).norm() < 1e-9);
        }
    }

    #[test]
    fn level_set_translate_is_injective_in_d() {
        let mut sampler = Sampler::new(19);
        let b = sampler.generic_an(3);
        let d1 = sampler.positive_diagonal_det1(3);
        let d2 = sampler.positive_diagonal_det1(3);
        let b1 = level_set_translate(&b, &d1).unwrap().translated;
        let b2 = level_set_translate(&b, &d2).unwrap().translated;
        assert!((b1.matrix() - b2.matrix()).norm() > 1e-8);
    }

    #[test]
    fn level_set_translate_rejects_bad_d() {
        let mut sampler = Sampler::new(23);
        let b = sampler.generic_an(2);
        assert!(level_set_translate(&b, &[2.0, 2.0]).is_err());
        assert!(level_set_translate(&b, &[-1.0, -1.0]).is_err());
        let diag = AnElement::new(Mat::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 0.5])).unwrap();
        // degenerate points are fine here (distinct spectrum), but fully
        // degenerate ones are not
        let id = AnElement::new(Mat::identity(2, 2)).unwrap();
        assert!(level_set_translate(&id, &[2.0, 0.5]).is_err());
        assert!(level_set_translate(&diag, &[2.0, 0.5]).is_ok());
    }

    #[test]
    fn translations_compose_along_the_torus() {
        let mut sampler = Sampler::new(29);
        let b = sampler.generic_an(3);
        let d1 = sampler.positive_diagonal_det1(3);
        let d2 = sampler.positive_diagonal_det1(3);
        let d12: Vec<f64> = d1.iter().zip(&d2).map(|(a, b)| a * b).collect();
        let via_two = level_set_translate(&level_set_translate(&b, &d1).unwrap().translated, &d2)
            .unwrap()
            .translated;
        let via_one = level_set_translate(&b, &d12).unwrap().translated;
        assert!(
            (via_two.matrix() - via_one.matrix()).norm() < 1e-8,
            "composition residual {}",
            (via_two.matrix() - via_one.matrix()).norm()
        );
    }

    #[test]
    fn orbit_intersection_dimension_is_rank() {
        let b2 = AnElement::new(Mat::from_row_slice(2, 2, &[2.0, 0.5, 0.0, 0.5])).unwrap();
        assert_eq!(orbit_leaf_intersection_dim(&b2).unwrap(), 1);

        let mut sampler = Sampler::new(31);
        let b3 = sampler.generic_an(3);
        assert_eq!(orbit_leaf_intersection_dim(&b3).unwrap(), 2);

        let b5 = sampler.generic_an(5);
        assert_eq!(orbit_leaf_intersection_dim(&b5).unwrap(), 4);
    }
}
