//! Reflection Hamiltonians H(g) = Σ c_k tr((g gᵀ)^k), their left/right
//! gradients, the exact factorization flow, and an independent RK4
//! integrator of the bracket vector field for cross-validation.
//!
//! The factorization flow from b₀ ∈ AN over time t:
//! with X± = ∇±H(b₀), Iwasawa-factorize exp(t X±) = b±(t) k±(t)⁻¹ and set
//! g(t) = k₊(t)⁻¹ b₀ k₋(t); the trajectory point is the AN part of g(t).
//! Long times are sliced so that each slice keeps ‖t·X‖ bounded, composing
//! flows by the group property and renormalizing the coset representative
//! through the reverse Cholesky of T(g).

use std::collections::BTreeMap;

use crate::actionangle::{angle_variables, AngleData};
use crate::error::{Error, Result};
use crate::linalg::{expm_symmetric, traceless, upper, vec_rowmajor, Mat};
use crate::poisson::{bivector_at, GroupElement, SmoothFunction};
use crate::report::Report;
use crate::rootdata::AlgebraElement;
use crate::symspace::{iwasawa_factorize, reverse_cholesky, AnElement};

/// Gradient side: ⟨∇⁻H(g), X⟩ = d/dt H(g e^{tX})|₀ (left translations),
/// ⟨∇⁺H(g), X⟩ = d/dt H(e^{tX} g)|₀ (right translations).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GradientSide {
    Minus,
    Plus,
}

/// H(g) = Σ_k c_k tr((g gᵀ)^k) with 1 ≤ k ≤ n−1; bi-K-invariant.
#[derive(Debug, Clone, PartialEq)]
pub struct ReflectionHamiltonian {
    coeffs: BTreeMap<u32, f64>,
}

impl ReflectionHamiltonian {
    /// The basic Hamiltonian H_k(g) = tr((g gᵀ)^k).
    pub fn power(k: u32) -> Result<Self> {
        Self::from_coeffs([(k, 1.0)])
    }

    pub fn from_coeffs(pairs: impl IntoIterator<Item = (u32, f64)>) -> Result<Self> {
        let coeffs: BTreeMap<u32, f64> = pairs.into_iter().filter(|(_, c)| *c != 0.0).collect();
        if coeffs.is_empty() {
            return Err(Error::invalid(
                "reflection Hamiltonian needs at least one nonzero coefficient",
            ));
        }
        if coeffs.keys().any(|&k| k < 1) {
            return Err(Error::invalid("trace powers must be >= 1"));
        }
        Ok(ReflectionHamiltonian { coeffs })
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, f64> {
        &self.coeffs
    }

    pub fn max_power(&self) -> u32 {
        *self.coeffs.keys().last().expect("nonempty")
    }

    /// Higher traces than n−1 are dependent; reject them for rank n−1.
    pub fn check_rank(&self, n: usize) -> Result<()> {
        if self.max_power() as usize >= n {
            return Err(Error::invalid(format!(
                "trace power {} is dependent at n = {n} (needs k <= n-1)",
                self.max_power()
            )));
        }
        Ok(())
    }

    /// Value at an arbitrary group point.
    pub fn value(&self, g: &Mat) -> f64 {
        let m = g * g.transpose();
        self.coeffs
            .iter()
            .map(|(&k, &c)| c * m.pow(k).trace())
            .sum()
    }

    pub fn value_an(&self, b: &AnElement) -> f64 {
        self.value(b.matrix())
    }

    /// Closed-form gradient:
    /// ∇⁻H(g) = traceless(Σ 2k c_k (gᵀ g)^k),
    /// ∇⁺H(g) = traceless(Σ 2k c_k (g gᵀ)^k). Both are symmetric.
    pub fn gradient(&self, g: &Mat, side: GradientSide) -> AlgebraElement {
        let base = match side {
            GradientSide::Minus => g.transpose() * g,
            GradientSide::Plus => g * g.transpose(),
        };
        let mut total = Mat::zeros(g.nrows(), g.ncols());
        for (&k, &c) in &self.coeffs {
            total += 2.0 * (k as f64) * c * base.pow(k);
        }
        AlgebraElement::new(traceless(&total)).expect("traceless projection")
    }

    /// Max relative deviation of ⟨∇⁻H(g), X⟩ from the finite-difference
    /// derivative d/dt H(g e^{tX}) over a basis of sl(n).
    pub fn validate_gradient(&self, g: &Mat) -> f64 {
        let n = g.nrows();
        let grad = self.gradient(g, GradientSide::Minus);
        let h = 1e-6;
        let mut worst = 0.0f64;
        let mut check = |x: &Mat| {
            let pairing = (grad.matrix() * x).trace();
            let plus = self.value(&(g * expm_symmetric_or_general(&(h * x))));
            let minus = self.value(&(g * expm_symmetric_or_general(&(-h * x))));
            let fd = (plus - minus) / (2.0 * h);
            let dev = (pairing - fd).abs() / pairing.abs().max(1.0);
            worst = worst.max(dev);
        };
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    let mut x = Mat::zeros(n, n);
                    x[(a, b)] = 1.0;
                    check(&x);
                }
            }
        }
        for a in 0..n - 1 {
            let mut x = Mat::zeros(n, n);
            x[(a, a)] = 1.0;
            x[(a + 1, a + 1)] = -1.0;
            check(&x);
        }
        worst
    }

    /// As a smooth function with analytic left differential Σ 2k c_k (gᵀg)^k.
    pub fn to_function(&self) -> SmoothFunction {
        let coeffs = self.coeffs.clone();
        let coeffs2 = self.coeffs.clone();
        SmoothFunction::from_fn(format!("H{:?}", self.coeffs.keys()), move |g: &Mat| {
            let m = g * g.transpose();
            coeffs.iter().map(|(&k, &c)| c * m.pow(k).trace()).sum()
        })
        .with_differential(move |g: &Mat| {
            let s = g.transpose() * g;
            let mut total = Mat::zeros(g.nrows(), g.ncols());
            for (&k, &c) in &coeffs2 {
                total += 2.0 * (k as f64) * c * s.pow(k);
            }
            total
        })
    }
}

fn expm_symmetric_or_general(m: &Mat) -> Mat {
    if crate::linalg::symmetry_residual(m) < 1e-14 * m.norm().max(1.0) {
        expm_symmetric(m)
    } else {
        crate::linalg::expm(m)
    }
}

/// One exact factorization step of duration t from b.
fn factorization_step(h: &ReflectionHamiltonian, b: &AnElement, t: f64) -> Result<AnElement> {
    let x_plus = h.gradient(b.matrix(), GradientSide::Plus);
    let x_minus = h.gradient(b.matrix(), GradientSide::Minus);
    let e_plus = expm_symmetric(&(t * x_plus.matrix()));
    let e_minus = expm_symmetric(&(t * x_minus.matrix()));
    let (_, k_plus) = iwasawa_factorize(&GroupElement::new(e_plus).map_err(|e| {
        Error::numerical(format!("exp(t∇⁺H) left SL(n): {e}; slice the time interval"))
    })?)?;
    let (_, k_minus) = iwasawa_factorize(&GroupElement::new(e_minus).map_err(|e| {
        Error::numerical(format!("exp(t∇⁻H) left SL(n): {e}; slice the time interval"))
    })?)?;
    // g(t) = k₊⁻¹ · b · k₋ ; its AN part is reverse_cholesky(g gᵀ).
    let g = k_plus.matrix().transpose() * b.matrix() * k_minus.matrix();
    reverse_cholesky(&(&g * g.transpose()))
}

/// The exact flow of H through b₀ over time t (sliced for stability).
pub fn factorization_flow(
    h: &ReflectionHamiltonian,
    b0: &AnElement,
    t: f64,
) -> Result<AnElement> {
    h.check_rank(b0.n())?;
    let grad_dev = h.validate_gradient(b0.matrix());
    if grad_dev > 1e-6 {
        return Err(Error::numerical(format!(
            "closed-form gradient disagrees with finite differences: {grad_dev:.3e}"
        )));
    }
    if t == 0.0 {
        return Ok(b0.clone());
    }
    let x = h.gradient(b0.matrix(), GradientSide::Plus);
    let slices = (t.abs() * (1.0 + x.matrix().norm())).ceil().max(1.0);
    if slices > 1e6 {
        return Err(Error::numerical(
            "time horizon too large for the gradient scale; slice the flow externally",
        ));
    }
    let slices = slices as usize;
    let dt = t / slices as f64;
    let mut b = b0.clone();
    for _ in 0..slices {
        b = factorization_step(h, &b, dt)?;
    }
    Ok(b)
}

/// Left-trivialized velocity of the bracket vector field:
/// ξ_ν(b) = Σ_μ η^{μν}(b) ∂^L_μ H(b), projected onto b₊ (the off-chart
/// components are tangency noise below 1e-10).
pub fn bracket_velocity(h: &ReflectionHamiltonian, b: &Mat) -> Result<Mat> {
    let n = b.nrows();
    // RK4 stage points sit O(h²) off the det-1 surface; the bivector only
    // needs invertibility, so skip the group-element gate here.
    let g = GroupElement::from_matrix_unchecked(b.clone());
    let eta = bivector_at(&g)?;
    let d = vec_rowmajor(&h.to_function().left_differential(b));
    let xi_flat = eta.tensor().components().transpose() * d;
    let xi = Mat::from_fn(n, n, |a, c| xi_flat[a * n + c]);
    Ok(b * traceless(&upper(&xi)))
}

/// Integrate the bracket vector field b′ = b·ξ(b) with classical RK4,
/// fixed step dt ≤ 1e-2; rejects the run when the determinant drifts
/// beyond 1e-6.
pub fn vector_field_flow(
    h: &ReflectionHamiltonian,
    b0: &AnElement,
    t: f64,
    dt: f64,
) -> Result<AnElement> {
    if !(dt > 0.0 && dt <= 1e-2) {
        return Err(Error::invalid("step size must satisfy 0 < dt <= 1e-2"));
    }
    h.check_rank(b0.n())?;
    let steps = (t.abs() / dt).ceil().max(1.0) as usize;
    let step = t / steps as f64;
    let mut b = b0.matrix().clone();
    for _ in 0..steps {
        let k1 = bracket_velocity(h, &b)?;
        let k2 = bracket_velocity(h, &(&b + 0.5 * step * &k1))?;
        let k3 = bracket_velocity(h, &(&b + 0.5 * step * &k2))?;
        let k4 = bracket_velocity(h, &(&b + step * &k3))?;
        b += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        let det = b.determinant();
        if (det - 1.0).abs() > 1e-6 {
            return Err(Error::numerical(format!(
                "determinant drift {:.3e} during vector-field integration",
                det - 1.0
            )));
        }
    }
    AnElement::new(b)
}

/// Velocity of the factorization flow at b, by a fourth-order central
/// stencil in the flow time. The step is scaled by the gradient size so
/// the truncation error stays near (h‖X‖)⁴ ≈ 1e-12 relative.
pub fn factorization_velocity(h: &ReflectionHamiltonian, b: &AnElement) -> Result<Mat> {
    let x = h.gradient(b.matrix(), GradientSide::Plus);
    let step = 1e-3 / (1.0 + x.matrix().norm());
    let phi = |t: f64| -> Result<Mat> { Ok(factorization_flow(h, b, t)?.into_matrix()) };
    Ok((-phi(2.0 * step)? + 8.0 * phi(step)? - 8.0 * phi(-step)? + phi(-2.0 * step)?)
        / (12.0 * step))
}

/// The time scale λ between the two flows at a point: the bracket flow
/// runs λ× the factorization flow. Returns (λ, collinearity residual).
pub fn measure_time_scale(h: &ReflectionHamiltonian, b0: &AnElement) -> Result<(f64, f64)> {
    let v_fact = factorization_velocity(h, b0)?;
    let v_vf = bracket_velocity(h, b0.matrix())?;
    let denom = v_fact.dot(&v_fact);
    if denom < 1e-20 {
        return Err(Error::degenerate("flow is stationary at this point"));
    }
    let lambda = v_vf.dot(&v_fact) / denom;
    let residual = (&v_vf - lambda * &v_fact).norm() / v_vf.norm().max(1e-30);
    Ok((lambda, residual))
}

/// The global time constant, calibrated once on the canonical SL₂ point
/// with H₁ (recorded in reports; invariance across H, b₀, n is itself a
/// verified property).
pub fn calibrate_time_scale() -> Result<(f64, f64)> {
    let b0 = AnElement::new(Mat::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]))?;
    measure_time_scale(&ReflectionHamiltonian::power(1)?, &b0)
}

/// Commuting Hamiltonians generate commuting flows:
/// ‖Φᵃ_t(Φᵇ_t(b₀)) − Φᵇ_t(Φᵃ_t(b₀))‖ < 1e-7.
pub fn verify_flow_commutativity(
    h_a: &ReflectionHamiltonian,
    h_b: &ReflectionHamiltonian,
    b0: &AnElement,
    t: f64,
) -> Result<Report> {
    let ab = factorization_flow(h_a, &factorization_flow(h_b, b0, t)?, t)?;
    let ba = factorization_flow(h_b, &factorization_flow(h_a, b0, t)?, t)?;
    let mut report = Report::new("flow-commutativity").with_n(b0.n());
    report.push(
        "composition-difference",
        (ab.matrix() - ba.matrix()).norm(),
        1e-7,
    );
    Ok(report.finish())
}

/// A sampled flow with per-sample diagnostics.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub points: Vec<AnElement>,
    pub hamiltonian: Vec<f64>,
    pub actions: Vec<Vec<f64>>,
    pub angles: Vec<AngleData>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Max drift of each conserved quantity across the trajectory.
    pub fn action_drift(&self) -> f64 {
        let first = &self.actions[0];
        self.actions
            .iter()
            .flat_map(|a| a.iter().zip(first).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max)
    }

    pub fn hamiltonian_drift(&self) -> f64 {
        let h0 = self.hamiltonian[0];
        self.hamiltonian
            .iter()
            .map(|h| (h - h0).abs())
            .fold(0.0, f64::max)
    }
}

/// Sample the factorization flow on `samples` grid points of [t0, t1]
/// (a single row at t0 when samples = 1), advancing incrementally by the
/// group property.
pub fn simulate_trajectory(
    h: &ReflectionHamiltonian,
    b0: &AnElement,
    t0: f64,
    t1: f64,
    samples: usize,
) -> Result<Trajectory> {
    if samples == 0 {
        return Err(Error::invalid("need at least one sample"));
    }
    if samples > 1 && t1 <= t0 {
        return Err(Error::invalid("need t1 > t0 for more than one sample"));
    }
    let mut times = Vec::with_capacity(samples);
    let mut points = Vec::with_capacity(samples);
    let mut b = factorization_flow(h, b0, t0)?;
    let dt = if samples > 1 {
        (t1 - t0) / (samples - 1) as f64
    } else {
        0.0
    };
    for i in 0..samples {
        times.push(t0 + i as f64 * dt);
        points.push(b.clone());
        if i + 1 < samples {
            b = factorization_flow(h, &b, dt)?;
        }
    }
    let hamiltonian: Vec<f64> = points.iter().map(|p| h.value_an(p)).collect();
    let mut actions = Vec::with_capacity(samples);
    let mut angles = Vec::with_capacity(samples);
    for p in &points {
        let spec = crate::actionangle::spectral_decomposition(&p.monodromy())?;
        actions.push(spec.eigenvalues.clone());
        angles.push(angle_variables(p)?);
    }
    Ok(Trajectory {
        times,
        points,
        hamiltonian,
        actions,
        angles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::Sampler;
    use approx::assert_relative_eq;

    fn sorted_actions(b: &AnElement) -> Vec<f64> {
        let eig = b.monodromy().symmetric_eigen();
        let mut v: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        v.sort_by(|a, b| b.partial_cmp(a).unwrap());
        v
    }

    #[test]
    fn hamiltonian_values() {
        let h1 = ReflectionHamiltonian::power(1).unwrap();
        let id = AnElement::new(Mat::identity(3, 3)).unwrap();
        assert_relative_eq!(h1.value_an(&id), 3.0);

        let b = AnElement::new(Mat::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0])).unwrap();
        assert_relative_eq!(h1.value_an(&b), 3.0);
    }

    #[test]
    fn hamiltonian_is_right_k_invariant() {
        let mut sampler = Sampler::new(7);
        let h2 = ReflectionHamiltonian::power(2).unwrap();
        for _ in 0..5 {
            let g = sampler.group_element(4);
            let k = sampler.rotation(4);
            let gk = g.matrix() * k.matrix();
            assert!((h2.value(g.matrix()) - h2.value(&gk)).abs() < 1e-12);
            let kg = k.matrix() * g.matrix();
            assert!((h2.value(g.matrix()) - h2.value(&kg)).abs() < 1e-12);
        }
    }

    #[test]
    fn hamiltonian_validation_rules() {
        assert!(ReflectionHamiltonian::from_coeffs([]).is_err());
        assert!(ReflectionHamiltonian::from_coeffs([(0u32, 1.0)]).is_err());
        let h3 = ReflectionHamiltonian::power(3).unwrap();
        assert!(h3.check_rank(3).is_err());
        assert!(h3.check_rank(4).is_ok());
    }

    #[test]
    fn gradient_examples_and_fd_validation() {
        let h1 = ReflectionHamiltonian::power(1).unwrap();
        let id = Mat::identity(2, 2);
        assert_eq!(h1.gradient(&id, GradientSide::Plus).matrix().norm(), 0.0);

        let b = Mat::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        let grad = h1.gradient(&b, GradientSide::Plus);
        let expected = Mat::from_row_slice(2, 2, &[1.0, 2.0, 2.0, -1.0]);
        assert!((grad.matrix() - expected).norm() < 1e-14);

        let mut sampler = Sampler::new(11);
        let g2 = sampler.group_element(2);
        let h1 = ReflectionHamiltonian::power(1).unwrap();
        assert!(h1.validate_gradient(g2.matrix()) < 1e-6);
        let g3 = sampler.group_element(3);
        let mixed = ReflectionHamiltonian::from_coeffs([(1, 0.7), (2, -0.3)]).unwrap();
        assert!(mixed.validate_gradient(g3.matrix()) < 1e-6);
    }

    #[test]
    fn gradient_pairing_matches_fd_on_random_directions() {
        let mut sampler = Sampler::new(13);
        let h = ReflectionHamiltonian::power(2).unwrap();
        let g = sampler.group_element(3);
        let grad = h.gradient(g.matrix(), GradientSide::Minus);
        for _ in 0..20 {
            let x = sampler.algebra_element(3);
            let pairing = (grad.matrix() * x.matrix()).trace();
            let step = 1e-6;
            let plus = h.value(&(g.matrix() * crate::linalg::expm(&(step * x.matrix()))));
            let minus = h.value(&(g.matrix() * crate::linalg::expm(&(-step * x.matrix()))));
            let fd = (plus - minus) / (2.0 * step);
            assert!(
                (pairing - fd).abs() / pairing.abs().max(1.0) < 1e-6,
                "pairing {pairing} vs fd {fd}"
            );
        }
    }

    #[test]
    fn flow_at_zero_time_is_identity() {
        let b0 = AnElement::new(Mat::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0])).unwrap();
        let h = ReflectionHamiltonian::power(1).unwrap();
        let b = factorization_flow(&h, &b0, 0.0).unwrap();
        assert_eq!(b.matrix(), b0.matrix());
    }

    #[test]
    fn flow_is_isospectral_and_conserves_hamiltonians() {
        let mut sampler = Sampler::new(17);
        let b0 = sampler.an_element(3);
        let h = ReflectionHamiltonian::power(1).unwrap();
        let h2 = ReflectionHamiltonian::power(2).unwrap();
        let a0 = sorted_actions(&b0);
        for t in [0.5, 1.0, 2.0] {
            let bt = factorization_flow(&h, &b0, t).unwrap();
            let at = sorted_actions(&bt);
            for (x, y) in a0.iter().zip(&at) {
                assert!((x - y).abs() < 1e-9, "t = {t}: {x} vs {y}");
            }
            assert!((h2.value_an(&bt) - h2.value_an(&b0)).abs() < 1e-9);
        }
    }

    #[test]
    fn flow_conserves_h1_on_the_worked_example() {
        let b0 = AnElement::new(Mat::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0])).unwrap();
        let h = ReflectionHamiltonian::power(1).unwrap();
        for t in [0.3, 0.9, 1.7] {
            let bt = factorization_flow(&h, &b0, t).unwrap();
            assert_relative_eq!(h.value_an(&bt), 3.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn flow_has_group_property() {
        let mut sampler = Sampler::new(19);
        let b0 = sampler.an_element(3);
        let h = ReflectionHamiltonian::power(2).unwrap();
        let (s, t) = (0.4, 0.7);
        let one_shot = factorization_flow(&h, &b0, s + t).unwrap();
        let composed = factorization_flow(&h, &factorization_flow(&h, &b0, s).unwrap(), t).unwrap();
        assert!(
            (one_shot.matrix() - composed.matrix()).norm() < 1e-8,
            "difference {}",
            (one_shot.matrix() - composed.matrix()).norm()
        );
    }

    #[test]
    fn time_scale_is_one_and_flows_are_collinear() {
        let (lambda, residual) = calibrate_time_scale().unwrap();
        assert_relative_eq!(lambda, 1.0, epsilon = 1e-6);
        assert!(residual < 1e-6, "collinearity residual {residual}");
    }

    #[test]
    fn time_scale_is_invariant_across_points_and_hamiltonians() {
        let (lambda0, _) = calibrate_time_scale().unwrap();
        let mut sampler = Sampler::new(23);
        for n in [2usize, 3] {
            for k in 1..n as u32 {
                let h = ReflectionHamiltonian::power(k).unwrap();
                let b0 = sampler.generic_an(n);
                let (lambda, res) = measure_time_scale(&h, &b0).unwrap();
                assert!(
                    (lambda - lambda0).abs() / lambda0.abs() < 1e-4,
                    "n = {n}, k = {k}: lambda {lambda}"
                );
                assert!(res < 1e-5);
            }
        }
    }

    #[test]
    fn vector_field_flow_matches_factorization_flow() {
        let b0 = AnElement::new(Mat::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0])).unwrap();
        let h = ReflectionHamiltonian::power(1).unwrap();
        let (lambda, _) = calibrate_time_scale().unwrap();
        let t = 1.0;
        let fact = factorization_flow(&h, &b0, lambda * t).unwrap();
        let vf = vector_field_flow(&h, &b0, t, 1e-3).unwrap();
        let diff = (fact.matrix() - vf.matrix()).amax();
        assert!(diff < 1e-5, "entrywise difference {diff}");
    }

    #[test]
    fn vector_field_flow_matches_at_n3() {
        let mut sampler = Sampler::new(29);
        let b0 = sampler.generic_an(3);
        let h = ReflectionHamiltonian::power(2).unwrap();
        let (lambda, _) = calibrate_time_scale().unwrap();
        let t = 0.5;
        let fact = factorization_flow(&h, &b0, lambda * t).unwrap();
        let vf = vector_field_flow(&h, &b0, t, 1e-3).unwrap();
        let diff = (fact.matrix() - vf.matrix()).amax();
        assert!(diff < 1e-5, "entrywise difference {diff}");
    }

    #[test]
    fn vector_field_flow_rejects_large_steps() {
        let b0 = AnElement::new(Mat::identity(2, 2)).unwrap();
        let h = ReflectionHamiltonian::power(1).unwrap();
        assert!(vector_field_flow(&h, &b0, 1.0, 0.5).is_err());
    }

    #[test]
    fn flows_of_distinct_hamiltonians_commute() {
        let mut sampler = Sampler::new(31);
        let b3 = sampler.an_element(3);
        let h1 = ReflectionHamiltonian::power(1).unwrap();
        let h2 = ReflectionHamiltonian::power(2).unwrap();
        let report = verify_flow_commutativity(&h1, &h2, &b3, 0.7).unwrap();
        assert!(report.pass(), "{report:?}");

        let b4 = sampler.an_element(4);
        let h3 = ReflectionHamiltonian::power(3).unwrap();
        let report = verify_flow_commutativity(&h2, &h3, &b4, 0.3).unwrap();
        assert!(report.pass(), "{report:?}");

        // identical Hamiltonians commute exactly
        let report = verify_flow_commutativity(&h1, &h1, &b3, 0.5).unwrap();
        assert_eq!(report.max_residual(), 0.0);
    }

    #[test]
    fn trajectory_single_sample_echoes_initial_data() {
        let mut sampler = Sampler::new(37);
        let b0 = sampler.generic_an(2);
        let h = ReflectionHamiltonian::power(1).unwrap();
        let traj = simulate_trajectory(&h, &b0, 0.0, 0.0, 1).unwrap();
        assert_eq!(traj.len(), 1);
        assert_eq!(traj.points[0].matrix(), b0.matrix());
        assert_relative_eq!(traj.hamiltonian[0], h.value_an(&b0));
    }

    #[test]
    fn trajectory_conserves_actions() {
        // the worked SL₂ example stays inside the angle chart over [0, 2]
        let b0 = AnElement::new(Mat::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0])).unwrap();
        let h = ReflectionHamiltonian::power(1).unwrap();
        let traj = simulate_trajectory(&h, &b0, 0.0, 2.0, 200).unwrap();
        assert!(traj.action_drift() < 1e-9, "drift {}", traj.action_drift());
        assert!(traj.hamiltonian_drift() < 1e-9);
        assert!(traj.times.windows(2).all(|w| w[1] > w[0]));

        // an n = 3 window chosen inside the chart
        let mut sampler = Sampler::new(41);
        let b0 = sampler.generic_an(3);
        let grid = crate::actionangle::angle_grid(1, &b0, 5).unwrap();
        let t_max = *grid.last().unwrap();
        let traj = simulate_trajectory(&h, &b0, 0.0, t_max, 9).unwrap();
        assert!(traj.action_drift() < 1e-9);
    }

    #[test]
    fn trajectory_reports_chart_breakdown_on_long_windows() {
        let mut sampler = Sampler::new(43);
        let b0 = sampler.generic_an(3);
        let h = ReflectionHamiltonian::power(2).unwrap();
        // long enough that some angle coordinate decays through the floor
        let result = simulate_trajectory(&h, &b0, 0.0, 50.0, 600);
        assert!(matches!(result, Err(Error::Degenerate(_))));
    }
}
