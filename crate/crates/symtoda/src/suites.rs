//! Named verification suites aggregating the `verify_*` operations, sized
//! for desk-scale runs (n ≤ 5, seconds per suite). Each suite is
//! deterministic given (n, seed); the per-suite sampler seed is derived
//! from the base seed and the suite name.

use crate::actionangle::{
    angle_grid, angle_variables, level_set_translate, orbit_leaf_intersection_dim,
    shapovalov_check, spectral_decomposition, verify_angle_linearity,
};
use crate::bruhat::{all_weyl_elements, bruhat_cell, predicted_leaf_dimension, CellKind};
use crate::dynamics::{
    calibrate_time_scale, factorization_flow, measure_time_scale, vector_field_flow,
    ReflectionHamiltonian,
};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::poisson::{
    bivector_at, bivector_rank, poisson_bracket, verify_an_tangency, Chart, GroupElement,
    SmoothFunction,
};
use crate::report::Report;
use crate::rootdata::verify_r_identities;
use crate::sampling::Sampler;
use crate::symspace::{
    reflection_monodromy, sigma, t_differential, t_differential_fd, tau,
    verify_factor2_corollary, verify_rmpb, verify_tau_poisson, Side,
};

/// All suite names, in the order `verify` runs them.
pub const SUITE_NAMES: &[&str] = &[
    "r-identities",
    "bracket-axioms",
    "an-tangency",
    "sigma-tau",
    "kgk-commutativity",
    "rm-pb",
    "factor2",
    "t-pushforward",
    "flow-crossvalidation",
    "angle-linearity",
    "leaf-dimensions",
    "orbit-intersection",
];

/// Run one named suite at rank n−1 with the given base seed.
pub fn run_suite(name: &str, n: usize, seed: u64) -> Result<Report> {
    if !(2..=8).contains(&n) {
        return Err(Error::invalid(format!("n out of range: {n} (need 2..=8)")));
    }
    let mut sampler = Sampler::for_suite(seed, name);
    let report = match name {
        "r-identities" => verify_r_identities(n)?,
        "bracket-axioms" => bracket_axioms(n, &mut sampler)?,
        "an-tangency" => an_tangency(n, &mut sampler)?,
        "sigma-tau" => sigma_tau(n, &mut sampler)?,
        "kgk-commutativity" => kgk_commutativity(n, &mut sampler)?,
        "rm-pb" => rm_pb(n, &mut sampler)?,
        "factor2" => factor2(n, &mut sampler)?,
        "t-pushforward" => t_pushforward(n, &mut sampler)?,
        "flow-crossvalidation" => flow_crossvalidation(n, &mut sampler)?,
        "angle-linearity" => angle_linearity(n, &mut sampler)?,
        "leaf-dimensions" => leaf_dimensions(n, &mut sampler)?,
        "orbit-intersection" => orbit_intersection(n, &mut sampler)?,
        other => return Err(Error::invalid(format!("unknown suite `{other}`"))),
    };
    Ok(Report {
        seed: Some(seed),
        n: Some(n),
        ..report
    })
}

/// Run every suite; reports come back in `SUITE_NAMES` order.
pub fn run_all(n: usize, seed: u64) -> Result<Vec<Report>> {
    SUITE_NAMES
        .iter()
        .map(|name| run_suite(name, n, seed))
        .collect()
}

fn bracket_axioms(n: usize, sampler: &mut Sampler) -> Result<Report> {
    let mut report = Report::new("bracket-axioms");

    // antisymmetry is exact by the pairwise contraction
    let mut anti = 0.0f64;
    for _ in 0..5 {
        let g = sampler.group_element(n);
        let f1 = sampler.smooth_function(n);
        let f2 = sampler.smooth_function(n);
        anti = anti.max(poisson_bracket(&f1, &f1, &g)?.abs());
        anti = anti.max((poisson_bracket(&f1, &f2, &g)? + poisson_bracket(&f2, &f1, &g)?).abs());
    }
    report.push("antisymmetry-exact", anti, 0.0);

    // Jacobi identity on 50 random coordinate-function triples
    let mut jacobi = 0.0f64;
    for _ in 0..50 {
        let g = sampler.group_element(n);
        let coord = |s: &mut Sampler| {
            let i = (s.uniform(0.0, n as f64) as usize).min(n - 1);
            let j = (s.uniform(0.0, n as f64) as usize).min(n - 1);
            SmoothFunction::coordinate(i, j)
        };
        let (f1, f2, f3) = (coord(sampler), coord(sampler), coord(sampler));
        let inner = |a: &SmoothFunction, b: &SmoothFunction| {
            let (a, b) = (a.clone(), b.clone());
            SmoothFunction::from_fn("bracket", move |m: &Mat| {
                let gm = GroupElement::from_matrix_unchecked(m.clone());
                poisson_bracket(&a, &b, &gm).unwrap_or(f64::NAN)
            })
        };
        let t1 = poisson_bracket(&f1, &inner(&f2, &f3), &g)?;
        let t2 = poisson_bracket(&f2, &inner(&f3, &f1), &g)?;
        let t3 = poisson_bracket(&f3, &inner(&f1, &f2), &g)?;
        jacobi = jacobi.max((t1 + t2 + t3).abs());
    }
    report.push("jacobi", jacobi, 1e-6);

    // the bivector vanishes on the diagonal torus
    let mut torus = 0.0f64;
    for _ in 0..5 {
        let d = sampler.positive_diagonal_det1(n);
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = d[i];
        }
        torus = torus.max(bivector_at(&GroupElement::new(m)?)?.tensor().norm());
    }
    report.push("eta-zero-on-torus", torus, 1e-12);

    // Leibniz spot-check on products of coordinate functions
    let mut leibniz = 0.0f64;
    for _ in 0..3 {
        let g = sampler.group_element(n);
        let f1 = SmoothFunction::coordinate(0, n - 1);
        let f2 = SmoothFunction::coordinate(n - 1, n - 1);
        let f3 = sampler.smooth_function(n);
        let lhs = poisson_bracket(&SmoothFunction::product(&f1, &f2), &f3, &g)?;
        let rhs = f1.value(g.matrix()) * poisson_bracket(&f2, &f3, &g)?
            + f2.value(g.matrix()) * poisson_bracket(&f1, &f3, &g)?;
        leibniz = leibniz.max((lhs - rhs).abs());
    }
    report.push("leibniz", leibniz, 1e-9);

    Ok(report.finish())
}

fn an_tangency(n: usize, sampler: &mut Sampler) -> Result<Report> {
    let mut report = Report::new("an-tangency");
    let mut worst = 0.0f64;
    let mut skew = 0.0f64;
    for _ in 0..20 {
        let b = sampler.an_element(n);
        let sub = verify_an_tangency(&b)?;
        for check in sub.checks() {
            match check.name.as_str() {
                "off-borel-residual" => worst = worst.max(check.residual),
                "skewness" => skew = skew.max(check.residual),
                _ => {}
            }
        }
    }
    report.push("off-borel-residual", worst, 1e-10);
    report.push("skewness", skew, 1e-12);
    Ok(report.finish())
}

fn sigma_tau(n: usize, sampler: &mut Sampler) -> Result<Report> {
    let mut report = Report::new("sigma-tau");

    let mut anti = 0.0f64;
    let mut tau_poisson = 0.0f64;
    for i in 0..10 {
        let g = sampler.group_element(n);
        let (f1, f2) = if i % 3 == 0 {
            (
                SmoothFunction::coordinate(0, 0),
                SmoothFunction::coordinate(0, n - 1),
            )
        } else {
            (sampler.smooth_function(n), sampler.smooth_function(n))
        };
        anti = anti.max(crate::poisson::verify_sigma_antipoisson(&f1, &f2, &g)?.max_residual());
        tau_poisson = tau_poisson.max(verify_tau_poisson(&f1, &f2, &g)?.max_residual());
    }
    report.push("sigma-antipoisson", anti, 1e-6);
    report.push("tau-poisson-map", tau_poisson, 1e-6);

    let mut fixed = 0.0f64;
    let mut invol = 0.0f64;
    for _ in 0..5 {
        let k = sampler.rotation_group_element(n);
        fixed = fixed.max((sigma(&k)?.matrix() - k.matrix()).norm());
        let g = sampler.group_element(n);
        invol = invol.max((sigma(&sigma(&g)?)?.matrix() - g.matrix()).norm());
        invol = invol.max((tau(&tau(&g)).matrix() - g.matrix()).norm());
    }
    report.push("sigma-fixes-rotations", fixed, 1e-9);
    report.push("involutivity", invol, 1e-9);

    Ok(report.finish())
}

fn kgk_commutativity(n: usize, sampler: &mut Sampler) -> Result<Report> {
    let mut report = Report::new("kgk-commutativity");
    let mut pairs = Vec::new();
    for j in 1..=n as u32 {
        for k in (j + 1)..=n as u32 {
            pairs.push((j, k));
        }
    }
    let mut worst = vec![0.0f64; pairs.len()];
    for _ in 0..20 {
        let b = sampler.an_element(n);
        for (idx, &(j, k)) in pairs.iter().enumerate() {
            let sub = crate::poisson::verify_kgk_commutativity(j, k, &b)?;
            worst[idx] = worst[idx].max(sub.max_residual());
        }
    }
    for (idx, &(j, k)) in pairs.iter().enumerate() {
        report.push(format!("H{j}-H{k}"), worst[idx], 1e-6);
    }
    Ok(report.finish())
}

fn rm_pb(n: usize, sampler: &mut Sampler) -> Result<Report> {
    let mut report = Report::new("rm-pb");
    let mut generic = 0.0f64;
    let mut invariant_class = 0.0f64;
    let mut fd_only = 0.0f64;
    for i in 0..20usize {
        let g = sampler.group_element(n);
        match i % 5 {
            // Ad-invariant first argument (the subalgebra the embedding uses)
            0 => {
                let f1 = SmoothFunction::trace_power(1 + (i % 2) as u32);
                let f2 = sampler.smooth_function(n);
                invariant_class = invariant_class.max(verify_rmpb(&f1, &f2, &g)?.max_residual());
            }
            // finite-difference-only differentials exercise the default path
            1 => {
                let f1 = SmoothFunction::from_fn("fd-poly", |m: &Mat| {
                    m[(0, 0)] * m[(0, 0)] + 0.5 * m[(0, m.ncols() - 1)]
                });
                let f2 = SmoothFunction::from_fn("fd-sum", |m: &Mat| m.sum());
                fd_only = fd_only.max(verify_rmpb(&f1, &f2, &g)?.max_residual());
            }
            _ => {
                let f1 = sampler.smooth_function(n);
                let f2 = sampler.smooth_function(n);
                generic = generic.max(verify_rmpb(&f1, &f2, &g)?.max_residual());
            }
        }
    }
    report.push("generic-pairs", generic, 1e-6);
    report.push("ad-invariant-pairs", invariant_class, 1e-6);
    report.push("fd-differential-pairs", fd_only, 1e-6);
    Ok(report.finish())
}

fn factor2(n: usize, sampler: &mut Sampler) -> Result<Report> {
    let mut report = Report::new("factor2");
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let g = sampler.group_element(n);
        let f1 = sampler.smooth_function(n);
        let f2 = sampler.smooth_function(n);
        worst = worst.max(verify_factor2_corollary(&f1, &f2, &g)?.max_residual());
    }
    report.push("tau-symmetrized-pairs", worst, 1e-6);
    Ok(report.finish())
}

fn t_pushforward(n: usize, sampler: &mut Sampler) -> Result<Report> {
    let mut report = Report::new("t-pushforward");
    let rs = crate::rootdata::RootSystemA::new(n)?;

    // T_* kills left compact directions exactly in the analytic form
    let mut kill = 0.0f64;
    for _ in 0..5 {
        let g = sampler.group_element(n);
        for &root in rs.positive_roots() {
            let y = rs.y_generator(root)?;
            kill = kill.max(t_differential(&g, &y, Side::Left)?.norm());
        }
    }
    report.push("left-compact-killed-exactly", kill, 0.0);

    // right pushforwards match their closed forms at T(g)
    let mut closed = 0.0f64;
    for _ in 0..5 {
        let g = sampler.group_element(n);
        let t = reflection_monodromy(&g);
        for &root in rs.positive_roots() {
            let y = rs.y_generator(root)?;
            let d = t_differential(&g, &y, Side::Right)?;
            closed = closed.max((&d - (y.matrix() * t.matrix() - t.matrix() * y.matrix())).norm());
            let e = rs.chevalley_generator(root, crate::rootdata::Sign::Plus)?;
            let e_minus = rs.chevalley_generator(root, crate::rootdata::Sign::Minus)?;
            let d = t_differential(&g, &e, Side::Right)?;
            closed = closed
                .max((&d - (e.matrix() * t.matrix() + t.matrix() * e_minus.matrix())).norm());
        }
    }
    report.push("right-pushforward-closed-form", closed, 1e-12);

    // analytic differentials match finite differences on random directions
    let mut fd = 0.0f64;
    for _ in 0..20 {
        let g = sampler.group_element(n);
        let x = sampler.algebra_element(n);
        for side in [Side::Left, Side::Right] {
            let analytic = t_differential(&g, &x, side)?;
            let numeric = t_differential_fd(&g, &x, side, 1e-6);
            fd = fd.max((analytic - numeric).norm() / 1.0f64.max(x.matrix().norm()));
        }
    }
    report.push("analytic-vs-finite-difference", fd, 1e-7);

    Ok(report.finish())
}

fn flow_crossvalidation(n: usize, sampler: &mut Sampler) -> Result<Report> {
    let mut report = Report::new("flow-crossvalidation");

    let (lambda0, collinearity) = calibrate_time_scale()?;
    report.push_detailed(
        "time-scale-collinearity",
        collinearity,
        1e-5,
        Some(format!("lambda = {lambda0:.12}")),
    );

    // λ is the same constant for every Hamiltonian, point and rank
    let mut spread = 0.0f64;
    for k in 1..=(n as u32 - 1).min(2) {
        let h = ReflectionHamiltonian::power(k)?;
        for _ in 0..3 {
            let b0 = sampler.generic_an(n);
            let (lambda, res) = measure_time_scale(&h, &b0)?;
            spread = spread.max((lambda - lambda0).abs() / lambda0.abs());
            spread = spread.max(res);
        }
    }
    report.push("time-scale-invariance", spread, 1e-4);

    // factorization flow against the RK4 bracket-field integrator; the
    // horizon and step are scaled by the gradient size so the comparison
    // covers a comparable arc at every rank
    let mut cross = 0.0f64;
    for k in 1..=(n as u32 - 1).min(2) {
        let h = ReflectionHamiltonian::power(k)?;
        let b0 = sampler.generic_an(n);
        let x_norm = h
            .gradient(b0.matrix(), crate::dynamics::GradientSide::Plus)
            .matrix()
            .norm();
        let t = (if k == 1 { 1.0f64 } else { 0.5 }).min(4.0 / (1.0 + x_norm));
        let dt = 1e-3f64.min(0.02 / (1.0 + x_norm));
        let fact = factorization_flow(&h, &b0, lambda0 * t)?;
        let vf = vector_field_flow(&h, &b0, t, dt)?;
        cross = cross.max((fact.matrix() - vf.matrix()).amax());
    }
    report.push("factorization-vs-vector-field", cross, 1e-5);

    // isospectrality and conservation over t ∈ [0, 2]
    let h1 = ReflectionHamiltonian::power(1)?;
    let b0 = sampler.generic_an(n);
    let spec0 = spectral_decomposition(&b0.monodromy())?;
    let mut iso = 0.0f64;
    let mut conserve = 0.0f64;
    for t in [0.5, 1.0, 2.0] {
        let bt = factorization_flow(&h1, &b0, t)?;
        let spect = spectral_decomposition(&bt.monodromy())?;
        for (a, b) in spec0.eigenvalues.iter().zip(&spect.eigenvalues) {
            iso = iso.max((a - b).abs());
        }
        for k in 1..n as u32 {
            let hk = ReflectionHamiltonian::power(k)?;
            let h0 = hk.value_an(&b0);
            // relative: high trace powers reach ~1e8 at the larger ranks
            conserve = conserve.max((hk.value_an(&bt) - h0).abs() / h0.abs().max(1.0));
        }
    }
    report.push("isospectrality", iso, 1e-9);
    report.push("conservation-all-hamiltonians", conserve, 1e-9);

    // group property Φ_t ∘ Φ_s = Φ_{t+s}
    let (s, t) = (0.6, 0.9);
    let one_shot = factorization_flow(&h1, &b0, s + t)?;
    let composed = factorization_flow(&h1, &factorization_flow(&h1, &b0, s)?, t)?;
    report.push(
        "group-property",
        (one_shot.matrix() - composed.matrix()).norm(),
        1e-8,
    );

    // commuting flows (needs two independent Hamiltonians, so n >= 3)
    if n >= 3 {
        let h2 = ReflectionHamiltonian::power(2)?;
        let sub = crate::dynamics::verify_flow_commutativity(&h1, &h2, &b0, 0.7)?;
        report.push("flow-commutativity", sub.max_residual(), 1e-7);
    }

    Ok(report.finish())
}

fn angle_linearity(n: usize, sampler: &mut Sampler) -> Result<Report> {
    let mut report = Report::new("angle-linearity");

    let mut sum_dev = 0.0f64;
    for _ in 0..10 {
        let b = sampler.generic_an(n);
        let angles = angle_variables(&b)?;
        sum_dev = sum_dev.max((angles.r.iter().sum::<f64>() - 1.0).abs());
    }
    report.push("angle-sum-normalization", sum_dev, 1e-10);

    report.push("shapovalov", shapovalov_check(n, 20, 0).max_residual(), 1e-10);

    for k in 1..=(n as u32 - 1).min(2) {
        let b0 = sampler.generic_an(n);
        let grid = angle_grid(k, &b0, 9)?;
        let sub = verify_angle_linearity(k, &b0, &grid)?;
        let mut fit = 0.0f64;
        let mut slopes = 0.0f64;
        let mut rate = 0.0f64;
        for check in sub.checks() {
            if check.name.starts_with("fit-linearity") {
                fit = fit.max(check.residual);
            } else if check.name.starts_with("gradient-eigenvalue") {
                slopes = slopes.max(check.residual);
            } else {
                rate = rate.max(check.residual);
            }
        }
        report.push(format!("fit-linearity-k{k}"), fit, 1e-6);
        report.push(format!("slope-ratios-k{k}"), slopes, 1e-6);
        report.push(format!("rate-constant-k{k}"), rate, 1e-6);
    }

    Ok(report.finish())
}

fn leaf_dimensions(n: usize, sampler: &mut Sampler) -> Result<Report> {
    let mut report = Report::new("leaf-dimensions");

    let kinds: Vec<CellKind> = if n == 2 {
        vec![CellKind::Identity, CellKind::Coxeter]
    } else {
        vec![
            CellKind::Identity,
            CellKind::Simple(1),
            CellKind::Coxeter,
            CellKind::Longest,
        ]
    };
    for kind in &kinds {
        let expected = kind.weyl_element(n)?;
        let predicted = predicted_leaf_dimension(&expected)?;
        let mut mismatch = 0.0f64;
        let mut cell_miss = 0.0f64;
        for _ in 0..20 {
            let b = kind.sample(n, sampler)?;
            let detected = bruhat_cell(&b)?;
            if detected != expected {
                cell_miss += 1.0;
            }
            let measured = bivector_rank(&GroupElement::from(&b), Chart::An)?;
            mismatch = mismatch.max((measured as f64 - predicted as f64).abs());
        }
        let label = format!("{kind:?}").to_lowercase();
        report.push_detailed(
            format!("cell-{label}-rank"),
            mismatch,
            0.5,
            Some(format!(
                "u = {}, predicted = {predicted}, 20 points",
                expected.one_line()
            )),
        );
        report.push(format!("cell-{label}-detection"), cell_miss, 0.5);
    }

    // parity of the prediction, exhaustive through n = 5
    if n <= 5 {
        let odd = all_weyl_elements(n)
            .iter()
            .filter(|u| predicted_leaf_dimension(u).is_err())
            .count();
        report.push("prediction-even-exhaustive", odd as f64, 0.5);
    }

    // action variables are in involution on the Coxeter leaf
    let mut involution = 0.0f64;
    for _ in 0..3 {
        let b = CellKind::Coxeter.sample(n, sampler)?;
        let g = GroupElement::from(&b);
        let eig_fn = |idx: usize| {
            SmoothFunction::from_fn(format!("h{}", idx + 1), move |m: &Mat| {
                let spd = m * m.transpose();
                let eig = spd.symmetric_eigen();
                let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
                vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
                vals[idx]
            })
        };
        for a in 0..n {
            for bb in (a + 1)..n {
                let v = poisson_bracket(&eig_fn(a), &eig_fn(bb), &g)?;
                involution = involution.max(v.abs());
            }
        }
    }
    report.push("actions-in-involution", involution, 1e-6);

    Ok(report.finish())
}

fn orbit_intersection(n: usize, sampler: &mut Sampler) -> Result<Report> {
    let mut report = Report::new("orbit-intersection");

    let mut dim_miss = 0.0f64;
    for _ in 0..20 {
        let b = sampler.generic_an(n);
        let dim = orbit_leaf_intersection_dim(&b)?;
        dim_miss = dim_miss.max((dim as f64 - (n as f64 - 1.0)).abs());
    }
    report.push("intersection-dimension", dim_miss, 0.5);

    let b = sampler.generic_an(n);
    let identity = level_set_translate(&b, &vec![1.0; n])?;
    report.push(
        "translate-identity-at-i",
        (identity.translated.matrix() - b.matrix()).norm(),
        1e-9,
    );

    let spec0 = spectral_decomposition(&b.monodromy())?;
    let mut spectrum = 0.0f64;
    let mut translates: Vec<Mat> = Vec::new();
    for _ in 0..5 {
        let d = sampler.positive_diagonal_det1(n);
        let moved = level_set_translate(&b, &d)?;
        let spec1 = spectral_decomposition(&moved.translated.monodromy())?;
        for (x, y) in spec0.eigenvalues.iter().zip(&spec1.eigenvalues) {
            spectrum = spectrum.max((x - y).abs());
        }
        translates.push(moved.translated.into_matrix());
    }
    report.push("translate-preserves-spectrum", spectrum, 1e-9);

    let mut min_dist = f64::INFINITY;
    for i in 0..translates.len() {
        for j in (i + 1)..translates.len() {
            min_dist = min_dist.min((&translates[i] - &translates[j]).norm());
        }
    }
    report.push_detailed(
        "translate-injective-in-d",
        if min_dist > 1e-8 { 0.0 } else { 1.0 },
        0.5,
        Some(format!("min pairwise distance {min_dist:.3e}")),
    );

    // observed composition law of successive translations
    let d1 = sampler.positive_diagonal_det1(n);
    let d2 = sampler.positive_diagonal_det1(n);
    let d12: Vec<f64> = d1.iter().zip(&d2).map(|(a, b)| a * b).collect();
    let via_two = level_set_translate(&level_set_translate(&b, &d1)?.translated, &d2)?;
    let via_one = level_set_translate(&b, &d12)?;
    report.push(
        "translate-composition-observed",
        (via_two.translated.matrix() - via_one.translated.matrix()).norm(),
        1e-6,
    );

    // witness consistency: τ(β)β equals U D Uᵀ in the eigenbasis of b bᵀ
    let d = sampler.positive_diagonal_det1(n);
    let moved = level_set_translate(&b, &d)?;
    let u = &spec0.vectors;
    let p = u * Mat::from_diagonal(&crate::linalg::Vec64::from_vec(d)) * u.transpose();
    let beta = moved.witness.matrix();
    report.push(
        "witness-solves-torus-equation",
        (beta.transpose() * beta - p).norm(),
        1e-9,
    );

    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_at_n3() {
        for name in SUITE_NAMES {
            let report = run_suite(name, 3, 7).unwrap();
            assert!(report.pass(), "suite {name}: {report:?}");
            assert_eq!(report.seed, Some(7));
        }
    }

    #[test]
    fn suites_are_deterministic() {
        let a = run_suite("bracket-axioms", 3, 42).unwrap();
        let b = run_suite("bracket-axioms", 3, 42).unwrap();
        assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
    }

    #[test]
    fn scale_sensitive_suites_hold_at_the_largest_rank() {
        // trace powers reach ~1e13 at n = 8; the flow horizon and the
        // commutativity scale must absorb that
        for name in ["kgk-commutativity", "flow-crossvalidation"] {
            let report = run_suite(name, 8, 3).unwrap();
            assert!(report.pass(), "suite {name}: {report:?}");
        }
    }

    #[test]
    fn unknown_suite_is_an_input_error() {
        assert!(matches!(
            run_suite("no-such-suite", 3, 0),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            run_suite("rm-pb", 99, 0),
            Err(Error::InvalidInput(_))
        ));
    }
}
