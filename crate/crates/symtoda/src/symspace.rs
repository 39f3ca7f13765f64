//! The symmetric-space toolkit for SL(n, R)/SO(n): the involutions σ and τ,
//! the reflection monodromy T(g) = g gᵀ, Iwasawa factorization, reverse
//! Cholesky, and the pushforward identities of T.

use crate::error::{Error, Result};
use crate::linalg::{
    cholesky_lower, flip_both, inverse, lower_residual, qr_positive, Mat,
};
use crate::poisson::{poisson_bracket, GroupElement, SmoothFunction};
use crate::report::Report;
use crate::rootdata::AlgebraElement;

/// An element of the AN subgroup: upper triangular, positive diagonal,
/// determinant 1. Strictly lower entries are stored as exact zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct AnElement {
    m: Mat,
}

impl AnElement {
    pub fn new(m: Mat) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() < 2 {
            return Err(Error::invalid("AN element must be square, n >= 2"));
        }
        let n = m.nrows();
        let scale = m.norm().max(1.0);
        if lower_residual(&m) > 1e-9 * scale {
            return Err(Error::invalid(
                "AN element must be upper triangular (strictly lower part nonzero)",
            ));
        }
        let mut clean = crate::linalg::upper(&m);
        for i in 0..n {
            if clean[(i, i)] <= 0.0 {
                return Err(Error::invalid(format!(
                    "AN element needs positive diagonal, entry {i} is {:.3e}",
                    clean[(i, i)]
                )));
            }
        }
        let det: f64 = (0..n).map(|i| clean[(i, i)]).product();
        if !det.is_finite() || (det - 1.0).abs() > 1e-6 {
            return Err(Error::invalid(format!(
                "AN element must have det 1 (within 1e-6), got {det:.6e}"
            )));
        }
        clean *= det.powf(-1.0 / n as f64);
        Ok(AnElement { m: clean })
    }

    pub fn matrix(&self) -> &Mat {
        &self.m
    }

    pub fn n(&self) -> usize {
        self.m.nrows()
    }

    pub fn into_matrix(self) -> Mat {
        self.m
    }

    /// The monodromy image b bᵀ (symmetric positive definite, det 1).
    pub fn monodromy(&self) -> Mat {
        &self.m * self.m.transpose()
    }
}

/// An element of SO(n): orthogonal with determinant +1.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalElement {
    m: Mat,
}

impl OrthogonalElement {
    pub fn new(m: Mat) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::invalid("orthogonal element must be square"));
        }
        let n = m.nrows();
        let residual = (m.transpose() * &m - Mat::identity(n, n)).norm();
        if residual > 1e-9 {
            return Err(Error::invalid(format!(
                "orthogonality residual {residual:.3e} exceeds 1e-9"
            )));
        }
        if m.determinant() < 0.0 {
            return Err(Error::invalid("orthogonal element must have det +1"));
        }
        Ok(OrthogonalElement { m })
    }

    pub fn matrix(&self) -> &Mat {
        &self.m
    }

    pub fn n(&self) -> usize {
        self.m.nrows()
    }

    /// The inverse, which is just the transpose.
    pub fn inverse(&self) -> OrthogonalElement {
        OrthogonalElement {
            m: self.m.transpose(),
        }
    }
}

/// Cartan involution on the group: σ(g) = (gᵀ)⁻¹. Fixes exactly SO(n);
/// its differential at the identity is X ↦ −Xᵀ.
pub fn sigma(g: &GroupElement) -> Result<GroupElement> {
    let inv = inverse(g.matrix())?;
    GroupElement::new(inv.transpose())
}

/// The anti-automorphism τ(g) = σ(g⁻¹) = gᵀ. Swaps B₊ and B₋ and fixes
/// every monodromy image: τ(T(g)) = T(g).
pub fn tau(g: &GroupElement) -> GroupElement {
    GroupElement::from_matrix_unchecked(g.matrix().transpose())
}

/// Reflection monodromy T(g) = g σ(g⁻¹) = g gᵀ: symmetric positive
/// definite with det 1, invariant under right K-translation, so it
/// identifies G/K with SPD matrices of determinant 1.
pub fn reflection_monodromy(g: &GroupElement) -> GroupElement {
    GroupElement::from_matrix_unchecked(g.matrix() * g.matrix().transpose())
}

/// Iwasawa factorization g = b · k⁻¹ with b ∈ AN and k ∈ SO(n); global and
/// unique.
///
/// Computed by the flip trick: QR-factor J gᵀ J (J the antidiagonal flip),
/// transform back, and normalize signs so the triangular factor has
/// positive diagonal.
pub fn iwasawa_factorize(g: &GroupElement) -> Result<(AnElement, OrthogonalElement)> {
    let a = g.matrix().transpose();
    let flipped = flip_both(&a);
    let (q, r) = qr_positive(&flipped)?;
    let k_raw = flip_both(&q);
    let l = flip_both(&r); // lower triangular, positive diagonal
    let b = AnElement::new(l.transpose())?;
    let k = OrthogonalElement::new(k_raw)?;
    debug_assert!((g.matrix() - b.matrix() * k.matrix().transpose()).norm() < 1e-9);
    Ok((b, k))
}

/// The upper-triangular factor b ∈ AN with b·bᵀ = M, for M symmetric
/// positive definite ("reverse" Cholesky, computed through the
/// antidiagonal flip of the ordinary factorization). Inverts b ↦ b bᵀ
/// on AN.
pub fn reverse_cholesky(m: &Mat) -> Result<AnElement> {
    let l = cholesky_lower(&flip_both(m))?;
    // J M J = L Lᵀ gives M = (J L J)(J L J)ᵀ with J L J upper triangular.
    AnElement::new(flip_both(&l))
}

/// The upper-triangular factor β ∈ AN with βᵀ·β = M (the ordinary Cholesky
/// in its upper form), used for the τ(β)β = UDU⁻¹ construction.
pub fn cholesky_upper(m: &Mat) -> Result<AnElement> {
    let l = cholesky_lower(m)?;
    AnElement::new(l.transpose())
}

/// Side of a derivative of T.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Analytic differential of the reflection monodromy:
/// d/dt T(g e^{tX})|₀ = g (X + Xᵀ) gᵀ (left) and
/// d/dt T(e^{tX} g)|₀ = X·T(g) + T(g)·Xᵀ (right).
///
/// Antisymmetric X are killed on the left; on the right they push forward
/// to the commutator [X, T(g)].
pub fn t_differential(g: &GroupElement, x: &AlgebraElement, side: Side) -> Result<Mat> {
    if x.n() != g.n() {
        return Err(Error::invalid("dimension mismatch in T differential"));
    }
    let xm = x.matrix();
    Ok(match side {
        Side::Left => g.matrix() * (xm + xm.transpose()) * g.matrix().transpose(),
        Side::Right => {
            let t = g.matrix() * g.matrix().transpose();
            xm * &t + t * xm.transpose()
        }
    })
}

/// Finite-difference oracle for `t_differential` (central, step h).
pub fn t_differential_fd(g: &GroupElement, x: &AlgebraElement, side: Side, h: f64) -> Mat {
    let step = |t: f64| -> Mat {
        let e = crate::linalg::expm(&(t * x.matrix()));
        let moved = match side {
            Side::Left => g.matrix() * e,
            Side::Right => e * g.matrix(),
        };
        &moved * moved.transpose()
    };
    (step(h) - step(-h)) / (2.0 * h)
}

fn bracket_scale(vals: &[f64]) -> f64 {
    vals.iter().fold(1.0f64, |m, v| m.max(v.abs()))
}

/// The monodromy bracket identity
/// {T*f₁, T*f₂}(g) = ½ {f₁ + τ*f₁, f₂ + τ*f₂}(T(g)),
/// verified for arbitrary smooth f₁, f₂ (tolerance 1e-6 relative).
pub fn verify_rmpb(
    f1: &SmoothFunction,
    f2: &SmoothFunction,
    g: &GroupElement,
) -> Result<Report> {
    let lhs = poisson_bracket(&f1.compose_monodromy(), &f2.compose_monodromy(), g)?;
    let s1 = f1.tau_symmetrized();
    let s2 = f2.tau_symmetrized();
    let rhs = 0.5 * poisson_bracket(&s1, &s2, &reflection_monodromy(g))?;
    let mut report = Report::new("rm-pb").with_n(g.n());
    report.push_detailed(
        format!("{}-vs-{}", f1.name(), f2.name()),
        (lhs - rhs).abs() / bracket_scale(&[lhs, rhs]),
        1e-6,
        Some(format!("lhs = {lhs:.6e}, rhs = {rhs:.6e}")),
    );
    Ok(report.finish())
}

/// For τ-invariant functions the monodromy doubles brackets:
/// {T*f₁, T*f₂}(g) = 2 {f₁, f₂}(T(g)). Inputs are τ-symmetrized here.
pub fn verify_factor2_corollary(
    f1: &SmoothFunction,
    f2: &SmoothFunction,
    g: &GroupElement,
) -> Result<Report> {
    let s1 = f1.tau_symmetrized();
    let s2 = f2.tau_symmetrized();
    let lhs = poisson_bracket(&s1.compose_monodromy(), &s2.compose_monodromy(), g)?;
    let rhs = 2.0 * poisson_bracket(&s1, &s2, &reflection_monodromy(g))?;
    let mut report = Report::new("factor2").with_n(g.n());
    report.push_detailed(
        format!("{}-vs-{}", f1.name(), f2.name()),
        (lhs - rhs).abs() / bracket_scale(&[lhs, rhs]),
        1e-6,
        Some(format!("lhs = {lhs:.6e}, rhs = {rhs:.6e}")),
    );
    Ok(report.finish())
}

/// τ is a Poisson map: {τ*f₁, τ*f₂}(g) = {f₁, f₂}(τ(g)).
pub fn verify_tau_poisson(
    f1: &SmoothFunction,
    f2: &SmoothFunction,
    g: &GroupElement,
) -> Result<Report> {
    let lhs = poisson_bracket(&f1.compose_tau(), &f2.compose_tau(), g)?;
    let rhs = poisson_bracket(f1, f2, &tau(g))?;
    let mut report = Report::new("tau-poisson").with_n(g.n());
    report.push_detailed(
        format!("{}-vs-{}", f1.name(), f2.name()),
        (lhs - rhs).abs() / bracket_scale(&[lhs, rhs]),
        1e-6,
        Some(format!("lhs = {lhs:.6e}, rhs = {rhs:.6e}")),
    );
    Ok(report.finish())
}
