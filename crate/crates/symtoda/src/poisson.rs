//! The standard Poisson-Lie bivector on SL(n, R) and brackets of smooth
//! functions.
//!
//! The bivector field is η = r^R − r^L; in the left trivialization of the
//! tangent bundle its value at g is Ad_{g⁻¹}(r) − r (the right-invariant
//! field X^R(g) = Xg pulls back by left translation to g⁻¹Xg). Brackets
//! contract η with left-trivialized differentials:
//!
//!   {f₁, f₂}(g) = Σ_{μν} η^{μν}(g) (∂^L_μ f₁)(g) (∂^L_ν f₂)(g),
//!
//! where ∂^L_X f(g) = d/dt f(g e^{tX})|₀ and μ, ν run over matrix units.
//! No extra 1/2: every identity verified downstream is homogeneous in η.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{flat, inverse, kron, lower_residual, vec_rowmajor, Mat};
use crate::report::Report;
use crate::rootdata::{standard_r_matrix, RTensor};
use crate::symspace::{sigma, AnElement};

/// Finite-difference step for default differentials, on one-parameter
/// subgroups g·exp(t e_ab).
const FD_STEP: f64 = 1e-6;

/// An element of SL(n, R).
///
/// Inputs with |det − 1| ≤ 1e-6 are rescaled to determinant exactly 1
/// (keeps drift from compounding in flows); anything further off is
/// rejected.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    m: Mat,
}

impl GroupElement {
    pub fn new(m: Mat) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() < 2 {
            return Err(Error::invalid("group element must be square, n >= 2"));
        }
        let det = m.determinant();
        if !det.is_finite() || det <= 0.0 || (det - 1.0).abs() > 1e-6 {
            return Err(Error::invalid(format!(
                "group element must have det 1 (within 1e-6), got {det:.6e}"
            )));
        }
        let n = m.nrows();
        let scale = det.powf(-1.0 / n as f64);
        Ok(GroupElement { m: scale * m })
    }

    pub(crate) fn from_matrix_unchecked(m: Mat) -> Self {
        GroupElement { m }
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
}

impl From<AnElement> for GroupElement {
    fn from(b: AnElement) -> Self {
        GroupElement { m: b.into_matrix() }
    }
}

impl From<&AnElement> for GroupElement {
    fn from(b: &AnElement) -> Self {
        GroupElement { m: b.matrix().clone() }
    }
}

type EvalFn = Arc<dyn Fn(&Mat) -> f64 + Send + Sync>;
type DiffFn = Arc<dyn Fn(&Mat) -> Mat + Send + Sync>;

/// A smooth function on the group, with an optional analytic
/// left-differential; the default differential is by central finite
/// differences along one-parameter subgroups.
///
/// The left differential at g is the matrix D with
/// D_{ab} = d/dt f(g e^{t e_{ab}})|₀.
#[derive(Clone)]
pub struct SmoothFunction {
    name: String,
    eval: EvalFn,
    diff: Option<DiffFn>,
}

impl std::fmt::Debug for SmoothFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SmoothFunction")
            .field("name", &self.name)
            .field("analytic_diff", &self.diff.is_some())
            .finish()
    }
}

/// g · exp(t e_ab), exactly: nilpotent for a ≠ b, column scaling for a = b.
fn translate_along_unit(g: &Mat, a: usize, b: usize, t: f64) -> Mat {
    let mut out = g.clone();
    let n = g.nrows();
    if a == b {
        let s = t.exp();
        for p in 0..n {
            out[(p, a)] *= s;
        }
    } else {
        for p in 0..n {
            out[(p, b)] += t * g[(p, a)];
        }
    }
    out
}

impl SmoothFunction {
    pub fn from_fn(
        name: impl Into<String>,
        eval: impl Fn(&Mat) -> f64 + Send + Sync + 'static,
    ) -> Self {
        SmoothFunction {
            name: name.into(),
            eval: Arc::new(eval),
            diff: None,
        }
    }

    pub fn with_differential(
        mut self,
        diff: impl Fn(&Mat) -> Mat + Send + Sync + 'static,
    ) -> Self {
        self.diff = Some(Arc::new(diff));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn value(&self, g: &Mat) -> f64 {
        (self.eval)(g)
    }

    /// Left differential, analytic when available, otherwise central
    /// finite differences with step 1e-6.
    pub fn left_differential(&self, g: &Mat) -> Mat {
        match &self.diff {
            Some(d) => d(g),
            None => self.fd_left_differential(g),
        }
    }

    pub fn fd_left_differential(&self, g: &Mat) -> Mat {
        let n = g.nrows();
        Mat::from_fn(n, n, |a, b| {
            let plus = (self.eval)(&translate_along_unit(g, a, b, FD_STEP));
            let minus = (self.eval)(&translate_along_unit(g, a, b, -FD_STEP));
            (plus - minus) / (2.0 * FD_STEP)
        })
    }

    /// Max relative deviation between the analytic and finite-difference
    /// differentials at g (0 when no analytic differential is attached).
    pub fn validate_differential(&self, g: &Mat) -> f64 {
        match &self.diff {
            None => 0.0,
            Some(d) => {
                let analytic = d(g);
                let fd = self.fd_left_differential(g);
                let scale = analytic.norm().max(1.0);
                (analytic - fd).norm() / scale
            }
        }
    }

    /// The coordinate function g ↦ g_{ij} (0-based), analytic differential.
    pub fn coordinate(i: usize, j: usize) -> Self {
        SmoothFunction {
            name: format!("coord({},{})", i + 1, j + 1),
            eval: Arc::new(move |g: &Mat| g[(i, j)]),
            diff: Some(Arc::new(move |g: &Mat| {
                let n = g.nrows();
                Mat::from_fn(n, n, |a, b| if b == j { g[(i, a)] } else { 0.0 })
            })),
        }
    }

    /// g ↦ tr(g^m), conjugation-invariant, analytic differential m·(g^m)ᵀ.
    pub fn trace_power(m: u32) -> Self {
        SmoothFunction {
            name: format!("tr^{m}"),
            eval: Arc::new(move |g: &Mat| g.pow(m).trace()),
            diff: Some(Arc::new(move |g: &Mat| {
                (m as f64) * g.pow(m).transpose()
            })),
        }
    }

    /// The reflection Hamiltonian H_m(g) = tr((g gᵀ)^m); left differential
    /// 2m (gᵀ g)^m.
    pub fn reflection_trace(m: u32) -> Self {
        SmoothFunction {
            name: format!("H{m}"),
            eval: Arc::new(move |g: &Mat| (g * g.transpose()).pow(m).trace()),
            diff: Some(Arc::new(move |g: &Mat| {
                2.0 * (m as f64) * (g.transpose() * g).pow(m)
            })),
        }
    }

    pub fn sum(f: &SmoothFunction, g: &SmoothFunction) -> Self {
        let (fe, ge) = (f.eval.clone(), g.eval.clone());
        let diff = match (&f.diff, &g.diff) {
            (Some(fd), Some(gd)) => {
                let (fd, gd) = (fd.clone(), gd.clone());
                Some(Arc::new(move |m: &Mat| fd(m) + gd(m)) as DiffFn)
            }
            _ => None,
        };
        SmoothFunction {
            name: format!("({} + {})", f.name, g.name),
            eval: Arc::new(move |m: &Mat| fe(m) + ge(m)),
            diff,
        }
    }

    pub fn scaled(&self, c: f64) -> Self {
        let fe = self.eval.clone();
        let diff = self.diff.as_ref().map(|fd| {
            let fd = fd.clone();
            Arc::new(move |m: &Mat| c * fd(m)) as DiffFn
        });
        SmoothFunction {
            name: format!("{c}*{}", self.name),
            eval: Arc::new(move |m: &Mat| c * fe(m)),
            diff,
        }
    }

    /// Product, with the Leibniz-rule differential when both factors are
    /// analytic.
    pub fn product(f: &SmoothFunction, g: &SmoothFunction) -> Self {
        let (fe, ge) = (f.eval.clone(), g.eval.clone());
        let diff = match (&f.diff, &g.diff) {
            (Some(fd), Some(gd)) => {
                let (fd, gd) = (fd.clone(), gd.clone());
                let (fe2, ge2) = (f.eval.clone(), g.eval.clone());
                Some(Arc::new(move |m: &Mat| {
                    fd(m) * ge2(m) + gd(m) * fe2(m)
                }) as DiffFn)
            }
            _ => None,
        };
        SmoothFunction {
            name: format!("({} * {})", f.name, g.name),
            eval: Arc::new(move |m: &Mat| fe(m) * ge(m)),
            diff,
        }
    }

    /// Pullback along the Cartan involution σ(g) = (gᵀ)⁻¹:
    /// D_{f∘σ}(g) = −D_f(σ(g))ᵀ, since σ is an automorphism with
    /// σ_*(e_ab) = −e_ba.
    pub fn compose_sigma(&self) -> Self {
        let fe = self.eval.clone();
        let sig = |m: &Mat| m.transpose().try_inverse().expect("sigma of singular matrix");
        let diff = self.diff.as_ref().map(|fd| {
            let fd = fd.clone();
            Arc::new(move |m: &Mat| -fd(&sig(m)).transpose()) as DiffFn
        });
        SmoothFunction {
            name: format!("sigma*{}", self.name),
            eval: Arc::new(move |m: &Mat| fe(&sig(m))),
            diff,
        }
    }

    /// Pullback along the transpose anti-automorphism τ(g) = gᵀ:
    /// D_{f∘τ}(g) = h · D_f(h)ᵀ · h⁻¹ with h = gᵀ.
    pub fn compose_tau(&self) -> Self {
        let fe = self.eval.clone();
        let diff = self.diff.as_ref().map(|fd| {
            let fd = fd.clone();
            Arc::new(move |m: &Mat| {
                let h = m.transpose();
                let hinv = h.clone().try_inverse().expect("tau of singular matrix");
                &h * fd(&h).transpose() * hinv
            }) as DiffFn
        });
        SmoothFunction {
            name: format!("tau*{}", self.name),
            eval: Arc::new(move |m: &Mat| fe(&m.transpose())),
            diff,
        }
    }

    /// Pullback along the reflection monodromy T(g) = g gᵀ:
    /// with ambient gradient P = M⁻¹ D_f(M) at M = g gᵀ,
    /// D_{T*f}(g) = S + Sᵀ where S = gᵀ P g.
    pub fn compose_monodromy(&self) -> Self {
        let fe = self.eval.clone();
        let diff = self.diff.as_ref().map(|fd| {
            let fd = fd.clone();
            Arc::new(move |g: &Mat| {
                let m = g * g.transpose();
                let p = m.clone().try_inverse().expect("monodromy of singular matrix") * fd(&m);
                let s = g.transpose() * p * g;
                &s + s.transpose()
            }) as DiffFn
        });
        SmoothFunction {
            name: format!("T*{}", self.name),
            eval: Arc::new(move |g: &Mat| fe(&(g * g.transpose()))),
            diff,
        }
    }

    /// τ-symmetrization f + f∘τ, which is τ-invariant by construction.
    pub fn tau_symmetrized(&self) -> Self {
        SmoothFunction::sum(self, &self.compose_tau())
    }
}

/// The left-trivialized bivector at a base point.
#[derive(Debug, Clone)]
pub struct BivectorAtPoint {
    base: GroupElement,
    tensor: RTensor,
}

impl BivectorAtPoint {
    pub fn base(&self) -> &GroupElement {
        &self.base
    }

    pub fn tensor(&self) -> &RTensor {
        &self.tensor
    }

    /// ‖t + flip(t)‖ — should vanish.
    pub fn skewness_residual(&self) -> f64 {
        (self.tensor.components() + self.tensor.flip().components()).norm()
    }
}

/// Left-trivialized bivector η(g) = Ad_{g⁻¹}(r) − r of the field r^R − r^L.
///
/// The tensor is skew-symmetrized after the conjugation so that brackets of
/// equal functions cancel to exactly zero.
pub fn bivector_at(g: &GroupElement) -> Result<BivectorAtPoint> {
    let n = g.n();
    let r = standard_r_matrix(n)?;
    let ginv = inverse(g.matrix())?;
    let ad = kron(&ginv, &g.matrix().transpose());
    let mut t = RTensor::from_components(n, &ad * r.components() * ad.transpose() - r.components())?;
    t.skew_symmetrize();
    Ok(BivectorAtPoint {
        base: g.clone(),
        tensor: t,
    })
}

/// Poisson bracket {f₁, f₂}(g) = vec(D₁)ᵀ · η(g) · vec(D₂).
pub fn poisson_bracket(
    f1: &SmoothFunction,
    f2: &SmoothFunction,
    g: &GroupElement,
) -> Result<f64> {
    let eta = bivector_at(g)?;
    Ok(bracket_with_bivector(f1, f2, &eta))
}

/// Bracket against a precomputed bivector (for Gram matrices and flows).
///
/// The contraction is summed over index pairs μ < ν as
/// η_{μν}(d₁_μ d₂_ν − d₁_ν d₂_μ), so antisymmetry is exact in floating
/// point: {f, f} = 0 and {f₁, f₂} = −{f₂, f₁} bit for bit.
pub fn bracket_with_bivector(
    f1: &SmoothFunction,
    f2: &SmoothFunction,
    eta: &BivectorAtPoint,
) -> f64 {
    let g = eta.base().matrix();
    let d1 = vec_rowmajor(&f1.left_differential(g));
    let d2 = vec_rowmajor(&f2.left_differential(g));
    contract_skew(eta.tensor().components(), &d1, &d2)
}

fn contract_skew(
    t: &Mat,
    d1: &crate::linalg::Vec64,
    d2: &crate::linalg::Vec64,
) -> f64 {
    let dim = d1.len();
    let mut total = 0.0;
    for mu in 0..dim {
        for nu in (mu + 1)..dim {
            let c = t[(mu, nu)];
            if c != 0.0 {
                total += c * (d1[mu] * d2[nu] - d1[nu] * d2[mu]);
            }
        }
    }
    total
}

/// Chart for the bivector-rank computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    /// All n² ambient coordinate functions.
    Full,
    /// The n(n+1)/2 − 1 upper-triangular coordinates of the AN chart
    /// (entries above the diagonal plus the first n−1 diagonal entries).
    An,
}

fn chart_coordinates(n: usize, chart: Chart) -> Vec<(usize, usize)> {
    match chart {
        Chart::Full => (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .collect(),
        Chart::An => {
            let mut coords: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                .collect();
            coords.extend((0..n - 1).map(|i| (i, i)));
            coords
        }
    }
}

/// Rank of the bracket Gram matrix on the chart's coordinate functions,
/// singular values thresholded at 1e-8 · σ_max.
pub fn bivector_rank(g: &GroupElement, chart: Chart) -> Result<usize> {
    let n = g.n();
    if chart == Chart::An && lower_residual(g.matrix()) > 1e-9 * g.matrix().norm().max(1.0) {
        return Err(Error::invalid(
            "AN-chart rank requires an upper-triangular element",
        ));
    }
    let eta = bivector_at(g)?;
    let coords = chart_coordinates(n, chart);
    // Stack the coordinate left-differentials: row I is vec(D_I).
    let mut c = Mat::zeros(coords.len(), n * n);
    for (row, &(i, j)) in coords.iter().enumerate() {
        // D_{ab} = (g e_ab)_{ij} = g_{ia} δ_{bj}
        for a in 0..n {
            c[(row, flat(a, j, n))] = g.matrix()[(i, a)];
        }
    }
    let gram = &c * eta.tensor().components() * c.transpose();
    crate::linalg::rank_with_gap(&gram, 1e-8)
}

/// AN ⊂ B₊ is a Poisson submanifold: the bivector at b ∈ AN has no
/// components outside b₊ ∧ b₊. Reports the off-subalgebra residual
/// (tolerance 1e-10).
pub fn verify_an_tangency(b: &AnElement) -> Result<Report> {
    let n = b.n();
    let g = GroupElement::from(b);
    let eta = bivector_at(&g)?;
    let mut off = 0.0f64;
    for a in 0..n {
        for bb in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if a > bb || c > d {
                        let v = eta.tensor().components()[(flat(a, bb, n), flat(c, d, n))];
                        off += v * v;
                    }
                }
            }
        }
    }
    let mut report = Report::new("an-tangency").with_n(n);
    report.push("off-borel-residual", off.sqrt(), 1e-10);
    report.push("skewness", eta.skewness_residual(), 1e-12);
    Ok(report.finish())
}

/// σ is anti-Poisson: {f₁∘σ, f₂∘σ}(g) + {f₁, f₂}(σ(g)) = 0, checked
/// relative to the magnitude of the two sides (tolerance 1e-6).
pub fn verify_sigma_antipoisson(
    f1: &SmoothFunction,
    f2: &SmoothFunction,
    g: &GroupElement,
) -> Result<Report> {
    let lhs = poisson_bracket(&f1.compose_sigma(), &f2.compose_sigma(), g)?;
    let rhs = poisson_bracket(f1, f2, &sigma(g)?)?;
    let scale = lhs.abs().max(rhs.abs()).max(1.0);
    let mut report = Report::new("sigma-antipoisson").with_n(g.n());
    report.push_detailed(
        format!("{}-vs-{}", f1.name(), f2.name()),
        (lhs + rhs).abs() / scale,
        1e-6,
        Some(format!("lhs = {lhs:.6e}, rhs = {rhs:.6e}")),
    );
    Ok(report.finish())
}

/// Reflection Hamiltonians H_m(g) = tr((g gᵀ)^m) Poisson-commute; checks
/// |{H_j, H_k}(b)| against 1e-6 of the contraction's Cauchy–Schwarz bound
/// ‖η‖·‖D_j‖·‖D_k‖ (the size of the terms that must cancel; high trace
/// powers reach ~1e13 at the larger ranks).
pub fn verify_kgk_commutativity(j: u32, k: u32, b: &AnElement) -> Result<Report> {
    if j < 1 || k < 1 {
        return Err(Error::invalid("Hamiltonian indices must be >= 1"));
    }
    let g = GroupElement::from(b);
    let hj = SmoothFunction::reflection_trace(j);
    let hk = SmoothFunction::reflection_trace(k);
    let eta = bivector_at(&g)?;
    let bracket = bracket_with_bivector(&hj, &hk, &eta);
    let dj = hj.left_differential(g.matrix()).norm();
    let dk = hk.left_differential(g.matrix()).norm();
    let scale = (eta.tensor().norm() * dj * dk).max(1.0);
    let mut report = Report::new("kgk-commutativity").with_n(b.n());
    report.push_detailed(
        format!("H{j}-H{k}"),
        bracket.abs() / scale,
        1e-6,
        Some(format!("bracket = {bracket:.6e}, scale = {scale:.3e}")),
    );
    Ok(report.finish())
}
