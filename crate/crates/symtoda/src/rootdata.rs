//! Structure data of sl(n, R): roots, Chevalley generators, the trace-form
//! pairing, and the standard classical r-matrix with its algebraic identities.
//!
//! Conventions fixed here and used everywhere downstream:
//!
//! * the invariant pairing is the trace form ⟨X, Y⟩ = tr(XY), which gives
//!   ⟨E_α, E_{−α}⟩ = 1 for unnormalized matrix units;
//! * the wedge is a∧b := a⊗b − b⊗a (no 1/2);
//! * positive roots α = e_i − e_j (i < j) are ordered lexicographically by
//!   (i, j); no verified identity depends on the ordering.

use crate::error::{Error, Result};
use crate::linalg::{flat, Mat};
use crate::report::Report;

/// A positive root e_i − e_j of sl(n), stored 1-based with i < j.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Root {
    pub i: usize,
    pub j: usize,
}

impl Root {
    pub fn new(i: usize, j: usize) -> Self {
        Root { i, j }
    }
}

/// Sign selecting a root vector in g^α (+) or g^{−α} (−).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// The type-A root system of sl(n, R) together with its positive roots.
#[derive(Debug, Clone)]
pub struct RootSystemA {
    n: usize,
    positive_roots: Vec<Root>,
}

impl RootSystemA {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid(format!("rank requires n >= 2, got {n}")));
        }
        let mut positive_roots = Vec::with_capacity(n * (n - 1) / 2);
        for i in 1..=n {
            for j in (i + 1)..=n {
                positive_roots.push(Root::new(i, j));
            }
        }
        Ok(RootSystemA { n, positive_roots })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    fn check_root(&self, root: Root) -> Result<()> {
        if root.i >= 1 && root.i < root.j && root.j <= self.n {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "({}, {}) is not a positive root of sl({})",
                root.i, root.j, self.n
            )))
        }
    }

    /// Root vector E_α = e_{ij} (sign +) or E_{−α} = e_{ji} (sign −).
    pub fn chevalley_generator(&self, root: Root, sign: Sign) -> Result<AlgebraElement> {
        self.check_root(root)?;
        let mut m = Mat::zeros(self.n, self.n);
        match sign {
            Sign::Plus => m[(root.i - 1, root.j - 1)] = 1.0,
            Sign::Minus => m[(root.j - 1, root.i - 1)] = 1.0,
        }
        Ok(AlgebraElement::from_matrix_unchecked(m))
    }

    /// The compact generator Y_α = E_{−α} − E_α ∈ so(n).
    pub fn y_generator(&self, root: Root) -> Result<AlgebraElement> {
        self.check_root(root)?;
        let mut m = Mat::zeros(self.n, self.n);
        m[(root.j - 1, root.i - 1)] = 1.0;
        m[(root.i - 1, root.j - 1)] = -1.0;
        Ok(AlgebraElement::from_matrix_unchecked(m))
    }

    /// Orthonormal basis of the traceless diagonal subalgebra under tr(XY).
    pub fn cartan_orthonormal_basis(&self) -> Vec<AlgebraElement> {
        let n = self.n;
        (1..n)
            .map(|i| {
                let mut m = Mat::zeros(n, n);
                let scale = 1.0 / ((i * (i + 1)) as f64).sqrt();
                for a in 0..i {
                    m[(a, a)] = scale;
                }
                m[(i, i)] = -(i as f64) * scale;
                AlgebraElement::from_matrix_unchecked(m)
            })
            .collect()
    }
}

/// An element of sl(n, R): a traceless real n×n matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    m: Mat,
}

impl AlgebraElement {
    pub fn new(m: Mat) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::invalid("algebra element must be square"));
        }
        let n = m.nrows() as f64;
        let tol = 1e-12 * n * m.norm().max(1.0);
        if m.trace().abs() > tol {
            return Err(Error::invalid(format!(
                "algebra element must be traceless: tr = {:.3e}",
                m.trace()
            )));
        }
        Ok(AlgebraElement { m })
    }

    pub(crate) fn from_matrix_unchecked(m: Mat) -> Self {
        AlgebraElement { m }
    }

    pub fn matrix(&self) -> &Mat {
        &self.m
    }

    pub fn n(&self) -> usize {
        self.m.nrows()
    }
}

/// Trace-form pairing ⟨X, Y⟩ = tr(XY); ad-invariant and symmetric.
pub fn killing_pairing(x: &AlgebraElement, y: &AlgebraElement) -> Result<f64> {
    if x.n() != y.n() {
        return Err(Error::invalid(format!(
            "dimension mismatch: {} vs {}",
            x.n(),
            y.n()
        )));
    }
    Ok((x.matrix() * y.matrix()).trace())
}

/// An element of gl(n) ⊗ gl(n) stored densely in the matrix-unit basis.
///
/// Component ((a,b), (c,d)) is the coefficient of e_{ab} ⊗ e_{cd}; flat
/// indices are row-major, so the tensor is an n²×n² matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RTensor {
    n: usize,
    t: Mat,
}

impl RTensor {
    pub fn zeros(n: usize) -> Self {
        RTensor {
            n,
            t: Mat::zeros(n * n, n * n),
        }
    }

    pub fn from_components(n: usize, t: Mat) -> Result<Self> {
        if t.nrows() != n * n || t.ncols() != n * n {
            return Err(Error::invalid("component matrix must be n² × n²"));
        }
        Ok(RTensor { n, t })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Component matrix; entry (flat(a,b), flat(c,d)) multiplies e_{ab}⊗e_{cd}.
    pub fn components(&self) -> &Mat {
        &self.t
    }

    /// Add coef · a ⊗ b.
    pub fn add_product(&mut self, a: &Mat, b: &Mat, coef: f64) {
        let n = self.n;
        for (p, q, &av) in iter_entries(a) {
            if av == 0.0 {
                continue;
            }
            for (r, s, &bv) in iter_entries(b) {
                if bv == 0.0 {
                    continue;
                }
                self.t[(flat(p, q, n), flat(r, s, n))] += coef * av * bv;
            }
        }
    }

    /// Add a ∧ b = a⊗b − b⊗a.
    pub fn add_wedge(&mut self, a: &Mat, b: &Mat) {
        self.add_product(a, b, 1.0);
        self.add_product(b, a, -1.0);
    }

    /// Swap the two tensor slots.
    pub fn flip(&self) -> RTensor {
        RTensor {
            n: self.n,
            t: self.t.transpose(),
        }
    }

    /// Apply linear maps A and B (given as n²×n² matrices on gl(n)) to the
    /// two slots: Σ t_{μν} A(x_μ) ⊗ B(x_ν).
    pub fn apply(&self, a_map: &Mat, b_map: &Mat) -> RTensor {
        RTensor {
            n: self.n,
            t: a_map * &self.t * b_map.transpose(),
        }
    }

    pub fn norm(&self) -> f64 {
        self.t.norm()
    }

    /// Enforce exact skewness t ← (t − tᵀ)/2; used after conjugations so
    /// that brackets of equal functions cancel to exactly zero.
    pub fn skew_symmetrize(&mut self) {
        let tt = self.t.transpose();
        self.t = 0.5 * (&self.t - tt);
    }

    /// How far the tensor is from sl(n)⊗sl(n): the norm of its contractions
    /// with the identity in either slot.
    pub fn sl_membership_residual(&self) -> f64 {
        let n = self.n;
        let mut s = 0.0;
        for c in 0..n {
            for d in 0..n {
                let mut first = 0.0;
                let mut second = 0.0;
                for a in 0..n {
                    first += self.t[(flat(a, a, n), flat(c, d, n))];
                    second += self.t[(flat(c, d, n), flat(a, a, n))];
                }
                s += first * first + second * second;
            }
        }
        s.sqrt()
    }

    fn nonzero_entries(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        let nn = self.n * self.n;
        for mu in 0..nn {
            for nu in 0..nn {
                let v = self.t[(mu, nu)];
                if v != 0.0 {
                    out.push((mu, nu, v));
                }
            }
        }
        out
    }
}

fn iter_entries(m: &Mat) -> impl Iterator<Item = (usize, usize, &f64)> {
    let rows = m.nrows();
    m.iter()
        .enumerate()
        .map(move |(k, v)| (k % rows, k / rows, v)) // column-major storage
}

/// The standard classical r-matrix r = Σ_{α>0} E_α ∧ E_{−α} ∈ sl(n)∧sl(n).
pub fn standard_r_matrix(n: usize) -> Result<RTensor> {
    let rs = RootSystemA::new(n)?;
    let mut r = RTensor::zeros(n);
    for &root in rs.positive_roots() {
        let e_plus = rs.chevalley_generator(root, Sign::Plus)?;
        let e_minus = rs.chevalley_generator(root, Sign::Minus)?;
        r.add_wedge(e_plus.matrix(), e_minus.matrix());
    }
    Ok(r)
}

/// The non-skew quasitriangular r-matrix
/// r = ½ Σ h_i ⊗ h_i + Σ_{α>0} E_α ⊗ E_{−α},
/// whose skew part is the standard r and which satisfies the CYBE.
pub fn quasitriangular_r_matrix(n: usize) -> Result<RTensor> {
    let rs = RootSystemA::new(n)?;
    let mut r = RTensor::zeros(n);
    for h in rs.cartan_orthonormal_basis() {
        r.add_product(h.matrix(), h.matrix(), 0.5);
    }
    for &root in rs.positive_roots() {
        let e_plus = rs.chevalley_generator(root, Sign::Plus)?;
        let e_minus = rs.chevalley_generator(root, Sign::Minus)?;
        r.add_product(e_plus.matrix(), e_minus.matrix(), 1.0);
    }
    Ok(r)
}

/// Cartan involution on the algebra: σ(X) = −Xᵀ, so σ(E_α) = −E_{−α} and
/// σ(H) = −H on the diagonal.
pub fn involution_on_algebra(x: &AlgebraElement) -> AlgebraElement {
    AlgebraElement::from_matrix_unchecked(-x.matrix().transpose())
}

/// Matrix of σ on gl(n) in the matrix-unit basis: σ(e_{ab}) = −e_{ba}.
pub fn sigma_matrix(n: usize) -> Mat {
    let mut s = Mat::zeros(n * n, n * n);
    for a in 0..n {
        for b in 0..n {
            s[(flat(b, a, n), flat(a, b, n))] = -1.0;
        }
    }
    s
}

/// Identity map on gl(n) in the matrix-unit basis.
pub fn identity_map(n: usize) -> Mat {
    Mat::identity(n * n, n * n)
}

/// Residual of the classical Yang–Baxter equation
/// [r12, r13] + [r12, r23] + [r13, r23] for a tensor r, computed densely
/// in gl(n)⊗³.
pub fn cybe_residual(r: &RTensor) -> f64 {
    let n = r.n();
    let nn = n * n;
    let entries = r.nonzero_entries();
    let mut t = vec![0.0f64; nn * nn * nn];
    let idx = |mu: usize, nu: usize, rho: usize| (mu * nn + nu) * nn + rho;
    // [e_ab, e_cd] = δ_bc e_ad − δ_da e_cb
    for &(m1, n1, c1) in &entries {
        let (a, b) = (m1 / n, m1 % n);
        for &(m2, n2, c2) in &entries {
            let coef = c1 * c2;
            // [r12, r13]: commutator in slot 1 between x_{m1} and x_{m2}
            {
                let (c, d) = (m2 / n, m2 % n);
                if b == c {
                    t[idx(flat(a, d, n), n1, n2)] += coef;
                }
                if d == a {
                    t[idx(flat(c, b, n), n1, n2)] -= coef;
                }
            }
            // [r12, r23]: commutator in slot 2 between x_{n1} and x_{m2}
            {
                let (a2, b2) = (n1 / n, n1 % n);
                let (c, d) = (m2 / n, m2 % n);
                if b2 == c {
                    t[idx(m1, flat(a2, d, n), n2)] += coef;
                }
                if d == a2 {
                    t[idx(m1, flat(c, b2, n), n2)] -= coef;
                }
            }
            // [r13, r23]: commutator in slot 3 between x_{n1} and x_{n2}
            {
                let (a3, b3) = (n1 / n, n1 % n);
                let (c, d) = (n2 / n, n2 % n);
                if b3 == c {
                    t[idx(m1, m2, flat(a3, d, n))] += coef;
                }
                if d == a3 {
                    t[idx(m1, m2, flat(c, b3, n))] -= coef;
                }
            }
        }
    }
    t.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Check the involution/reflection identities of the r-matrix at rank n−1
/// and report residuals (tolerance 1e-12):
///
/// * `sigma-sigma-r` — ‖(σ⊗σ)(r) + r‖;
/// * `cre-left` — left side of the classical reflection equation, identical
///   to the previous expression;
/// * `cre-right` — right side (σ⊗1)r − (1⊗σ)(flip r) ≡ (σ⊗1)r + (1⊗σ)r;
///   both sides vanish individually;
/// * `iwasawa-form` — ‖r − Σ E_α ∧ Y_α‖;
/// * `quasitriangular-skew` — ‖(r_qt − flip r_qt) − r‖;
/// * `cybe` — CYBE residual of the quasitriangular r-matrix;
/// * `borel-membership` — components of r_qt outside b₊ ⊗ b₋.
pub fn verify_r_identities(n: usize) -> Result<Report> {
    let tol = 1e-12;
    let rs = RootSystemA::new(n)?;
    let r = standard_r_matrix(n)?;
    let sigma = sigma_matrix(n);
    let id = identity_map(n);

    let mut report = Report::new("r-identities").with_n(n);

    let sigma_both = r.apply(&sigma, &sigma);
    let res_anti = (sigma_both.components() + r.components()).norm();
    report.push("sigma-sigma-r", res_anti, tol);
    report.push("cre-left", res_anti, tol);

    let lhs_first = r.apply(&sigma, &id);
    let rhs_second = r.flip().apply(&id, &sigma);
    let res_right = (lhs_first.components() - rhs_second.components()).norm();
    report.push("cre-right", res_right, tol);

    let mut iwasawa = RTensor::zeros(n);
    for &root in rs.positive_roots() {
        let e_plus = rs.chevalley_generator(root, Sign::Plus)?;
        let y = rs.y_generator(root)?;
        iwasawa.add_wedge(e_plus.matrix(), y.matrix());
    }
    report.push(
        "iwasawa-form",
        (r.components() - iwasawa.components()).norm(),
        tol,
    );

    let r_qt = quasitriangular_r_matrix(n)?;
    let skew = r_qt.components() - r_qt.flip().components();
    report.push("quasitriangular-skew", (skew - r.components()).norm(), tol);
    report.push("cybe", cybe_residual(&r_qt), tol);

    // b₊ ⊗ b₋ membership: first slot upper-or-diagonal, second lower-or-diagonal.
    let mut outside = 0.0f64;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let v = r_qt.components()[(flat(a, b, n), flat(c, d, n))];
                    if a > b || c < d {
                        outside += v * v;
                    }
                }
            }
        }
    }
    report.push_detailed(
        "borel-membership",
        outside.sqrt(),
        tol,
        Some("Cartan part split symmetrically as half h_i x h_i; membership holds exactly".into()),
    );

    Ok(report.finish())
}
