//! Weyl group bookkeeping and double Bruhat cell detection for the leaf
//! classification of AN.
//!
//! A point b ∈ AN lies in exactly one cell B₊ ∩ B₋uB₋. The Weyl element u
//! is read off the northeast corner ranks r(i, j) = rank(b[1..i, j..n]),
//! which are the invariants of left/right multiplication by lower
//! triangular matrices; u has a 1 at (i, j) iff
//! r(i,j) − r(i−1,j) − r(i,j+1) + r(i−1,j+1) = 1. Rank-pattern detection
//! is the numerically robust equivalent of generalized-minor vanishing
//! loci.
//!
//! Leaf dimensions: the symplectic leaves of the cell of u have dimension
//! l(u) + rank(u − id) on the traceless Cartan, i.e.
//! l(u) + (n − 1) − dim ker(u − id). Note that the alternative expression
//! l(u) + corank(u − id) has constant parity n − 1 on the traceless
//! Cartan (the permutation sign identity (−1)^{l(u)} = (−1)^{n − #cycles}
//! forces l(u) + n − #cycles even), so for even n it is odd and cannot be
//! the dimension of a symplectic leaf; the rank form is always even and
//! reproduces 2(n − 1) on Coxeter cells, matching the measured bivector
//! rank and the relativistic Toda count.

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::poisson::{bivector_rank, Chart, GroupElement};
use crate::report::Report;
use crate::symspace::AnElement;

/// A Weyl group element of type A: a permutation of {1, …, n}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    /// 0-based images: position i maps to images[i].
    images: Vec<usize>,
}

impl WeylElement {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(Error::invalid("not a permutation"));
            }
            seen[v] = true;
        }
        Ok(WeylElement { images })
    }

    pub fn identity(n: usize) -> Self {
        WeylElement {
            images: (0..n).collect(),
        }
    }

    /// The n-cycle 1 → 2 → … → n → 1, a Coxeter element.
    pub fn coxeter(n: usize) -> Self {
        WeylElement {
            images: (0..n).map(|i| (i + 1) % n).collect(),
        }
    }

    /// The longest element (order reversal).
    pub fn longest(n: usize) -> Self {
        WeylElement {
            images: (0..n).rev().collect(),
        }
    }

    /// The simple transposition s_k swapping k and k+1 (1-based k < n).
    pub fn simple_transposition(n: usize, k: usize) -> Result<Self> {
        if k < 1 || k >= n {
            return Err(Error::invalid("simple reflection index out of range"));
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(k - 1, k);
        Ok(WeylElement { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// One-line notation with 1-based images, e.g. `[2 3 1]`.
    pub fn one_line(&self) -> String {
        let parts: Vec<String> = self.images.iter().map(|v| (v + 1).to_string()).collect();
        format!("[{}]", parts.join(" "))
    }

    /// The permutation matrix with a 1 at (i, u(i)).
    pub fn matrix(&self) -> Mat {
        let n = self.n();
        Mat::from_fn(n, n, |i, j| if self.images[i] == j { 1.0 } else { 0.0 })
    }

    pub fn cycle_count(&self) -> usize {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.images[cur];
            }
        }
        cycles
    }
}

/// Coxeter length: the inversion count of the permutation.
pub fn length(u: &WeylElement) -> usize {
    let im = u.images();
    let mut count = 0;
    for i in 0..im.len() {
        for j in (i + 1)..im.len() {
            if im[i] > im[j] {
                count += 1;
            }
        }
    }
    count
}

/// dim ker(u − id) on the traceless Cartan: (#cycles) − 1.
pub fn torus_fixed_dimension(u: &WeylElement) -> usize {
    u.cycle_count() - 1
}

/// Predicted symplectic-leaf dimension l(u) + rank(u − id)|_h
/// = l(u) + (n − 1) − torus_fixed_dimension(u). Always even; an odd value
/// means the formula convention is broken, which is an internal error.
pub fn predicted_leaf_dimension(u: &WeylElement) -> Result<usize> {
    let dim = length(u) + (u.n() - 1) - torus_fixed_dimension(u);
    if !dim.is_multiple_of(2) {
        return Err(Error::numerical(format!(
            "predicted leaf dimension {dim} is odd for u = {}",
            u.one_line()
        )));
    }
    Ok(dim)
}

/// Numerical rank of the northeast block g[0..i, j..n], with singular
/// values thresholded at 1e-8 of the whole-matrix scale and an ambiguity
/// window of a factor 10 on either side.
fn ne_block_rank(g: &Mat, i: usize, j: usize, scale: f64) -> Result<usize> {
    let n = g.nrows();
    if i == 0 || j >= n {
        return Ok(0);
    }
    let block = g.view((0, j), (i, n - j)).clone_owned();
    let svd = block.svd(false, false);
    let thr = 1e-8 * scale;
    let mut rank = 0;
    for &s in svd.singular_values.iter() {
        if s > thr {
            rank += 1;
        }
        if s > thr / 10.0 && s < thr * 10.0 {
            return Err(Error::numerical(format!(
                "rank ambiguity in corner block ({i},{j}): singular value {s:.3e} near threshold {thr:.3e}"
            )));
        }
    }
    Ok(rank)
}

/// The Weyl element of the double coset B₋ g B₋ containing g, from the
/// northeast corner rank pattern. Works for any invertible matrix; the
/// wrapper `bruhat_cell` restricts to AN.
pub fn cell_of_matrix(g: &Mat) -> Result<WeylElement> {
    let n = g.nrows();
    if n != g.ncols() {
        return Err(Error::invalid("cell detection needs a square matrix"));
    }
    let scale = g.norm().max(1.0);
    // r[i][j] = rank of rows 1..i, cols j..n (1-based i, j), padded
    let mut r = vec![vec![0usize; n + 2]; n + 1];
    for (i, row) in r.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate().skip(1) {
            *slot = ne_block_rank(g, i, j - 1, scale)?;
        }
    }
    let mut images = vec![usize::MAX; n];
    for i in 1..=n {
        for j in 1..=n {
            let delta = r[i][j] as isize - r[i - 1][j] as isize - r[i][j + 1] as isize
                + r[i - 1][j + 1] as isize;
            match delta {
                0 => {}
                1 => {
                    if images[i - 1] != usize::MAX {
                        return Err(Error::numerical(
                            "rank pattern is not a permutation (duplicate row)",
                        ));
                    }
                    images[i - 1] = j - 1;
                }
                _ => {
                    return Err(Error::numerical(format!(
                        "rank pattern increment {delta} at ({i},{j}) is not 0/1"
                    )))
                }
            }
        }
    }
    if images.contains(&usize::MAX) {
        return Err(Error::numerical("rank pattern is not a permutation"));
    }
    WeylElement::new(images)
}

/// The unique u with b ∈ B₋ u B₋ for b ∈ AN.
pub fn bruhat_cell(b: &AnElement) -> Result<WeylElement> {
    cell_of_matrix(b.matrix())
}

/// Measured bivector rank in the AN chart versus the predicted leaf
/// dimension of the detected cell.
pub fn verify_leaf_dimension(b: &AnElement) -> Result<Report> {
    let u = bruhat_cell(b)?;
    let predicted = predicted_leaf_dimension(&u)?;
    let measured = bivector_rank(&GroupElement::from(b), Chart::An)?;
    let mut report = Report::new("leaf-dimension").with_n(b.n());
    report.push_detailed(
        "rank-matches-prediction",
        (measured as f64 - predicted as f64).abs(),
        0.5,
        Some(format!(
            "u = {}, l(u) = {}, torus dim = {}, predicted = {predicted}, measured = {measured}",
            u.one_line(),
            length(&u),
            torus_fixed_dimension(&u)
        )),
    );
    report.push("rank-is-even", if measured.is_multiple_of(2) { 0.0 } else { 1.0 }, 0.5);
    Ok(report.finish())
}

/// All permutations of {0, …, n−1} (n! of them; used exhaustively for
/// n ≤ 5).
pub fn all_weyl_elements(n: usize) -> Vec<WeylElement> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    heap_permutations(&mut items, n, &mut out);
    out
}

fn heap_permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<WeylElement>) {
    if k == 1 {
        out.push(WeylElement {
            images: items.clone(),
        });
        return;
    }
    for i in 0..k {
        heap_permutations(items, k - 1, out);
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

/// Cells with a constructive AN sampler, used by the verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellKind {
    Identity,
    /// Simple transposition s_k (1-based k).
    Simple(usize),
    Coxeter,
    Longest,
}

impl CellKind {
    pub fn weyl_element(&self, n: usize) -> Result<WeylElement> {
        Ok(match self {
            CellKind::Identity => WeylElement::identity(n),
            CellKind::Simple(k) => WeylElement::simple_transposition(n, *k)?,
            CellKind::Coxeter => WeylElement::coxeter(n),
            CellKind::Longest => WeylElement::longest(n),
        })
    }

    /// A random AN point of the cell: positive diagonals plus the
    /// superdiagonal support pattern that pins the rank pattern (dense for
    /// the longest element, bidiagonal for Coxeter, a single entry for a
    /// simple reflection). The detected cell is re-checked by the caller.
    pub fn sample(&self, n: usize, sampler: &mut crate::sampling::Sampler) -> Result<AnElement> {
        let diag = sampler.positive_diagonal_det1(n);
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = diag[i];
        }
        let nonzero = |s: &mut crate::sampling::Sampler| {
            let v = s.uniform(0.3, 1.5);
            if s.uniform(-1.0, 1.0) < 0.0 {
                -v
            } else {
                v
            }
        };
        match self {
            CellKind::Identity => {}
            CellKind::Simple(k) => {
                m[(k - 1, *k)] = nonzero(sampler);
            }
            CellKind::Coxeter => {
                for i in 0..n - 1 {
                    m[(i, i + 1)] = nonzero(sampler);
                }
            }
            CellKind::Longest => {
                for i in 0..n {
                    for j in (i + 1)..n {
                        m[(i, j)] = nonzero(sampler);
                    }
                }
            }
        }
        AnElement::new(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::Sampler;

    #[test]
    fn lengths_and_cycles() {
        assert_eq!(length(&WeylElement::identity(3)), 0);
        assert_eq!(length(&WeylElement::simple_transposition(2, 1).unwrap()), 1);
        // 4-cycle (1 2 3 4) has one-line [2 3 4 1] and 3 inversions
        let c = WeylElement::coxeter(4);
        assert_eq!(c.one_line(), "[2 3 4 1]");
        assert_eq!(length(&c), 3);

        assert_eq!(torus_fixed_dimension(&WeylElement::identity(3)), 2);
        assert_eq!(torus_fixed_dimension(&WeylElement::coxeter(5)), 0);
        // (1 2)(3 4) has two cycles
        let u = WeylElement::new(vec![1, 0, 3, 2]).unwrap();
        assert_eq!(torus_fixed_dimension(&u), 1);
    }

    #[test]
    fn predicted_dimensions() {
        assert_eq!(
            predicted_leaf_dimension(&WeylElement::identity(3)).unwrap(),
            0
        );
        assert_eq!(
            predicted_leaf_dimension(&WeylElement::simple_transposition(2, 1).unwrap()).unwrap(),
            2
        );
        assert_eq!(
            predicted_leaf_dimension(&WeylElement::coxeter(4)).unwrap(),
            6
        );
        for n in 2..=5 {
            assert_eq!(
                predicted_leaf_dimension(&WeylElement::coxeter(n)).unwrap(),
                2 * (n - 1),
                "Coxeter cell carries the 2(n-1)-dimensional system"
            );
        }
    }

    #[test]
    fn predicted_dimension_is_even_exhaustively() {
        for n in 2..=5 {
            for u in all_weyl_elements(n) {
                let dim = predicted_leaf_dimension(&u).unwrap();
                assert_eq!(dim % 2, 0, "u = {}", u.one_line());
            }
        }
        assert_eq!(all_weyl_elements(5).len(), 120);
    }

    #[test]
    fn cell_of_diagonal_is_identity() {
        let b = AnElement::new(Mat::from_row_slice(3, 3, &[2.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.5]))
            .unwrap();
        assert_eq!(bruhat_cell(&b).unwrap(), WeylElement::identity(3));
    }

    #[test]
    fn cell_of_unipotent_sl2_is_the_transposition() {
        let b = AnElement::new(Mat::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0])).unwrap();
        assert_eq!(
            bruhat_cell(&b).unwrap(),
            WeylElement::simple_transposition(2, 1).unwrap()
        );
        // and the cell degenerates to the identity when the entry vanishes
        let d = AnElement::new(Mat::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 0.5])).unwrap();
        assert_eq!(bruhat_cell(&d).unwrap(), WeylElement::identity(2));
    }

    #[test]
    fn round_trip_recovers_u_from_lower_times_u_times_lower() {
        let mut sampler = Sampler::new(7);
        let mut random_lower = |n: usize| {
            let mut m = Mat::identity(n, n);
            for i in 0..n {
                for j in 0..i {
                    m[(i, j)] = sampler.uniform(-1.0, 1.0);
                }
                m[(i, i)] = sampler.uniform(0.5, 1.5);
            }
            m
        };
        let mut count = 0;
        for n in [3usize, 4] {
            let candidates = all_weyl_elements(n);
            for _ in 0..50 {
                let u = &candidates[count % candidates.len()];
                count += 1;
                let g = random_lower(n) * u.matrix() * random_lower(n);
                let detected = cell_of_matrix(&g).unwrap();
                assert_eq!(&detected, u, "n = {n}, u = {}", u.one_line());
            }
        }
    }

    #[test]
    fn cell_samples_land_in_their_cells() {
        let mut sampler = Sampler::new(11);
        for n in [2usize, 3, 4, 5] {
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
            for kind in kinds {
                let expected = kind.weyl_element(n).unwrap();
                for _ in 0..5 {
                    let b = kind.sample(n, &mut sampler).unwrap();
                    let got = bruhat_cell(&b).unwrap();
                    assert_eq!(got, expected, "n = {n}, kind = {kind:?}");
                }
            }
        }
    }

    #[test]
    fn cell_is_stable_under_small_perturbations() {
        let mut sampler = Sampler::new(13);
        let b = CellKind::Coxeter.sample(4, &mut sampler).unwrap();
        let u = bruhat_cell(&b).unwrap();
        for _ in 0..5 {
            let mut m = b.matrix().clone();
            for i in 0..4 {
                for j in i..4 {
                    if m[(i, j)] != 0.0 {
                        m[(i, j)] *= 1.0 + sampler.uniform(-1e-4, 1e-4);
                    }
                }
            }
            let det: f64 = (0..4).map(|i| m[(i, i)]).product();
            let m = m * det.powf(-0.25);
            let perturbed = AnElement::new(m).unwrap();
            assert_eq!(bruhat_cell(&perturbed).unwrap(), u);
        }
    }

    #[test]
    fn leaf_dimension_matches_measured_rank() {
        let mut sampler = Sampler::new(17);
        // the spec'd worked examples
        let d2 = AnElement::new(Mat::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 0.5])).unwrap();
        assert!(verify_leaf_dimension(&d2).unwrap().pass());

        let coxeter3 = CellKind::Coxeter.sample(3, &mut sampler).unwrap();
        let report = verify_leaf_dimension(&coxeter3).unwrap();
        assert!(report.pass(), "{report:?}");
        assert_eq!(
            predicted_leaf_dimension(&bruhat_cell(&coxeter3).unwrap()).unwrap(),
            4
        );

        let s1_cell4 = CellKind::Simple(1).sample(4, &mut sampler).unwrap();
        let report = verify_leaf_dimension(&s1_cell4).unwrap();
        assert!(report.pass(), "{report:?}");
        assert_eq!(
            predicted_leaf_dimension(&bruhat_cell(&s1_cell4).unwrap()).unwrap(),
            2
        );
    }
}
