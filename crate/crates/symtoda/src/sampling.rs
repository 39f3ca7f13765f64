//! Seeded random generators for sample points and test functions.
//!
//! AN points are produced by exponentiating random upper-triangular
//! matrices with entries uniform in [−1, 1] and projecting out the trace;
//! the seed is echoed into every report for replay.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{expm, qr_positive, traceless, Mat};
use crate::poisson::{GroupElement, SmoothFunction};
use crate::rootdata::AlgebraElement;
use crate::symspace::{AnElement, OrthogonalElement};

/// Deterministic sampler; the same seed yields the same stream on every
/// platform.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Seed derived from a base seed and a suite name, stable across runs.
    pub fn for_suite(seed: u64, suite: &str) -> Self {
        let mut h: u64 = 0xcbf29ce484222325;
        for byte in suite.bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        Sampler::new(seed ^ h)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    /// Random point of AN: exp of a traceless random upper-triangular
    /// matrix with entries uniform in [−1, 1].
    pub fn an_element(&mut self, n: usize) -> AnElement {
        let mut x = Mat::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                x[(i, j)] = self.uniform(-1.0, 1.0);
            }
        }
        let x = traceless(&x);
        AnElement::new(expm(&x)).expect("exp of traceless upper triangular is in AN")
    }

    /// Random group element: exp of a random traceless matrix (entries
    /// uniform in [−0.7, 0.7] to keep conditioning mild).
    pub fn group_element(&mut self, n: usize) -> GroupElement {
        let mut x = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                x[(i, j)] = self.uniform(-0.7, 0.7);
            }
        }
        let x = traceless(&x);
        GroupElement::new(expm(&x)).expect("exp of traceless matrix has det 1")
    }

    /// Random special-orthogonal matrix via sign-normalized QR of a
    /// uniform square matrix.
    pub fn rotation(&mut self, n: usize) -> OrthogonalElement {
        loop {
            let m = Mat::from_fn(n, n, |_, _| self.uniform(-1.0, 1.0));
            let Ok((mut q, _)) = qr_positive(&m) else {
                continue;
            };
            if q.determinant() < 0.0 {
                // swap two columns to land in SO(n)
                for i in 0..n {
                    q.swap((i, 0), (i, 1));
                }
            }
            if let Ok(k) = OrthogonalElement::new(q) {
                return k;
            }
        }
    }

    pub fn rotation_group_element(&mut self, n: usize) -> GroupElement {
        GroupElement::new(self.rotation(n).matrix().clone()).expect("rotation has det 1")
    }

    /// Random positive diagonal with det 1 (exp of a traceless diagonal).
    pub fn positive_diagonal_det1(&mut self, n: usize) -> Vec<f64> {
        let raw: Vec<f64> = (0..n).map(|_| self.uniform(-0.8, 0.8)).collect();
        let mean = raw.iter().sum::<f64>() / n as f64;
        raw.into_iter().map(|v| (v - mean).exp()).collect()
    }

    /// Random traceless matrix with entries uniform in [−1, 1].
    pub fn algebra_element(&mut self, n: usize) -> AlgebraElement {
        let m = Mat::from_fn(n, n, |_, _| self.uniform(-1.0, 1.0));
        AlgebraElement::new(traceless(&m)).expect("traceless by construction")
    }

    /// Random polynomial test function: a linear combination of coordinate
    /// functions plus a product of two coordinates, all with analytic
    /// differentials.
    pub fn smooth_function(&mut self, n: usize) -> SmoothFunction {
        let pick = |s: &mut Self| {
            let i = s.rng.random_range(0..n);
            let j = s.rng.random_range(0..n);
            SmoothFunction::coordinate(i, j)
        };
        let mut f = pick(self).scaled(self.uniform(-1.0, 1.0));
        for _ in 0..2 {
            let term = pick(self).scaled(self.uniform(-1.0, 1.0));
            f = SmoothFunction::sum(&f, &term);
        }
        let quadratic = SmoothFunction::product(&pick(self), &pick(self));
        SmoothFunction::sum(&f, &quadratic.scaled(self.uniform(-0.5, 0.5)))
    }

    /// A generic AN point: resampled until the spectrum of b bᵀ has
    /// relative gaps above `1e-4` and every angle coordinate is above
    /// `1e-8` (keeps a comfortable margin inside the genericity window).
    pub fn generic_an(&mut self, n: usize) -> AnElement {
        loop {
            let b = self.an_element(n);
            let m = b.monodromy();
            let eig = m.symmetric_eigen();
            let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
            vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
            let top = vals[0];
            let gaps_ok = vals.windows(2).all(|w| (w[0] - w[1]) / top > 1e-4);
            if !gaps_ok {
                continue;
            }
            if let Ok(angles) = crate::actionangle::angle_variables(&b) {
                if angles.r.iter().all(|&r| r > 1e-8) {
                    return b;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampler_is_deterministic() {
        let a = Sampler::new(7).an_element(3);
        let b = Sampler::new(7).an_element(3);
        assert_eq!(a.matrix(), b.matrix());
    }

    #[test]
    fn sampled_elements_satisfy_their_invariants() {
        let mut s = Sampler::new(1);
        for n in [2usize, 4] {
            let b = s.an_element(n);
            assert!((b.matrix().determinant() - 1.0).abs() < 1e-9);
            let g = s.group_element(n);
            assert!((g.matrix().determinant() - 1.0).abs() < 1e-9);
            let k = s.rotation(n);
            assert!((k.matrix().transpose() * k.matrix() - Mat::identity(n, n)).norm() < 1e-12);
            assert!(k.matrix().determinant() > 0.0);
            let d = s.positive_diagonal_det1(n);
            let det: f64 = d.iter().product();
            assert!((det - 1.0).abs() < 1e-12);
        }
    }
}
