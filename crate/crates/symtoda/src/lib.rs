//! Poisson-Lie structure on SL(n, R) and the integrable systems it carries
//! on the symmetric space SL(n, R)/SO(n).
//!
//! The crate implements, and numerically verifies, the chain from the
//! standard classical r-matrix to linearized dynamics:
//!
//! * [`rootdata`] — roots, Chevalley generators, the trace-form pairing,
//!   the standard and quasitriangular r-matrices, and their involution and
//!   Yang–Baxter identities;
//! * [`poisson`] — the bivector field r^R − r^L, brackets of smooth
//!   functions, bivector rank, and the bracket-level propositions;
//! * [`symspace`] — the involutions σ and τ, reflection monodromy
//!   T(g) = g gᵀ, Iwasawa factorization, reverse Cholesky, and the
//!   pushforward identities of T;
//! * [`dynamics`] — reflection Hamiltonians tr((g gᵀ)^k), their exact
//!   factorization flow, and an independent bracket-field integrator;
//! * [`actionangle`] — action variables (the spectrum of b bᵀ), angle
//!   variables from eigenprojector pairings, log-linear angle evolution,
//!   and the orbit/level-set dimension balance;
//! * [`bruhat`] — Weyl elements, double Bruhat cell detection by rank
//!   patterns, and leaf-dimension bookkeeping cross-checked against the
//!   measured bivector rank;
//! * [`cli`] — the `verify` / `simulate` / `leaf` / `orbit-flow` command
//!   surface with JSON/CSV reports.
//!
//! All values are immutable after construction and safe to share across
//! threads. Sampling is seeded everywhere; reports echo the seed.
//!
//! # Quick start
//!
//! Flow an upper-triangular point under the first reflection Hamiltonian
//! and watch the conserved quantities hold:
//!
//! ```
//! use nalgebra::DMatrix;
//! use symtoda::dynamics::{factorization_flow, ReflectionHamiltonian};
//! use symtoda::AnElement;
//!
//! let b0 = AnElement::new(DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]))?;
//! let h = ReflectionHamiltonian::power(1)?;
//! let b1 = factorization_flow(&h, &b0, 1.5)?;
//! assert!((h.value_an(&b1) - h.value_an(&b0)).abs() < 1e-10);
//!
//! // the angle log-ratio moved linearly: slope 4(h₁ − h₂) = 4√5
//! let theta0 = symtoda::actionangle::angle_variables(&b0)?.log_ratios[0].2;
//! let theta1 = symtoda::actionangle::angle_variables(&b1)?.log_ratios[0].2;
//! assert!(((theta1 - theta0) / 1.5 - 4.0 * 5.0f64.sqrt()).abs() < 1e-8);
//! # Ok::<(), symtoda::Error>(())
//! ```

pub mod actionangle;
pub mod bruhat;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod linalg;
pub mod poisson;
pub mod report;
pub mod rootdata;
pub mod sampling;
pub mod suites;
pub mod symspace;

pub use error::{Error, Result};
pub use poisson::{GroupElement, SmoothFunction};
pub use report::Report;
pub use symspace::{AnElement, OrthogonalElement};

#[cfg(test)]
mod thread_safety {
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn values_are_shareable_across_threads() {
        assert_send_sync::<crate::poisson::GroupElement>();
        assert_send_sync::<crate::poisson::SmoothFunction>();
        assert_send_sync::<crate::poisson::BivectorAtPoint>();
        assert_send_sync::<crate::symspace::AnElement>();
        assert_send_sync::<crate::symspace::OrthogonalElement>();
        assert_send_sync::<crate::rootdata::AlgebraElement>();
        assert_send_sync::<crate::rootdata::RTensor>();
        assert_send_sync::<crate::dynamics::ReflectionHamiltonian>();
        assert_send_sync::<crate::dynamics::Trajectory>();
        assert_send_sync::<crate::actionangle::SpectralData>();
        assert_send_sync::<crate::actionangle::AngleData>();
        assert_send_sync::<crate::bruhat::WeylElement>();
        assert_send_sync::<crate::report::Report>();
    }
}
