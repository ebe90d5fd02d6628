//! Closed-form solutions of non-homogeneous Toeplitz-plus-Hankel equations
//! `(T(a) + H(b)) phi = f` on the Hardy space of the unit circle, for
//! rational generating symbols satisfying the matching condition
//! `a(t) a(1/t) = b(t) b(1/t)`.
//!
//! The pipeline:
//!
//! 1. [`symbol`] — exact rational-symbol calculus: Laurent coefficients,
//!    involutions, partial fractions and the Riesz projections P and Q.
//! 2. [`factorization`] — scalar Wiener-Hopf factorization
//!    `g = g_minus * t^n * g_plus`, winding indices and the factorization
//!    signature of matching functions.
//! 3. [`operators`] — Toeplitz, Hankel and one-sided inverse operators
//!    applied to rational Hardy elements, plus a finite-section matrix used
//!    as an independent verification oracle.
//! 4. [`solver`] — case dispatch on the subordinated-pair indices
//!    `(kappa_c, kappa_d)`, producing a particular solution, a kernel basis
//!    and a solvability report with explicit condition values.
//!
//! All types are immutable values and all operations are pure functions, so
//! everything here is safe to use from multiple threads.

pub mod error;
pub mod factorization;
mod linalg;
pub mod operators;
pub mod solver;
pub mod symbol;
pub mod tolerance;

pub use error::{Error, Result};
pub use factorization::{
    factorize, matching_factorize, winding_index, MatchingFactorization, WienerHopfFactorization,
};
pub use operators::{
    finite_section, hankel_apply, inner_product, th_apply, toeplitz_apply,
    toeplitz_left_inverse_apply, toeplitz_right_inverse_apply, w_apply, FiniteSectionMatrix,
    HardyElement,
};
pub use solver::{
    convert_matrix_to_th, convert_th_to_matrix, kernel_basis_functions, solve, solve_case_nn,
    solve_case_np, solve_case_pn, solve_case_pp, subordinated_pair, CaseTag, Condition,
    KernelBasis, MatchingPair, Solvability, SolvabilityReport, SolutionSet, SubordinatedPair,
};
pub use symbol::{
    fourier_coefficients, partial_fractions, project_p, project_q, LaurentPolynomial,
    PoleDecomposition, RationalSymbol,
};
pub use tolerance::Tolerances;
