//! Exact arithmetic on rational functions over the unit circle: Laurent
//! coefficients, the involutions `tilde`, boundary conjugation and the flip
//! `J`, partial fractions, Fourier coefficients and the Hardy projections.

mod decomposition;
mod laurent;
mod rational;
pub mod roots;

pub use decomposition::{
    fourier_coefficients, partial_fractions, project_p, project_q, PoleDecomposition, PoleTerm,
};
pub use laurent::LaurentPolynomial;
pub use rational::RationalSymbol;
