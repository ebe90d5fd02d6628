//! Conversions between solutions of the Toeplitz-plus-Hankel equation and
//! solutions of the associated 2x2 triangular matrix Toeplitz system.

use crate::error::Result;
use crate::operators::HardyElement;
use crate::symbol::{project_p, project_q};
use crate::tolerance::Tolerances;

use super::{MatchingPair, SubordinatedPair};

/// Maps a solution `(Phi, Psi)` of the matrix system with right-hand side
/// `(2f, 0)^T` to a solution of `(T(a) + H(b)) phi = f`:
///
/// `phi_0 = (Phi - J Q (c Phi) + J Q (a~^{-1} Psi)) / 2`.
pub fn convert_matrix_to_th(
    phi_big: &HardyElement,
    psi_big: &HardyElement,
    sp: &SubordinatedPair,
    tol: &Tolerances,
) -> Result<HardyElement> {
    let c_term = project_q(&(sp.c() * phi_big.value()), tol)?.flip_j();
    let a_term = project_q(&(sp.a_tilde_inv() * psi_big.value()), tol)?.flip_j();
    let value = (&(phi_big.value() - &c_term) + &a_term).scale(0.5.into());
    Ok(HardyElement::from_projection(value))
}

/// Maps solutions `phi` of `(T(a) + H(b)) phi = g` and `psi` of
/// `(T(a) - H(b)) psi = h` to a solution of the matrix system:
///
/// `X_0 = (phi + psi, P(b~ (phi + psi) + a~ J(phi - psi)))^T`.
pub fn convert_th_to_matrix(
    phi: &HardyElement,
    psi: &HardyElement,
    pair: &MatchingPair,
    tol: &Tolerances,
) -> Result<(HardyElement, HardyElement)> {
    let sum = phi + psi;
    let diff = phi.value() - psi.value();
    let b_tilde = pair.b().tilde();
    let a_tilde = pair.a().tilde();
    let second = &(&b_tilde * sum.value()) + &(&a_tilde * &diff.flip_j());
    let second = HardyElement::from_projection(project_p(&second, tol)?);
    Ok((sum, second))
}
