//! Toeplitz, Hankel, one-sided inverse and auxiliary operators on rational
//! Hardy-space elements, plus the finite-section matrix oracle.
//!
//! Conventions: `T(a) = PaP`, `H(b) = PbQJ` with `(Jf)(t) = t^{-1} f(1/t)`.
//! The Hankel matrix entries are therefore `b_{j+k+1}`; mixing in the
//! `b_{j+k}` convention found elsewhere would silently change every formula,
//! so it is not offered.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::factorization::WienerHopfFactorization;
use crate::linalg;
use crate::symbol::{fourier_coefficients, project_p, project_q, RationalSymbol};
use crate::tolerance::Tolerances;

/// A rational element of the Hardy space: no poles in the closed unit disk
/// and no negative Fourier support.
#[derive(Debug, Clone)]
pub struct HardyElement {
    value: RationalSymbol,
}

impl HardyElement {
    /// Validates that `value` lies in the Hardy space.
    pub fn new(value: RationalSymbol, tol: &Tolerances) -> Result<Self> {
        let reduced = value.reduce(tol)?;
        if reduced.is_zero() {
            return Ok(HardyElement { value: reduced });
        }
        if reduced.offset() < 0 {
            return Err(Error::NotHardy {
                detail: format!(
                    "nonzero Fourier coefficient at negative exponent {}",
                    reduced.offset()
                ),
            });
        }
        let den_roots = crate::symbol::roots::polynomial_roots(&reduced.den().poly_coeffs())?;
        for z in den_roots {
            if z.norm() <= 1.0 + tol.circle {
                return Err(Error::NotHardy {
                    detail: format!("pole at {z} lies in the closed unit disk"),
                });
            }
        }
        Ok(HardyElement { value: reduced })
    }

    /// Wraps a symbol that is Hardy by construction (e.g. the output of a
    /// projection). Debug builds still check the support.
    pub(crate) fn from_projection(value: RationalSymbol) -> Self {
        debug_assert!(value.is_zero() || value.offset() >= 0);
        HardyElement { value }
    }

    pub fn zero() -> Self {
        HardyElement {
            value: RationalSymbol::zero(),
        }
    }

    pub fn value(&self) -> &RationalSymbol {
        &self.value
    }

    pub fn into_value(self) -> RationalSymbol {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        HardyElement {
            value: self.value.scale(c),
        }
    }
}

impl std::ops::Add for &HardyElement {
    type Output = HardyElement;
    fn add(self, rhs: &HardyElement) -> HardyElement {
        HardyElement {
            value: &self.value + &rhs.value,
        }
    }
}

impl std::ops::Sub for &HardyElement {
    type Output = HardyElement;
    fn sub(self, rhs: &HardyElement) -> HardyElement {
        HardyElement {
            value: &self.value - &rhs.value,
        }
    }
}

impl Serialize for HardyElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.value.serialize(serializer)
    }
}

/// `T(a) f = P(a f)`.
pub fn toeplitz_apply(
    a: &RationalSymbol,
    f: &HardyElement,
    tol: &Tolerances,
) -> Result<HardyElement> {
    let product = a * f.value();
    Ok(HardyElement::from_projection(project_p(&product, tol)?))
}

/// `H(b) f = P(b Q(J f))`.
pub fn hankel_apply(
    b: &RationalSymbol,
    f: &HardyElement,
    tol: &Tolerances,
) -> Result<HardyElement> {
    let flipped = f.value().flip_j();
    let anti = project_q(&flipped, tol)?;
    let product = b * &anti;
    Ok(HardyElement::from_projection(project_p(&product, tol)?))
}

/// `(T(a) + H(b)) f`.
pub fn th_apply(
    a: &RationalSymbol,
    b: &RationalSymbol,
    f: &HardyElement,
    tol: &Tolerances,
) -> Result<HardyElement> {
    let t = toeplitz_apply(a, f, tol)?;
    let h = hankel_apply(b, f, tol)?;
    Ok(&t + &h)
}

/// The right inverse `T_r^{-1}(a) = T(a_+^{-1}) T(a_-^{-1}) T(t^{-n})` for a
/// factorization with index `n <= 0`.
pub fn toeplitz_right_inverse_apply(
    fact: &WienerHopfFactorization,
    f: &HardyElement,
    tol: &Tolerances,
) -> Result<HardyElement> {
    if fact.index() > 0 {
        return Err(Error::IndexPositive {
            index: fact.index(),
        });
    }
    let shift = RationalSymbol::monomial(-fact.index(), Complex64::new(1.0, 0.0));
    let g1 = toeplitz_apply(&shift, f, tol)?;
    let g2 = toeplitz_apply(&fact.minus().inverse()?, &g1, tol)?;
    toeplitz_apply(&fact.plus().inverse()?, &g2, tol)
}

/// The left inverse `T_l^{-1}(a) = T(t^{-n}) T(a_+^{-1}) T(a_-^{-1})` for a
/// factorization with index `n >= 0`.
pub fn toeplitz_left_inverse_apply(
    fact: &WienerHopfFactorization,
    f: &HardyElement,
    tol: &Tolerances,
) -> Result<HardyElement> {
    if fact.index() < 0 {
        return Err(Error::IndexNegative {
            index: fact.index(),
        });
    }
    let g1 = toeplitz_apply(&fact.minus().inverse()?, f, tol)?;
    let g2 = toeplitz_apply(&fact.plus().inverse()?, &g1, tol)?;
    let shift = RationalSymbol::monomial(-fact.index(), Complex64::new(1.0, 0.0));
    toeplitz_apply(&shift, &g2, tol)
}

/// The operator `W phi = T_r^{-1}(c) T(a~^{-1}) phi
/// - J Q c P T_r^{-1}(c) T(a~^{-1}) phi + J Q a~^{-1} phi`, defined when
/// `T(c)` is right invertible.
pub fn w_apply(
    c_fact: &WienerHopfFactorization,
    a_tilde_inv: &RationalSymbol,
    phi: &HardyElement,
    tol: &Tolerances,
) -> Result<HardyElement> {
    if c_fact.index() > 0 {
        return Err(Error::IndexPositive {
            index: c_fact.index(),
        });
    }
    let v = toeplitz_apply(a_tilde_inv, phi, tol)?;
    let u = toeplitz_right_inverse_apply(c_fact, &v, tol)?;
    let c = c_fact.symbol();
    let term2 = project_q(&(&c * u.value()), tol)?.flip_j();
    let term3 = project_q(&(a_tilde_inv * phi.value()), tol)?.flip_j();
    let value = &(u.value() - &term2) + &term3;
    Ok(HardyElement::from_projection(value))
}

/// The order-N finite section of `T(a) + H(b)` with entries
/// `a_{j-k} + b_{j+k+1}`, used as an independent verification oracle.
#[derive(Debug, Clone)]
pub struct FiniteSectionMatrix {
    order: usize,
    entries: DMatrix<Complex64>,
}

impl FiniteSectionMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entry(&self, j: usize, k: usize) -> Complex64 {
        self.entries[(j, k)]
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// Minimum-norm least-squares solution of `M x = rhs`; returns the
    /// solution and its residual norm.
    pub fn least_squares(&self, rhs: &[Complex64], rank_tol: f64) -> (Vec<Complex64>, f64) {
        let rhs = DVector::from_column_slice(rhs);
        let (x, residual, _) = linalg::lstsq(&self.entries, &rhs, rank_tol);
        (x.iter().copied().collect(), residual)
    }

    /// Numerical null-space dimension of the full section.
    pub fn nullity(&self, sv_tol: f64) -> usize {
        linalg::nullity(&self.entries, sv_tol)
    }

    /// Null-space dimension restricted to the leading `max_cols` columns,
    /// which discards truncation artifacts concentrated at high degrees.
    pub fn nullity_restricted(&self, max_cols: usize, sv_tol: f64) -> usize {
        let cols = max_cols.min(self.order);
        let sub = self.entries.columns(0, cols).clone_owned();
        linalg::nullity(&sub, sv_tol)
    }
}

impl Serialize for FiniteSectionMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = (0..self.order)
            .map(|j| {
                (0..self.order)
                    .map(|k| {
                        let e = self.entries[(j, k)];
                        [e.re, e.im]
                    })
                    .collect()
            })
            .collect();
        let mut s = serializer.serialize_struct("FiniteSectionMatrix", 2)?;
        s.serialize_field("order", &self.order)?;
        s.serialize_field("entries", &rows)?;
        s.end()
    }
}

/// Assembles the order-N finite section of `T(a) + H(b)`.
pub fn finite_section(
    a: &RationalSymbol,
    b: &RationalSymbol,
    order: usize,
    tol: &Tolerances,
) -> Result<FiniteSectionMatrix> {
    assert!(order >= 1, "finite section order must be positive");
    let n = order as i64;
    let a_coeffs = fourier_coefficients(a, -(n - 1), n - 1, tol)?;
    let b_coeffs = fourier_coefficients(b, 1, 2 * n - 1, tol)?;
    let entries = DMatrix::from_fn(order, order, |j, k| {
        let toeplitz = a_coeffs[(j as i64 - k as i64 + n - 1) as usize];
        let hankel = b_coeffs[j + k];
        toeplitz + hankel
    });
    Ok(FiniteSectionMatrix { order, entries })
}

/// The pairing `<f, g> = int_T f(t) conj(g(t)) |dt| = 2 pi sum_k f_k conj(g_k)`,
/// evaluated in closed form as `2 pi` times the zeroth Fourier coefficient of
/// `f * circle_conjugate(g)`.
pub fn inner_product(
    f: &RationalSymbol,
    g: &RationalSymbol,
    tol: &Tolerances,
) -> Result<Complex64> {
    let product = f * &g.circle_conjugate();
    let coeff = fourier_coefficients(&product, 0, 0, tol)?[0];
    Ok(2.0 * std::f64::consts::PI * coeff)
}

/// The l2 norm of the Fourier coefficient sequence, including the geometric
/// tails: `sqrt(<g, g> / (2 pi))`.
pub fn coefficient_l2_norm(g: &RationalSymbol, tol: &Tolerances) -> Result<f64> {
    let ip = inner_product(g, g, tol)?;
    Ok((ip.re.max(0.0) / (2.0 * std::f64::consts::PI)).sqrt())
}
