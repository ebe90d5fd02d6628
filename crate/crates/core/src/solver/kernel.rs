//! Kernel bases of `T(a) + H(b)` for matching pairs.
//!
//! For a matching function s with `kappa = ind T(s) >= 1` and signature
//! `sigma = sigma(s)`, the generating functions are
//!
//! * even `kappa = 2m`:  `u_k = t^{m-k-1} +- sigma t^{m+k}`, `k = 0..m-1`,
//! * odd `kappa = 2m+1`: `u_k = t^{m+k} +- sigma t^{m-k}`, `k = 0..m`.
//!
//! In the odd case with `k = 0` the two monomials coincide and the `+-`
//! combination can cancel to zero; such generators are dropped from the
//! returned list but still counted in `raw_arity`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg;
use crate::operators::{w_apply, HardyElement};
use crate::symbol::{fourier_coefficients, LaurentPolynomial, RationalSymbol};
use crate::tolerance::Tolerances;

use super::SubordinatedPair;

/// Which sign to take in the `+-` of the generating functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignVariant {
    Plus,
    Minus,
}

/// Generating functions for one side of the kernel.
#[derive(Debug, Clone)]
pub struct KernelFunctions {
    /// The nonzero generators, in order of increasing k.
    pub functions: Vec<LaurentPolynomial>,
    /// Number of formal generators before dropping identically-zero ones.
    pub raw_arity: usize,
}

/// The polynomials `u_k^{(kappa, +-)}` for `kappa >= 1`.
pub fn kernel_basis_functions(
    kappa: i64,
    sigma: i32,
    variant: SignVariant,
) -> Result<KernelFunctions> {
    if kappa < 1 {
        return Err(Error::KappaNonpositive { kappa });
    }
    let signed_sigma = match variant {
        SignVariant::Plus => f64::from(sigma),
        SignVariant::Minus => -f64::from(sigma),
    };
    let mut functions = Vec::new();
    let raw_arity;
    if kappa % 2 == 0 {
        let m = kappa / 2;
        raw_arity = m as usize;
        for k in 0..m {
            functions.push(LaurentPolynomial::from_terms([
                (m - k - 1, Complex64::new(1.0, 0.0)),
                (m + k, Complex64::new(signed_sigma, 0.0)),
            ]));
        }
    } else {
        let m = (kappa - 1) / 2;
        raw_arity = (m + 1) as usize;
        for k in 0..=m {
            functions.push(LaurentPolynomial::from_terms([
                (m + k, Complex64::new(1.0, 0.0)),
                (m - k, Complex64::new(signed_sigma, 0.0)),
            ]));
        }
    }
    functions.retain(|u| !u.is_zero());
    Ok(KernelFunctions {
        functions,
        raw_arity,
    })
}

/// A basis of the kernel of `T(a) + H(b)` together with the number of free
/// parameters of the affine solution family.
#[derive(Debug, Clone)]
pub struct KernelBasis {
    elements: Vec<HardyElement>,
}

impl KernelBasis {
    pub fn new(elements: Vec<HardyElement>) -> Self {
        KernelBasis { elements }
    }

    pub fn empty() -> Self {
        KernelBasis {
            elements: Vec::new(),
        }
    }

    pub fn elements(&self) -> &[HardyElement] {
        &self.elements
    }

    /// Number of independent generators (= free complex parameters).
    pub fn arity(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Numerical rank of the coefficient vectors, for independence checks.
    pub fn numeric_rank(&self, tol: &Tolerances) -> Result<usize> {
        if self.elements.is_empty() {
            return Ok(0);
        }
        let degree = 4 * self.elements.len() as i64 + 8;
        let mut rows = Vec::new();
        for e in &self.elements {
            rows.push(fourier_coefficients(e.value(), 0, degree, tol)?);
        }
        let m = DMatrix::from_fn(rows.len(), (degree + 1) as usize, |i, j| rows[i][j]);
        Ok(linalg::rank(&m, tol.rank))
    }
}

impl Serialize for KernelBasis {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("KernelBasis", 2)?;
        s.serialize_field("elements", &self.elements)?;
        s.serialize_field("arity", &self.arity())?;
        s.end()
    }
}

/// Kernel of `T(a) + H(b)` from the generating functions: the c-side
/// contributes `c_+^{-1} u_k^{(kappa_c, -)}` and the d-side
/// `W(d_+^{-1} u_k^{(kappa_d, +)})`, each gated on a positive index.
///
/// Valid whenever the d-side gate implies `T(c)` is right invertible, which
/// holds in the PP, NN and PN cases.
pub fn theorem_kernel(sp: &SubordinatedPair, tol: &Tolerances) -> Result<KernelBasis> {
    let mut elements = Vec::new();
    if sp.kappa_c() > 0 {
        let kf = kernel_basis_functions(sp.kappa_c(), sp.c_fact().signature(), SignVariant::Minus)?;
        let c_plus_inv = sp.c_fact().base().plus().inverse()?;
        for u in kf.functions {
            let value = &c_plus_inv * &RationalSymbol::from_laurent(u);
            elements.push(HardyElement::from_projection(value));
        }
    }
    if sp.kappa_d() > 0 {
        let kf = kernel_basis_functions(sp.kappa_d(), sp.d_fact().signature(), SignVariant::Plus)?;
        let d_plus_inv = sp.d_fact().base().plus().inverse()?;
        for u in kf.functions {
            let value = &d_plus_inv * &RationalSymbol::from_laurent(u);
            let seed = HardyElement::from_projection(value);
            elements.push(w_apply(
                sp.c_fact().base(),
                sp.a_tilde_inv(),
                &seed,
                tol,
            )?);
        }
    }
    Ok(KernelBasis::new(elements))
}
