//! Rational functions on the unit circle as quotients of Laurent polynomials.

use std::fmt;

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::symbol::laurent::LaurentPolynomial;
use crate::symbol::roots::{cluster_roots, poly_from_roots, polynomial_roots};
use crate::tolerance::Tolerances;

/// A rational function `num / den` with Laurent-polynomial numerator and
/// denominator.
///
/// The stored form is canonical in the cheap, exact sense: the denominator is
/// an ordinary monic polynomial with nonzero constant term (any monomial
/// factor `t^k` is moved into the numerator, whose minimal exponent is the
/// offset `k`), and the zero function is `0/1`. Cancelling common
/// numerator/denominator roots requires root finding and is performed by
/// [`reduce`](Self::reduce), which the pole-sensitive operations call
/// internally.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalSymbol {
    num: LaurentPolynomial,
    den: LaurentPolynomial,
}

impl RationalSymbol {
    /// Builds `num / den`, establishing the canonical stored form.
    pub fn new(num: LaurentPolynomial, den: LaurentPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RationalSymbol {
                num: LaurentPolynomial::zero(),
                den: LaurentPolynomial::one(),
            });
        }
        let den_offset = den.min_exp().unwrap();
        let num = num.shift(-den_offset);
        let den = den.shift(-den_offset);
        let lead = den.coeff(den.max_exp().unwrap());
        let inv_lead = 1.0 / lead;
        Ok(RationalSymbol {
            num: num.scale(inv_lead),
            den: den.scale(inv_lead),
        })
    }

    /// Wraps a Laurent polynomial as a symbol with denominator 1.
    pub fn from_laurent(p: LaurentPolynomial) -> Self {
        RationalSymbol {
            num: p,
            den: LaurentPolynomial::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_laurent(LaurentPolynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPolynomial::one())
    }

    pub fn constant(c: Complex64) -> Self {
        Self::from_laurent(LaurentPolynomial::constant(c))
    }

    /// The monomial symbol `c * t^k`.
    pub fn monomial(k: i64, c: Complex64) -> Self {
        Self::from_laurent(LaurentPolynomial::monomial(k, c))
    }

    pub fn num(&self) -> &LaurentPolynomial {
        &self.num
    }

    pub fn den(&self) -> &LaurentPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator is the constant 1.
    pub fn is_laurent_polynomial(&self) -> bool {
        self.den.term_count() == 1 && self.den.coeff(0) == Complex64::new(1.0, 0.0)
    }

    /// The monomial offset `k` of the numerator `t^k * p(t)`, `p(0) != 0`.
    pub fn offset(&self) -> i64 {
        self.num.min_exp().unwrap_or(0)
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        self.num.eval(t) / self.den.eval(t)
    }

    /// Multiplicative inverse. Fails on the zero symbol.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, n: i32) -> Result<Self> {
        let base = if n < 0 {
            self.inverse()?
        } else {
            self.clone()
        };
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        RationalSymbol {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// The substitution `g(t) -> g(1/t)`.
    pub fn tilde(&self) -> Self {
        Self::new(self.num.reversed(), self.den.reversed())
            .expect("tilde preserves nonzero denominators")
    }

    /// The symbol whose boundary values are `conj(g(t))` for `|t| = 1`,
    /// i.e. coefficient conjugation followed by `t -> 1/t`.
    pub fn circle_conjugate(&self) -> Self {
        Self::new(
            self.num.conjugated().reversed(),
            self.den.conjugated().reversed(),
        )
        .expect("conjugation preserves nonzero denominators")
    }

    /// The flip `(Jg)(t) = t^{-1} g(1/t)`.
    pub fn flip_j(&self) -> Self {
        let tilded = self.tilde();
        RationalSymbol {
            num: tilded.num.shift(-1),
            den: tilded.den,
        }
    }

    /// Decides equality by cross-multiplication of the canonical forms.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let left = &self.num * &other.den;
        let right = &other.num * &self.den;
        let diff = &left - &right;
        let scale = left.max_coeff_norm().max(right.max_coeff_norm()).max(1.0);
        diff.max_coeff_norm() <= tol * scale
    }

    /// Full canonicalization: cancels numerator/denominator root pairs that
    /// agree within `tol.root_merge` and re-prunes at `tol.coeff_floor`.
    ///
    /// Symbols that share no roots are returned unchanged (coefficients stay
    /// exact); otherwise both parts are rebuilt from their remaining roots.
    pub fn reduce(&self, tol: &Tolerances) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let num = self.num.pruned(tol.coeff_floor).trimmed_edges(1e-12);
        let den = self.den.pruned(tol.coeff_floor).trimmed_edges(1e-12);
        let sym = Self::new(num, den)?;
        if sym.is_zero() || sym.is_laurent_polynomial() {
            return Ok(sym);
        }
        let offset = sym.offset();
        let p = sym.num.shift(-offset);
        let p_coeffs = p.poly_coeffs();
        let q_coeffs = sym.den.poly_coeffs();
        let p_raw = polynomial_roots(&p_coeffs)?;
        let q_raw = polynomial_roots(&q_coeffs)?;
        // Lead at the effective degree, in case a phantom top survived.
        let p_lead = p_coeffs[p_raw.len()];
        let mut p_roots = cluster_roots(&p_coeffs, &p_raw, tol.root_merge);
        let mut q_roots = cluster_roots(&q_coeffs, &q_raw, tol.root_merge);

        let mut cancelled = false;
        for (qz, qm) in q_roots.iter_mut() {
            if let Some((pz, pm)) = p_roots
                .iter_mut()
                .find(|(pz, pm)| *pm > 0 && (*pz - *qz).norm() <= tol.root_merge)
            {
                let take = (*pm).min(*qm);
                *pm -= take;
                *qm -= take;
                let _ = pz;
                cancelled = true;
            }
        }
        if !cancelled {
            return Ok(sym);
        }
        p_roots.retain(|&(_, m)| m > 0);
        q_roots.retain(|&(_, m)| m > 0);
        let new_p = poly_from_roots(p_lead, &p_roots);
        let new_q = poly_from_roots(Complex64::new(1.0, 0.0), &q_roots);
        Self::new(
            LaurentPolynomial::from_poly_coeffs(&new_p).shift(offset),
            LaurentPolynomial::from_poly_coeffs(&new_q),
        )
    }
}

impl std::ops::Add for &RationalSymbol {
    type Output = RationalSymbol;
    fn add(self, rhs: &RationalSymbol) -> RationalSymbol {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RationalSymbol::new(num, den).expect("denominator product is nonzero")
    }
}

impl std::ops::Sub for &RationalSymbol {
    type Output = RationalSymbol;
    fn sub(self, rhs: &RationalSymbol) -> RationalSymbol {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &RationalSymbol {
    type Output = RationalSymbol;
    fn neg(self) -> RationalSymbol {
        RationalSymbol {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl std::ops::Mul for &RationalSymbol {
    type Output = RationalSymbol;
    fn mul(self, rhs: &RationalSymbol) -> RationalSymbol {
        RationalSymbol::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("denominator product is nonzero")
    }
}

impl fmt::Display for RationalSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RationalSymbolRepr {
    num: LaurentPolynomial,
    #[serde(skip_serializing_if = "Option::is_none")]
    den: Option<LaurentPolynomial>,
}

// JSON form: {"num": {...}, "den": {...}}; an omitted "den" means the
// constant 1.
impl Serialize for RationalSymbol {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = RationalSymbolRepr {
            num: self.num.clone(),
            den: if self.is_laurent_polynomial() {
                None
            } else {
                Some(self.den.clone())
            },
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalSymbol {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = RationalSymbolRepr::deserialize(deserializer)?;
        let den = repr.den.unwrap_or_else(LaurentPolynomial::one);
        RationalSymbol::new(repr.num, den).map_err(D::Error::custom)
    }
}
