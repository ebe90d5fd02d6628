//! Laurent polynomials with complex coefficients.
//!
//! A Laurent polynomial is a finite sum `sum_k c_k t^k` with integer
//! exponents of either sign. Coefficients are kept in a `BTreeMap` so that
//! iteration order, serialization and equality checks are deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::tolerance::DEFAULT_COEFF_FLOOR;

/// A finite Laurent polynomial `sum_k c_k t^k`, `k` ranging over a finite
/// set of integers.
///
/// Stored coefficients always have magnitude above the pruning floor; the
/// zero polynomial has an empty coefficient map. Values are immutable after
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPolynomial {
    coeffs: BTreeMap<i64, Complex64>,
}

impl LaurentPolynomial {
    /// Builds a polynomial from `(exponent, coefficient)` terms, summing
    /// duplicates and pruning magnitudes at or below the default floor.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Complex64)>,
    {
        Self::from_terms_with_floor(terms, DEFAULT_COEFF_FLOOR)
    }

    /// Like [`from_terms`](Self::from_terms) with an explicit pruning floor.
    pub fn from_terms_with_floor<I>(terms: I, floor: f64) -> Self
    where
        I: IntoIterator<Item = (i64, Complex64)>,
    {
        let mut coeffs: BTreeMap<i64, Complex64> = BTreeMap::new();
        for (exp, c) in terms {
            let entry = coeffs.entry(exp).or_insert(Complex64::new(0.0, 0.0));
            *entry += c;
        }
        coeffs.retain(|_, c| c.norm() > floor);
        LaurentPolynomial { coeffs }
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        LaurentPolynomial {
            coeffs: BTreeMap::new(),
        }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    /// A constant polynomial.
    pub fn constant(c: Complex64) -> Self {
        Self::from_terms([(0, c)])
    }

    /// The monomial `c * t^exp`.
    pub fn monomial(exp: i64, c: Complex64) -> Self {
        Self::from_terms([(exp, c)])
    }

    /// Coefficient of `t^n` (zero when absent).
    pub fn coeff(&self, n: i64) -> Complex64 {
        self.coeffs
            .get(&n)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when all exponents are nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.min_exp().map_or(true, |m| m >= 0)
    }

    /// Number of stored (nonzero) terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    /// Iterates over `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPolynomial {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    /// Substitutes `t -> 1/t`, i.e. negates every exponent.
    pub fn reversed(&self) -> Self {
        LaurentPolynomial {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }

    /// Conjugates every coefficient (not a boundary-value conjugation).
    pub fn conjugated(&self) -> Self {
        LaurentPolynomial {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e, c.conj())).collect(),
        }
    }

    /// Scales all coefficients by `c`.
    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(&e, &v)| (e, v * c)))
    }

    /// Restricts to exponents for which `keep` returns true.
    pub fn filter_exponents<F: Fn(i64) -> bool>(&self, keep: F) -> Self {
        LaurentPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&e, _)| keep(e))
                .map(|(&e, &c)| (e, c))
                .collect(),
        }
    }

    /// Re-prunes coefficients at an explicit floor.
    pub fn pruned(&self, floor: f64) -> Self {
        Self::from_terms_with_floor(self.terms(), floor)
    }

    /// Drops extreme-exponent terms whose magnitude is negligible relative
    /// to the largest coefficient. Such terms are roundoff dust from
    /// coefficient arithmetic, but they would otherwise fake extra degrees
    /// (phantom far-away roots) or deeper monomial offsets.
    pub fn trimmed_edges(&self, rel: f64) -> Self {
        let scale = self.max_coeff_norm();
        if scale == 0.0 {
            return self.clone();
        }
        let floor = rel * scale;
        let mut terms: Vec<(i64, Complex64)> = self.terms().collect();
        while let Some(&(_, c)) = terms.last() {
            if c.norm() <= floor {
                terms.pop();
            } else {
                break;
            }
        }
        while let Some(&(_, c)) = terms.first() {
            if c.norm() <= floor {
                terms.remove(0);
            } else {
                break;
            }
        }
        LaurentPolynomial {
            coeffs: terms.into_iter().collect(),
        }
    }

    /// Largest coefficient magnitude (zero for the zero polynomial).
    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Evaluates at `t`. Negative exponents require `t != 0`.
    pub fn eval(&self, t: Complex64) -> Complex64 {
        // Horner on the nonnegative part plus Horner in 1/t on the rest.
        let mut plus = Complex64::new(0.0, 0.0);
        let mut minus = Complex64::new(0.0, 0.0);
        let mut prev_plus: Option<i64> = None;
        let mut prev_minus: Option<i64> = None;
        for (&e, &c) in self.coeffs.iter().rev() {
            if e >= 0 {
                let gap = prev_plus.map_or(0, |p| p - e);
                plus = plus * t.powi(gap as i32) + c;
                prev_plus = Some(e);
            }
        }
        if let Some(p) = prev_plus {
            plus *= t.powi(p as i32);
        }
        let inv = if self.min_exp().map_or(false, |m| m < 0) {
            1.0 / t
        } else {
            Complex64::new(0.0, 0.0)
        };
        for (&e, &c) in self.coeffs.iter() {
            if e < 0 {
                let gap = prev_minus.map_or(0, |p| e - p);
                minus = minus * inv.powi(gap as i32) + c;
                prev_minus = Some(e);
            }
        }
        if let Some(p) = prev_minus {
            minus *= inv.powi((-p) as i32);
        }
        plus + minus
    }

    /// Dense ascending coefficient vector `c_0..c_deg` for an ordinary
    /// polynomial. Panics if a negative exponent is present.
    pub fn poly_coeffs(&self) -> Vec<Complex64> {
        assert!(self.is_polynomial(), "negative exponent in poly_coeffs");
        let deg = self.max_exp().unwrap_or(0).max(0) as usize;
        let mut out = vec![Complex64::new(0.0, 0.0); deg + 1];
        for (e, c) in self.terms() {
            out[e as usize] = c;
        }
        out
    }

    /// Builds a polynomial from a dense ascending coefficient vector.
    pub fn from_poly_coeffs(coeffs: &[Complex64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, &c)| (i as i64, c)))
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(self.terms().chain(rhs.terms()))
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(self.terms().chain(rhs.terms().map(|(e, c)| (e, -c))))
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPolynomial::zero();
        }
        let mut acc: BTreeMap<i64, Complex64> = BTreeMap::new();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                let entry = acc.entry(e1 + e2).or_insert(Complex64::new(0.0, 0.0));
                *entry += c1 * c2;
            }
        }
        LaurentPolynomial::from_terms(acc)
    }
}

fn format_complex(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.re == 0.0 {
        format!("{}i", c.im)
    } else if c.im < 0.0 {
        format!("({}{}i)", c.re, c.im)
    } else {
        format!("({}+{}i)", c.re, c.im)
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{}", format_complex(c))?,
                1 => write!(f, "{}*t", format_complex(c))?,
                _ => write!(f, "{}*t^{}", format_complex(c), e)?,
            }
        }
        Ok(())
    }
}

// JSON form: an object mapping the exponent (as a string integer) to the
// coefficient as an `[re, im]` pair.
impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (e, c) in self.terms() {
            map.serialize_entry(&e.to_string(), &[c.re, c.im])?;
        }
        map.end()
    }
}

struct LaurentVisitor;

impl<'de> Visitor<'de> for LaurentVisitor {
    type Value = LaurentPolynomial;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "a map from integer exponents to [re, im] pairs")
    }

    fn visit_map<A: MapAccess<'de>>(
        self,
        mut access: A,
    ) -> std::result::Result<Self::Value, A::Error> {
        let mut terms = Vec::new();
        while let Some((key, value)) = access.next_entry::<String, [f64; 2]>()? {
            let exp: i64 = key.parse().map_err(|_| {
                serde::de::Error::custom(format!("exponent `{key}` is not an integer"))
            })?;
            terms.push((exp, Complex64::new(value[0], value[1])));
        }
        Ok(LaurentPolynomial::from_terms(terms))
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        deserializer.deserialize_map(LaurentVisitor)
    }
}
