//! Wiener-Hopf factorization of rational symbols.
//!
//! A rational symbol g without zeros or poles on the unit circle factors as
//! `g = g_minus * t^n * g_plus` by splitting its zeros and poles at the
//! circle: each zero/pole `z` with `|z| < 1` contributes `(1 - z/t)^{+-1}`
//! to the minus factor and `t^{+-1}` to the index, each with `|z| > 1`
//! contributes `(1 - t/z)^{+-1}` (up to a constant) to the plus factor, and
//! the constants are arranged so that `g_minus(infinity) = 1`. The index n
//! equals the winding number of g about the origin, and `ind T(g) = -n`.
//!
//! Matching functions (`g * tilde(g) = 1`) additionally carry a signature
//! `sigma(g) = g_plus(0) = +-1`, fixing the symmetric factorization shape
//! `g = g_plus * t^n * (sigma * tilde(g_plus)^{-1})`.

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::symbol::roots::{cluster_roots, poly_from_roots, polynomial_roots};
use crate::symbol::{LaurentPolynomial, RationalSymbol};
use crate::tolerance::Tolerances;

/// The factorization triple `(g_minus, n, g_plus)`.
///
/// `minus` and its inverse are analytic for `|t| > 1` including infinity with
/// `minus(infinity) = 1`; `plus` and its inverse are analytic in the closed
/// unit disk.
#[derive(Debug, Clone)]
pub struct WienerHopfFactorization {
    minus: RationalSymbol,
    index: i64,
    plus: RationalSymbol,
}

impl WienerHopfFactorization {
    pub fn minus(&self) -> &RationalSymbol {
        &self.minus
    }

    pub fn index(&self) -> i64 {
        self.index
    }

    pub fn plus(&self) -> &RationalSymbol {
        &self.plus
    }

    /// Rebuilds the source symbol as `minus * t^index * plus`.
    pub fn symbol(&self) -> RationalSymbol {
        let shifted = RationalSymbol::monomial(self.index, Complex64::new(1.0, 0.0));
        &(&self.minus * &shifted) * &self.plus
    }
}

impl Serialize for WienerHopfFactorization {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("WienerHopfFactorization", 3)?;
        s.serialize_field("minus", &self.minus)?;
        s.serialize_field("index", &self.index)?;
        s.serialize_field("plus", &self.plus)?;
        s.end()
    }
}

/// Factorization of a matching function together with its signature.
#[derive(Debug, Clone)]
pub struct MatchingFactorization {
    base: WienerHopfFactorization,
    signature: i32,
}

impl MatchingFactorization {
    pub fn base(&self) -> &WienerHopfFactorization {
        &self.base
    }

    /// The signature `sigma = plus(0)`, snapped to -1 or +1.
    pub fn signature(&self) -> i32 {
        self.signature
    }

    /// `ind T(g) = -n` for the factorization index n.
    pub fn toeplitz_index(&self) -> i64 {
        -self.base.index
    }
}

impl Serialize for MatchingFactorization {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("MatchingFactorization", 4)?;
        s.serialize_field("minus", &self.base.minus)?;
        s.serialize_field("index", &self.base.index)?;
        s.serialize_field("plus", &self.base.plus)?;
        s.serialize_field("signature", &self.signature)?;
        s.end()
    }
}

struct RootProfile {
    offset: i64,
    lead: Complex64,
    zeros_in: Vec<(Complex64, usize)>,
    zeros_out: Vec<(Complex64, usize)>,
    poles_in: Vec<(Complex64, usize)>,
    poles_out: Vec<(Complex64, usize)>,
}

impl RootProfile {
    fn index(&self) -> i64 {
        let zeros: usize = self.zeros_in.iter().map(|&(_, m)| m).sum();
        let poles: usize = self.poles_in.iter().map(|&(_, m)| m).sum();
        self.offset + zeros as i64 - poles as i64
    }
}

fn split_at_circle(
    roots: Vec<(Complex64, usize)>,
    tol: &Tolerances,
) -> Result<(Vec<(Complex64, usize)>, Vec<(Complex64, usize)>)> {
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    for (z, m) in roots {
        if (z.norm() - 1.0).abs() < tol.circle {
            return Err(Error::ZeroOrPoleOnCircle { location: z });
        }
        if z.norm() < 1.0 {
            inside.push((z, m));
        } else {
            outside.push((z, m));
        }
    }
    Ok((inside, outside))
}

fn root_profile(g: &RationalSymbol, tol: &Tolerances) -> Result<RootProfile> {
    let g = g.reduce(tol)?;
    if g.is_zero() {
        // The zero symbol vanishes on the whole circle.
        return Err(Error::ZeroOrPoleOnCircle {
            location: Complex64::new(1.0, 0.0),
        });
    }
    let offset = g.offset();
    let p = g.num().shift(-offset).poly_coeffs();
    let q = g.den().poly_coeffs();
    let p_raw = polynomial_roots(&p)?;
    let q_raw = polynomial_roots(&q)?;
    let lead = p[p_raw.len()];
    let zeros = cluster_roots(&p, &p_raw, tol.root_merge);
    let poles = cluster_roots(&q, &q_raw, tol.root_merge);
    let (zeros_in, zeros_out) = split_at_circle(zeros, tol)?;
    let (poles_in, poles_out) = split_at_circle(poles, tol)?;
    Ok(RootProfile {
        offset,
        lead,
        zeros_in,
        zeros_out,
        poles_in,
        poles_out,
    })
}

/// The winding number of g about the origin: monomial offset plus zeros
/// minus poles inside the open disk. Equals the factorization index, and
/// `ind T(g) = -winding_index(g)`.
pub fn winding_index(g: &RationalSymbol, tol: &Tolerances) -> Result<i64> {
    Ok(root_profile(g, tol)?.index())
}

/// Computes the Wiener-Hopf factorization of a rational symbol without
/// zeros or poles on the unit circle.
pub fn factorize(g: &RationalSymbol, tol: &Tolerances) -> Result<WienerHopfFactorization> {
    let profile = root_profile(g, tol)?;
    let zeros_in_mult: usize = profile.zeros_in.iter().map(|&(_, m)| m).sum();
    let poles_in_mult: usize = profile.poles_in.iter().map(|&(_, m)| m).sum();

    let minus_num = LaurentPolynomial::from_poly_coeffs(&poly_from_roots(
        Complex64::new(1.0, 0.0),
        &profile.zeros_in,
    ))
    .shift(poles_in_mult as i64);
    let minus_den = LaurentPolynomial::from_poly_coeffs(&poly_from_roots(
        Complex64::new(1.0, 0.0),
        &profile.poles_in,
    ))
    .shift(zeros_in_mult as i64);
    let minus = RationalSymbol::new(minus_num, minus_den)?;

    let plus_num = LaurentPolynomial::from_poly_coeffs(&poly_from_roots(
        profile.lead,
        &profile.zeros_out,
    ));
    let plus_den = LaurentPolynomial::from_poly_coeffs(&poly_from_roots(
        Complex64::new(1.0, 0.0),
        &profile.poles_out,
    ));
    let plus = RationalSymbol::new(plus_num, plus_den)?;

    Ok(WienerHopfFactorization {
        minus,
        index: profile.index(),
        plus,
    })
}

fn circle_samples(n: usize) -> impl Iterator<Item = Complex64> {
    (0..n).map(move |k| {
        let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.37) / n as f64;
        Complex64::new(theta.cos(), theta.sin())
    })
}

/// Factorizes a matching function (`g * tilde(g) = 1`) and extracts the
/// signature `sigma = plus(0)`, verifying the symmetric factorization shape.
pub fn matching_factorize(g: &RationalSymbol, tol: &Tolerances) -> Result<MatchingFactorization> {
    let base = factorize(g, tol)?;

    let mut deviation: f64 = 0.0;
    for t in circle_samples(64) {
        let value = g.eval(t) * g.eval(1.0 / t) - 1.0;
        deviation = deviation.max(value.norm());
    }
    if deviation > tol.matching {
        return Err(Error::NotMatching { deviation });
    }

    let raw = base.plus.eval(Complex64::new(0.0, 0.0));
    let signature = if (raw - 1.0).norm() < tol.signature_snap {
        1
    } else if (raw + 1.0).norm() < tol.signature_snap {
        -1
    } else {
        return Err(Error::SignatureIndeterminate { value: raw });
    };

    // The factorization of a matching function must take the symmetric shape
    // minus = sigma * tilde(plus)^{-1}.
    for t in circle_samples(64) {
        let lhs = base.minus.eval(t);
        let rhs = f64::from(signature) / base.plus.eval(1.0 / t);
        if (lhs - rhs).norm() > tol.reconstruction * lhs.norm().max(1.0) {
            return Err(Error::SignatureIndeterminate { value: raw });
        }
    }

    Ok(MatchingFactorization { base, signature })
}
