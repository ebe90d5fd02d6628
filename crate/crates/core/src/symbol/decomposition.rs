//! Partial fractions, exact Fourier coefficients and the projections P, Q.
//!
//! A rational symbol without poles on the unit circle splits into an
//! analytic part (poles strictly outside the circle, nonnegative Fourier
//! support) and an anti-analytic part (poles strictly inside or at the
//! origin, strictly negative support). All internal computations are
//! arranged so that no polynomial is ever divided by a factor `(t - z)` with
//! `|z| > 1` in the monomial basis: such divisions amplify coefficients by
//! `|z|^deg` and destroy the closed-form accuracy this crate is built for.
//! Inside poles are extracted by Taylor/series expansion (powers of `|z| < 1`,
//! stable), the analytic numerator follows by exact division by the inside
//! factors, and Fourier coefficients come from ascending power series of the
//! outside denominator, whose terms decay geometrically.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::symbol::laurent::LaurentPolynomial;
use crate::symbol::rational::RationalSymbol;
use crate::symbol::roots::{cluster_roots, poly_from_roots, polynomial_roots};
use crate::tolerance::Tolerances;

/// Principal part at a single pole: `sum_m coefficients[m-1] / (t - location)^m`.
#[derive(Debug, Clone)]
pub struct PoleTerm {
    pub location: Complex64,
    pub order: usize,
    /// `coefficients[m-1]` multiplies `(t - location)^{-m}`, `m = 1..=order`.
    pub coefficients: Vec<Complex64>,
}

impl PoleTerm {
    /// Whether the pole lies inside the unit circle. Valid because poles on
    /// the circle are rejected during decomposition.
    pub fn is_inside(&self) -> bool {
        self.location.norm() < 1.0
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        let base = t - self.location;
        let mut acc = Complex64::new(0.0, 0.0);
        let mut power = Complex64::new(1.0, 0.0);
        for &c in &self.coefficients {
            power /= base;
            acc += c * power;
        }
        acc
    }
}

/// A rational symbol split into a Laurent polynomial and principal parts at
/// off-circle poles.
#[derive(Debug, Clone)]
pub struct PoleDecomposition {
    pub laurent_part: LaurentPolynomial,
    pub pole_terms: Vec<PoleTerm>,
}

impl PoleDecomposition {
    pub fn inside(&self) -> impl Iterator<Item = &PoleTerm> {
        self.pole_terms.iter().filter(|t| t.is_inside())
    }

    pub fn outside(&self) -> impl Iterator<Item = &PoleTerm> {
        self.pole_terms.iter().filter(|t| !t.is_inside())
    }

    /// Re-sums the decomposition at a point.
    pub fn eval(&self, t: Complex64) -> Complex64 {
        self.laurent_part.eval(t) + self.pole_terms.iter().map(|p| p.eval(t)).sum::<Complex64>()
    }
}

/// Dense ascending polynomial division: `num = den * quot + rem`,
/// `deg rem < deg den`.
fn poly_divide(num: &[Complex64], den: &[Complex64]) -> (Vec<Complex64>, Vec<Complex64>) {
    let dn = den.len();
    debug_assert!(dn > 0 && den[dn - 1].norm() > 0.0);
    if num.len() < dn {
        return (Vec::new(), num.to_vec());
    }
    let mut rem = num.to_vec();
    let mut quot = vec![Complex64::new(0.0, 0.0); num.len() - dn + 1];
    let lead = den[dn - 1];
    for k in (0..quot.len()).rev() {
        let factor = rem[k + dn - 1] / lead;
        quot[k] = factor;
        for (i, &d) in den.iter().enumerate() {
            rem[k + i] -= factor * d;
        }
    }
    rem.truncate(dn - 1);
    (quot, rem)
}

/// Synthetic division by `(t - z)`: returns the quotient and `p(z)`.
fn synthetic_division(p: &[Complex64], z: Complex64) -> (Vec<Complex64>, Complex64) {
    if p.is_empty() {
        return (Vec::new(), Complex64::new(0.0, 0.0));
    }
    let n = p.len();
    let mut quot = vec![Complex64::new(0.0, 0.0); n - 1];
    let mut carry = p[n - 1];
    for k in (0..n - 1).rev() {
        quot[k] = carry;
        carry = p[k] + z * carry;
    }
    (quot, carry)
}

/// First `count` Taylor coefficients of `p` about `z`.
fn taylor_at(p: &[Complex64], z: Complex64, count: usize) -> Vec<Complex64> {
    let mut work = p.to_vec();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let (quot, rem) = synthetic_division(&work, z);
        out.push(rem);
        work = quot;
    }
    out
}

/// First `count` coefficients of the power series `num / den`, `den[0] != 0`.
fn series_divide(num: &[Complex64], den: &[Complex64], count: usize) -> Vec<Complex64> {
    let d0 = den[0];
    let mut out = Vec::with_capacity(count);
    for j in 0..count {
        let mut acc = num.get(j).copied().unwrap_or(Complex64::new(0.0, 0.0));
        for l in 1..=j {
            if let Some(&dl) = den.get(l) {
                acc -= dl * out[j - l];
            }
        }
        out.push(acc / d0);
    }
    out
}

fn convolve(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// The reduced pieces common to all decompositions: numerator polynomial `n`
/// (dense from exponent 0), denominator split into inside and outside root
/// groups, and the origin-pole multiplicity from a negative offset.
struct SplitBasis {
    numerator: Vec<Complex64>,
    inside: Vec<(Complex64, usize)>,
    outside: Vec<(Complex64, usize)>,
    /// Exact monic original denominator (product of both groups).
    den: Vec<Complex64>,
    origin_mult: usize,
}

fn split_basis(g: &RationalSymbol, tol: &Tolerances) -> Result<Option<SplitBasis>> {
    let g = g.reduce(tol)?;
    if g.is_zero() {
        return Ok(None);
    }
    let offset = g.offset();
    let p = g.num().shift(-offset).poly_coeffs();
    let q = g.den().poly_coeffs();
    let q_roots = cluster_roots(&q, &polynomial_roots(&q)?, tol.root_merge);
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    for (z, m) in q_roots {
        if (z.norm() - 1.0).abs() < tol.circle {
            return Err(Error::PoleOnCircle { location: z });
        }
        if z.norm() < 1.0 {
            inside.push((z, m));
        } else {
            outside.push((z, m));
        }
    }
    let numerator = if offset > 0 {
        let mut v = vec![Complex64::new(0.0, 0.0); offset as usize];
        v.extend_from_slice(&p);
        v
    } else {
        p
    };
    Ok(Some(SplitBasis {
        numerator,
        inside,
        outside,
        den: q,
        origin_mult: if offset < 0 { (-offset) as usize } else { 0 },
    }))
}

impl SplitBasis {
    /// Principal-part coefficients `h_0..h_{m-1}` (Taylor order) at an
    /// inside or outside pole `z` of multiplicity m: the Taylor expansion of
    /// `numerator / (D / (t - z)^m)` about z, where D is the full
    /// denominator including the origin power.
    fn principal_taylor(&self, z: Complex64, m: usize) -> Vec<Complex64> {
        let mut others: Vec<(Complex64, usize)> = Vec::new();
        for &(w, mw) in self.inside.iter().chain(self.outside.iter()) {
            if (w - z).norm() > 0.0 {
                others.push((w, mw));
            }
        }
        if self.origin_mult > 0 {
            others.push((Complex64::new(0.0, 0.0), self.origin_mult));
        }
        let rho = poly_from_roots(Complex64::new(1.0, 0.0), &others);
        let n_taylor = taylor_at(&self.numerator, z, m);
        let rho_taylor = taylor_at(&rho, z, m);
        series_divide(&n_taylor, &rho_taylor, m)
    }

    /// Taylor coefficients about the origin of `numerator / den`, giving the
    /// principal part of the origin pole. Uses the exact denominator.
    fn origin_taylor(&self) -> Vec<Complex64> {
        series_divide(&self.numerator, &self.den, self.origin_mult)
    }
}

/// Analytic/anti-analytic split of `n / (q_in * q_out)` for an ordinary
/// polynomial numerator `n` (no origin pole): returns the numerators
/// `(p, u)` with `P = p / q_out` and `Q = u / q_in`, `deg u < deg q_in`.
///
/// Every step is stable: the principal-part data of the inside poles
/// involves Taylor shifts to points of modulus < 1 and evaluations of the
/// outside factor, and the analytic numerator follows by synthetic division
/// by the inside factors only.
fn split_groups(
    n: &[Complex64],
    inside: &[(Complex64, usize)],
    outside: &[(Complex64, usize)],
) -> (Vec<Complex64>, Vec<Complex64>) {
    if inside.is_empty() {
        return (n.to_vec(), Vec::new());
    }
    let q_out = poly_from_roots(Complex64::new(1.0, 0.0), outside);
    let mut u = vec![Complex64::new(0.0, 0.0); 1];
    for &(z, m) in inside {
        // h = Taylor of n / (other_inside * q_out) about z.
        let mut others: Vec<(Complex64, usize)> = inside
            .iter()
            .filter(|&&(w, _)| (w - z).norm() > 0.0)
            .copied()
            .collect();
        others.extend_from_slice(outside);
        let rho = poly_from_roots(Complex64::new(1.0, 0.0), &others);
        let n_taylor = taylor_at(n, z, m);
        let rho_taylor = taylor_at(&rho, z, m);
        let h = series_divide(&n_taylor, &rho_taylor, m);
        for mm in 1..=m {
            // Cofactor: q_in / (t - z)^mm.
            let mut roots: Vec<(Complex64, usize)> = inside
                .iter()
                .filter(|&&(w, _)| (w - z).norm() > 0.0)
                .copied()
                .collect();
            if m > mm {
                roots.push((z, m - mm));
            }
            let cofactor = poly_from_roots(Complex64::new(1.0, 0.0), &roots);
            if u.len() < cofactor.len() {
                u.resize(cofactor.len(), Complex64::new(0.0, 0.0));
            }
            for (i, &c) in cofactor.iter().enumerate() {
                u[i] += c * h[m - mm];
            }
        }
    }
    // p = (n - u * q_out) / q_in by repeated synthetic division; the
    // remainders vanish up to roundoff.
    let u_qout = convolve(&u, &q_out);
    let mut work = n.to_vec();
    if work.len() < u_qout.len() {
        work.resize(u_qout.len(), Complex64::new(0.0, 0.0));
    }
    for (i, &c) in u_qout.iter().enumerate() {
        work[i] -= c;
    }
    for &(z, m) in inside {
        for _ in 0..m {
            let (quot, _rem) = synthetic_division(&work, z);
            work = quot;
        }
    }
    (work, u)
}

/// Analytic/anti-analytic split of a symbol without circle poles. Both parts
/// are exact rational symbols; `analytic` has poles only outside the circle
/// and nonnegative support, `anti` has poles only inside (or at the origin)
/// and strictly negative support.
///
/// The numerator is split at exponent zero first. The nonnegative piece is
/// split directly; the negative piece is reversed (`t -> 1/t`), which turns
/// its origin pole into a plain monomial offset, split, and reversed back.
/// This keeps all intermediate quantities free of `1/|z_inside|` powers.
fn split_projections(
    g: &RationalSymbol,
    tol: &Tolerances,
) -> Result<(RationalSymbol, RationalSymbol)> {
    let Some(basis) = split_basis(g, tol)? else {
        return Ok((RationalSymbol::zero(), RationalSymbol::zero()));
    };
    if basis.inside.is_empty() && basis.origin_mult == 0 {
        // Already analytic: pass through exactly.
        return Ok((g.reduce(tol)?, RationalSymbol::zero()));
    }
    let num = LaurentPolynomial::from_poly_coeffs(&basis.numerator).shift(
        -(basis.origin_mult as i64),
    );
    let den = &basis.den;
    let deg_q = den.len() - 1;

    // High piece: nonnegative numerator support, no origin pole.
    let num_high: Vec<Complex64> = {
        let high = num.filter_exponents(|e| e >= 0);
        if high.is_zero() {
            Vec::new()
        } else {
            high.poly_coeffs()
        }
    };
    let (mut p_total, mut q_total) = if num_high.is_empty() {
        (RationalSymbol::zero(), RationalSymbol::zero())
    } else {
        let (p, u) = split_groups(&num_high, &basis.inside, &basis.outside);
        let q_out = poly_from_roots(Complex64::new(1.0, 0.0), &basis.outside);
        let q_in = poly_from_roots(Complex64::new(1.0, 0.0), &basis.inside);
        (
            RationalSymbol::new(
                LaurentPolynomial::from_poly_coeffs(&p),
                LaurentPolynomial::from_poly_coeffs(&q_out),
            )?,
            if u.is_empty() {
                RationalSymbol::zero()
            } else {
                RationalSymbol::new(
                    LaurentPolynomial::from_poly_coeffs(&u),
                    LaurentPolynomial::from_poly_coeffs(&q_in),
                )?
            },
        )
    };

    // Low piece through reversal: h = tilde(num_low / den) has numerator
    // support >= 1 and reflected poles.
    let num_low = num.filter_exponents(|e| e < 0);
    if !num_low.is_zero() {
        // Reversing the denominator leaves a factor den[0] in front of the
        // monic product over the reflected roots.
        let h_num = num_low
            .reversed()
            .shift(deg_q as i64)
            .scale(Complex64::new(1.0, 0.0) / den[0])
            .poly_coeffs();
        let reflect = |roots: &[(Complex64, usize)]| -> Vec<(Complex64, usize)> {
            roots.iter().map(|&(z, m)| (1.0 / z, m)).collect()
        };
        let inside_h = reflect(&basis.outside);
        let outside_h = reflect(&basis.inside);
        let (p_h, u_h) = split_groups(&h_num, &inside_h, &outside_h);
        let q_out_h = poly_from_roots(Complex64::new(1.0, 0.0), &outside_h);
        let q_in_h = poly_from_roots(Complex64::new(1.0, 0.0), &inside_h);
        // Constant coefficient of the analytic part of h.
        let h0 = if p_h.is_empty() {
            Complex64::new(0.0, 0.0)
        } else {
            p_h[0] / q_out_h[0]
        };
        // Q_low = tilde(P(h) - h0), P_low = tilde(Q(h)) + h0.
        let mut p_h_shifted = p_h;
        if p_h_shifted.len() < q_out_h.len() {
            p_h_shifted.resize(q_out_h.len(), Complex64::new(0.0, 0.0));
        }
        for (i, &c) in q_out_h.iter().enumerate() {
            p_h_shifted[i] -= h0 * c;
        }
        let q_low = RationalSymbol::new(
            LaurentPolynomial::from_poly_coeffs(&p_h_shifted),
            LaurentPolynomial::from_poly_coeffs(&q_out_h),
        )?
        .tilde();
        let p_low = if u_h.is_empty() {
            RationalSymbol::constant(h0)
        } else {
            &RationalSymbol::new(
                LaurentPolynomial::from_poly_coeffs(&u_h),
                LaurentPolynomial::from_poly_coeffs(&q_in_h),
            )?
            .tilde()
                + &RationalSymbol::constant(h0)
        };
        p_total = &p_total + &p_low;
        q_total = &q_total + &q_low;
    }

    Ok((p_total.reduce(tol)?, q_total.reduce(tol)?))
}

/// Splits a symbol into its Laurent part and principal parts at its poles,
/// classified strictly inside or outside the unit circle.
///
/// The per-pole principal parts of far-outside poles are intrinsically large
/// when the numerator degree is high; consumers that only need one side of
/// the circle should prefer [`project_p`]/[`project_q`], which avoid those
/// magnitudes entirely.
pub fn partial_fractions(g: &RationalSymbol, tol: &Tolerances) -> Result<PoleDecomposition> {
    let Some(basis) = split_basis(g, tol)? else {
        return Ok(PoleDecomposition {
            laurent_part: LaurentPolynomial::zero(),
            pole_terms: Vec::new(),
        });
    };

    // Polynomial part of the global division.
    let mut full_den = vec![Complex64::new(0.0, 0.0); basis.origin_mult];
    full_den.extend_from_slice(&basis.den);
    let (quot, _rem) = poly_divide(&basis.numerator, &full_den);
    let mut laurent = LaurentPolynomial::from_poly_coeffs(&quot);

    if basis.origin_mult > 0 {
        let h0 = basis.origin_taylor();
        let monomials = LaurentPolynomial::from_terms(
            (1..=basis.origin_mult).map(|m| (-(m as i64), h0[basis.origin_mult - m])),
        );
        laurent = &laurent + &monomials;
    }

    let mut pole_terms = Vec::new();
    for &(z, m) in basis.inside.iter().chain(basis.outside.iter()) {
        let h = basis.principal_taylor(z, m);
        let coefficients: Vec<Complex64> = (1..=m).map(|mm| h[m - mm]).collect();
        pole_terms.push(PoleTerm {
            location: z,
            order: m,
            coefficients,
        });
    }

    Ok(PoleDecomposition {
        laurent_part: laurent,
        pole_terms,
    })
}

/// Fourier coefficients of a symbol whose poles all lie outside the circle
/// and whose support starts at a nonnegative offset: ascending power series
/// of `num / den`.
fn analytic_band(h: &RationalSymbol, hi: i64) -> Vec<Complex64> {
    debug_assert!(h.is_zero() || h.offset() >= 0);
    let count = (hi + 1).max(0) as usize;
    if h.is_zero() || count == 0 {
        return vec![Complex64::new(0.0, 0.0); count];
    }
    let mut num = vec![Complex64::new(0.0, 0.0); count];
    for (e, c) in h.num().terms() {
        if e < count as i64 {
            num[e as usize] = c;
        }
    }
    let den = h.den().poly_coeffs();
    series_divide(&num, &den, count)
}

/// Fourier coefficients `g_lo .. g_hi` of a symbol without circle poles.
///
/// The nonnegative band comes from the analytic part's power series, the
/// negative band from the reversed anti-analytic part; both expansions have
/// geometrically decaying terms.
pub fn fourier_coefficients(
    g: &RationalSymbol,
    lo: i64,
    hi: i64,
    tol: &Tolerances,
) -> Result<Vec<Complex64>> {
    if lo > hi {
        return Ok(Vec::new());
    }
    let (analytic, anti) = split_projections(g, tol)?;
    let len = (hi - lo + 1) as usize;
    let mut out = vec![Complex64::new(0.0, 0.0); len];
    if hi >= 0 {
        let band = analytic_band(&analytic, hi);
        for e in lo.max(0)..=hi {
            out[(e - lo) as usize] = band[e as usize];
        }
    }
    if lo < 0 {
        // Coefficient -e of the anti part equals coefficient e of its
        // reversal, whose poles lie outside the circle.
        let reversed = anti.tilde();
        let band = analytic_band(&reversed, -lo);
        for e in lo..=hi.min(-1) {
            out[(e - lo) as usize] = band[(-e) as usize];
        }
    }
    Ok(out)
}

/// The Riesz projection P: keeps the nonnegative Fourier support; the result
/// is analytic in the closed unit disk with poles only outside the circle.
pub fn project_p(g: &RationalSymbol, tol: &Tolerances) -> Result<RationalSymbol> {
    Ok(split_projections(g, tol)?.0)
}

/// The complementary projection Q = I - P: strictly negative support, poles
/// strictly inside the circle (or at the origin).
pub fn project_q(g: &RationalSymbol, tol: &Tolerances) -> Result<RationalSymbol> {
    Ok(split_projections(g, tol)?.1)
}
