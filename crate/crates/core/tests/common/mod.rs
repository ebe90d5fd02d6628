//! Shared helpers for the integration suites: quadrature oracles,
//! argument-principle winding numbers and deterministic random generators
//! for matching pairs.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tph_core::{LaurentPolynomial, RationalSymbol, Tolerances};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn poly(terms: &[(i64, f64)]) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(terms.iter().map(|&(e, re)| (e, c(re, 0.0))))
}

pub fn sym(num: &[(i64, f64)], den: &[(i64, f64)]) -> RationalSymbol {
    RationalSymbol::new(poly(num), poly(den)).unwrap()
}

/// Laurent polynomial as a symbol.
pub fn lp(terms: &[(i64, f64)]) -> RationalSymbol {
    sym(terms, &[(0, 1.0)])
}

pub fn tol() -> Tolerances {
    Tolerances::default()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn circle_nodes(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            c(theta.cos(), theta.sin())
        })
        .collect()
}

/// Trapezoidal quadrature for the n-th Fourier coefficient on the given
/// equispaced nodes.
pub fn fourier_by_quadrature(g: &RationalSymbol, n: i64, nodes: &[Complex64]) -> Complex64 {
    let mut acc = c(0.0, 0.0);
    for &t in nodes {
        acc += g.eval(t) * t.powi(-(n as i32));
    }
    acc / nodes.len() as f64
}

/// Winding number of g about the origin by phase unwrapping along the
/// circle. Panics if the accumulated phase is not close to an integer
/// multiple of 2 pi.
pub fn winding_by_argument_principle(g: &RationalSymbol, nodes: usize) -> i64 {
    let pts = circle_nodes(nodes);
    let mut total = 0.0;
    for k in 0..nodes {
        let here = g.eval(pts[k]);
        let next = g.eval(pts[(k + 1) % nodes]);
        total += (next / here).arg();
    }
    let winding = total / (2.0 * std::f64::consts::PI);
    let rounded = winding.round();
    assert!(
        (winding - rounded).abs() < 1e-6,
        "argument principle quadrature did not resolve an integer: {winding}"
    );
    rounded as i64
}

/// A random radius at distance at least `gap` from the unit circle.
fn off_circle_radius<R: Rng>(rng: &mut R, gap: f64) -> f64 {
    if rng.gen_bool(0.5) {
        rng.gen_range(0.1..(1.0 - gap))
    } else {
        rng.gen_range((1.0 + gap)..3.0)
    }
}

pub fn random_off_circle_root<R: Rng>(rng: &mut R, gap: f64) -> Complex64 {
    let r = off_circle_radius(rng, gap);
    let theta = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
    c(r * theta.cos(), r * theta.sin())
}

/// Monic polynomial with `count` random roots away from the circle.
pub fn random_poly_from_roots<R: Rng>(rng: &mut R, count: usize, gap: f64) -> LaurentPolynomial {
    let mut coeffs = vec![c(1.0, 0.0)];
    for _ in 0..count {
        let z = random_off_circle_root(rng, gap);
        let mut next = vec![c(0.0, 0.0); coeffs.len() + 1];
        for (i, &co) in coeffs.iter().enumerate() {
            next[i + 1] += co;
            next[i] -= co * z;
        }
        coeffs = next;
    }
    LaurentPolynomial::from_poly_coeffs(&coeffs)
}

/// Random rational symbol `t^k * p / q` with all roots off the circle.
pub fn random_rational<R: Rng>(
    rng: &mut R,
    max_num_deg: usize,
    max_den_deg: usize,
    max_offset: i64,
    gap: f64,
) -> RationalSymbol {
    let num_deg = rng.gen_range(0..=max_num_deg);
    let den_deg = rng.gen_range(0..=max_den_deg);
    let offset = rng.gen_range(-max_offset..=max_offset);
    let scale = c(rng.gen_range(0.5..2.0), rng.gen_range(-0.5..0.5));
    let num = random_poly_from_roots(rng, num_deg, gap)
        .scale(scale)
        .shift(offset);
    let den = random_poly_from_roots(rng, den_deg, gap);
    RationalSymbol::new(num, den).unwrap()
}

/// Random polynomial right-hand side of the given degree bound.
pub fn random_polynomial<R: Rng>(rng: &mut R, max_deg: usize) -> RationalSymbol {
    let deg = rng.gen_range(0..=max_deg);
    let terms: Vec<(i64, Complex64)> = (0..=deg)
        .map(|e| {
            (
                e as i64,
                c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
            )
        })
        .collect();
    RationalSymbol::from_laurent(LaurentPolynomial::from_terms(terms))
}

/// Random matching pair: starting from `a0 = (h / tilde(h)) * b0`, which
/// satisfies the matching condition by construction, both members may be
/// shifted by independent monomials `t^j`, `t^k` (the condition is
/// insensitive to monomial factors). Index parities of the subordinated pair
/// vary with `j - k` and `j + k`, so all four solver cases appear.
pub fn random_matching_pair<R: Rng>(rng: &mut R, gap: f64) -> (RationalSymbol, RationalSymbol) {
    let h_deg = rng.gen_range(0..=1);
    let h = RationalSymbol::from_laurent(random_poly_from_roots(rng, h_deg, gap));
    let b0 = random_rational(rng, 1, 1, 1, gap);
    let j = rng.gen_range(-2..=2i64);
    let k = rng.gen_range(-2..=2i64);
    let ratio = h.div(&h.tilde()).unwrap();
    let a = &(&ratio * &b0) * &RationalSymbol::monomial(j, c(1.0, 0.0));
    let b = &b0 * &RationalSymbol::monomial(k, c(1.0, 0.0));
    (a, b)
}

/// Max coefficient deviation between two symbols over a Fourier window.
pub fn coeff_deviation(x: &RationalSymbol, y: &RationalSymbol, lo: i64, hi: i64) -> f64 {
    let tol = tol();
    let xv = tph_core::fourier_coefficients(x, lo, hi, &tol).unwrap();
    let yv = tph_core::fourier_coefficients(y, lo, hi, &tol).unwrap();
    xv.iter()
        .zip(&yv)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
}
