//! Closed-form solution of `(T(a) + H(b)) phi = f` for matching pairs:
//! validation, the subordinated pair `(c, d) = (a/b, b/tilde(a))`, case
//! dispatch on `(kappa_c, kappa_d) = (ind T(c), ind T(d))`, kernel bases and
//! solvability reports.

mod cases;
mod convert;
mod kernel;

use std::fmt;

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub use cases::{solve_case_nn, solve_case_np, solve_case_pn, solve_case_pp};
pub use convert::{convert_matrix_to_th, convert_th_to_matrix};
pub use kernel::{kernel_basis_functions, theorem_kernel, KernelBasis, KernelFunctions, SignVariant};

use crate::error::{Error, Result};
use crate::factorization::{matching_factorize, winding_index, MatchingFactorization};
use crate::operators::HardyElement;
use crate::symbol::RationalSymbol;
use crate::tolerance::Tolerances;

/// A validated pair `(a, b)` satisfying the matching condition
/// `a(t) a(1/t) = b(t) b(1/t)` with no zeros or poles on the unit circle.
#[derive(Debug, Clone)]
pub struct MatchingPair {
    a: RationalSymbol,
    b: RationalSymbol,
}

impl MatchingPair {
    pub fn new(a: RationalSymbol, b: RationalSymbol, tol: &Tolerances) -> Result<Self> {
        // Winding indices double as Fredholmness checks: they reject symbols
        // with zeros or poles on (or too close to) the circle, including the
        // zero symbol.
        winding_index(&a, tol)?;
        winding_index(&b, tol)?;
        let mut deviation: f64 = 0.0;
        for k in 0..64 {
            let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.37) / 64.0;
            let t = Complex64::new(theta.cos(), theta.sin());
            let lhs = a.eval(t) * a.eval(1.0 / t);
            let rhs = b.eval(t) * b.eval(1.0 / t);
            let scale = lhs.norm().max(rhs.norm()).max(1.0);
            deviation = deviation.max((lhs - rhs).norm() / scale);
        }
        if deviation > tol.matching {
            return Err(Error::NotMatching { deviation });
        }
        Ok(MatchingPair { a, b })
    }

    pub fn a(&self) -> &RationalSymbol {
        &self.a
    }

    pub fn b(&self) -> &RationalSymbol {
        &self.b
    }
}

/// The subordinated pair `(c, d)` of a matching pair, with both matching
/// factorizations and the Toeplitz indices `kappa_c`, `kappa_d`.
#[derive(Debug, Clone)]
pub struct SubordinatedPair {
    pair: MatchingPair,
    c: RationalSymbol,
    d: RationalSymbol,
    c_fact: MatchingFactorization,
    d_fact: MatchingFactorization,
    a_tilde_inv: RationalSymbol,
}

impl SubordinatedPair {
    pub fn pair(&self) -> &MatchingPair {
        &self.pair
    }

    pub fn c(&self) -> &RationalSymbol {
        &self.c
    }

    pub fn d(&self) -> &RationalSymbol {
        &self.d
    }

    pub fn c_fact(&self) -> &MatchingFactorization {
        &self.c_fact
    }

    pub fn d_fact(&self) -> &MatchingFactorization {
        &self.d_fact
    }

    /// `tilde(a)^{-1}`, which appears in every solution formula.
    pub fn a_tilde_inv(&self) -> &RationalSymbol {
        &self.a_tilde_inv
    }

    /// `kappa_c = ind T(c)`.
    pub fn kappa_c(&self) -> i64 {
        self.c_fact.toeplitz_index()
    }

    /// `kappa_d = ind T(d)`.
    pub fn kappa_d(&self) -> i64 {
        self.d_fact.toeplitz_index()
    }
}

/// Builds and factorizes the subordinated pair `c = a b^{-1}`,
/// `d = b tilde(a)^{-1}`.
pub fn subordinated_pair(pair: &MatchingPair, tol: &Tolerances) -> Result<SubordinatedPair> {
    let c = pair.a().div(pair.b())?;
    let a_tilde_inv = pair.a().tilde().inverse()?;
    let d = pair.b() * &a_tilde_inv;
    let c_fact = matching_factorize(&c, tol)?;
    let d_fact = matching_factorize(&d, tol)?;
    Ok(SubordinatedPair {
        pair: pair.clone(),
        c,
        d,
        c_fact,
        d_fact,
        a_tilde_inv,
    })
}

/// Which of the four index-sign cases solved the equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    Pp,
    Nn,
    Pn,
    Np,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::Pp => "PP",
            CaseTag::Nn => "NN",
            CaseTag::Pn => "PN",
            CaseTag::Np => "NP",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for CaseTag {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// Whether the equation itself is known to be solvable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solvability {
    /// A particular solution was produced (and certified by its residual).
    Solvable,
    /// The method's conditions failed; the equation may still be solvable.
    Unknown,
    /// Proven unsolvable (shift-reduction constraints are infeasible).
    Unsolvable,
}

impl Solvability {
    pub fn as_str(&self) -> &'static str {
        match self {
            Solvability::Solvable => "solvable",
            Solvability::Unknown => "unknown",
            Solvability::Unsolvable => "unsolvable",
        }
    }
}

impl Serialize for Solvability {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// One evaluated solvability condition.
#[derive(Debug, Clone)]
pub struct Condition {
    pub index: usize,
    pub test_function: String,
    pub value: Complex64,
}

impl Serialize for Condition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Condition", 3)?;
        s.serialize_field("index", &self.index)?;
        s.serialize_field("test_function", &self.test_function)?;
        s.serialize_field("value", &[self.value.re, self.value.im])?;
        s.end()
    }
}

/// Trace of the fourth-case shift reduction.
#[derive(Debug, Clone, Serialize)]
pub struct NpShift {
    /// The shift exponent n with `0 <= 2n + kappa_c <= 1`.
    pub n: u32,
    /// The case that solved the shifted equation (always PP).
    pub inner_case: CaseTag,
}

/// Evaluated conditions plus the two verdicts: whether this method applies
/// to the right-hand side, and what is known about equation solvability.
#[derive(Debug, Clone, Serialize)]
pub struct SolvabilityReport {
    pub conditions: Vec<Condition>,
    pub method_applicable: bool,
    pub solvability: Solvability,
    pub notes: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub np_shift: Option<NpShift>,
}

/// The solver output: particular solution, kernel basis, case tag, residual
/// certificate and the solvability report.
#[derive(Debug, Clone)]
pub struct SolutionSet {
    pub case_tag: CaseTag,
    pub particular: Option<HardyElement>,
    pub kernel: KernelBasis,
    pub residual: Option<f64>,
    pub report: SolvabilityReport,
}

impl SolutionSet {
    /// True when a particular solution was produced.
    pub fn is_solved(&self) -> bool {
        self.particular.is_some()
    }
}

impl Serialize for SolutionSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SolutionSet", 6)?;
        s.serialize_field("case", &self.case_tag)?;
        s.serialize_field("particular", &self.particular)?;
        s.serialize_field("kernel", &self.kernel.elements())?;
        s.serialize_field("arity", &self.kernel.arity())?;
        s.serialize_field("residual", &self.residual)?;
        s.serialize_field("report", &self.report)?;
        s.end()
    }
}

/// Validates the inputs, builds the subordinated pair and dispatches on the
/// signs of `(kappa_c, kappa_d)`. Zero indices are routed to the
/// right-invertible branch, so PP handles both indices zero.
pub fn solve(
    a: &RationalSymbol,
    b: &RationalSymbol,
    f: &RationalSymbol,
    tol: &Tolerances,
) -> Result<SolutionSet> {
    let f = HardyElement::new(f.clone(), tol)?;
    let pair = MatchingPair::new(a.clone(), b.clone(), tol)?;
    let sp = subordinated_pair(&pair, tol)?;
    if sp.kappa_c() >= 0 && sp.kappa_d() >= 0 {
        solve_case_pp(&sp, &f, tol)
    } else if sp.kappa_c() <= 0 && sp.kappa_d() <= 0 {
        solve_case_nn(&sp, &f, tol)
    } else if sp.kappa_c() > 0 {
        solve_case_pn(&sp, &f, tol)
    } else {
        solve_case_np(&sp, &pair, &f, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::th_apply;
    use crate::symbol::LaurentPolynomial;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn poly(terms: &[(i64, f64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(terms.iter().map(|&(e, re)| (e, c64(re, 0.0))))
    }

    fn sym(num: &[(i64, f64)], den: &[(i64, f64)]) -> RationalSymbol {
        RationalSymbol::new(poly(num), poly(den)).unwrap()
    }

    fn lp(terms: &[(i64, f64)]) -> RationalSymbol {
        sym(terms, &[(0, 1.0)])
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn subordinated_pair_monomials() {
        // (t^-2, t^2): c = t^-4, d = 1, kappa_c = 4, kappa_d = 0, sigma = 1.
        let pair = MatchingPair::new(lp(&[(-2, 1.0)]), lp(&[(2, 1.0)]), &tol()).unwrap();
        let sp = subordinated_pair(&pair, &tol()).unwrap();
        assert!(sp.c().approx_eq(&lp(&[(-4, 1.0)]), 1e-14));
        assert!(sp.d().approx_eq(&RationalSymbol::one(), 1e-14));
        assert_eq!(sp.kappa_c(), 4);
        assert_eq!(sp.kappa_d(), 0);
        assert_eq!(sp.c_fact().signature(), 1);
        assert_eq!(sp.d_fact().signature(), 1);
    }

    #[test]
    fn subordinated_pair_affine() {
        // (2t+1, 2t+1): c = 1, d = t(2t+1)/(t+2), kappa_c = 0, kappa_d = -2.
        let s = lp(&[(0, 1.0), (1, 2.0)]);
        let pair = MatchingPair::new(s.clone(), s, &tol()).unwrap();
        let sp = subordinated_pair(&pair, &tol()).unwrap();
        assert!(sp.c().approx_eq(&RationalSymbol::one(), 1e-14));
        let d_expect = sym(&[(1, 1.0), (2, 2.0)], &[(0, 2.0), (1, 1.0)]);
        assert!(sp.d().approx_eq(&d_expect, 1e-13));
        assert_eq!(sp.kappa_c(), 0);
        assert_eq!(sp.kappa_d(), -2);
        // a~^{-1} = t/(t+2).
        let ati = sym(&[(1, 1.0)], &[(0, 2.0), (1, 1.0)]);
        assert!(sp.a_tilde_inv().approx_eq(&ati, 1e-13));
    }

    #[test]
    fn subordinated_pair_identity_side() {
        // (1, b) with b matching: c = tilde(b), d = b.
        let b = lp(&[(1, 1.0)]);
        let pair = MatchingPair::new(RationalSymbol::one(), b.clone(), &tol()).unwrap();
        let sp = subordinated_pair(&pair, &tol()).unwrap();
        assert!(sp.c().approx_eq(&b.tilde(), 1e-14));
        assert!(sp.d().approx_eq(&b, 1e-14));
        assert_eq!(sp.kappa_c(), 1);
        assert_eq!(sp.kappa_d(), -1);
    }

    #[test]
    fn non_matching_pair_rejected() {
        let err = MatchingPair::new(lp(&[(0, 2.0)]), RationalSymbol::one(), &tol());
        assert!(matches!(err, Err(Error::NotMatching { .. })));
    }

    #[test]
    fn example_one_end_to_end() {
        let a = lp(&[(-2, 1.0)]);
        let b = lp(&[(2, 1.0)]);
        let f = lp(&[(4, 3.0), (6, 1.0)]);
        let sol = solve(&a, &b, &f, &tol()).unwrap();
        assert_eq!(sol.case_tag, CaseTag::Pp);
        assert!(sol.is_solved());
        let particular = sol.particular.as_ref().unwrap();
        assert!(particular.value().approx_eq(&lp(&[(6, 3.0), (8, 1.0)]), 1e-12));
        assert_eq!(sol.kernel.arity(), 2);
        assert!(sol.residual.unwrap() < 1e-10);
        // Kernel annihilation.
        for e in sol.kernel.elements() {
            let image = th_apply(&a, &b, e, &tol()).unwrap();
            assert!(image.value().approx_eq(&RationalSymbol::zero(), 1e-12));
        }
        // Span check against {t - t^2, 1 - t^3}: both directions.
        assert_eq!(sol.kernel.numeric_rank(&tol()).unwrap(), 2);
    }

    #[test]
    fn example_two_end_to_end() {
        let s = lp(&[(0, 1.0), (1, 2.0)]);
        let f = lp(&[(1, 1.0), (2, 3.0), (3, 2.0)]);
        let sol = solve(&s, &s, &f, &tol()).unwrap();
        assert_eq!(sol.case_tag, CaseTag::Nn);
        assert!(sol.is_solved());
        assert!(sol
            .particular
            .as_ref()
            .unwrap()
            .value()
            .approx_eq(&lp(&[(1, 1.0), (2, 1.0)]), 1e-11));
        assert!(sol.kernel.is_empty());
        for c in &sol.report.conditions {
            assert!(c.value.norm() < 1e-10);
        }
        assert_eq!(sol.report.conditions.len(), 2);

        // f = 1 violates condition j = 0.
        let sol = solve(&s, &s, &RationalSymbol::one(), &tol()).unwrap();
        assert!(!sol.is_solved());
        assert!(!sol.report.method_applicable);
        assert_eq!(sol.report.solvability, Solvability::Unknown);
        assert!(sol.report.conditions[0].value.norm() > 1e-3);
    }

    #[test]
    fn pn_case_identity_plus_hankel() {
        // (a, b) = (1, t): condition is f_0 = 0.
        let a = RationalSymbol::one();
        let b = lp(&[(1, 1.0)]);
        let f = lp(&[(1, 1.0)]);
        let sol = solve(&a, &b, &f, &tol()).unwrap();
        assert_eq!(sol.case_tag, CaseTag::Pn);
        assert!(sol.is_solved());
        assert!(sol.particular.as_ref().unwrap().value().approx_eq(&f, 1e-12));
        assert!(sol.kernel.is_empty());

        // f = 1: method not applicable, yet phi = 1/2 solves the equation,
        // so the verdict must remain "unknown" rather than "unsolvable".
        let sol = solve(&a, &b, &RationalSymbol::one(), &tol()).unwrap();
        assert!(!sol.is_solved());
        assert_eq!(sol.report.solvability, Solvability::Unknown);
        let half = HardyElement::new(RationalSymbol::constant(c64(0.5, 0.0)), &tol()).unwrap();
        let image = th_apply(&a, &b, &half, &tol()).unwrap();
        assert!(image.value().approx_eq(&RationalSymbol::one(), 1e-14));
    }

    #[test]
    fn np_case_shift_reduction() {
        // (a, b) = (1, t^-2): kappa_c = -2, kappa_d = 2, n = 1. H(t^-2)
        // vanishes on the Hardy space, so phi = f for every f.
        let a = RationalSymbol::one();
        let b = lp(&[(-2, 1.0)]);
        let f = lp(&[(0, 1.0), (1, 1.0)]);
        let sol = solve(&a, &b, &f, &tol()).unwrap();
        assert_eq!(sol.case_tag, CaseTag::Np);
        assert!(sol.is_solved());
        assert!(sol.particular.as_ref().unwrap().value().approx_eq(&f, 1e-11));
        assert!(sol.kernel.is_empty());
        let shift = sol.report.np_shift.as_ref().unwrap();
        assert_eq!(shift.n, 1);
        assert_eq!(shift.inner_case, CaseTag::Pp);
        assert!(sol.residual.unwrap() < 1e-10);
    }

    #[test]
    fn np_case_homogeneous_kernel() {
        let a = RationalSymbol::one();
        let b = lp(&[(-2, 1.0)]);
        let sol = solve(&a, &b, &RationalSymbol::zero(), &tol()).unwrap();
        assert!(sol.is_solved());
        assert!(sol
            .particular
            .as_ref()
            .unwrap()
            .value()
            .approx_eq(&RationalSymbol::zero(), 1e-12));
        // H(t^-2) = 0 means T(1) + H(t^-2) = I, which is injective.
        assert!(sol.kernel.is_empty());
    }

    #[test]
    fn zero_index_tie_pp_equals_nn() {
        // a = b = 1: kappa_c = kappa_d = 0; H(1) = 0 on the Hardy space, so
        // the operator is the identity and phi = f through either branch.
        let one = RationalSymbol::one();
        let f = lp(&[(0, 2.0)]);
        let fe = HardyElement::new(f.clone(), &tol()).unwrap();
        let pair = MatchingPair::new(one.clone(), one.clone(), &tol()).unwrap();
        let sp = subordinated_pair(&pair, &tol()).unwrap();
        let pp = solve_case_pp(&sp, &fe, &tol()).unwrap();
        let nn = solve_case_nn(&sp, &fe, &tol()).unwrap();
        let phi_pp = pp.particular.unwrap();
        let phi_nn = nn.particular.unwrap();
        assert!(phi_pp.value().approx_eq(phi_nn.value(), 1e-13));
        assert!(phi_pp.value().approx_eq(&f, 1e-13));
        assert!(pp.kernel.is_empty() && nn.kernel.is_empty());

        let dispatched = solve(&one, &one, &f, &tol()).unwrap();
        assert_eq!(dispatched.case_tag, CaseTag::Pp);
    }

    #[test]
    fn wrong_case_errors() {
        let pair = MatchingPair::new(lp(&[(-2, 1.0)]), lp(&[(2, 1.0)]), &tol()).unwrap();
        let sp = subordinated_pair(&pair, &tol()).unwrap(); // kappa_c = 4
        let f = HardyElement::zero();
        assert!(matches!(
            solve_case_nn(&sp, &f, &tol()),
            Err(Error::WrongCase { .. })
        ));
        assert!(matches!(
            solve_case_np(&sp, &pair, &f, &tol()),
            Err(Error::WrongCase { .. })
        ));
    }

    #[test]
    fn solve_rejects_non_hardy_rhs() {
        let one = RationalSymbol::one();
        let bad = lp(&[(-1, 1.0)]);
        assert!(matches!(
            solve(&one, &one, &bad, &tol()),
            Err(Error::NotHardy { .. })
        ));
    }

    #[test]
    fn conversion_round_trip_example_one() {
        // phi solves (T+H)phi = f and psi solves (T-H)psi = f; the converted
        // pair must satisfy the triangular system with right-hand side (2f, 0).
        let a = lp(&[(-2, 1.0)]);
        let b = lp(&[(2, 1.0)]);
        let f = lp(&[(4, 3.0), (6, 1.0)]);
        let pair = MatchingPair::new(a.clone(), b.clone(), &tol()).unwrap();
        let sp = subordinated_pair(&pair, &tol()).unwrap();
        let phi = HardyElement::new(lp(&[(6, 3.0), (8, 1.0)]), &tol()).unwrap();
        // For this pair H(b)psi = 0 on the relevant support, so psi = phi
        // also solves the minus equation.
        let psi = phi.clone();
        let (x1, x2) = convert_th_to_matrix(&phi, &psi, &pair, &tol()).unwrap();
        assert!(x1.value().approx_eq(&lp(&[(6, 6.0), (8, 2.0)]), 1e-12));
        assert!(x2.value().approx_eq(&lp(&[(4, 6.0), (6, 2.0)]), 1e-12));
        // Apply T(V(a,b)) = [[0, d], [-c, a~^{-1}]] row-wise under P.
        let row1 = crate::symbol::project_p(&(sp.d() * x2.value()), &tol()).unwrap();
        assert!(row1.approx_eq(&f.scale(c64(2.0, 0.0)), 1e-12));
        let row2_sym = &(&(-sp.c()) * x1.value()) + &(sp.a_tilde_inv() * x2.value());
        let row2 = crate::symbol::project_p(&row2_sym, &tol()).unwrap();
        assert!(row2.approx_eq(&RationalSymbol::zero(), 1e-12));

        // And back: Phi = 2(t^8 + 3t^6), Psi = 2f reproduces phi.
        let phi_big = HardyElement::new(lp(&[(6, 6.0), (8, 2.0)]), &tol()).unwrap();
        let psi_big = HardyElement::new(f.scale(c64(2.0, 0.0)), &tol()).unwrap();
        let back = convert_matrix_to_th(&phi_big, &psi_big, &sp, &tol()).unwrap();
        assert!(back.value().approx_eq(phi.value(), 1e-12));

        // Zero maps to zero.
        let zero = convert_matrix_to_th(&HardyElement::zero(), &HardyElement::zero(), &sp, &tol())
            .unwrap();
        assert!(zero.is_zero());
    }
}
