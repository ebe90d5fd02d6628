//! The four case solvers, dispatched on the signs of `(kappa_c, kappa_d)`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::factorization::factorize;
use crate::linalg;
use crate::operators::{
    coefficient_l2_norm, th_apply, toeplitz_apply, toeplitz_left_inverse_apply,
    toeplitz_right_inverse_apply, HardyElement,
};
use crate::symbol::{fourier_coefficients, project_p, RationalSymbol};
use crate::tolerance::Tolerances;

use super::convert::convert_matrix_to_th;
use super::kernel::{theorem_kernel, KernelBasis};
use super::{
    CaseTag, Condition, MatchingPair, NpShift, Solvability, SolvabilityReport, SolutionSet,
    SubordinatedPair,
};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

fn residual_of(
    sp: &SubordinatedPair,
    particular: &HardyElement,
    f: &HardyElement,
    tol: &Tolerances,
) -> Result<f64> {
    let image = th_apply(sp.pair().a(), sp.pair().b(), particular, tol)?;
    coefficient_l2_norm(&(image.value() - f.value()), tol)
}

/// First block of the solvability conditions: the pairings
/// `int conj(d_-^{-1}(t)) t^j conj(f(t)) |dt|`, `j = 0 .. -kappa_d - 1`,
/// evaluated exactly as `2 pi conj(h_j)` for the Fourier coefficients `h_j`
/// of `d_-^{-1} f`.
fn d_side_conditions(
    sp: &SubordinatedPair,
    f: &HardyElement,
    tol: &Tolerances,
) -> Result<Vec<Condition>> {
    let count = -sp.kappa_d();
    if count <= 0 {
        return Ok(Vec::new());
    }
    let d_minus_inv = sp.d_fact().base().minus().inverse()?;
    let h = &d_minus_inv * f.value();
    let coeffs = fourier_coefficients(&h, 0, count - 1, tol)?;
    Ok(coeffs
        .iter()
        .enumerate()
        .map(|(j, &v)| Condition {
            index: j,
            test_function: format!("conj(d_-^-1(t)) t^{j}"),
            value: TWO_PI * v.conj(),
        })
        .collect())
}

/// Second block of the solvability conditions, built with circle-conjugated
/// symbols: `int [T_r^{-1}(conj d) T(conj(a~^{-1})) (conj(c_-^{-1}) t^j)](t)
/// conj(f(t)) |dt|`, `j = 0 .. -kappa_c - 1`.
fn c_side_conditions(
    sp: &SubordinatedPair,
    f: &HardyElement,
    tol: &Tolerances,
) -> Result<Vec<Condition>> {
    let count = -sp.kappa_c();
    if count <= 0 {
        return Ok(Vec::new());
    }
    let d_bar_fact = factorize(&sp.d().circle_conjugate(), tol)?;
    let a_tilde_inv_bar = sp.a_tilde_inv().circle_conjugate();
    let c_minus_inv_bar = sp.c_fact().base().minus().inverse()?.circle_conjugate();
    let mut conditions = Vec::new();
    for j in 0..count {
        let test = &c_minus_inv_bar * &RationalSymbol::monomial(j, Complex64::new(1.0, 0.0));
        let test = HardyElement::new(test, tol)?;
        let v = toeplitz_apply(&a_tilde_inv_bar, &test, tol)?;
        let g = toeplitz_right_inverse_apply(&d_bar_fact, &v, tol)?;
        let value = crate::operators::inner_product(g.value(), f.value(), tol)?;
        conditions.push(Condition {
            index: j as usize,
            test_function: format!("T_r^-1(conj d) T(conj(a~^-1)) (conj(c_-^-1) t^{j})"),
            value,
        });
    }
    Ok(conditions)
}

fn conditions_hold(conditions: &[Condition], tol: &Tolerances) -> bool {
    conditions.iter().all(|c| c.value.norm() < tol.residual)
}

/// Particular solution through the matrix system: `Phi = 2 inv_c(T(a~^{-1})
/// inv_d(f))`, `Psi = 2 inv_d(f)`, then the matrix-to-scalar conversion.
fn particular_via<FC, FD>(
    sp: &SubordinatedPair,
    f: &HardyElement,
    inv_c: FC,
    inv_d: FD,
    tol: &Tolerances,
) -> Result<HardyElement>
where
    FC: Fn(&HardyElement) -> Result<HardyElement>,
    FD: Fn(&HardyElement) -> Result<HardyElement>,
{
    let w = inv_d(f)?;
    let v = toeplitz_apply(sp.a_tilde_inv(), &w, tol)?;
    let u = inv_c(&v)?;
    let two = Complex64::new(2.0, 0.0);
    convert_matrix_to_th(&u.scale(two), &w.scale(two), sp, tol)
}

/// Both indices nonnegative: solvable for every Hardy right-hand side, with
/// the kernel given by the generating functions.
pub fn solve_case_pp(
    sp: &SubordinatedPair,
    f: &HardyElement,
    tol: &Tolerances,
) -> Result<SolutionSet> {
    if sp.kappa_c() < 0 || sp.kappa_d() < 0 {
        return Err(Error::WrongCase {
            expected: "kappa_c >= 0 and kappa_d >= 0",
            kappa_c: sp.kappa_c(),
            kappa_d: sp.kappa_d(),
        });
    }
    let particular = particular_via(
        sp,
        f,
        |x| toeplitz_right_inverse_apply(sp.c_fact().base(), x, tol),
        |x| toeplitz_right_inverse_apply(sp.d_fact().base(), x, tol),
        tol,
    )?;
    let kernel = theorem_kernel(sp, tol)?;
    let residual = residual_of(sp, &particular, f, tol)?;
    Ok(SolutionSet {
        case_tag: CaseTag::Pp,
        particular: Some(particular),
        kernel,
        residual: Some(residual),
        report: SolvabilityReport {
            conditions: Vec::new(),
            method_applicable: true,
            solvability: Solvability::Solvable,
            notes: "both subordinated indices nonnegative; the equation is solvable \
                    for every Hardy right-hand side"
                .to_string(),
            np_shift: None,
        },
    })
}

/// Both indices nonpositive: unique solution when the orthogonality
/// conditions hold, otherwise the method is not applicable (the equation may
/// still be solvable).
pub fn solve_case_nn(
    sp: &SubordinatedPair,
    f: &HardyElement,
    tol: &Tolerances,
) -> Result<SolutionSet> {
    if sp.kappa_c() > 0 || sp.kappa_d() > 0 {
        return Err(Error::WrongCase {
            expected: "kappa_c <= 0 and kappa_d <= 0",
            kappa_c: sp.kappa_c(),
            kappa_d: sp.kappa_d(),
        });
    }
    let mut conditions = d_side_conditions(sp, f, tol)?;
    conditions.extend(c_side_conditions(sp, f, tol)?);
    if conditions_hold(&conditions, tol) {
        let particular = particular_via(
            sp,
            f,
            |x| toeplitz_left_inverse_apply(sp.c_fact().base(), x, tol),
            |x| toeplitz_left_inverse_apply(sp.d_fact().base(), x, tol),
            tol,
        )?;
        let residual = residual_of(sp, &particular, f, tol)?;
        Ok(SolutionSet {
            case_tag: CaseTag::Nn,
            particular: Some(particular),
            kernel: KernelBasis::empty(),
            residual: Some(residual),
            report: SolvabilityReport {
                conditions,
                method_applicable: true,
                solvability: Solvability::Solvable,
                notes: "orthogonality conditions hold; the solution is unique".to_string(),
                np_shift: None,
            },
        })
    } else {
        Ok(SolutionSet {
            case_tag: CaseTag::Nn,
            particular: None,
            kernel: KernelBasis::empty(),
            residual: None,
            report: SolvabilityReport {
                conditions,
                method_applicable: false,
                solvability: Solvability::Unknown,
                notes: "orthogonality conditions failed: the method covers right-hand \
                        sides f for which (2f, 0)^T lies in the image of the matrix \
                        operator, so the original equation may still be solvable"
                    .to_string(),
                np_shift: None,
            },
        })
    }
}

/// `kappa_c > 0`, `kappa_d < 0`: solvable under the d-side conditions, with
/// the kernel contributed by the c-side generators only.
pub fn solve_case_pn(
    sp: &SubordinatedPair,
    f: &HardyElement,
    tol: &Tolerances,
) -> Result<SolutionSet> {
    if sp.kappa_c() <= 0 || sp.kappa_d() >= 0 {
        return Err(Error::WrongCase {
            expected: "kappa_c > 0 and kappa_d < 0",
            kappa_c: sp.kappa_c(),
            kappa_d: sp.kappa_d(),
        });
    }
    let conditions = d_side_conditions(sp, f, tol)?;
    // The homogeneous solutions do not depend on f.
    let kernel = theorem_kernel(sp, tol)?;
    if conditions_hold(&conditions, tol) {
        let particular = particular_via(
            sp,
            f,
            |x| toeplitz_right_inverse_apply(sp.c_fact().base(), x, tol),
            |x| toeplitz_left_inverse_apply(sp.d_fact().base(), x, tol),
            tol,
        )?;
        let residual = residual_of(sp, &particular, f, tol)?;
        Ok(SolutionSet {
            case_tag: CaseTag::Pn,
            particular: Some(particular),
            kernel,
            residual: Some(residual),
            report: SolvabilityReport {
                conditions,
                method_applicable: true,
                solvability: Solvability::Solvable,
                notes: "d-side conditions hold".to_string(),
                np_shift: None,
            },
        })
    } else {
        Ok(SolutionSet {
            case_tag: CaseTag::Pn,
            particular: None,
            kernel,
            residual: None,
            report: SolvabilityReport {
                conditions,
                method_applicable: false,
                solvability: Solvability::Unknown,
                notes: "d-side conditions failed: the method covers right-hand sides f \
                        for which (2f, 0)^T lies in the image of the matrix operator, \
                        so the original equation may still be solvable"
                    .to_string(),
                np_shift: None,
            },
        })
    }
}

/// `kappa_c < 0`, `kappa_d > 0`: shift reduction. With n chosen so that
/// `0 <= 2n + kappa_c <= 1`, the pair `(a t^{-n}, b t^n)` has subordinated
/// pair `(c t^{-2n}, d)` with nonnegative indices; solutions of the shifted
/// equation lying in the image of `T(t^n)` (first n Fourier coefficients
/// zero) pull back through `T(t^{-n})`. Infeasibility of those membership
/// constraints proves the original equation unsolvable.
pub fn solve_case_np(
    sp: &SubordinatedPair,
    pair: &MatchingPair,
    f: &HardyElement,
    tol: &Tolerances,
) -> Result<SolutionSet> {
    if sp.kappa_c() >= 0 || sp.kappa_d() <= 0 {
        return Err(Error::WrongCase {
            expected: "kappa_c < 0 and kappa_d > 0",
            kappa_c: sp.kappa_c(),
            kappa_d: sp.kappa_d(),
        });
    }
    let kappa_c = sp.kappa_c();
    let n = if kappa_c % 2 == 0 {
        -kappa_c / 2
    } else {
        (1 - kappa_c) / 2
    };
    debug_assert!(n >= 1 && (0..=1).contains(&(2 * n + kappa_c)));

    let one = Complex64::new(1.0, 0.0);
    let shift_down = RationalSymbol::monomial(-n, one);
    let shift_up = RationalSymbol::monomial(n, one);
    let shifted_pair = MatchingPair::new(pair.a() * &shift_down, pair.b() * &shift_up, tol)?;
    let shifted_sp = super::subordinated_pair(&shifted_pair, tol)?;
    let inner = solve_case_pp(&shifted_sp, f, tol)?;
    let psi0 = inner
        .particular
        .as_ref()
        .expect("PP case always produces a particular solution");
    let kernel_elements = inner.kernel.elements();
    let arity = kernel_elements.len();

    // Membership in im T(t^n): the first n Fourier coefficients of the
    // shifted solution family must vanish.
    let rows = n as usize;
    let mut columns = Vec::with_capacity(arity);
    for e in kernel_elements {
        columns.push(fourier_coefficients(e.value(), 0, n - 1, tol)?);
    }
    let psi0_coeffs = fourier_coefficients(psi0.value(), 0, n - 1, tol)?;
    let m = DMatrix::from_fn(rows, arity, |j, i| columns[i][j]);
    let rhs = DVector::from_iterator(rows, psi0_coeffs.iter().map(|c| -c));
    let (x, constraint_residual, _) = linalg::lstsq(&m, &rhs, tol.rank);
    let achieved = &m * &x - &rhs;
    let conditions: Vec<Condition> = (0..rows)
        .map(|j| Condition {
            index: j,
            test_function: format!("Fourier coefficient {j} of the shifted solution"),
            value: achieved[j],
        })
        .collect();

    // Kernel of the original operator: null directions of the constraint
    // system, pulled back through T(t^{-n}).
    let mut kernel = Vec::new();
    for v in linalg::null_space(&m, tol.rank) {
        let mut combo = RationalSymbol::zero();
        for (i, e) in kernel_elements.iter().enumerate() {
            combo = &combo + &e.value().scale(v[i]);
        }
        let pulled = project_p(&(&combo * &shift_down), tol)?;
        kernel.push(HardyElement::from_projection(pulled));
    }
    let kernel = KernelBasis::new(kernel);

    let feasible = constraint_residual <= tol.constraint_residual;
    if feasible {
        let mut psi_star = psi0.value().clone();
        for (i, e) in kernel_elements.iter().enumerate() {
            psi_star = &psi_star + &e.value().scale(x[i]);
        }
        let particular =
            HardyElement::from_projection(project_p(&(&psi_star * &shift_down), tol)?);
        let residual = residual_of(sp, &particular, f, tol)?;
        Ok(SolutionSet {
            case_tag: CaseTag::Np,
            particular: Some(particular),
            kernel,
            residual: Some(residual),
            report: SolvabilityReport {
                conditions,
                method_applicable: true,
                solvability: Solvability::Solvable,
                notes: format!(
                    "shift reduction with n = {n}: the shifted equation was solved in \
                     the PP case and a solution lies in the image of T(t^{n})"
                ),
                np_shift: Some(NpShift {
                    n: n as u32,
                    inner_case: inner.case_tag,
                }),
            },
        })
    } else {
        Ok(SolutionSet {
            case_tag: CaseTag::Np,
            particular: None,
            kernel,
            residual: None,
            report: SolvabilityReport {
                conditions,
                method_applicable: false,
                solvability: Solvability::Unsolvable,
                notes: format!(
                    "shift reduction with n = {n}: no solution of the shifted equation \
                     lies in the image of T(t^{n}) (constraint residual {constraint_residual:.3e}), \
                     so the original equation has no solution"
                ),
                np_shift: Some(NpShift {
                    n: n as u32,
                    inner_case: inner.case_tag,
                }),
            },
        })
    }
}
