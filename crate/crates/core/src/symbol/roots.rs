//! Complex polynomial root finding.
//!
//! Roots are found by Aberth-Ehrlich simultaneous iteration, an equivalent
//! of the companion-matrix eigenvalue approach for the bounded degrees that
//! occur here. Initial points and iteration order are fixed, so results are
//! deterministic.
//!
//! Symbol products routinely stack repeated factors, so polynomials with
//! genuine multiple roots are common. An m-fold root can only be located to
//! about `eps^(1/m)` by any black-box iteration; [`cluster_roots`] therefore
//! regroups the returned approximations, decides between "one multiple root"
//! and "several close roots" by comparing coefficient reconstruction errors,
//! and polishes each m-fold root with Newton's method on the (m-1)-th
//! derivative, where the root is simple again.

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 400;
const TARGET_STEP: f64 = 1e-14;
/// Residual floor multiplier: a root is accepted once `|p(z)|` is within
/// this factor of the machine-precision evaluation noise.
const RESIDUAL_SLACK: f64 = 64.0;
/// Ladder of relative linkage radii for hypothesizing that a clump of
/// approximations is one multiple root. An m-fold root under coefficient
/// noise eta splits into a cluster of radius eta^(1/m), so high
/// multiplicities need generous radii; the functional gate keeps false
/// merges out.
const MERGE_RADII: [f64; 3] = [3e-3, 2e-2, 8e-2];
/// A merge hypothesis is accepted when the rebuilt polynomial deviates from
/// the original by at most this fraction of its sup on the unit circle.
const FUNCTIONAL_GATE: f64 = 1e-8;

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    // Returns (p(z), p'(z)).
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Magnitude bound on the evaluation of `p` at `z`: `sum |a_k| |z|^k`.
fn eval_scale(coeffs: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    let mut scale = 0.0;
    let mut power = 1.0;
    for c in coeffs {
        scale += c.norm() * power;
        power *= r;
    }
    scale.max(1e-300)
}

/// All roots (with multiplicity, unmerged) of the polynomial with ascending
/// coefficients `coeffs[0] + coeffs[1] t + ...`.
///
/// Constants yield an empty list. Exact zero coefficients at the low end
/// produce roots at the origin directly. Approximations are accepted once
/// their residual reaches the machine-precision floor, so multiple roots
/// come back as clumps of radius `~eps^(1/m)`; see [`cluster_roots`].
pub fn polynomial_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    // Leading coefficients that are negligible relative to the polynomial's
    // scale are roundoff artifacts of coefficient arithmetic; keeping them
    // would manufacture phantom roots of astronomical modulus.
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let lead_floor = scale * 1e-12;
    let mut hi = coeffs.len();
    while hi > 0 && coeffs[hi - 1].norm() <= lead_floor {
        hi -= 1;
    }
    if hi <= 1 {
        return Ok(Vec::new());
    }
    let mut lo = 0;
    while coeffs[lo].norm() == 0.0 {
        lo += 1;
    }
    let mut roots = vec![Complex64::new(0.0, 0.0); lo];
    let work = &coeffs[lo..hi];
    let n = work.len() - 1;
    if n == 0 {
        return Ok(roots);
    }

    let lead = work[n];
    let monic: Vec<Complex64> = work.iter().map(|c| c / lead).collect();

    if n == 1 {
        roots.push(-monic[0]);
        return Ok(roots);
    }
    if n == 2 {
        // Stable quadratic formula.
        let b = monic[1];
        let c = monic[0];
        let disc = (b * b - 4.0 * c).sqrt();
        let q = if (b + disc).norm() >= (b - disc).norm() {
            -(b + disc) / 2.0
        } else {
            -(b - disc) / 2.0
        };
        let r1 = q;
        let r2 = if q.norm() > 0.0 { c / q } else { -b - q };
        roots.push(r1);
        roots.push(r2);
        return Ok(roots);
    }

    // Fujiwara bound keeps all roots inside the start circle without the
    // huge radii (and overflowing evaluations) the plain Cauchy bound gives
    // for spread-out coefficients.
    let radius = 2.0
        * (1..=n)
            .map(|k| monic[n - k].norm().powf(1.0 / k as f64))
            .fold(0.0, f64::max);
    let radius = radius.max(1e-3);
    let center = -monic[n - 1] / n as f64;
    let start = |k: usize, phase: f64| {
        let angle = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + phase;
        center + radius * Complex64::new(angle.cos(), angle.sin())
    };
    let mut z: Vec<Complex64> = (0..n).map(|k| start(k, 0.7)).collect();

    let noise = |zi: Complex64| RESIDUAL_SLACK * f64::EPSILON * (n + 1) as f64 * eval_scale(&monic, zi);
    for _ in 0..MAX_ITERATIONS {
        let mut max_step: f64 = 0.0;
        let mut all_at_floor = true;
        for i in 0..n {
            let (p, dp) = horner(&monic, z[i]);
            if p.norm() <= noise(z[i]) {
                continue;
            }
            all_at_floor = false;
            let newton = if dp.norm() > 0.0 {
                p / dp
            } else {
                Complex64::new(TARGET_STEP, TARGET_STEP)
            };
            let mut deflate = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm() > 0.0 {
                        deflate += 1.0 / diff;
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * deflate;
            let step = if denom.norm() > 1e-300 {
                newton / denom
            } else {
                newton
            };
            z[i] -= step;
            if !z[i].is_finite() {
                // Deterministic restart for a runaway approximation.
                z[i] = start(i, 2.3);
            }
            let rel = step.norm() / (1.0 + z[i].norm());
            if rel > max_step {
                max_step = rel;
            }
        }
        if all_at_floor || max_step <= TARGET_STEP {
            break;
        }
    }

    for &zi in &z {
        let (p, _) = horner(&monic, zi);
        if !zi.is_finite() || p.norm() > 1e6 * noise(zi) {
            if std::env::var_os("TPH_DEBUG_ROOTS").is_some() {
                eprintln!(
                    "root failure at {zi}: |p| = {:.3e}, floor = {:.3e}; monic:",
                    p.norm(),
                    noise(zi)
                );
                for (i, co) in monic.iter().enumerate() {
                    eprintln!("  [{i}] {co:?}");
                }
            }
            return Err(Error::RootFindingFailure { degree: n });
        }
    }
    roots.extend(z);
    Ok(roots)
}

/// Ascending-coefficient derivative.
fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as f64)
        .collect()
}

/// Guarded Newton polish; returns `start` if the iteration misbehaves.
fn newton_refine(coeffs: &[Complex64], start: Complex64, basin: f64) -> Complex64 {
    let mut z = start;
    for _ in 0..40 {
        let (p, dp) = horner(coeffs, z);
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        z -= step;
        if !z.is_finite() || (z - start).norm() > basin {
            return start;
        }
        if step.norm() <= 1e-16 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

/// Single-linkage clustering with a per-point radius.
fn link_clusters<F: Fn(Complex64) -> f64>(roots: &[Complex64], radius: F) -> Vec<Vec<Complex64>> {
    let mut sorted: Vec<Complex64> = roots.to_vec();
    sorted.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    let mut clusters: Vec<Vec<Complex64>> = Vec::new();
    for root in sorted {
        let found = clusters.iter_mut().find(|cluster| {
            cluster
                .iter()
                .any(|&m| (m - root).norm() <= radius(m).max(radius(root)))
        });
        match found {
            Some(cluster) => cluster.push(root),
            None => clusters.push(vec![root]),
        }
    }
    clusters
}

fn cluster_mean(cluster: &[Complex64]) -> Complex64 {
    cluster.iter().sum::<Complex64>() / cluster.len() as f64
}

/// Refines the representative of a multiplicity-m cluster. For m >= 2 the
/// (m-1)-th derivative has a simple root at the multiple root.
fn refine_representative(coeffs: &[Complex64], mean: Complex64, m: usize) -> Complex64 {
    if mean.norm() == 0.0 {
        return mean;
    }
    let basin = 0.05 * (1.0 + mean.norm());
    if m == 1 {
        return newton_refine(coeffs, mean, basin);
    }
    let mut dcoeffs = coeffs.to_vec();
    for _ in 0..m - 1 {
        dcoeffs = derivative(&dcoeffs);
    }
    newton_refine(&dcoeffs, mean, basin)
}

/// Sup deviation on the unit circle between `coeffs` and the polynomial
/// rebuilt from a root hypothesis, relative to the sup of `coeffs` there.
/// The lead is taken at the hypothesis degree, so relative-trimmed phantom
/// leads do not skew the comparison.
fn circle_deviation(coeffs: &[Complex64], hypothesis: &[(Complex64, usize)]) -> f64 {
    let total: usize = hypothesis.iter().map(|&(_, m)| m).sum();
    if total >= coeffs.len() {
        return f64::INFINITY;
    }
    let rebuilt = poly_from_roots(coeffs[total], hypothesis);
    let eval = |p: &[Complex64], t: Complex64| {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in p.iter().rev() {
            acc = acc * t + c;
        }
        acc
    };
    let mut dev = 0.0f64;
    let mut scale = 0.0f64;
    for k in 0..64 {
        let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.29) / 64.0;
        let t = Complex64::new(theta.cos(), theta.sin());
        let original = eval(coeffs, t);
        scale = scale.max(original.norm());
        dev = dev.max((eval(&rebuilt, t) - original).norm());
    }
    dev / scale.max(1e-300)
}

/// Groups root approximations of the polynomial `coeffs` into
/// `(location, multiplicity)` pairs.
///
/// Approximations within `merge_tol` always merge. Wider clumps are read as
/// one multiple root when the rebuilt polynomial agrees with the original on
/// the unit circle within [`FUNCTIONAL_GATE`]: a genuine m-fold root under
/// coefficient noise eta splits into a cluster of radius eta^(1/m), which
/// the merged reading reconstructs to eta, whereas falsely merging roots at
/// separation d perturbs the polynomial by about d^2. Every accepted
/// representative is Newton-polished (on the (m-1)-th derivative for m-fold
/// roots), which recovers noise-level accuracy.
pub fn cluster_roots(
    coeffs: &[Complex64],
    roots: &[Complex64],
    merge_tol: f64,
) -> Vec<(Complex64, usize)> {
    if roots.is_empty() {
        return Vec::new();
    }
    let strict = link_clusters(roots, |z| merge_tol * (1.0 + z.norm()));
    let mut entries: Vec<(Complex64, usize)> = strict
        .iter()
        .map(|cl| (refine_representative(coeffs, cluster_mean(cl), cl.len()), cl.len()))
        .collect();

    for radius in MERGE_RADII {
        if entries.len() <= 1 {
            break;
        }
        let points: Vec<Complex64> = entries.iter().map(|&(z, _)| z).collect();
        let clumps = link_clusters(&points, |z| radius * (1.0 + z.norm()));
        if clumps.len() == entries.len() {
            continue;
        }
        // Unresolved multiple roots keep the whole root list loose, so each
        // merge is judged against the current representation quality rather
        // than an absolute floor.
        let current_dev = circle_deviation(coeffs, &entries);
        let mut next: Vec<(Complex64, usize)> = Vec::new();
        for clump in &clumps {
            let members: Vec<usize> = entries
                .iter()
                .enumerate()
                .filter(|(_, (z, _))| clump.iter().any(|c| (c - z).norm() == 0.0))
                .map(|(i, _)| i)
                .collect();
            if members.len() <= 1 {
                next.extend(members.iter().map(|&i| entries[i]));
                continue;
            }
            let total: usize = members.iter().map(|&i| entries[i].1).sum();
            let mean = members
                .iter()
                .map(|&i| entries[i].0 * entries[i].1 as f64)
                .sum::<Complex64>()
                / total as f64;
            let rep = refine_representative(coeffs, mean, total);
            let mut hypothesis: Vec<(Complex64, usize)> = entries
                .iter()
                .enumerate()
                .filter(|(i, _)| !members.contains(i))
                .map(|(_, &e)| e)
                .collect();
            hypothesis.push((rep, total));
            if circle_deviation(coeffs, &hypothesis)
                <= FUNCTIONAL_GATE.max(2.0 * current_dev)
            {
                next.push((rep, total));
            } else {
                next.extend(members.iter().map(|&i| entries[i]));
            }
        }
        entries = next;
    }
    entries
}

/// Expands `lead * prod (t - z_i)^{m_i}` into ascending dense coefficients.
pub fn poly_from_roots(lead: Complex64, roots: &[(Complex64, usize)]) -> Vec<Complex64> {
    let mut coeffs = vec![lead];
    for &(z, m) in roots {
        for _ in 0..m {
            // Multiply by (t - z).
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * z;
            }
            coeffs = next;
        }
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted_by_re(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        v
    }

    #[test]
    fn linear_and_quadratic() {
        let r = polynomial_roots(&[c(-2.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!((r[0] - c(2.0, 0.0)).norm() < 1e-14);

        // (t - 1/2)(t - 2) = t^2 - 2.5 t + 1
        let r = sorted_by_re(
            polynomial_roots(&[c(1.0, 0.0), c(-2.5, 0.0), c(1.0, 0.0)]).unwrap(),
        );
        assert!((r[0] - c(0.5, 0.0)).norm() < 1e-12);
        assert!((r[1] - c(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn higher_degree_with_complex_roots() {
        // (t - 2)(t + 3i)(t - 1/2)(t + 1) expanded.
        let roots_true = [c(2.0, 0.0), c(0.0, -3.0), c(0.5, 0.0), c(-1.0, 0.0)];
        let coeffs = poly_from_roots(
            c(1.0, 0.0),
            &roots_true.iter().map(|&z| (z, 1)).collect::<Vec<_>>(),
        );
        let found = polynomial_roots(&coeffs).unwrap();
        for want in roots_true {
            assert!(
                found.iter().any(|&got| (got - want).norm() < 1e-10),
                "missing root {want}"
            );
        }
    }

    #[test]
    fn double_root_merges_accurately() {
        // (t - 2)^2 = t^2 - 4t + 4
        let coeffs = [c(4.0, 0.0), c(-4.0, 0.0), c(1.0, 0.0)];
        let r = polynomial_roots(&coeffs).unwrap();
        let merged = cluster_roots(&coeffs, &r, 1e-7);
        assert_eq!(merged.len(), 1);
        assert_eq!(merged[0].1, 2);
        assert!((merged[0].0 - c(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn quadruple_root_recovered() {
        // (t - z)^4 (t - 3)(t + 1) with complex z near the unit circle.
        let z = c(0.5336, 1.0279);
        let coeffs = poly_from_roots(
            c(1.0, 0.0),
            &[(z, 4), (c(3.0, 0.0), 1), (c(-1.0, 0.0), 1)],
        );
        let r = polynomial_roots(&coeffs).unwrap();
        let merged = cluster_roots(&coeffs, &r, 1e-7);
        let quad = merged
            .iter()
            .find(|&&(_, m)| m == 4)
            .expect("quadruple root must be recognized");
        assert!(
            (quad.0 - z).norm() < 1e-10,
            "representative off by {}",
            (quad.0 - z).norm()
        );
        assert_eq!(merged.iter().map(|&(_, m)| m).sum::<usize>(), 6);
    }

    #[test]
    fn close_but_distinct_roots_stay_separate() {
        // Roots 2e-3 apart must not be merged into a double root.
        let z1 = c(1.5, 0.0);
        let z2 = c(1.5 + 2e-3, 0.0);
        let coeffs = poly_from_roots(c(1.0, 0.0), &[(z1, 1), (z2, 1), (c(-2.0, 0.0), 1)]);
        let r = polynomial_roots(&coeffs).unwrap();
        let merged = cluster_roots(&coeffs, &r, 1e-7);
        assert_eq!(merged.len(), 3);
        assert!(merged.iter().all(|&(_, m)| m == 1));
        assert!(merged.iter().any(|&(z, _)| (z - z1).norm() < 1e-9));
        assert!(merged.iter().any(|&(z, _)| (z - z2).norm() < 1e-9));
    }

    #[test]
    fn zero_roots_stripped_exactly() {
        // t^2 (t - 3)
        let coeffs = [c(0.0, 0.0), c(0.0, 0.0), c(-3.0, 0.0), c(1.0, 0.0)];
        let r = polynomial_roots(&coeffs).unwrap();
        assert_eq!(r.len(), 3);
        assert_eq!(r[0], c(0.0, 0.0));
        assert_eq!(r[1], c(0.0, 0.0));
        assert!((r[2] - c(3.0, 0.0)).norm() < 1e-12);
        let merged = cluster_roots(&coeffs, &r, 1e-7);
        assert!(merged.iter().any(|&(z, m)| z.norm() == 0.0 && m == 2));
    }

    #[test]
    fn constants_have_no_roots() {
        assert!(polynomial_roots(&[c(5.0, 0.0)]).unwrap().is_empty());
        assert!(polynomial_roots(&[]).unwrap().is_empty());
    }
}
