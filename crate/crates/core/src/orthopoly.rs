//! Monic orthogonal polynomials generated by a Jacobi sequence.

use crate::density::MeasureSpec;
use crate::error::{Error, Result};
use crate::jacobi::{jacobi_symmetric, JacobiSeq};
use crate::quadrature::integrate_walk_measure;

/// Monomial-basis coefficients, lowest degree first; leading coefficient 1.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicPoly {
    coeffs: Vec<f64>,
}

impl MonicPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }
}

/// `P_0(x) ..= P_n(x)` from `P_{k+1} = (x - beta_k) P_k - gamma_{k-1} P_{k-1}`.
pub fn eval_polys(jacobi: &JacobiSeq, x: f64, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n == 0 {
        return out;
    }
    out.push(x - jacobi.beta(0));
    for k in 1..n {
        let next = (x - jacobi.beta(k)) * out[k] - jacobi.gamma(k - 1) * out[k - 1];
        out.push(next);
    }
    out
}

/// Coefficient vectors of `P_0 ..= P_n`.
pub fn monic_coeffs(jacobi: &JacobiSeq, n: usize) -> Vec<MonicPoly> {
    let mut polys: Vec<Vec<f64>> = vec![vec![1.0]];
    for k in 0..n {
        let cur = &polys[k];
        let mut next = vec![0.0; k + 2];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= jacobi.beta(k) * c;
        }
        if k > 0 {
            let g = jacobi.gamma(k - 1);
            for (i, c) in polys[k - 1].iter().enumerate() {
                next[i] -= g * c;
            }
        }
        polys.push(next);
    }
    polys.into_iter().map(|coeffs| MonicPoly { coeffs }).collect()
}

/// `∫ P_m P_n dmu` for a walk measure, by quadrature.
pub fn orthogonality_residual(jacobi: &JacobiSeq, spec: &MeasureSpec, m: usize, n: usize) -> Result<f64> {
    let (r, c) = spec.require_walk()?;
    let top = m.max(n);
    Ok(integrate_walk_measure(r, c, r, |x| {
        let p = eval_polys(jacobi, x, top);
        p[m] * p[n]
    }))
}

/// Matrix of `∫ P_i P_j dmu` for `0 <= i, j <= n`.
pub fn gram_matrix(jacobi: &JacobiSeq, spec: &MeasureSpec, n: usize) -> Result<Vec<Vec<f64>>> {
    let (r, c) = spec.require_walk()?;
    let mut gram = vec![vec![0.0; n + 1]; n + 1];
    for (i, row) in gram.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = integrate_walk_measure(r, c, r, |x| {
                let p = eval_polys(jacobi, x, n);
                p[i] * p[j]
            });
        }
    }
    Ok(gram)
}

/// Right-hand side coefficients `(c2, c3)` of
/// `(4 - 4xz + r²z²) Q(x, z) = 4 + c2 z² + c3 x z³`.
pub fn genfun_rhs(r: f64) -> (f64, f64) {
    let s = (1.0 - r * r).sqrt();
    (r * r - 4.0 + 4.0 * s, 2.0 - 2.0 * s - r * r)
}

/// `|(4 - 4xz + r²z²) Q_N(x, z) - RHS|` with `Q_N` the partial sum
/// `Σ_{n<=N} P_n(x) z^n` of the symmetric walk polynomials.
pub fn genfun_residual(x: f64, z: f64, r: f64, terms: usize) -> Result<f64> {
    let (c2, c3) = genfun_rhs(r);
    genfun_residual_with(x, z, r, terms, c2, c3)
}

/// [`genfun_residual`] against caller-supplied right-hand coefficients.
pub fn genfun_residual_with(x: f64, z: f64, r: f64, terms: usize, c2: f64, c3: f64) -> Result<f64> {
    if z.abs() >= 0.5 {
        return Err(Error::invalid(format!("|z| = {} must be below 1/2", z.abs())));
    }
    let jacobi = jacobi_symmetric(r)?;
    let polys = eval_polys(&jacobi, x, terms);
    let mut partial = 0.0;
    let mut power = 1.0;
    for p in &polys {
        partial += p * power;
        power *= z;
    }
    let lhs = (4.0 - 4.0 * x * z + r * r * z * z) * partial;
    let rhs = 4.0 + c2 * z * z + c3 * x * z * z * z;
    Ok((lhs - rhs).abs())
}

/// Roots of `poly` in `[lo, hi]`, located by sign changes on a uniform grid
/// of `samples` points and refined by bisection.
pub fn real_roots(poly: &MonicPoly, lo: f64, hi: f64, samples: usize) -> Vec<f64> {
    let step = (hi - lo) / (samples - 1) as f64;
    let mut roots = Vec::new();
    let mut x0 = lo;
    let mut f0 = poly.eval(x0);
    for i in 1..samples {
        let x1 = lo + step * i as f64;
        let f1 = poly.eval(x1);
        if f0 == 0.0 {
            roots.push(x0);
        } else if f0 * f1 < 0.0 {
            let (mut a, mut b, mut fa) = (x0, x1, f0);
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                let fm = poly.eval(m);
                if fm == 0.0 || b - a < 1e-15 {
                    a = m;
                    b = m;
                    break;
                }
                if fa * fm < 0.0 {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            roots.push(0.5 * (a + b));
        }
        x0 = x1;
        f0 = f1;
    }
    roots
}

/// Whether `inner` (degree n roots) strictly interlaces `outer` (degree n+1).
pub fn interlaces(inner: &[f64], outer: &[f64]) -> bool {
    outer.len() == inner.len() + 1
        && inner
            .iter()
            .enumerate()
            .all(|(i, x)| outer[i] < *x && *x < outer[i + 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi::jacobi_c1;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    fn hadamard() -> JacobiSeq {
        jacobi_symmetric(FRAC_1_SQRT_2).unwrap()
    }

    #[test]
    fn recurrence_base() {
        let j = jacobi_c1(0.6).unwrap();
        let p = eval_polys(&j, 0.3, 1);
        assert_eq!(p[0], 1.0);
        assert_eq!(p[1], 0.3 - j.beta(0));
        assert_eq!(eval_polys(&j, 0.3, 0), vec![1.0]);
    }

    #[test]
    fn hadamard_p2_at_half() {
        let p = eval_polys(&hadamard(), 0.5, 2);
        assert_abs_diff_eq!(p[2], 0.25 + (-2.0 + SQRT_2) / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p[2], -0.042893, epsilon = 1e-6);
    }

    #[test]
    fn odd_polys_vanish_at_origin() {
        let p = eval_polys(&hadamard(), 0.0, 11);
        for n in (1..=11).step_by(2) {
            assert_eq!(p[n], 0.0);
        }
    }

    #[test]
    fn hadamard_table() {
        let polys = monic_coeffs(&hadamard(), 6);
        assert_eq!(polys[0].coeffs(), &[1.0]);
        let p4 = polys[4].coeffs();
        assert_abs_diff_eq!(p4[0], (2.0 - SQRT_2) / 16.0, epsilon = 1e-15);
        let p6 = polys[6].coeffs();
        assert_abs_diff_eq!(p6[4], (-9.0 + 2.0 * SQRT_2) / 8.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p6[2], (21.0 - 8.0 * SQRT_2) / 64.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p6[0], (-2.0 + SQRT_2) / 128.0, epsilon = 1e-15);
        assert_eq!(p6[6], 1.0);
    }

    #[test]
    fn coefficients_agree_with_recurrence() {
        for j in [hadamard(), jacobi_c1(0.8).unwrap()] {
            let polys = monic_coeffs(&j, 10);
            for i in 0..=40 {
                let x = -1.0 + 0.05 * i as f64;
                let direct = eval_polys(&j, x, 10);
                for (p, v) in polys.iter().zip(&direct) {
                    assert_abs_diff_eq!(p.eval(x), *v, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn symmetric_parity() {
        for p in monic_coeffs(&jacobi_symmetric(0.4).unwrap(), 10) {
            let d = p.degree();
            for (i, c) in p.coeffs().iter().enumerate() {
                if (d + i) % 2 == 1 {
                    assert_eq!(*c, 0.0);
                }
            }
        }
    }

    #[test]
    fn orthogonality_examples() {
        let spec = MeasureSpec::symmetric(FRAC_1_SQRT_2).unwrap();
        let j = hadamard();
        assert!(orthogonality_residual(&j, &spec, 1, 2).unwrap().abs() < 1e-14);
        assert_abs_diff_eq!(orthogonality_residual(&j, &spec, 0, 0).unwrap(), 1.0, epsilon = 1e-12);
        let expected = ((2.0 - SQRT_2) / 2.0) * ((SQRT_2 - 1.0) / 4.0) * 0.125;
        assert_abs_diff_eq!(orthogonality_residual(&j, &spec, 3, 3).unwrap(), expected, epsilon = 1e-12);
    }

    #[test]
    fn c1_orthogonality() {
        let r = 0.8;
        let spec = MeasureSpec::asymmetric(r, 1.0).unwrap();
        let j = jacobi_c1(r).unwrap();
        let gram = gram_matrix(&j, &spec, 8).unwrap();
        for (i, row) in gram.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                if i != k {
                    assert!(v.abs() < 1e-9, "<P_{i}, P_{k}> = {v}");
                } else {
                    assert_abs_diff_eq!(*v, j.norm_sq(i), epsilon = 1e-9);
                }
            }
        }
    }

    #[test]
    fn genfun_zero_z() {
        assert_eq!(genfun_residual(0.3, 0.0, 0.6, 10).unwrap(), 0.0);
    }

    #[test]
    fn genfun_residuals_small() {
        assert!(genfun_residual(0.4, 0.3, FRAC_1_SQRT_2, 40).unwrap() < 1e-10);
        assert!(genfun_residual(-0.8, 0.25, 0.6, 40).unwrap() < 1e-9);
    }

    #[test]
    fn genfun_residual_decays() {
        let mut last = f64::INFINITY;
        for n in [10, 20, 30] {
            let r = genfun_residual(0.9, 0.45, 0.9, n).unwrap();
            assert!(r < last);
            last = r;
        }
        assert!(genfun_residual(0.1, 0.6, 0.5, 20).is_err());
    }

    #[test]
    fn genfun_hadamard_rhs() {
        let (c2, c3) = genfun_rhs(FRAC_1_SQRT_2);
        assert_abs_diff_eq!(c2, -3.5 + 2.0 * SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(c3, 1.5 - SQRT_2, epsilon = 1e-15);
    }

    #[test]
    fn zeros_interlace() {
        for j in [hadamard(), jacobi_c1(0.8).unwrap(), jacobi_symmetric(0.3).unwrap()] {
            let polys = monic_coeffs(&j, 8);
            for n in 1..=7 {
                let a = real_roots(&polys[n], -1.0, 1.0, 2001);
                let b = real_roots(&polys[n + 1], -1.0, 1.0, 2001);
                assert_eq!(a.len(), n);
                assert!(interlaces(&a, &b), "degree {n}: {a:?} vs {b:?}");
            }
        }
    }
}
