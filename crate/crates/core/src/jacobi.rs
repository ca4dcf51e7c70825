//! Jacobi coefficient sequences `(beta_n, gamma_n)`: closed forms for the walk
//! measures and recovery from raw moments.
//!
//! Convention: the monic orthogonal polynomials satisfy
//! `P_{n+1}(x) = (x - beta_n) P_n(x) - gamma_{n-1} P_{n-1}(x)`, and the
//! Stieltjes transform expands as
//! `1 / (z - beta_0 - gamma_0 / (z - beta_1 - gamma_1 / ...))`.

use crate::error::{Error, Result};
use crate::moments::MomentSeq;

/// An eventually-constant Jacobi sequence. Indices past the listed values
/// take the tail value.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiSeq {
    pub betas: Vec<f64>,
    pub gammas: Vec<f64>,
    pub tail_beta: f64,
    pub tail_gamma: f64,
}

impl JacobiSeq {
    pub fn new(betas: Vec<f64>, gammas: Vec<f64>, tail_beta: f64, tail_gamma: f64) -> Result<Self> {
        if gammas.iter().chain(std::iter::once(&tail_gamma)).any(|g| !(*g > 0.0)) {
            return Err(Error::invalid("Jacobi gammas must be positive"));
        }
        Ok(JacobiSeq {
            betas,
            gammas,
            tail_beta,
            tail_gamma,
        })
    }

    /// Constant sequence `beta_n = q`, `gamma_n = p`.
    pub fn constant(q: f64, p: f64) -> Result<Self> {
        Self::new(Vec::new(), Vec::new(), q, p)
    }

    pub fn beta(&self, n: usize) -> f64 {
        self.betas.get(n).copied().unwrap_or(self.tail_beta)
    }

    pub fn gamma(&self, n: usize) -> f64 {
        self.gammas.get(n).copied().unwrap_or(self.tail_gamma)
    }

    /// Index from which both sequences are constant.
    pub fn tail_start(&self) -> usize {
        self.betas.len().max(self.gammas.len())
    }

    /// Coefficients of the reflected measure `x -> -x`.
    pub fn reflected(&self) -> Self {
        JacobiSeq {
            betas: self.betas.iter().map(|b| -b).collect(),
            gammas: self.gammas.clone(),
            tail_beta: -self.tail_beta,
            tail_gamma: self.tail_gamma,
        }
    }

    /// `gamma_0 gamma_1 ... gamma_{n-1}`, the squared norm of `P_n`.
    pub fn norm_sq(&self, n: usize) -> f64 {
        (0..n).map(|k| self.gamma(k)).product()
    }
}

fn check_r(r: f64) -> Result<f64> {
    if r > 0.0 && r < 1.0 {
        Ok((1.0 - r * r).sqrt())
    } else {
        Err(Error::invalid(format!("r = {r} must lie in (0, 1)")))
    }
}

/// `mu(r, 0)`: `beta_n = 0`, `gamma_0 = 1 - s`, `gamma_1 = s (1 - s) / 2`,
/// `gamma_n = r²/4` for `n >= 2`, with `s = sqrt(1 - r²)`.
pub fn jacobi_symmetric(r: f64) -> Result<JacobiSeq> {
    let s = check_r(r)?;
    JacobiSeq::new(
        Vec::new(),
        vec![1.0 - s, s * (1.0 - s) / 2.0],
        0.0,
        r * r / 4.0,
    )
}

/// `mu(r, 1)`.
pub fn jacobi_c1(r: f64) -> Result<JacobiSeq> {
    let s = check_r(r)?;
    JacobiSeq::new(
        vec![1.0 - s, -(1.0 - s) / 2.0],
        vec![s * (1.0 - s)],
        0.0,
        r * r / 4.0,
    )
}

/// `mu(r, 1/r)`.
///
/// `gamma_0` is the variance `s (1 - s)² / r²`, which is what the general
/// head formula gives at `c = 1/r`.
pub fn jacobi_c_inv_r(r: f64) -> Result<JacobiSeq> {
    let s = check_r(r)?;
    let t = 1.0 - s;
    JacobiSeq::new(
        vec![t / r, -t * t / (2.0 * r)],
        vec![s * t * t / (r * r)],
        0.0,
        r * r / 4.0,
    )
}

/// The first two levels of `mu(r, c)` for `0 <= c <= 1/r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiHead {
    pub beta0: f64,
    pub gamma0: f64,
    pub beta1: f64,
    pub gamma1: f64,
}

/// Closed forms for `(beta_0, gamma_0, beta_1, gamma_1)` of `mu(r, c)`.
/// Negative `c` is handled by reflection.
pub fn jacobi_head_general(r: f64, c: f64) -> Result<JacobiHead> {
    let s = check_r(r)?;
    if c.abs() * r > 1.0 + 1e-12 {
        return Err(Error::invalid(format!("|c| = {} exceeds 1/r", c.abs())));
    }
    if c < 0.0 {
        let h = jacobi_head_general(r, -c)?;
        return Ok(JacobiHead {
            beta0: -h.beta0,
            beta1: -h.beta1,
            ..h
        });
    }
    let c2 = c * c;
    let t = 1.0 - s;
    let guard = 1.0 - c2 + c2 * s;
    if guard < 1e-12 {
        return Err(Error::BoundaryDegenerate { value: guard });
    }
    Ok(JacobiHead {
        beta0: c * t,
        gamma0: t * guard,
        beta1: -c * t * (2.0 - 2.0 * c2 - s + 2.0 * c2 * s) / (2.0 * guard),
        gamma1: s * t * (2.0 - 2.0 * c2 + c2 * s + c2 * s * s) / (4.0 * guard * guard),
    })
}

/// Closed-form Jacobi sequence for the walk measures that have one:
/// `c = 0`, `c = ±1` and `c = ±1/r`.
pub fn jacobi_closed(r: f64, c: f64) -> Result<Option<JacobiSeq>> {
    const TOL: f64 = 1e-12;
    let seq = if c.abs() < TOL {
        Some(jacobi_symmetric(r)?)
    } else if (c.abs() - 1.0).abs() < TOL {
        Some(jacobi_c1(r)?)
    } else if (c.abs() * r - 1.0).abs() < TOL {
        Some(jacobi_c_inv_r(r)?)
    } else {
        None
    };
    Ok(seq.map(|j| if c < 0.0 { j.reflected() } else { j }))
}

/// Recovers `beta_0..beta_{count-1}` and `gamma_0..gamma_{count-1}` from raw
/// moments by orthogonalizing monomials in the moment functional
/// `<x^i, x^j> = s_{i+j}` (Stieltjes procedure on coefficient vectors).
///
/// The returned sequence uses the last recovered values as its tail.
pub fn jacobi_from_moments(moments: &MomentSeq, count: usize) -> Result<JacobiSeq> {
    if count == 0 {
        return Err(Error::invalid("count must be at least 1"));
    }
    let s = moments.values();
    if s.len() < 2 * count + 1 {
        return Err(Error::invalid(format!(
            "{count} levels need moments s_0..s_{}, got {}",
            2 * count,
            s.len()
        )));
    }

    // <p, x^shift q> together with the magnitude of the summed terms
    let functional = |p: &[f64], q: &[f64], shift: usize| -> (f64, f64) {
        let mut value = 0.0;
        let mut scale = 0.0;
        for (i, a) in p.iter().enumerate() {
            for (j, b) in q.iter().enumerate() {
                let term = a * b * s[i + j + shift];
                value += term;
                scale += term.abs();
            }
        }
        (value, scale)
    };

    let mut betas = Vec::with_capacity(count);
    let mut gammas = Vec::with_capacity(count);
    let mut prev: Vec<f64> = Vec::new();
    let mut cur: Vec<f64> = vec![1.0];
    let mut prev_norm = 0.0;

    for k in 0..=count {
        let (norm, scale) = functional(&cur, &cur, 0);
        if !(norm > 1e-13 * scale) {
            return Err(Error::IllConditioned {
                level: k,
                reason: format!("<P_{k}, P_{k}> = {norm:.3e} against term scale {scale:.3e}"),
            });
        }
        if k > 0 {
            let gamma = norm / prev_norm;
            if !(gamma > 0.0) {
                return Err(Error::IllConditioned {
                    level: k - 1,
                    reason: format!("gamma_{} = {gamma:.3e} is not positive", k - 1),
                });
            }
            gammas.push(gamma);
        }
        if k == count {
            break;
        }
        let beta = functional(&cur, &cur, 1).0 / norm;
        betas.push(beta);

        // P_{k+1} = (x - beta_k) P_k - gamma_{k-1} P_{k-1}
        let mut next = vec![0.0; cur.len() + 1];
        for (i, a) in cur.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= beta * a;
        }
        if let Some(g) = gammas.last().filter(|_| k > 0) {
            for (i, a) in prev.iter().enumerate() {
                next[i] -= g * a;
            }
        }
        prev = std::mem::replace(&mut cur, next);
        prev_norm = norm;
    }

    let tail_beta = *betas.last().expect("count >= 1");
    let tail_gamma = *gammas.last().expect("count >= 1");
    Ok(JacobiSeq {
        betas,
        gammas,
        tail_beta,
        tail_gamma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::MeasureSpec;
    use crate::moments::moment_asym;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    fn walk_moments(r: f64, c: f64, max: usize) -> MomentSeq {
        MomentSeq::closed_form(&MeasureSpec::asymmetric(r, c).unwrap(), max).unwrap()
    }

    #[test]
    fn hadamard_symmetric_values() {
        let j = jacobi_symmetric(FRAC_1_SQRT_2).unwrap();
        assert_abs_diff_eq!(j.gamma(0), (2.0 - SQRT_2) / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(j.gamma(1), (SQRT_2 - 1.0) / 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(j.gamma(2), 0.125, epsilon = 1e-15);
        assert_abs_diff_eq!(j.gamma(17), 0.125, epsilon = 1e-15);
        assert_eq!(j.beta(5), 0.0);
    }

    #[test]
    fn symmetric_r_06() {
        let j = jacobi_symmetric(0.6).unwrap();
        assert_abs_diff_eq!(j.gamma(0), 0.2, epsilon = 1e-15);
        assert_abs_diff_eq!(j.gamma(1), 0.08, epsilon = 1e-15);
        assert_abs_diff_eq!(j.tail_gamma, 0.09, epsilon = 1e-15);
    }

    #[test]
    fn symmetric_positive() {
        for i in 1..100 {
            let j = jacobi_symmetric(i as f64 / 100.0).unwrap();
            assert!(j.gamma(0) > 0.0 && j.gamma(1) > 0.0);
        }
    }

    #[test]
    fn c1_hadamard_values() {
        let j = jacobi_c1(FRAC_1_SQRT_2).unwrap();
        assert_abs_diff_eq!(j.beta(0), 1.0 - FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(j.gamma(0), FRAC_1_SQRT_2 * (1.0 - FRAC_1_SQRT_2), epsilon = 1e-15);
        assert_eq!(j.beta(2), 0.0);
        let m = j.reflected();
        assert_eq!(m.beta(0), -j.beta(0));
        assert_eq!(m.beta(1), -j.beta(1));
        assert_eq!(m.gamma(0), j.gamma(0));
    }

    #[test]
    fn head_general_reductions() {
        for r in [0.3, FRAC_1_SQRT_2, 0.9] {
            let s = (1.0 - r * r).sqrt();
            let h = jacobi_head_general(r, 0.0).unwrap();
            assert_eq!(h.beta0, 0.0);
            assert_abs_diff_eq!(h.gamma0, 1.0 - s, epsilon = 1e-15);
            assert_eq!(h.beta1, 0.0);
            assert_abs_diff_eq!(h.gamma1, s * (1.0 - s) / 2.0, epsilon = 1e-15);

            for (c, j) in [(1.0, jacobi_c1(r).unwrap()), (1.0 / r, jacobi_c_inv_r(r).unwrap())] {
                let h = jacobi_head_general(r, c).unwrap();
                assert_abs_diff_eq!(h.beta0, j.beta(0), epsilon = 1e-14);
                assert_abs_diff_eq!(h.gamma0, j.gamma(0), epsilon = 1e-14);
                assert_abs_diff_eq!(h.beta1, j.beta(1), epsilon = 1e-14);
                assert_abs_diff_eq!(h.gamma1, j.gamma(1), epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn head_general_matches_recovery() {
        let h = jacobi_head_general(FRAC_1_SQRT_2, 0.5).unwrap();
        let rec = jacobi_from_moments(&walk_moments(FRAC_1_SQRT_2, 0.5, 10), 2).unwrap();
        assert_abs_diff_eq!(h.beta0, rec.beta(0), epsilon = 1e-12);
        assert_abs_diff_eq!(h.gamma0, rec.gamma(0), epsilon = 1e-12);
        assert_abs_diff_eq!(h.beta1, rec.beta(1), epsilon = 1e-12);
        assert_abs_diff_eq!(h.gamma1, rec.gamma(1), epsilon = 1e-12);

        let neg = jacobi_head_general(FRAC_1_SQRT_2, -0.5).unwrap();
        assert_eq!(neg.beta0, -h.beta0);
        assert_eq!(neg.gamma1, h.gamma1);
    }

    #[test]
    fn recovery_hadamard() {
        let rec = jacobi_from_moments(&walk_moments(FRAC_1_SQRT_2, 0.0, 12), 5).unwrap();
        let closed = jacobi_symmetric(FRAC_1_SQRT_2).unwrap();
        for n in 0..5 {
            assert_abs_diff_eq!(rec.gamma(n), closed.gamma(n), epsilon = 1e-6);
            assert_abs_diff_eq!(rec.beta(n), 0.0, epsilon = 1e-6);
        }
    }

    #[test]
    fn round_trip_all_closed_families() {
        for r in [0.3, 0.6, FRAC_1_SQRT_2, 0.9] {
            for c in [0.0, 1.0, 1.0 / r, -1.0, -1.0 / r] {
                let closed = jacobi_closed(r, c).unwrap().unwrap();
                let rec = jacobi_from_moments(&walk_moments(r, c, 12), 5).unwrap();
                for n in 0..5 {
                    assert_abs_diff_eq!(rec.beta(n), closed.beta(n), epsilon = 1e-6);
                    assert_abs_diff_eq!(rec.gamma(n), closed.gamma(n), epsilon = 1e-6);
                }
            }
        }
    }

    #[test]
    fn printed_inverse_r_gamma0_fails_round_trip() {
        // s (1 - s)² without the 1/r² factor is not the variance of mu(r, 1/r)
        let r = FRAC_1_SQRT_2;
        let s = FRAC_1_SQRT_2;
        let literal = s * (1.0 - s) * (1.0 - s);
        let rec = jacobi_from_moments(&walk_moments(r, 1.0 / r, 4), 1).unwrap();
        assert!((rec.gamma(0) - literal).abs() > 1e-2);
        assert_abs_diff_eq!(rec.gamma(0), jacobi_c_inv_r(r).unwrap().gamma(0), epsilon = 1e-12);
    }

    #[test]
    fn reflection_covariance() {
        for (r, c) in [(FRAC_1_SQRT_2, 0.5), (0.6, 1.3), (0.9, 0.2)] {
            let plus = jacobi_from_moments(&walk_moments(r, c, 12), 5).unwrap();
            let minus = jacobi_from_moments(&walk_moments(r, -c, 12), 5).unwrap();
            for n in 0..5 {
                assert_abs_diff_eq!(plus.beta(n), -minus.beta(n), epsilon = 1e-8);
                assert_abs_diff_eq!(plus.gamma(n), minus.gamma(n), epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn hermite_moments() {
        // standard Gaussian: s_{2k} = (2k - 1)!!
        let mut s = vec![0.0; 11];
        s[0] = 1.0;
        for k in 1..=5 {
            s[2 * k] = s[2 * k - 2] * (2 * k - 1) as f64;
        }
        let rec = jacobi_from_moments(&MomentSeq::new(s).unwrap(), 4).unwrap();
        for n in 0..4 {
            assert_abs_diff_eq!(rec.beta(n), 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(rec.gamma(n), (n + 1) as f64, epsilon = 1e-10);
        }
    }

    #[test]
    fn recovery_errors() {
        let m = walk_moments(0.5, 0.0, 4);
        assert!(matches!(jacobi_from_moments(&m, 3), Err(Error::InvalidParameter(_))));
        // point mass at 0: <P_1, P_1> = 0
        let atom = MomentSeq::new(vec![1.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            jacobi_from_moments(&atom, 2),
            Err(Error::IllConditioned { level: 1, .. })
        ));
    }

    #[test]
    fn moment_asym_is_used_consistently() {
        let m = walk_moments(0.4, 0.7, 6);
        for k in 0..=6 {
            assert_eq!(m.get(k).unwrap(), moment_asym(k, 0.4, 0.7));
        }
    }
}
