//! Limit densities of the rescaled walk and the tilted family `mu(r, c)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quadrature::integrate_walk_measure;

/// Identifies the probability measure every spectral operation refers to.
#[derive(Debug, Clone, PartialEq)]
pub enum MeasureSpec {
    /// Density `k(x : r)`.
    Symmetric { r: f64 },
    /// Density `(1 + c x) k(x : r)`.
    Asymmetric { r: f64, c: f64 },
    /// Jacobi coefficients `gamma = (p_0, .., p_{n-1}, p, p, ..)` and
    /// `beta = (q_0, q, q, ..)`.
    GeneralJacobi {
        head_gammas: Vec<f64>,
        tail_gamma: f64,
        head_beta: f64,
        tail_beta: f64,
    },
}

impl MeasureSpec {
    pub fn symmetric(r: f64) -> Result<Self> {
        let spec = MeasureSpec::Symmetric { r };
        spec.validate()?;
        Ok(spec)
    }

    pub fn asymmetric(r: f64, c: f64) -> Result<Self> {
        let spec = MeasureSpec::Asymmetric { r, c };
        spec.validate()?;
        Ok(spec)
    }

    pub fn general(head_gammas: Vec<f64>, tail_gamma: f64) -> Result<Self> {
        Self::general_shifted(head_gammas, tail_gamma, 0.0, 0.0)
    }

    pub fn general_shifted(
        head_gammas: Vec<f64>,
        tail_gamma: f64,
        head_beta: f64,
        tail_beta: f64,
    ) -> Result<Self> {
        let spec = MeasureSpec::GeneralJacobi {
            head_gammas,
            tail_gamma,
            head_beta,
            tail_beta,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            MeasureSpec::Symmetric { r } => check_r(*r),
            MeasureSpec::Asymmetric { r, c } => {
                check_r(*r)?;
                if !c.is_finite() || c.abs() * r > 1.0 + 1e-12 {
                    return Err(Error::invalid(format!("|c| r = {} exceeds 1", c.abs() * r)));
                }
                Ok(())
            }
            MeasureSpec::GeneralJacobi {
                head_gammas,
                tail_gamma,
                head_beta,
                tail_beta,
            } => {
                if head_gammas.is_empty() {
                    return Err(Error::invalid("general case needs at least one head gamma"));
                }
                if head_gammas.iter().any(|p| !(*p > 0.0 && p.is_finite())) {
                    return Err(Error::invalid("head gammas must be positive"));
                }
                if !(*tail_gamma > 0.0 && tail_gamma.is_finite()) {
                    return Err(Error::invalid("tail gamma must be positive"));
                }
                if !head_beta.is_finite() || !tail_beta.is_finite() {
                    return Err(Error::invalid("betas must be finite"));
                }
                Ok(())
            }
        }
    }

    /// `(r, c)` for the walk-derived measures; `None` for the general case.
    pub fn walk_params(&self) -> Option<(f64, f64)> {
        match *self {
            MeasureSpec::Symmetric { r } => Some((r, 0.0)),
            MeasureSpec::Asymmetric { r, c } => Some((r, c)),
            MeasureSpec::GeneralJacobi { .. } => None,
        }
    }

    pub(crate) fn require_walk(&self) -> Result<(f64, f64)> {
        self.walk_params()
            .ok_or_else(|| Error::invalid("operation needs a Symmetric or Asymmetric measure"))
    }

    /// Endpoints of the absolutely continuous support.
    pub fn support(&self) -> (f64, f64) {
        match self {
            MeasureSpec::Symmetric { r } | MeasureSpec::Asymmetric { r, .. } => (-r, *r),
            MeasureSpec::GeneralJacobi {
                tail_gamma,
                tail_beta,
                ..
            } => {
                let rad = 2.0 * tail_gamma.sqrt();
                (tail_beta - rad, tail_beta + rad)
            }
        }
    }
}

fn check_r(r: f64) -> Result<()> {
    if r > 0.0 && r < 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("r = {r} must lie in (0, 1)")))
    }
}

/// `k(x : r) = sqrt(1 - r²) / (π (1 - x²) sqrt(r² - x²))` on `(-r, r)`,
/// zero outside, `+inf` at `x = ±r`.
pub fn density_k(x: f64, r: f64) -> f64 {
    let ax = x.abs();
    if ax > r {
        0.0
    } else if ax == r {
        f64::INFINITY
    } else {
        (1.0 - r * r).sqrt() / (PI * (1.0 - x * x) * (r * r - x * x).sqrt())
    }
}

/// Density of a walk measure: `(1 + c x) k(x : r)`.
pub fn density_mu(x: f64, spec: &MeasureSpec) -> Result<f64> {
    let (r, c) = spec.require_walk()?;
    let k = density_k(x, r);
    if k == 0.0 {
        return Ok(0.0);
    }
    if k.is_infinite() {
        // at the c = ±1/r boundary the tilt vanishes at one edge
        let tilt = 1.0 + c * x;
        return Ok(if tilt.abs() < 1e-15 { 0.0 } else { k });
    }
    Ok((1.0 + c * x) * k)
}

/// The limit density of `X_n / n` written as in the weak limit theorem,
/// `{1 - c x} k(x : r)`.
pub fn limit_density(x: f64, r: f64, c: f64) -> f64 {
    let k = density_k(x, r);
    if k == 0.0 || k.is_infinite() {
        k
    } else {
        (1.0 - c * x) * k
    }
}

/// `mu((-inf, t])` for a walk measure.
pub fn cdf_mu(t: f64, spec: &MeasureSpec) -> Result<f64> {
    let (r, c) = spec.require_walk()?;
    if t <= -r {
        return Ok(0.0);
    }
    if t >= r {
        return Ok(1.0);
    }
    Ok(integrate_walk_measure(r, c, t, |_| 1.0))
}

/// Total mass of a walk measure by quadrature.
pub fn total_mass(spec: &MeasureSpec) -> Result<f64> {
    let (r, c) = spec.require_walk()?;
    Ok(integrate_walk_measure(r, c, r, |_| 1.0))
}
