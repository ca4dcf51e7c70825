//! Moments and moment generating functions of `mu(r, c)`.

use num_complex::Complex64;

use crate::density::MeasureSpec;
use crate::error::{Error, Result};
use crate::quadrature::integrate_walk_measure;

/// Raw moments `s_0, .., s_M` of a positive measure.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSeq {
    values: Vec<f64>,
}

impl MomentSeq {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        match values.first() {
            Some(s0) if (s0 - 1.0).abs() <= 1e-9 => Ok(MomentSeq { values }),
            Some(s0) => Err(Error::invalid(format!("s_0 = {s0} is not 1"))),
            None => Err(Error::invalid("empty moment sequence")),
        }
    }

    /// Closed-form moments `s_0..=s_max` of a walk measure.
    pub fn closed_form(spec: &MeasureSpec, max: usize) -> Result<Self> {
        let (r, c) = spec.require_walk()?;
        check_r(r)?;
        Ok(MomentSeq {
            values: (0..=max).map(|m| moment_asym(m, r, c)).collect(),
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, m: usize) -> Option<f64> {
        self.values.get(m).copied()
    }

    /// Hankel matrix `(s_{i+j})_{0 <= i, j <= order}`, row-major.
    pub fn hankel(&self, order: usize) -> Option<Vec<Vec<f64>>> {
        if 2 * order >= self.values.len() {
            return None;
        }
        Some(
            (0..=order)
                .map(|i| (0..=order).map(|j| self.values[i + j]).collect())
                .collect(),
        )
    }
}

fn check_r(r: f64) -> Result<()> {
    if r > 0.0 && r < 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("r = {r} must lie in (0, 1)")))
    }
}

/// Central binomials `C(2k, k)` for `k < count`, by the multiplicative
/// recurrence in floating point.
pub fn central_binomials(count: usize) -> impl Iterator<Item = f64> {
    (0..count).scan(1.0_f64, |c, k| {
        let current = *c;
        let k = k as f64;
        *c *= 2.0 * (2.0 * k + 1.0) / (k + 1.0);
        Some(current)
    })
}

/// `s_m(mu(r, 0))`: zero for odd `m`, and
/// `s_{2j} = 1 - sqrt(1 - r²) Σ_{k<j} C(2k, k) (r²/4)^k`.
pub fn moment_closed(m: usize, r: f64) -> f64 {
    if m % 2 == 1 {
        return 0.0;
    }
    let quarter = r * r / 4.0;
    let mut power = 1.0;
    let mut sum = 0.0;
    for binom in central_binomials(m / 2) {
        sum += binom * power;
        power *= quarter;
    }
    1.0 - (1.0 - r * r).sqrt() * sum
}

/// `s_m(mu(r, c)) = s_m(mu(r, 0)) + c s_{m+1}(mu(r, 0))`.
pub fn moment_asym(m: usize, r: f64, c: f64) -> f64 {
    moment_closed(m, r) + c * moment_closed(m + 1, r)
}

/// `∫ x^m dmu` by the substituted Gauss–Legendre rule.
pub fn moment_quadrature(m: usize, spec: &MeasureSpec) -> Result<f64> {
    let (r, c) = spec.require_walk()?;
    let m = i32::try_from(m).map_err(|_| Error::invalid("moment index too large"))?;
    Ok(integrate_walk_measure(r, c, r, |x| x.powi(m)))
}

const POLE_TOL: f64 = 1e-8;

/// Moment generating function `Σ s_m z^m` of a walk measure,
///
/// `M(z) = [(1 - r²z²)(1 + cz) - (z + c) z sqrt(1 - r²) sqrt(1 - r²z²)] / [(1 - z²)(1 - r²z²)]`,
///
/// valid for `|z| < 1`.
pub fn mgf(z: Complex64, spec: &MeasureSpec) -> Result<Complex64> {
    let (r, c) = spec.require_walk()?;
    for pole in [1.0, -1.0, 1.0 / r, -1.0 / r] {
        let dist = (z - pole).norm();
        if dist < POLE_TOL {
            return Err(Error::NearSingularity {
                what: "the moment generating function",
                point: format!("{z}"),
                distance: dist,
            });
        }
    }
    if z.norm() >= 1.0 {
        return Err(Error::invalid(format!(
            "|z| = {} is outside the unit disk",
            z.norm()
        )));
    }
    let s = (1.0 - r * r).sqrt();
    let rz2 = r * r * z * z;
    let root = (1.0 - rz2).sqrt();
    let num = (1.0 - rz2) * (1.0 + c * z) - (z + c) * z * s * root;
    let den = (1.0 - z * z) * (1.0 - rz2);
    Ok(num / den)
}
