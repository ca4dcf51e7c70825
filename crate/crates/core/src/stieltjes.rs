//! Stieltjes transforms `G(z) = ∫ dmu(x) / (z - x)`: closed forms, continued
//! fractions, numerical inversion and the densities of the general
//! eventually-constant Jacobi measures.
//!
//! Every square root of `z² - s²` goes through [`branch_sqrt`], which picks
//! the branch that behaves like `z` at infinity and is analytic off
//! `[-s, s]`. With that choice every transform maps the upper half plane
//! into the lower half plane.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::density::{density_mu, MeasureSpec};
use crate::error::{Error, Result};
use crate::jacobi::JacobiSeq;
use crate::moments::MomentSeq;
use crate::quadrature::{integrate_semicircle_support, integrate_walk_measure};

/// A point with strictly positive imaginary part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlanePoint(Complex64);

impl HalfPlanePoint {
    pub fn new(z: Complex64) -> Result<Self> {
        if z.im > 0.0 && z.re.is_finite() && z.im.is_finite() {
            Ok(HalfPlanePoint(z))
        } else {
            Err(Error::invalid(format!("{z} is not in the upper half plane")))
        }
    }

    pub fn z(&self) -> Complex64 {
        self.0
    }
}

/// `sqrt(z² - s²)` on the branch `z sqrt(1 - s²/z²)`: `~ z` at infinity,
/// cut along `[-s, s]`, positive imaginary part in the upper half plane.
pub fn branch_sqrt(z: Complex64, s: f64) -> Complex64 {
    if z == Complex64::new(0.0, 0.0) {
        return Complex64::new(0.0, s);
    }
    let ratio = s / z;
    z * (1.0 - ratio * ratio).sqrt()
}

fn a_raw(z: Complex64, p: f64) -> Complex64 {
    // (z - w) / (2p) = 2 / (z + w) since (z - w)(z + w) = 4p
    2.0 / (z + branch_sqrt(z, 2.0 * p.sqrt()))
}

/// `A(z) = (z - sqrt(z² - 4p)) / (2p)`, the transform of the constant
/// chain `gamma_n = p`; solves `p A² - z A + 1 = 0`.
pub fn a_function(z: HalfPlanePoint, p: f64) -> Result<Complex64> {
    if !(p > 0.0) {
        return Err(Error::invalid(format!("tail gamma p = {p} must be positive")));
    }
    Ok(a_raw(z.z(), p))
}

const SINGULAR_TOL: f64 = 1e-10;

fn check_walk_point(z: Complex64, r: f64) -> Result<()> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::invalid(format!("r = {r} must lie in (0, 1)")));
    }
    for pole in [1.0, -1.0] {
        let d = (z - pole).norm();
        if d < SINGULAR_TOL {
            return Err(Error::NearSingularity {
                what: "the walk transform",
                point: format!("{z}"),
                distance: d,
            });
        }
    }
    let cut_dist = if z.re.abs() <= r {
        z.im.abs()
    } else {
        (Complex64::new(z.re.abs() - r, z.im)).norm()
    };
    if cut_dist < SINGULAR_TOL {
        return Err(Error::NearSingularity {
            what: "the walk transform (branch cut)",
            point: format!("{z}"),
            distance: cut_dist,
        });
    }
    Ok(())
}

/// `G(z) = [z (z² - r²) - sqrt(1 - r²) sqrt(z² - r²)] / [(z² - 1)(z² - r²)]`.
pub fn g_symmetric(z: Complex64, r: f64) -> Result<Complex64> {
    g_asym(z, r, 0.0)
}

/// Transform of `mu(r, c)`:
/// `[(z² - r²)(z + c) - (1 + c z) sqrt(1 - r²) sqrt(z² - r²)] / [(z² - 1)(z² - r²)]`.
pub fn g_asym(z: Complex64, r: f64, c: f64) -> Result<Complex64> {
    check_walk_point(z, r)?;
    let s = (1.0 - r * r).sqrt();
    let z2r = z * z - r * r;
    let w = branch_sqrt(z, r);
    let num = z2r * (z + c) - (1.0 + c * z) * s * w;
    let den = (z * z - 1.0) * z2r;
    Ok(num / den)
}

/// `∫ dmu(x) / (z - x)` for a walk measure by quadrature. Independent of the
/// closed forms; accurate when `z` stays away from the support.
pub fn stieltjes_quadrature(spec: &MeasureSpec, z: Complex64) -> Result<Complex64> {
    let (r, c) = spec.require_walk()?;
    Ok(integrate_walk_measure(r, c, r, |x| 1.0 / (z - x)))
}

/// Finite continued fraction `1 / (z - beta_0 - gamma_0 / (z - beta_1 - ...))`
/// with `depth` levels, evaluated bottom-up.
pub fn cf_eval(z: HalfPlanePoint, jacobi: &JacobiSeq, depth: usize) -> Result<Complex64> {
    if depth == 0 {
        return Err(Error::invalid("continued fraction depth must be at least 1"));
    }
    fold_levels(z.z(), jacobi, depth, Complex64::new(0.0, 0.0))
}

/// Like [`cf_eval`] but the levels from `depth` on are summed exactly by
/// `A(z - tail_beta)`. Requires `depth >= jacobi.tail_start()`.
pub fn cf_eval_closed(z: HalfPlanePoint, jacobi: &JacobiSeq, depth: usize) -> Result<Complex64> {
    if depth < jacobi.tail_start() {
        return Err(Error::invalid(format!(
            "closure depth {depth} is inside the non-constant head (length {})",
            jacobi.tail_start()
        )));
    }
    let tail = a_raw(z.z() - jacobi.tail_beta, jacobi.tail_gamma);
    fold_levels(z.z(), jacobi, depth, tail)
}

fn fold_levels(z: Complex64, jacobi: &JacobiSeq, depth: usize, tail: Complex64) -> Result<Complex64> {
    let mut t = tail;
    for k in (0..depth).rev() {
        let den = z - jacobi.beta(k) - jacobi.gamma(k) * t;
        if den.norm() < 1e-300 {
            return Err(Error::DepthUnstable { level: k });
        }
        t = 1.0 / den;
    }
    Ok(t)
}

/// `(head_gammas, p, q0, q)` of a general measure.
fn general_parts(spec: &MeasureSpec) -> Result<(&[f64], f64, f64, f64)> {
    match spec {
        MeasureSpec::GeneralJacobi {
            head_gammas,
            tail_gamma,
            head_beta,
            tail_beta,
        } => {
            spec.validate()?;
            Ok((head_gammas, *tail_gamma, *head_beta, *tail_beta))
        }
        _ => Err(Error::invalid("operation needs a GeneralJacobi measure")),
    }
}

/// Jacobi sequence of a general measure.
pub fn general_jacobi_seq(spec: &MeasureSpec) -> Result<JacobiSeq> {
    let (head, p, q0, q) = general_parts(spec)?;
    JacobiSeq::new(vec![q0], head.to_vec(), q, p)
}

/// `G^(n)(z) = Π_{n-2}(z) / Π_{n-1}(z)` where
/// `Π_{-1} = 1`, `Π_0 = z - beta_{n-1} - p_{n-1} A(z - q)` and
/// `Π_k = (z - beta_{n-1-k}) Π_{k-1} - p_{n-1-k} Π_{k-2}`.
///
/// With `q0 = q = 0` every `beta` vanishes.
pub fn g_general(z: HalfPlanePoint, spec: &MeasureSpec) -> Result<Complex64> {
    let (head, p, q0, q) = general_parts(spec)?;
    let z = z.z();
    let n = head.len();
    let beta = |j: usize| if j == 0 { q0 } else { q };

    let mut older = Complex64::new(1.0, 0.0);
    let mut newer = z - beta(n - 1) - head[n - 1] * a_raw(z - q, p);
    for k in 1..n {
        let j = n - 1 - k;
        let next = (z - beta(j)) * newer - head[j] * older;
        older = newer;
        newer = next;
    }
    if newer.norm() < 1e-300 {
        return Err(Error::DepthUnstable { level: 0 });
    }
    Ok(older / newer)
}

/// The explicit `G^(1)`, `G^(2)`, `G^(3)` formulas (unshifted measures).
pub fn g_general_closed(z: HalfPlanePoint, spec: &MeasureSpec) -> Result<Complex64> {
    let (head, p, q0, q) = general_parts(spec)?;
    if q0 != 0.0 || q != 0.0 {
        return Err(Error::invalid("closed G^(n) forms need q0 = q = 0"));
    }
    let z = z.z();
    let w = branch_sqrt(z, 2.0 * p.sqrt());
    let value = match *head {
        [p0] => 0.5 * ((2.0 * p - p0) * z - p0 * w) / ((p - p0) * z * z + p0 * p0),
        [p0, p1] => {
            ((2.0 * p - p1) * z + p1 * w)
                / ((2.0 * p - p1) * z * z - 2.0 * p0 * p + p1 * z * w)
        }
        [p0, p1, p2] => {
            let num = (2.0 * p - p2) * z * z - 2.0 * p1 * p + p2 * z * w;
            let den = (2.0 * p - p2) * z * z * z
                + (p0 * p2 - 2.0 * p0 * p - 2.0 * p1 * p) * z
                + p2 * (z * z - p0) * w;
            num / den
        }
        _ => {
            return Err(Error::invalid(format!(
                "closed forms exist for head lengths 1..=3, got {}",
                head.len()
            )))
        }
    };
    Ok(value)
}

/// `G^(2, asym)` for `gamma = (p0, p1, p, ..)`, `beta = (q0, q, ..)`.
pub fn g_general_asym(z: HalfPlanePoint, spec: &MeasureSpec) -> Result<Complex64> {
    let (head, p, q0, q) = general_parts(spec)?;
    let [p0, p1] = *head else {
        return Err(Error::invalid(format!(
            "G^(2,asym) needs exactly two head gammas, got {}",
            head.len()
        )));
    };
    let z = z.z();
    let w = branch_sqrt(z - q, 2.0 * p.sqrt());
    let k = 2.0 * p - p1;
    let num = k * z - q * k + p1 * w;
    let den = k * (z - q0) * (z - q) - 2.0 * p0 * p + p1 * (z - q0) * w;
    Ok(num / den)
}

/// Transform of any supported measure through its primary closed form or
/// recursion.
pub fn transform(spec: &MeasureSpec, z: Complex64) -> Result<Complex64> {
    match spec {
        MeasureSpec::Symmetric { r } => g_symmetric(z, *r),
        MeasureSpec::Asymmetric { r, c } => g_asym(z, *r, *c),
        MeasureSpec::GeneralJacobi { .. } => {
            let hp = if z.im < 0.0 {
                // G(conj z) = conj G(z)
                return Ok(g_general(HalfPlanePoint::new(z.conj())?, spec)?.conj());
            } else {
                HalfPlanePoint::new(z)?
            };
            g_general(hp, spec)
        }
    }
}

/// Which closed-form density of the general case to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhoKind {
    One,
    Two,
    Three,
    TwoAsym,
}

impl RhoKind {
    pub fn head_len(self) -> usize {
        match self {
            RhoKind::One => 1,
            RhoKind::Two | RhoKind::TwoAsym => 2,
            RhoKind::Three => 3,
        }
    }

    /// The kind matching a general measure's head length and shifts.
    pub fn for_spec(spec: &MeasureSpec) -> Result<Self> {
        let (head, _, q0, q) = general_parts(spec)?;
        match (head.len(), q0 == 0.0 && q == 0.0) {
            (1, true) => Ok(RhoKind::One),
            (2, true) => Ok(RhoKind::Two),
            (3, true) => Ok(RhoKind::Three),
            (2, false) => Ok(RhoKind::TwoAsym),
            (n, _) => Err(Error::invalid(format!(
                "no closed-form density for head length {n} with these shifts"
            ))),
        }
    }
}

/// Absolutely continuous density `rho^(k)(x)` of a general measure; zero
/// outside `(q - 2 sqrt p, q + 2 sqrt p)`.
pub fn rho_closed(kind: RhoKind, spec: &MeasureSpec, x: f64) -> Result<f64> {
    let (head, p, q0, q) = general_parts(spec)?;
    if head.len() != kind.head_len() {
        return Err(Error::invalid(format!(
            "{kind:?} needs {} head gammas, got {}",
            kind.head_len(),
            head.len()
        )));
    }
    if kind != RhoKind::TwoAsym && (q0 != 0.0 || q != 0.0) {
        return Err(Error::invalid(format!("{kind:?} is defined for q0 = q = 0")));
    }
    let u = x - q;
    let radicand = 4.0 * p - u * u;
    if radicand <= 0.0 {
        return Ok(0.0);
    }
    let root = radicand.sqrt();
    let x2 = x * x;
    let value = match kind {
        RhoKind::One => {
            let p0 = head[0];
            p0 * root / ((p - p0) * x2 + p0 * p0)
        }
        RhoKind::Two => {
            let (p0, p1) = (head[0], head[1]);
            p0 * p1 * root
                / ((p - p1) * x2 * x2 + (p0 * (p1 - 2.0 * p) + p1 * p1) * x2 + p0 * p0 * p)
        }
        RhoKind::Three => {
            let (p0, p1, p2) = (head[0], head[1], head[2]);
            let c1 = (p0 + p1) * (p2 - 2.0 * p) + (p0 + p2) * p2;
            let c2 = (p0 + p1) * (p0 + p1) * p - p0 * p2 * (p0 + p1 + 2.0 * p2);
            // constant term is p0² p2²; see -Im G^(3) on the cut
            let den = (p - p2) * x2 * x2 * x2 + c1 * x2 * x2 + c2 * x2 + p0 * p0 * p2 * p2;
            p0 * p1 * p2 * root / den
        }
        RhoKind::TwoAsym => {
            let (p0, p1) = (head[0], head[1]);
            let v = x - q0;
            let den = (p - p1) * v * v * u * u
                + (p0 * (p1 - 2.0 * p) * u + p1 * p1 * v) * v
                + p0 * p0 * p;
            p0 * p1 * root / den
        }
    };
    Ok(value / (2.0 * PI))
}

/// Closed-form density of any supported measure.
pub fn density(spec: &MeasureSpec, x: f64) -> Result<f64> {
    match spec {
        MeasureSpec::GeneralJacobi { .. } => rho_closed(RhoKind::for_spec(spec)?, spec, x),
        _ => density_mu(x, spec),
    }
}

/// Mass of the absolutely continuous part of a general measure.
pub fn rho_mass(spec: &MeasureSpec) -> Result<f64> {
    let kind = RhoKind::for_spec(spec)?;
    let (_, p, _, q) = general_parts(spec)?;
    // surfaces head/shift mismatches before integrating
    rho_closed(kind, spec, q)?;
    // rho / sqrt(4p - (x-q)²) is smooth; 32 panels resolve peaked cases
    Ok(integrate_semicircle_support(p, q, 32, |x| {
        let u = x - q;
        let radicand = 4.0 * p - u * u;
        if radicand <= 0.0 {
            0.0
        } else {
            rho_closed(kind, spec, x).unwrap_or(0.0) / radicand.sqrt()
        }
    }))
}

/// Default step sizes for [`invert`].
pub const DEFAULT_EPS_SCHEDULE: [f64; 3] = [1e-4, 5e-5, 2.5e-5];

/// Maximum spread between the last two extrapolants before inversion is
/// reported as non-convergent.
pub const INVERT_SPREAD_TOL: f64 = 1e-5;

/// Density at `x` from `-Im G(x + i eps) / π`, extrapolated to `eps = 0`
/// over the decreasing schedule by Neville's scheme in powers of `eps`.
///
/// `x` should stay away from the support endpoints; see [`invert_measure`].
pub fn invert<F>(transform: F, x: f64, eps_schedule: &[f64]) -> Result<f64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if eps_schedule.len() < 2 {
        return Err(Error::invalid("eps schedule needs at least two values"));
    }
    if eps_schedule.iter().any(|e| !(*e > 0.0))
        || eps_schedule.windows(2).any(|w| w[1] >= w[0])
    {
        return Err(Error::invalid("eps schedule must be positive and decreasing"));
    }
    let samples = eps_schedule
        .iter()
        .map(|&eps| transform(Complex64::new(x, eps)).map(|g| -g.im / PI))
        .collect::<Result<Vec<_>>>()?;

    // tableau[i] holds the extrapolant through points i..=i+level
    let mut tableau = samples.clone();
    let mut diagonal = vec![samples[0]];
    for level in 1..samples.len() {
        for i in 0..samples.len() - level {
            let (e_lo, e_hi) = (eps_schedule[i], eps_schedule[i + level]);
            tableau[i] = (e_lo * tableau[i + 1] - e_hi * tableau[i]) / (e_lo - e_hi);
        }
        diagonal.push(tableau[0]);
    }
    let n = diagonal.len();
    let spread = (diagonal[n - 1] - diagonal[n - 2]).abs();
    if spread > INVERT_SPREAD_TOL {
        return Err(Error::NonConvergent { x, spread });
    }
    Ok(diagonal[n - 1])
}

/// Width of the endpoint exclusion zone, as a fraction of the support width.
pub const ENDPOINT_EXCLUSION: f64 = 0.02;

/// [`invert`] applied to a measure's transform, refusing points inside the
/// endpoint exclusion zone.
pub fn invert_measure(spec: &MeasureSpec, x: f64, eps_schedule: &[f64]) -> Result<f64> {
    let (lo, hi) = spec.support();
    let zone = ENDPOINT_EXCLUSION * (hi - lo);
    if (x - lo).abs() < zone || (x - hi).abs() < zone {
        return Err(Error::invalid(format!(
            "x = {x} is within {zone} of a support endpoint"
        )));
    }
    invert(|z| transform(spec, z), x, eps_schedule)
}

/// Imaginary heights used by [`asymptotic_check`].
pub const ASYMPTOTIC_HEIGHTS: [f64; 3] = [10.0, 30.0, 100.0];

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticReport {
    /// `(y, |y^{M+2} (G(iy) - Σ_{m<=M} s_m (iy)^{-m-1})|)`.
    pub values: Vec<(f64, f64)>,
}

impl AsymptoticReport {
    pub fn max(&self) -> f64 {
        self.values.iter().map(|v| v.1).fold(0.0, f64::max)
    }
}

/// Compares a transform with its moment expansion at `z = iy`.
pub fn asymptotic_check<F>(transform: F, moments: &MomentSeq, order: usize) -> Result<AsymptoticReport>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if moments.len() <= order {
        return Err(Error::invalid(format!(
            "order {order} needs {} moments, got {}",
            order + 1,
            moments.len()
        )));
    }
    let values = ASYMPTOTIC_HEIGHTS
        .iter()
        .map(|&y| {
            let z = Complex64::new(0.0, y);
            let g = transform(z)?;
            let inv = 1.0 / z;
            let mut power = inv;
            let mut series = Complex64::new(0.0, 0.0);
            for &s in &moments.values()[..=order] {
                series += s * power;
                power *= inv;
            }
            Ok((y, y.powi(order as i32 + 2) * (g - series).norm()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AsymptoticReport { values })
}
