//! U(2) coins, initial chirality states and the weak-limit parameters they induce.
//!
//! Chirality basis: `|L> = (1, 0)`, `|R> = (0, 1)`. A coin `U = [[a, b], [c, d]]`
//! is split as `U = P + Q` where `P` keeps the first row (move left) and `Q`
//! keeps the second row (move right).

use num_complex::Complex64;

use crate::density::MeasureSpec;
use crate::error::{Error, Result};

/// Tolerance used for every unitarity and normalization check.
pub const UNITARITY_TOL: f64 = 1e-12;

pub type Mat2 = [[Complex64; 2]; 2];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coin {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl Coin {
    /// Validates the four U(2) identities; the entries are never corrected.
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let row0 = a.norm_sqr() + b.norm_sqr() - 1.0;
        if row0.abs() > UNITARITY_TOL {
            return Err(Error::NonUnitary {
                identity: "|a|^2 + |b|^2 = 1",
                residual: row0.abs(),
            });
        }
        let row1 = c.norm_sqr() + d.norm_sqr() - 1.0;
        if row1.abs() > UNITARITY_TOL {
            return Err(Error::NonUnitary {
                identity: "|c|^2 + |d|^2 = 1",
                residual: row1.abs(),
            });
        }
        let ortho = (a * b.conj() + c * d.conj()).norm();
        if ortho > UNITARITY_TOL {
            return Err(Error::NonUnitary {
                identity: "orthogonality a*conj(b) + c*conj(d) = 0",
                residual: ortho,
            });
        }
        let delta = a * d - b * c;
        let c_res = (c + delta * b.conj()).norm();
        if c_res > UNITARITY_TOL {
            return Err(Error::NonUnitary {
                identity: "c = -det(U)*conj(b)",
                residual: c_res,
            });
        }
        let d_res = (d - delta * a.conj()).norm();
        if d_res > UNITARITY_TOL {
            return Err(Error::NonUnitary {
                identity: "d = det(U)*conj(a)",
                residual: d_res,
            });
        }
        Ok(Coin { a, b, c, d })
    }

    pub fn hadamard() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Coin {
            a: h,
            b: h,
            c: h,
            d: -h,
        }
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Coin {
            a: one,
            b: zero,
            c: zero,
            d: one,
        }
    }

    /// Unitary by construction:
    /// `e^{i g} [[cos t e^{i p1}, sin t e^{i p2}], [-sin t e^{-i p2}, cos t e^{-i p1}]]`.
    pub fn from_angles(theta: f64, phi1: f64, phi2: f64, global_phase: f64) -> Self {
        let g = Complex64::from_polar(1.0, global_phase);
        let (s, c) = theta.sin_cos();
        Coin {
            a: g * Complex64::from_polar(c, phi1),
            b: g * Complex64::from_polar(s, phi2),
            c: -g * Complex64::from_polar(s, -phi2),
            d: g * Complex64::from_polar(c, -phi1),
        }
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn matrix(&self) -> Mat2 {
        [[self.a, self.b], [self.c, self.d]]
    }

    /// `(P, Q)` with `P = [[a, b], [0, 0]]`, `Q = [[0, 0], [c, d]]`.
    pub fn split(&self) -> (Mat2, Mat2) {
        let zero = Complex64::new(0.0, 0.0);
        (
            [[self.a, self.b], [zero, zero]],
            [[zero, zero], [self.c, self.d]],
        )
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.a * v[0] + self.b * v[1],
            self.c * v[0] + self.d * v[1],
        ]
    }

    /// Computes `r = |a|` and the drift coefficient `c(a, b : phi)` of the
    /// weak limit theorem. Requires all four entries to be nonzero.
    pub fn limit_params(&self, state: &QubitState) -> Result<LimitParams> {
        for (entry, z) in ['a', 'b', 'c', 'd'].into_iter().zip(self.entries()) {
            if z.norm() <= UNITARITY_TOL {
                return Err(Error::DegenerateCoin {
                    entry,
                    modulus: z.norm(),
                });
            }
        }
        let (alpha, beta) = (state.alpha, state.beta);
        let a_alpha = self.a * alpha;
        let b_beta = self.b * beta;
        let cross = a_alpha * b_beta.conj() + a_alpha.conj() * b_beta;
        let drift = Complex64::new(alpha.norm_sqr() - beta.norm_sqr(), 0.0)
            + cross / self.a.norm_sqr();
        if drift.im.abs() > UNITARITY_TOL {
            return Err(Error::invalid(format!(
                "drift coefficient has imaginary part {:.3e}",
                drift.im
            )));
        }
        LimitParams::new(self.a.norm(), drift.re)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    alpha: Complex64,
    beta: Complex64,
}

impl QubitState {
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let norm_sq = alpha.norm_sqr() + beta.norm_sqr();
        if (norm_sq - 1.0).abs() > UNITARITY_TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(QubitState { alpha, beta })
    }

    /// `(1/sqrt 2, i/sqrt 2)`, the state giving a symmetric Hadamard walk.
    pub fn symmetric() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        QubitState {
            alpha: Complex64::new(h, 0.0),
            beta: Complex64::new(0.0, h),
        }
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn as_vector(&self) -> [Complex64; 2] {
        [self.alpha, self.beta]
    }
}

/// Parameters of the limit density `{1 - c x} k(x : r)` of `X_n / n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitParams {
    pub r: f64,
    pub c: f64,
}

impl LimitParams {
    pub fn new(r: f64, c: f64) -> Result<Self> {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::invalid(format!("r = {r} must lie in (0, 1)")));
        }
        if c.abs() * r > 1.0 + UNITARITY_TOL {
            return Err(Error::invalid(format!("|c| = {} exceeds 1/r", c.abs())));
        }
        Ok(LimitParams {
            r,
            c: c.clamp(-1.0 / r, 1.0 / r),
        })
    }

    /// The limit density is `{1 - c x} k(x : r)`, i.e. the tilted measure
    /// `mu(r, -c)` whose density is written `(1 + c' x) k(x : r)`.
    pub fn measure(&self) -> MeasureSpec {
        MeasureSpec::Asymmetric {
            r: self.r,
            c: -self.c,
        }
    }
}
