//! Gauss–Legendre rules and the `x = r sin(theta)` integration rule for the
//! walk measures.

use std::f64::consts::{FRAC_PI_2, PI};
use std::ops::{Add, Mul};
use std::sync::OnceLock;

use num_traits::Zero;

/// Node count of the fixed rule used for every walk-measure integral.
pub const WALK_RULE_NODES: usize = 200;

#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes are the roots of `P_n`, found by Newton's method from the
    /// Chebyshev-like initial guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    let (_, d) = legendre_with_derivative(n, x);
                    dp = d;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<T, F>(&self, a: f64, b: f64, f: F) -> T
    where
        T: Zero + Add<Output = T> + Mul<f64, Output = T>,
        F: Fn(f64) -> T,
    {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        let mut acc = T::zero();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + f(mid + half * x) * (w * half);
        }
        acc
    }

    /// Splits `[a, b]` into `panels` equal pieces and applies the rule on each.
    pub fn integrate_composite<T, F>(&self, a: f64, b: f64, panels: usize, f: F) -> T
    where
        T: Zero + Add<Output = T> + Mul<f64, Output = T>,
        F: Fn(f64) -> T,
    {
        let h = (b - a) / panels as f64;
        (0..panels).fold(T::zero(), |acc, k| {
            let lo = a + h * k as f64;
            acc + self.integrate(lo, lo + h, &f)
        })
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

pub fn walk_rule() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(WALK_RULE_NODES))
}

/// `∫_{-r}^{t} f(x) (1 + c x) k(x : r) dx` through `x = r sin(theta)`.
///
/// After the substitution the weight becomes
/// `(1 + c r sin θ) sqrt(1 - r²) / (π (1 - r² sin² θ))`, which is smooth on
/// the closed θ-interval.
pub fn integrate_walk_measure<T, F>(r: f64, c: f64, upper: f64, f: F) -> T
where
    T: Zero + Add<Output = T> + Mul<f64, Output = T>,
    F: Fn(f64) -> T,
{
    if upper <= -r {
        return T::zero();
    }
    let theta_hi = if upper >= r {
        FRAC_PI_2
    } else {
        (upper / r).asin()
    };
    let s = (1.0 - r * r).sqrt();
    walk_rule().integrate(-FRAC_PI_2, theta_hi, |theta| {
        let sin = theta.sin();
        let x = r * sin;
        let weight = (1.0 + c * x) * s / (PI * (1.0 - x * x));
        f(x) * weight
    })
}

/// `∫ f(x) sqrt(4p - (x - q)²) g(x) dx` over `(q - 2 sqrt p, q + 2 sqrt p)`
/// via `x = q + 2 sqrt(p) sin θ`; used for the general-case densities. The
/// caller supplies the full integrand divided by `sqrt(4p - (x-q)²)`.
pub fn integrate_semicircle_support<F>(p: f64, q: f64, panels: usize, f: F) -> f64
where
    F: Fn(f64) -> f64,
{
    let rad = 2.0 * p.sqrt();
    walk_rule().integrate_composite(-FRAC_PI_2, FRAC_PI_2, panels, |theta| {
        let (sin, cos) = theta.sin_cos();
        let x = q + rad * sin;
        // sqrt(4p - (x-q)^2) dx = rad² cos² θ dθ
        f(x) * (rad * rad * cos * cos)
    })
}
