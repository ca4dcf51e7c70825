//! Exact amplitude evolution of the walk on `Z`.
//!
//! One step sends the amplitude at `x + 1` through `P` and the amplitude at
//! `x - 1` through `Q`: `psi'(x) = P psi(x + 1) + Q psi(x - 1)`.

use num_complex::Complex64;

use crate::coin::{Coin, LimitParams, QubitState};
use crate::density::cdf_mu;
use crate::error::{Error, Result};

/// Amplitudes `(left, right)` at positions `-time..=time`, stored densely
/// (including the parity slots that are always zero).
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeField {
    time: usize,
    amplitudes: Vec<[Complex64; 2]>,
}

impl AmplitudeField {
    /// Time-0 field: the state sits at the origin.
    pub fn initial(state: &QubitState) -> Self {
        AmplitudeField {
            time: 0,
            amplitudes: vec![state.as_vector()],
        }
    }

    pub fn time(&self) -> usize {
        self.time
    }

    /// Amplitude at position `x`; zero outside `[-time, time]`.
    pub fn at(&self, x: i64) -> [Complex64; 2] {
        let zero = [Complex64::new(0.0, 0.0); 2];
        let t = self.time as i64;
        if x < -t || x > t {
            return zero;
        }
        self.amplitudes[(x + t) as usize]
    }

    pub fn amplitudes(&self) -> &[[Complex64; 2]] {
        &self.amplitudes
    }

    pub fn total_probability(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|[l, r]| l.norm_sqr() + r.norm_sqr())
            .sum()
    }

    /// Advances the field by one step of `coin`.
    pub fn step(&self, coin: &Coin) -> Self {
        let [a, b, c, d] = coin.entries();
        let t = self.time as i64;
        let width = 2 * (self.time + 1) + 1;
        let mut next = vec![[Complex64::new(0.0, 0.0); 2]; width];
        for (i, slot) in next.iter_mut().enumerate() {
            let x = i as i64 - (t + 1);
            let [l, r] = self.at(x + 1);
            let left = a * l + b * r;
            let [l, r] = self.at(x - 1);
            let right = c * l + d * r;
            *slot = [left, right];
        }
        AmplitudeField {
            time: self.time + 1,
            amplitudes: next,
        }
    }

    pub fn distribution(&self) -> Distribution {
        Distribution {
            time: self.time,
            probs: self
                .amplitudes
                .iter()
                .map(|[l, r]| l.norm_sqr() + r.norm_sqr())
                .collect(),
        }
    }
}

/// Field at time `n`, by `n` applications of [`AmplitudeField::step`].
pub fn evolve(coin: &Coin, state: &QubitState, n: usize) -> AmplitudeField {
    let mut field = AmplitudeField::initial(state);
    for _ in 0..n {
        field = field.step(coin);
    }
    field
}

/// `P(X_n = x)` for `x = -n..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    time: usize,
    probs: Vec<f64>,
}

impl Distribution {
    pub fn time(&self) -> usize {
        self.time
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, x: i64) -> f64 {
        let t = self.time as i64;
        if x < -t || x > t {
            0.0
        } else {
            self.probs[(x + t) as usize]
        }
    }

    /// `(x, P(X_n = x))` pairs in increasing `x`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let t = self.time as i64;
        self.probs
            .iter()
            .enumerate()
            .map(move |(i, p)| (i as i64 - t, *p))
    }

    /// `P(X_n / n <= t)`.
    pub fn rescaled_cdf(&self, t: f64) -> f64 {
        if self.time == 0 {
            return if t >= 0.0 { 1.0 } else { 0.0 };
        }
        let n = self.time as f64;
        self.iter()
            .take_while(|(x, _)| (*x as f64) <= t * n)
            .map(|(_, p)| p)
            .sum()
    }
}

/// `max_t |P(X_n / n <= t) - F(t)|` over the grid, where `F` is the CDF of
/// the limit density `{1 - c x} k(x : r)`.
pub fn rescaled_cdf_distance(dist: &Distribution, params: &LimitParams, grid: &[f64]) -> Result<f64> {
    if let Some(t) = grid.iter().find(|t| !(t.abs() < 1.0)) {
        return Err(Error::invalid(format!("grid point {t} is outside (-1, 1)")));
    }
    let limit = params.measure();
    grid.iter().try_fold(0.0_f64, |acc, &t| {
        let gap = (dist.rescaled_cdf(t) - cdf_mu(t, &limit)?).abs();
        Ok(acc.max(gap))
    })
}

/// `count` evenly spaced points in `(-r, r)` that keep `exclusion` away from
/// both support edges.
pub fn interior_grid(r: f64, exclusion: f64, count: usize) -> Vec<f64> {
    let lo = -r + exclusion;
    let hi = r - exclusion;
    if count < 2 {
        return vec![0.5 * (lo + hi); count];
    }
    let step = (hi - lo) / (count - 1) as f64;
    (0..count).map(|i| lo + step * i as f64).collect()
}
