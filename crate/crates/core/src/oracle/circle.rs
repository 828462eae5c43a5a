//! Degree of a circle map and the contraction construction of its conjugacy
//! to `z ↦ z^d`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A lift `g : R → R` of a circle map, with `g(t + 1) = g(t) + d`.
#[derive(Clone)]
pub struct CircleLift {
    g: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub sample_count: usize,
}

impl std::fmt::Debug for CircleLift {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CircleLift").field("sample_count", &self.sample_count).finish()
    }
}

impl CircleLift {
    pub fn new(g: impl Fn(f64) -> f64 + Send + Sync + 'static, sample_count: usize) -> Self {
        CircleLift { g: Arc::new(g), sample_count }
    }

    /// `g(t) = d·t + shift + amplitude·sin(2πt)`.
    pub fn trigonometric(d: f64, shift: f64, amplitude: f64, sample_count: usize) -> Self {
        CircleLift::new(
            move |t| d * t + shift + amplitude * (2.0 * std::f64::consts::PI * t).sin(),
            sample_count,
        )
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.g)(t)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjugacyResult {
    pub degree: i64,
    /// `h(i / N)` for `i = 0..N`; extended by `h(t + 1) = h(t) + 1`.
    pub h_samples: Vec<f64>,
    /// `max_i dist(h(g(t_i)) - d·h(t_i), Z)`.
    pub residual: f64,
    pub iterations: usize,
    /// Sup-norm change of each iteration.
    pub deltas: Vec<f64>,
    /// Largest ratio of consecutive deltas (while they exceed 1e-12).
    pub max_contraction_ratio: f64,
    pub converged: bool,
    pub monotone: bool,
}

pub fn degree(lift: &CircleLift) -> Result<i64> {
    let v = lift.eval(1.0) - lift.eval(0.0);
    let r = v.round();
    if !v.is_finite() || (v - r).abs() > 1e-9 {
        return Err(Error::InvalidLift(format!("g(1) - g(0) = {v} is not an integer")));
    }
    Ok(r as i64)
}

/// Piecewise-linear interpolation of `h` from samples, using `h(t + 1) = h(t) + 1`.
fn interpolate(h: &[f64], x: f64) -> f64 {
    let n = h.len();
    let scaled = x * n as f64;
    let k = scaled.floor();
    let r = scaled - k;
    let k = k as i64;
    let j = k.rem_euclid(n as i64) as usize;
    let wraps = ((k - j as i64) / n as i64) as f64;
    let (a, b) = if j + 1 == n { (h[j], h[0] + 1.0) } else { (h[j], h[j + 1]) };
    wraps + a + r * (b - a)
}

fn dist_to_integer(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// Iterates `h ← d⁻¹·h∘g` from the identity on a uniform grid.
pub fn conjugacy_to_power_map(lift: &CircleLift, tol: f64, max_iter: usize) -> Result<ConjugacyResult> {
    let d = degree(lift)?;
    if d.abs() <= 1 {
        return Err(Error::OutOfRegime(format!("degree {d}: the construction needs |d| >= 2")));
    }
    let n = lift.sample_count;
    if n < 2 {
        return Err(Error::Argument("at least two samples are needed".into()));
    }
    let ts: Vec<f64> = (0..n).map(|i| i as f64 / n as f64).collect();
    let gs: Vec<f64> = ts.iter().map(|&t| lift.eval(t)).collect();
    let increasing = d > 0;
    let last = lift.eval(1.0);
    for (i, w) in gs.windows(2).enumerate().map(|(i, w)| (i, [w[0], w[1]])).chain(std::iter::once((n - 1, [gs[n - 1], last]))) {
        let ok = if increasing { w[1] > w[0] } else { w[1] < w[0] };
        if !ok {
            return Err(Error::InvalidLift(format!("lift is not strictly monotone near sample {i}")));
        }
    }

    let df = d as f64;
    let bound = 1.0 / df.abs();
    let mut h = ts.clone();
    let mut deltas = Vec::new();
    let mut max_ratio: f64 = 0.0;
    let mut converged = false;
    let mut iterations = 0;
    while iterations < max_iter {
        let next: Vec<f64> = gs.iter().map(|&g| interpolate(&h, g) / df).collect();
        // keep the normalization h(0) ∈ [0, 1) so the lift stays bounded
        let shift = next[0].floor();
        let next: Vec<f64> = next.iter().map(|x| x - shift).collect();
        let delta = next
            .iter()
            .zip(&h)
            .map(|(a, b)| dist_to_integer(a - b).min((a - b).abs()))
            .fold(0.0, f64::max);
        if let Some(&prev) = deltas.last() {
            if prev > 1e-12 {
                max_ratio = max_ratio.max(delta / prev);
            }
        }
        deltas.push(delta);
        h = next;
        iterations += 1;
        if delta < tol {
            converged = true;
            break;
        }
    }
    if max_ratio > bound * (1.0 + 1e-6) + 1e-12 {
        return Err(Error::Internal(format!(
            "contraction ratio {max_ratio} exceeds 1/|d| = {bound}"
        )));
    }

    let residual = gs
        .iter()
        .zip(&h)
        .map(|(&g, &hv)| dist_to_integer(interpolate(&h, g) - df * hv))
        .fold(0.0, f64::max);
    let monotone = h.windows(2).all(|w| w[1] >= w[0]) && h[n - 1] <= h[0] + 1.0;
    Ok(ConjugacyResult {
        degree: d,
        h_samples: h,
        residual,
        iterations,
        deltas,
        max_contraction_ratio: max_ratio,
        converged,
        monotone,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees() {
        assert_eq!(degree(&CircleLift::trigonometric(2.0, 0.0, 0.0, 8)).unwrap(), 2);
        assert_eq!(degree(&CircleLift::trigonometric(-3.0, 0.0, 0.0, 8)).unwrap(), -3);
        assert_eq!(degree(&CircleLift::trigonometric(2.0, 0.0, 0.1, 8)).unwrap(), 2);
        assert!(matches!(degree(&CircleLift::new(|t| 2.5 * t, 8)), Err(Error::InvalidLift(_))));
    }

    #[test]
    fn linear_map_is_its_own_model() {
        let r = conjugacy_to_power_map(&CircleLift::trigonometric(2.0, 0.0, 0.0, 64), 1e-12, 10).unwrap();
        assert!(r.residual < 1e-12);
        assert!(r.h_samples.iter().enumerate().all(|(i, h)| (h - i as f64 / 64.0).abs() < 1e-12));
    }

    #[test]
    fn perturbed_doubling_converges() {
        let r = conjugacy_to_power_map(&CircleLift::trigonometric(2.0, 0.0, 0.1, 4096), 1e-10, 60).unwrap();
        assert!(r.converged && r.monotone);
        assert!(r.residual < 1e-8, "residual {}", r.residual);
        assert!(r.max_contraction_ratio <= 0.5 + 1e-9);
    }

    #[test]
    fn decreasing_lift_converges() {
        let r = conjugacy_to_power_map(&CircleLift::trigonometric(-2.0, 0.0, 0.05, 1024), 1e-10, 60).unwrap();
        assert!(r.converged && r.monotone);
        assert!(r.residual < 1e-8);
    }

    #[test]
    fn rejects_out_of_regime() {
        assert!(matches!(
            conjugacy_to_power_map(&CircleLift::trigonometric(1.0, 0.3, 0.0, 64), 1e-10, 10),
            Err(Error::OutOfRegime(_))
        ));
        assert!(matches!(
            conjugacy_to_power_map(&CircleLift::trigonometric(2.0, 0.0, 1.0, 64), 1e-10, 10),
            Err(Error::InvalidLift(_))
        ));
    }
}
