//! Circle intersection and the `K4 - e` configuration path in strictly
//! convex smooth planes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::norms::Norm;
use crate::rigidity::{numeric_rank, rigidity_matrix, Framework, DEFAULT_TOL};
use crate::vector::Vector2;

/// Minimum `|d‖v4‖/dt|` accepted as a genuine change along the path.
pub const DERIVATIVE_THRESHOLD: f64 = 1e-4;

/// Values of `ε` tried after the requested one.
const RETRY_EPSILONS: [f64; 3] = [0.7, 1.1, 1.3];

/// Sweep samples with the steepest derivative tried for rank 6.
const CANDIDATES: usize = 16;

/// The unit vector at Euclidean angle `t`.
fn unit_at(norm: &Norm, t: f64) -> Vector2 {
    let d = Vector2::from_angle(t);
    d.scale(1.0 / norm.eval(d))
}

/// Points `z` with `‖z - c1‖ = r1` and `‖z - c2‖ = r2`. The first sphere is
/// parametrised by angle measured from the direction of `c2 - c1`; the
/// distance to `c2` then increases strictly on `[0, π]` and decreases on
/// `[-π, 0]`, so each half holds at most one solution, found by bisection.
/// Two solutions are returned counter-clockwise one first, and lie on
/// opposite sides of the line through `c1` and `c2`. Tangencies are
/// detected to within `tol`.
pub fn circle_intersect(
    norm: &Norm,
    c1: Vector2,
    r1: f64,
    c2: Vector2,
    r2: f64,
    tol: f64,
) -> Result<Vec<Vector2>> {
    if !norm.classification().strictly_convex {
        return Err(Error::Precondition("norm is not strictly convex".into()));
    }
    if !(r1 > 0.0 && r2 > 0.0) || !r1.is_finite() || !r2.is_finite() {
        return Err(Error::Precondition("radii must be positive".into()));
    }
    if c1 == c2 {
        return Err(Error::Precondition("centres must differ".into()));
    }
    let t0 = (c2 - c1).angle();
    let point = |t: f64| c1 + unit_at(norm, t0 + t).scale(r1);
    let h = |t: f64| norm.eval(point(t) - c2) - r2;
    let (near, far) = (h(0.0), h(std::f64::consts::PI));
    if near > tol || far < -tol {
        return Ok(Vec::new());
    }
    if near.abs() <= tol {
        return Ok(vec![point(0.0)]);
    }
    if far.abs() <= tol {
        return Ok(vec![point(std::f64::consts::PI)]);
    }
    // h < 0 at 0 and h > 0 at ±π
    let root = |sign: f64| {
        let (mut lo, mut hi) = (0.0f64, std::f64::consts::PI);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if h(sign * mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        point(sign * 0.5 * (lo + hi))
    };
    Ok(vec![root(1.0), root(-1.0)])
}

/// One point of the path: `v1 = 0`, `‖v2‖ = ‖v3‖ = 1`, `‖v2 - v3‖ = ε`,
/// `v3` clockwise of `v2`, and `v4 = v2 + v3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSample {
    /// Euclidean angle of `v2`.
    pub t: f64,
    pub v2: Vector2,
    pub v3: Vector2,
    pub v4: Vector2,
    pub norm_v4: f64,
    /// Largest violation of the three distance constraints.
    pub residual: f64,
}

impl SweepSample {
    pub fn placement(&self) -> Vec<Vector2> {
        vec![Vector2::ZERO, self.v2, self.v3, self.v4]
    }
}

/// Samples the path at `grid` equally spaced angles of `v2` over a full turn.
pub fn sweep(norm: &Norm, epsilon: f64, grid: usize) -> Result<Vec<SweepSample>> {
    if !(epsilon > 0.0 && epsilon < 2.0) {
        return Err(Error::Precondition("epsilon must lie in (0, 2)".into()));
    }
    if grid < 3 {
        return Err(Error::Precondition(
            "the sweep needs at least 3 samples".into(),
        ));
    }
    (0..grid)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / grid as f64;
            let v2 = unit_at(norm, t);
            let points = circle_intersect(norm, Vector2::ZERO, 1.0, v2, epsilon, 1e-14)?;
            let v3 = points
                .into_iter()
                .find(|z| z.cross(v2) > 0.0)
                .ok_or_else(|| Error::Numerical(format!("no clockwise intersection at t = {t}")))?;
            let v4 = v2 + v3;
            let residual = (norm.eval(v2) - 1.0)
                .abs()
                .max((norm.eval(v3) - 1.0).abs())
                .max((norm.eval(v2 - v3) - epsilon).abs());
            Ok(SweepSample {
                t,
                v2,
                v3,
                v4,
                norm_v4: norm.eval(v4),
                residual,
            })
        })
        .collect()
}

/// Central differences of `‖v4‖` along a closed sweep.
pub fn sweep_derivative(samples: &[SweepSample]) -> Vec<f64> {
    let n = samples.len();
    let dt = std::f64::consts::TAU / n as f64;
    (0..n)
        .map(|i| (samples[(i + 1) % n].norm_v4 - samples[(i + n - 1) % n].norm_v4) / (2.0 * dt))
        .collect()
}

/// `K4` in a strictly convex smooth plane: a point of the path where `‖v4‖`
/// changes is one where the distance `v1v4` cannot be held, so there the
/// four distances of `K4 - e` plus `v1v4` pin the framework. Samples are
/// tried steepest first; a flat sweep falls back to other values of `ε`.
pub fn k4_sc_smooth(norm: &Norm, epsilon: f64, grid: usize) -> Result<Framework> {
    let c = norm.classification();
    if !c.strictly_convex {
        return Err(Error::Precondition("norm is not strictly convex".into()));
    }
    if !c.smooth {
        return Err(Error::Precondition("norm is not smooth".into()));
    }
    let mut tried = Vec::new();
    for eps in std::iter::once(epsilon).chain(RETRY_EPSILONS) {
        if tried.contains(&eps) {
            continue;
        }
        tried.push(eps);
        let samples = sweep(norm, eps, grid)?;
        let slope = sweep_derivative(&samples);
        let mut order: Vec<usize> = (0..samples.len())
            .filter(|&i| slope[i].abs() > DERIVATIVE_THRESHOLD)
            .collect();
        order.sort_by(|&a, &b| slope[b].abs().total_cmp(&slope[a].abs()));
        for &i in order.iter().take(CANDIDATES) {
            let fw = Framework::new(Graph::complete(4), samples[i].placement(), norm.clone())?;
            if !fw.is_well_positioned() {
                continue;
            }
            if numeric_rank(&rigidity_matrix(&fw)?, DEFAULT_TOL)?.rank == 6 {
                return Ok(fw);
            }
        }
    }
    Err(Error::Numerical(format!(
        "‖v4‖ is constant along the path for ε in {tried:?} at threshold {DERIVATIVE_THRESHOLD}; \
         try a different epsilon"
    )))
}
