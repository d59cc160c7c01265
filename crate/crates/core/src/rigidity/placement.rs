use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Framework;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::norms::Norm;
use crate::vector::Vector2;

pub const DEFAULT_ATTEMPTS: usize = 64;

/// Relative threshold for coincidence and collinearity.
const GENERAL_POSITION_TOL: f64 = 1e-6;

/// No two points closer than `1e-6·d` and no three spanning a triangle of
/// area below `1e-6·d²`, where `d` is the bounding-box diagonal.
pub fn in_general_position(points: &[Vector2]) -> bool {
    if points.len() < 2 {
        return true;
    }
    let (mut lo, mut hi) = (points[0], points[0]);
    for p in points {
        lo = Vector2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Vector2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let diag = (hi - lo).euclidean_len();
    if diag == 0.0 {
        return false;
    }
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            if (points[i] - points[j]).euclidean_len() < GENERAL_POSITION_TOL * diag {
                return false;
            }
            for k in j + 1..n {
                let area = 0.5 * (points[j] - points[i]).cross(points[k] - points[i]).abs();
                if area < GENERAL_POSITION_TOL * diag * diag {
                    return false;
                }
            }
        }
    }
    true
}

/// Uniform points in `[-1, 1]²`, resampled until they are in general
/// position and every edge direction is smooth.
pub fn random_well_positioned_placement(
    g: &Graph,
    norm: &Norm,
    seed: u64,
    attempts: usize,
) -> Result<Framework> {
    if attempts == 0 {
        return Err(Error::Precondition("attempts must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempts {
        let points: Vec<Vector2> = (0..g.vertex_count())
            .map(|_| Vector2::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)))
            .collect();
        if !in_general_position(&points) {
            continue;
        }
        let fw = Framework::new(g.clone(), points, norm.clone())?;
        if fw.is_well_positioned() {
            return Ok(fw);
        }
    }
    Err(Error::SearchExhausted(format!(
        "no well-positioned general-position placement in {attempts} attempts; retry with another seed or perturb"
    )))
}
