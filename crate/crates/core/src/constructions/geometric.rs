//! Placements realising the moves while keeping a framework independent.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::k4::k4_rigid_placement;
use super::moves::{apply_move, Move, MoveSequence};
use super::SCHEDULE_MAX_EXP;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::norms::Norm;
use crate::rigidity::{
    certified_rank, in_general_position, rigidity_matrix, Framework, DEFAULT_TOL,
};
use crate::vector::{independence, Vector2};

/// Fresh directions tried per move.
const DIRECTION_ATTEMPTS: usize = 64;

/// Minimum sine between directions, and minimum independence of their
/// support functionals.
const MIN_INDEPENDENCE: f64 = 1e-6;

/// Whether `fw` is well-positioned with rank `|E|`.
fn is_independent(fw: &Framework) -> Result<bool> {
    if fw.graph().edge_count() == 0 {
        return Ok(true);
    }
    match rigidity_matrix(fw) {
        Ok(m) => Ok(certified_rank(&m, DEFAULT_TOL)?.rank == fw.graph().edge_count()),
        Err(Error::NotWellPositioned(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Bounding-box diagonal of the placement, or 1 for a single point.
fn scale_of(points: &[Vector2]) -> f64 {
    if points.is_empty() {
        return 1.0;
    }
    let (mut lo, mut hi) = (points[0], points[0]);
    for p in points {
        lo = Vector2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Vector2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let d = (hi - lo).euclidean_len();
    if d > 0.0 {
        d
    } else {
        1.0
    }
}

struct Target<'a> {
    graph: Graph,
    old: HashMap<&'a str, Vector2>,
    norm: &'a Norm,
}

impl Target<'_> {
    /// The framework with old vertices in place and the new ones at `extra`.
    fn framework(&self, extra: &[(&str, Vector2)]) -> Result<Framework> {
        let placement: Vec<Vector2> = self
            .graph
            .names()
            .iter()
            .map(|n| {
                extra
                    .iter()
                    .find(|(name, _)| name == n)
                    .map(|&(_, p)| p)
                    .unwrap_or_else(|| self.old[n.as_str()])
            })
            .collect();
        Framework::new(self.graph.clone(), placement, self.norm.clone())
    }

    /// `framework(extra)` if it is independent.
    fn try_with(&self, extra: &[(&str, Vector2)]) -> Result<Option<Framework>> {
        if extra
            .iter()
            .any(|(_, p)| !p.x.is_finite() || !p.y.is_finite())
        {
            return Ok(None);
        }
        let fw = self.framework(extra)?;
        Ok(is_independent(&fw)?.then_some(fw))
    }

    fn well_positioned_with(&self, extra: &[(&str, Vector2)]) -> Result<bool> {
        Ok(self.framework(extra)?.is_well_positioned())
    }
}

/// A smooth unit direction, its support functional independent of that of
/// `d` and the direction itself off the line of `d`.
fn transverse_direction<R: Rng>(norm: &Norm, d: Vector2, rng: &mut R) -> Result<Vector2> {
    let fd = norm.dual_map_unit(d)?;
    let dn = d.scale(1.0 / d.euclidean_len());
    loop {
        let x = norm.random_smooth_unit(rng);
        let f = norm.dual_map_unit(x)?;
        let sine = x.cross(dn).abs() / x.euclidean_len();
        if sine > 1e-3 && independence(f, fd) > MIN_INDEPENDENCE {
            return Ok(x);
        }
    }
}

/// A nearby independent placement in general position. Independence is an
/// open condition, so small enough random shifts keep it.
fn general_position<R: Rng>(fw: &Framework, rng: &mut R) -> Result<Framework> {
    let scale = scale_of(fw.placement());
    for k in 0..SCHEDULE_MAX_EXP {
        let r = 1e-2 * scale / (1u64 << k) as f64;
        for _ in 0..4 {
            let moved: Vec<Vector2> = fw
                .placement()
                .iter()
                .map(|&p| p + Vector2::new(rng.gen_range(-r..r), rng.gen_range(-r..r)))
                .collect();
            let candidate = fw.with_placement(moved)?;
            if in_general_position(candidate.placement())
                && candidate.is_well_positioned()
                && is_independent(&candidate)?
            {
                return Ok(candidate);
            }
        }
    }
    Err(Error::Numerical(
        "no independent placement in general position nearby".into(),
    ))
}

/// Applies `m` to the graph of `fw` and places the new vertices so that the
/// result is again independent, following the constructive proofs that the
/// moves preserve independence. The input must be well-positioned and
/// independent. Vertex-to-K4 needs a non-Euclidean norm.
pub fn apply_move_geometric(fw: &Framework, m: &Move, seed: u64) -> Result<Framework> {
    if !fw.is_well_positioned() {
        return Err(Error::Precondition(
            "input framework is not well-positioned".into(),
        ));
    }
    if !is_independent(fw)? {
        return Err(Error::Precondition(
            "input framework is not independent".into(),
        ));
    }
    let graph = apply_move(fw.graph(), m)?;
    let g = fw.graph();
    let norm = fw.norm();
    let target = Target {
        graph,
        old: g
            .names()
            .iter()
            .map(String::as_str)
            .zip(fw.placement().iter().copied())
            .collect(),
        norm,
    };
    let pos = |name: &str| target.old[name];
    let scale = scale_of(fw.placement());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let found = match m {
        Move::Ext0 { v1, v2, new_vertex } => {
            let (p1, p2) = (pos(v1), pos(v2));
            let d = p2 - p1;
            let mut found = None;
            for _ in 0..DIRECTION_ATTEMPTS {
                // the new vertex sits where lines through p1 and p2 in
                // directions with independent functionals cross
                let (y1, y2) = norm.independent_smooth_pair(&mut rng, MIN_INDEPENDENCE);
                let det = y1.cross(y2);
                let t = d.cross(y2) / det;
                let s = d.cross(y1) / det;
                if t.abs() < 1e-6 * scale || s.abs() < 1e-6 * scale || t.abs() > 1e3 * scale {
                    continue;
                }
                found = target.try_with(&[(new_vertex, p1 + y1.scale(t))])?;
                if found.is_some() {
                    break;
                }
            }
            found
        }
        Move::Ext1 {
            deleted_edge: (v1, v2),
            v3,
            new_vertex,
        } => {
            let (p1, p2, p3) = (pos(v1), pos(v2), pos(v3));
            let d = p2 - p1;
            if d.cross(p3 - p1).abs() < 1e-6 * scale * scale {
                // the line construction needs p3 off the line through p1 and p2
                return apply_move_geometric(&general_position(fw, &mut rng)?, m, seed);
            }
            let mut found = None;
            for attempt in 0..DIRECTION_ATTEMPTS {
                // on the line through p1 and p2, reached from p3 along y
                let y = transverse_direction(norm, d, &mut rng)?;
                let t = (p3 - p1).cross(y) / d.cross(y);
                let mut z = p1 + d.scale(t);
                if attempt < DIRECTION_ATTEMPTS / 2 && (t.abs() < 1e-6 || (t - 1.0).abs() < 1e-6) {
                    continue;
                }
                if attempt >= DIRECTION_ATTEMPTS / 2 {
                    // degenerate input: step off the line
                    let r = 0.05 * scale;
                    z = z + Vector2::new(rng.gen_range(-r..r), rng.gen_range(-r..r));
                }
                let gap = (z - p3).euclidean_len();
                if gap < 1e-9 * scale || gap > 1e3 * scale {
                    continue;
                }
                found = target.try_with(&[(new_vertex, z)])?;
                if found.is_some() {
                    break;
                }
            }
            found
        }
        Move::VertexSplit {
            v0, w0, new_vertex, ..
        } => {
            let (p0, q) = (pos(v0), pos(w0));
            let mut found = None;
            'outer: for _ in 0..4 {
                let x = transverse_direction(norm, p0 - q, &mut rng)?;
                for k in 1..=SCHEDULE_MAX_EXP {
                    let n = (1u64 << k) as f64;
                    // a non-smooth new edge direction at this n is avoided by
                    // turning x slightly
                    for jitter in 0..4 {
                        let x = if jitter == 0 {
                            x
                        } else {
                            let a = x.angle() + rng.gen_range(-1e-3..1e-3);
                            let d = Vector2::from_angle(a);
                            d.scale(1.0 / norm.eval(d))
                        };
                        let candidate = [(new_vertex.as_str(), q - x.scale(scale / n))];
                        if let Some(fw) = target.try_with(&candidate)? {
                            found = Some(fw);
                            break 'outer;
                        }
                        if target.well_positioned_with(&candidate)? {
                            break;
                        }
                    }
                }
            }
            found
        }
        Move::VertexToK4 {
            v0, new_vertices, ..
        } => {
            if norm.is_euclidean() {
                return Err(Error::Precondition(
                    "vertex-to-K4 does not preserve independence in the Euclidean plane".into(),
                ));
            }
            let k4 = k4_rigid_placement(norm, seed)?;
            let pts = k4.placement();
            let centre = pts
                .iter()
                .fold(Vector2::new(0.0, 0.0), |a, &p| a + p)
                .scale(0.25);
            let radius = pts
                .iter()
                .map(|&p| (p - centre).euclidean_len())
                .fold(0.0, f64::max);
            let unit: Vec<Vector2> = pts
                .iter()
                .map(|&p| (p - centre).scale(1.0 / radius))
                .collect();
            let c = pos(v0);
            let mut found = None;
            'outer: for k in 1..=SCHEDULE_MAX_EXP {
                let n = (1u64 << k) as f64;
                for jitter in 0..4 {
                    // translating the small copy keeps its own functionals
                    let delta = if jitter == 0 {
                        Vector2::new(0.0, 0.0)
                    } else {
                        let r = 1e-3 * scale / n;
                        Vector2::new(rng.gen_range(-r..r), rng.gen_range(-r..r))
                    };
                    let candidate: Vec<(&str, Vector2)> = new_vertices
                        .iter()
                        .zip(&unit)
                        .map(|(name, &u)| (name.as_str(), c + delta + u.scale(scale / n)))
                        .collect();
                    if let Some(fw) = target.try_with(&candidate)? {
                        found = Some(fw);
                        break 'outer;
                    }
                    if target.well_positioned_with(&candidate)? {
                        break;
                    }
                }
            }
            found
        }
    };
    found.ok_or_else(|| {
        Error::Numerical(format!(
            "{} placement did not reach rank {} within the perturbation budget",
            m.kind(),
            target.graph.edge_count()
        ))
    })
}

/// Replays a move sequence geometrically from a single point at the origin.
pub fn realize(ms: &MoveSequence, norm: &Norm, seed: u64) -> Result<Framework> {
    let mut fw = Framework::new(ms.start_graph(), vec![Vector2::new(0.0, 0.0)], norm.clone())?;
    for (i, m) in ms.moves.iter().enumerate() {
        fw = apply_move_geometric(&fw, m, seed.wrapping_add(i as u64))?;
    }
    Ok(fw)
}
