//! Independent placements of `K4` in each regime of normed plane.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::sweep::k4_sc_smooth;
use super::{DEFAULT_EPSILON, DEFAULT_GRID, SCHEDULE_MAX_EXP};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::norms::{Norm, RationalPair, SupportSet};
use crate::rigidity::{
    certified_rank, exact_rank, numeric_rank, pseudo_rigidity_matrix,
    random_well_positioned_placement, rigidity_matrix, Framework, PseudoAssignment,
    DEFAULT_ATTEMPTS, DEFAULT_TOL,
};
use crate::vector::{independence, Covector2, Vector2};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn lin(a: &BigRational, u: &RationalPair, b: &BigRational, v: &RationalPair) -> RationalPair {
    (a * &u.0 + b * &v.0, a * &u.1 + b * &v.1)
}

fn sub(u: &RationalPair, v: &RationalPair) -> RationalPair {
    (&u.0 - &v.0, &u.1 - &v.1)
}

fn det(f: &RationalPair, g: &RationalPair) -> BigRational {
    &f.0 * &g.1 - &f.1 * &g.0
}

/// Candidate values of `r` in `(0, 1/3)`, starting at `1/4`.
fn r_candidates() -> impl Iterator<Item = BigRational> {
    std::iter::once(q(1, 4)).chain((5..=24).flat_map(|d| {
        (1..d)
            .take_while(move |n| 3 * n < d)
            .filter(move |&n| (n, d) != (1, 4) && num_integer::gcd(n, d) == 1)
            .map(move |n| q(n, d))
    }))
}

/// `K4` placed on a flat piece `[x1, x2]` of the unit sphere:
/// `v1 = 0`, `v2 = (1-r)a·x1 + rb·x2`, `v3 = ra·x1 + (1-r)b·x2`,
/// `v4 = (1-2r)(a·x1 - b·x2)`, where `y = a·x1 - b·x2` is a smooth unit vector
/// whose functional is independent of the one on the flat piece. Edges
/// `v1v2`, `v1v3`, `v2v4` then share the flat piece's functional, `v1v4` and
/// `v2v3` share that of `y`, and `r` is chosen so that `v3v4` is smooth.
/// Everything is exact, and the rank is certified by exact elimination.
pub fn k4_not_strictly_convex(norm: &Norm, seed: u64) -> Result<Framework> {
    if norm.classification().strictly_convex {
        return Err(Error::Precondition("norm is strictly convex".into()));
    }
    let (x1, x2) = norm
        .exact_flat_segment()
        .ok_or_else(|| Error::Precondition("norm has no exact flat segment".into()))?;
    let half = q(1, 2);
    let mid = lin(&half, &x1, &half, &x2);
    let fx = norm
        .exact_dual_map_unit(&mid)
        .ok_or_else(|| Error::Numerical("midpoint of the flat piece is not smooth".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fixed = [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)];
    let random = (0..64).map(|_| (rng.gen_range(1..=20), rng.gen_range(1..=20)));
    let coefficients: Vec<(i64, i64)> = fixed.into_iter().chain(random).collect();
    let one = BigRational::one();
    for (c, d) in coefficients {
        let raw = lin(&q(c, 1), &x1, &q(-d, 1), &x2);
        let len = norm.exact_eval(&raw).expect("polygonal norm");
        let (a, b) = (q(c, 1) / &len, q(d, 1) / &len);
        let y = lin(&a, &x1, &(-&b), &x2);
        let Some(fy) = norm.exact_dual_map_unit(&y) else {
            continue;
        };
        if det(&fx, &fy).is_zero() {
            continue;
        }
        let w = lin(&(-&a), &x1, &(&b + &b), &x2);
        if norm.exact_dual_map_unit(&w).is_none() {
            continue;
        }
        for r in r_candidates() {
            let zero = (BigRational::zero(), BigRational::zero());
            let v2 = lin(&((&one - &r) * &a), &x1, &(&r * &b), &x2);
            let v3 = lin(&(&r * &a), &x1, &((&one - &r) * &b), &x2);
            let s = &one - &r - &r;
            let v4 = lin(&(&s * &a), &x1, &(-(&s * &b)), &x2);
            if norm.exact_dual_map_unit(&sub(&v4, &v3)).is_none() {
                continue;
            }
            let fw =
                Framework::from_rational(Graph::complete(4), vec![zero, v2, v3, v4], norm.clone())?;
            let m = rigidity_matrix(&fw)?;
            if m.exact().is_some() && exact_rank(&m)?.rank == 6 {
                return Ok(fw);
            }
        }
    }
    Err(Error::SearchExhausted(
        "no flat-piece placement of K4 reached rank 6".into(),
    ))
}

/// The limiting configuration of the non-smooth construction: `K4` at
/// `(0, x, y, z)` with `z = x + y` a non-smooth unit vector and
/// `φ[z] = [f, g]`, labelled so that `(f - g)(x) > 0`. Only the edge
/// `v1v4` is not well-positioned.
#[derive(Debug, Clone)]
pub struct NonSmoothSetup {
    pub base: Framework,
    pub x: Vector2,
    pub y: Vector2,
    pub z: Vector2,
    pub f: Covector2,
    pub g: Covector2,
}

impl NonSmoothSetup {
    /// `q^k = (0, x + x/k, y, z + x/k)`, which tends to `base` with the
    /// functional of `v4 - v1` tending to `f` for `k > 0` and to `g` for
    /// `k < 0`.
    pub fn member(&self, k: i64) -> Result<Framework> {
        assert!(k != 0, "k must be non-zero");
        let shift = self.x.scale(1.0 / k as f64);
        self.base.with_placement(vec![
            Vector2::new(0.0, 0.0),
            self.x + shift,
            self.y,
            self.z + shift,
        ])
    }

    /// Pseudo-support assignment for the limit, with `h` standing for the
    /// functional of `v4 - v1`.
    pub fn assignment(&self, h: Covector2) -> PseudoAssignment {
        // the row of v1v4 uses the direction v1 - v4
        PseudoAssignment::new().with((0, 3), -h)
    }
}

/// Splits a non-smooth unit vector `z` as `x + y` with `x`, `y` and `x - y`
/// smooth, `x` and `y` independent, and the functionals of `x`, `y`, `x - y`
/// pairwise independent.
pub fn nonsmooth_setup(norm: &Norm, seed: u64) -> Result<NonSmoothSetup> {
    let c = norm.classification();
    if !c.strictly_convex {
        return Err(Error::Precondition(
            "norm is not strictly convex; use the flat-piece construction".into(),
        ));
    }
    if c.smooth {
        return Err(Error::Precondition("norm is smooth".into()));
    }
    let z = norm
        .nonsmooth_direction()
        .ok_or_else(|| Error::Precondition("norm is smooth".into()))?;
    let (mut f, mut g) = match norm.support_set(z)? {
        SupportSet::Segment(f, g) => (f, g),
        SupportSet::Point(_) => {
            return Err(Error::Numerical(
                "reported non-smooth direction is smooth".into(),
            ))
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..256 {
        let w = Vector2::from_angle(rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
            .scale(rng.gen_range(0.4..1.2));
        let x = (z + w).scale(0.5);
        let y = (z - w).scale(0.5);
        if x.cross(y).abs() < 1e-2 * x.euclidean_len() * y.euclidean_len() {
            continue;
        }
        let smooth = |v: Vector2| norm.is_smooth_at(v).unwrap_or(false);
        if !(smooth(x) && smooth(y) && smooth(w)) {
            continue;
        }
        let (fx, fy, fw) = (
            norm.dual_map_unit(x)?,
            norm.dual_map_unit(y)?,
            norm.dual_map_unit(w)?,
        );
        if independence(fx, fy) < 1e-3 || independence(fx, fw) < 1e-3 || independence(fy, fw) < 1e-3
        {
            continue;
        }
        if (f - g).apply(x) < 0.0 {
            std::mem::swap(&mut f, &mut g);
        }
        let base = Framework::new(
            Graph::complete(4),
            vec![Vector2::new(0.0, 0.0), x, y, z],
            norm.clone(),
        )?;
        return Ok(NonSmoothSetup {
            base,
            x,
            y,
            z,
            f,
            g,
        });
    }
    Err(Error::SearchExhausted(
        "no admissible splitting z = x + y found".into(),
    ))
}

/// `K4` in a strictly convex plane with a non-smooth direction `z`: the
/// limit placement `(0, x, y, z)` with either `f` or `g` on the edge `v1v4`
/// has an independent pseudo-rigidity matrix, so members `q^k` of the
/// approaching sequence on the matching side are independent for large `|k|`.
/// Both sides are tried, the one whose functional is further from
/// `a·φ(x) - b·φ(y)` first, where `φ(x - y) = a·φ(x) + b·φ(y)`.
pub fn k4_sc_nonsmooth(norm: &Norm, seed: u64) -> Result<Framework> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    for round in 0..8 {
        let s = nonsmooth_setup(norm, seed.wrapping_add(round))?;
        let (fx, fy) = (norm.dual_map_unit(s.x)?, norm.dual_map_unit(s.y)?);
        let fw = norm.dual_map_unit(s.x - s.y)?;
        let d = fx.det(fy);
        let (a, b) = (fw.det(fy) / d, fx.det(fw) / d);
        let h = a * fx - b * fy;
        let mut sides = [(1i64, s.f), (-1i64, s.g)];
        sides.sort_by(|p, q| independence(q.1, h).total_cmp(&independence(p.1, h)));
        for (sign, target) in sides {
            if independence(target, h) < 1e-9 {
                continue;
            }
            let limit = pseudo_rigidity_matrix(&s.base, &s.assignment(target))?;
            if numeric_rank(&limit, DEFAULT_TOL)?.rank < 6 {
                continue;
            }
            for e in 1..=SCHEDULE_MAX_EXP {
                let k = sign * (1i64 << e);
                let mut fw = s.member(k)?;
                // nudge off any non-smooth edge direction, by less than 1/k²
                let mut tries = 0;
                while !fw.is_well_positioned() && tries < 8 {
                    let r = 0.5 / (k as f64 * k as f64);
                    let mut p = fw.placement().to_vec();
                    for pt in p.iter_mut().skip(1) {
                        *pt = *pt + Vector2::new(rng.gen_range(-r..r), rng.gen_range(-r..r));
                    }
                    fw = fw.with_placement(p)?;
                    tries += 1;
                }
                if !fw.is_well_positioned() {
                    continue;
                }
                if numeric_rank(&rigidity_matrix(&fw)?, DEFAULT_TOL)?.rank == 6 {
                    return Ok(fw);
                }
            }
        }
    }
    Err(Error::Numerical(format!(
        "no rank-6 member of the approaching sequence up to k = 2^{SCHEDULE_MAX_EXP}"
    )))
}

/// An independent placement of `K4` in a non-Euclidean plane: random
/// placements first, then the construction matching the norm's regime.
pub fn k4_rigid_placement(norm: &Norm, seed: u64) -> Result<Framework> {
    if norm.is_euclidean() {
        return Err(Error::Precondition(
            "K4 is rigid but not independent in the Euclidean plane".into(),
        ));
    }
    let k4 = Graph::complete(4);
    for i in 0..8 {
        let Ok(fw) =
            random_well_positioned_placement(&k4, norm, seed.wrapping_add(i), DEFAULT_ATTEMPTS)
        else {
            continue;
        };
        if certified_rank(&rigidity_matrix(&fw)?, DEFAULT_TOL)?.rank == 6 {
            return Ok(fw);
        }
    }
    let c = norm.classification();
    if !c.strictly_convex {
        k4_not_strictly_convex(norm, seed)
    } else if !c.smooth {
        k4_sc_nonsmooth(norm, seed)
    } else {
        k4_sc_smooth(norm, DEFAULT_EPSILON, DEFAULT_GRID)
    }
}
