//! Normed planes: evaluation, support functionals and smoothness.
//!
//! Every norm kind is handled analytically. Smoothness is decided exactly:
//! coordinate comparisons for `l1`, `linf` and `sc-nonsmooth`, rational
//! facet arithmetic for polygons, and the `ℓp` / Euclidean norms are smooth
//! everywhere. A direction is smooth precisely when its support set is a
//! single functional.

pub(crate) mod parse;
mod polygon;

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

pub use parse::ParseNormError;
pub use polygon::{Polygon, PolygonError, RationalPair};

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::vector::{independence, Covector2, Vector2};

/// Smoothness / convexity flags of a norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub strictly_convex: bool,
    pub smooth: bool,
    pub euclidean: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum NormKind {
    Euclidean,
    /// `ℓp` with `1 < p < ∞`, `p ≠ 2`.
    Lp(f64),
    L1,
    LInf,
    Polyhedral(Polygon),
    /// `‖v‖₂ + ‖v‖∞`: strictly convex, non-smooth on the diagonals.
    ScNonSmooth,
}

/// A norm on the plane.
#[derive(Debug, Clone, PartialEq)]
pub struct Norm {
    kind: NormKind,
}

/// The set `φ[v]` of support functionals of a non-zero vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SupportSet {
    Point(Covector2),
    /// The closed segment `[f, g]`; endpoints listed counter-clockwise.
    Segment(Covector2, Covector2),
}

impl SupportSet {
    pub fn is_point(&self) -> bool {
        matches!(self, SupportSet::Point(_))
    }

    pub fn endpoints(&self) -> (Covector2, Covector2) {
        match *self {
            SupportSet::Point(f) => (f, f),
            SupportSet::Segment(f, g) => (f, g),
        }
    }

    pub fn scale(&self, s: f64) -> SupportSet {
        match *self {
            SupportSet::Point(f) => SupportSet::Point(f.scale(s)),
            SupportSet::Segment(f, g) => SupportSet::Segment(f.scale(s), g.scale(s)),
        }
    }

    /// Point of the segment at parameter `t ∈ [0, 1]`.
    pub fn at(&self, t: f64) -> Covector2 {
        let (f, g) = self.endpoints();
        (1.0 - t) * f + t * g
    }
}

/// A flat piece `[x1, x2]` of the unit sphere with a smooth interior witness
/// `x` whose support functional takes the value 1 on the whole piece.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlatSegment {
    pub x: Vector2,
    pub x1: Vector2,
    pub x2: Vector2,
}

impl Norm {
    pub fn euclidean() -> Self {
        Self {
            kind: NormKind::Euclidean,
        }
    }

    pub fn lp(p: f64) -> Result<Self> {
        if !p.is_finite() || p <= 1.0 {
            return Err(Error::Precondition(format!(
                "lp exponent must be finite and exceed 1, got {p}"
            )));
        }
        if p == 2.0 {
            return Err(Error::Precondition(
                "lp:2 is the Euclidean norm; use `euclidean`".into(),
            ));
        }
        Ok(Self {
            kind: NormKind::Lp(p),
        })
    }

    pub fn l1() -> Self {
        Self { kind: NormKind::L1 }
    }

    pub fn linf() -> Self {
        Self {
            kind: NormKind::LInf,
        }
    }

    pub fn sc_nonsmooth() -> Self {
        Self {
            kind: NormKind::ScNonSmooth,
        }
    }

    pub fn polyhedral(polygon: Polygon) -> Self {
        Self {
            kind: NormKind::Polyhedral(polygon),
        }
    }

    pub fn kind(&self) -> &NormKind {
        &self.kind
    }

    pub fn classification(&self) -> Classification {
        let (strictly_convex, smooth, euclidean) = match self.kind {
            NormKind::Euclidean => (true, true, true),
            NormKind::Lp(_) => (true, true, false),
            NormKind::L1 | NormKind::LInf | NormKind::Polyhedral(_) => (false, false, false),
            NormKind::ScNonSmooth => (true, false, false),
        };
        Classification {
            strictly_convex,
            smooth,
            euclidean,
        }
    }

    pub fn is_euclidean(&self) -> bool {
        matches!(self.kind, NormKind::Euclidean)
    }

    /// Norms whose unit ball is a polygon. Their unit support functionals are
    /// facet normals with exact rational coordinates.
    pub fn is_polyhedral(&self) -> bool {
        matches!(
            self.kind,
            NormKind::L1 | NormKind::LInf | NormKind::Polyhedral(_)
        )
    }

    /// `‖v‖`.
    pub fn eval(&self, v: Vector2) -> f64 {
        match &self.kind {
            NormKind::Euclidean => v.euclidean_len(),
            NormKind::Lp(p) => lp_norm(v.x, v.y, *p),
            NormKind::L1 => v.x.abs() + v.y.abs(),
            NormKind::LInf => v.x.abs().max(v.y.abs()),
            NormKind::Polyhedral(poly) => poly.eval(v),
            NormKind::ScNonSmooth => v.euclidean_len() + v.x.abs().max(v.y.abs()),
        }
    }

    /// `v / ‖v‖`.
    pub fn normalize(&self, v: Vector2) -> Result<Vector2> {
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(v.scale(1.0 / self.eval(v)))
    }

    /// Dual norm `‖f‖* = sup { f(v) : ‖v‖ ≤ 1 }`, by a closed form per kind.
    pub fn dual_eval(&self, f: Covector2) -> f64 {
        match &self.kind {
            NormKind::Euclidean => f.euclidean_len(),
            NormKind::Lp(p) => lp_norm(f.a, f.b, p / (p - 1.0)),
            NormKind::L1 => f.a.abs().max(f.b.abs()),
            NormKind::LInf => f.a.abs() + f.b.abs(),
            NormKind::Polyhedral(poly) => poly.dual_eval(f),
            NormKind::ScNonSmooth => sc_dual(f),
        }
    }

    /// Support functionals of `v / ‖v‖`, i.e. the subdifferential of the norm
    /// at `v`. Every member has dual norm 1 and value 1 at `v / ‖v‖`.
    pub fn unit_support_set(&self, v: Vector2) -> Result<SupportSet> {
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        let set = match &self.kind {
            NormKind::Euclidean => {
                SupportSet::Point(Covector2::new(v.x, v.y).scale(1.0 / v.euclidean_len()))
            }
            NormKind::Lp(p) => {
                let u = v.scale(1.0 / lp_norm(v.x, v.y, *p));
                let comp = |c: f64| c.signum() * c.abs().powf(p - 1.0);
                let c = |c: f64| if c == 0.0 { 0.0 } else { comp(c) };
                SupportSet::Point(Covector2::new(c(u.x), c(u.y)))
            }
            NormKind::L1 => l1_unit_support(v),
            NormKind::LInf => linf_unit_support(v),
            NormKind::Polyhedral(poly) => poly.unit_support_set(v),
            NormKind::ScNonSmooth => {
                let e = Covector2::new(v.x, v.y).scale(1.0 / v.euclidean_len());
                match linf_unit_support(v) {
                    SupportSet::Point(f) => SupportSet::Point(e + f),
                    SupportSet::Segment(f, g) => SupportSet::Segment(e + f, e + g),
                }
            }
        };
        Ok(set)
    }

    /// `φ[v]`: the functionals `h` with `‖h‖* = ‖v‖` and `h(v) = ‖v‖²`.
    pub fn support_set(&self, v: Vector2) -> Result<SupportSet> {
        if self.is_euclidean() && !v.is_zero() {
            return Ok(SupportSet::Point(Covector2::new(v.x, v.y)));
        }
        Ok(self.unit_support_set(v)?.scale(self.eval(v)))
    }

    pub fn is_smooth_at(&self, v: Vector2) -> Result<bool> {
        Ok(self.unit_support_set(v)?.is_point())
    }

    /// `φ(v / ‖v‖)`, the entry a direction contributes to a rigidity matrix.
    pub fn dual_map_unit(&self, v: Vector2) -> Result<Covector2> {
        match self.unit_support_set(v)? {
            SupportSet::Point(f) => Ok(f),
            segment @ SupportSet::Segment(..) => Err(Error::NonSmooth {
                direction: v,
                norm: self.to_string(),
                support: segment,
            }),
        }
    }

    /// Exact rational form of `dual_map_unit` for polygonal norms, with the
    /// direction given in exact coordinates. `None` for other norms, for the
    /// zero vector and at non-smooth directions.
    pub fn exact_dual_map_unit(&self, d: &RationalPair) -> Option<RationalPair> {
        let (x, y) = d;
        if x.is_zero() && y.is_zero() {
            return None;
        }
        let sign = |q: &BigRational| BigRational::from_integer(q.signum().to_integer());
        match &self.kind {
            NormKind::Polyhedral(poly) => poly.exact_unit_support(x, y),
            NormKind::L1 => (!x.is_zero() && !y.is_zero()).then(|| (sign(x), sign(y))),
            NormKind::LInf => match x.abs().cmp(&y.abs()) {
                std::cmp::Ordering::Greater => Some((sign(x), BigRational::zero())),
                std::cmp::Ordering::Less => Some((BigRational::zero(), sign(y))),
                std::cmp::Ordering::Equal => None,
            },
            _ => None,
        }
    }

    /// Exact norm of a rational vector, for polygonal norms.
    pub fn exact_eval(&self, v: &RationalPair) -> Option<BigRational> {
        let (x, y) = v;
        match &self.kind {
            NormKind::Polyhedral(poly) => Some(poly.exact_eval(x, y)),
            NormKind::L1 => Some(x.abs() + y.abs()),
            NormKind::LInf => Some(x.abs().max(y.abs())),
            _ => None,
        }
    }

    /// Endpoints of `flat_segment` in exact coordinates, for polygonal norms.
    pub fn exact_flat_segment(&self) -> Option<(RationalPair, RationalPair)> {
        let q = |a: i64, b: i64| {
            (
                BigRational::from_integer(a.into()),
                BigRational::from_integer(b.into()),
            )
        };
        match &self.kind {
            NormKind::L1 => Some((q(1, 0), q(0, 1))),
            NormKind::LInf => Some((q(1, -1), q(1, 1))),
            NormKind::Polyhedral(poly) => Some(poly.exact_flat_segment()),
            _ => None,
        }
    }

    /// A flat piece of the unit sphere, present exactly for the norms that are
    /// not strictly convex.
    pub fn flat_segment(&self) -> Option<FlatSegment> {
        match &self.kind {
            NormKind::L1 => Some(FlatSegment {
                x: Vector2::new(0.5, 0.5),
                x1: Vector2::new(1.0, 0.0),
                x2: Vector2::new(0.0, 1.0),
            }),
            NormKind::LInf => Some(FlatSegment {
                x: Vector2::new(1.0, 0.0),
                x1: Vector2::new(1.0, -1.0),
                x2: Vector2::new(1.0, 1.0),
            }),
            NormKind::Polyhedral(poly) => Some(poly.flat_segment()),
            _ => None,
        }
    }

    /// A unit vector at which the norm is not differentiable, if any.
    pub fn nonsmooth_direction(&self) -> Option<Vector2> {
        match &self.kind {
            NormKind::Euclidean | NormKind::Lp(_) => None,
            NormKind::L1 => Some(Vector2::new(1.0, 0.0)),
            NormKind::LInf => Some(Vector2::new(1.0, 1.0)),
            NormKind::Polyhedral(poly) => Some(poly.corner()),
            NormKind::ScNonSmooth => {
                let d = Vector2::new(1.0, 1.0);
                Some(d.scale(1.0 / self.eval(d)))
            }
        }
    }

    /// Points of the unit sphere for drawing: polygon vertices for polygonal
    /// norms, otherwise `samples` equally spaced Euclidean angles.
    pub fn unit_sphere_outline(&self, samples: usize) -> Vec<Vector2> {
        match &self.kind {
            NormKind::Polyhedral(poly) => poly.vertices().to_vec(),
            NormKind::L1 => vec![
                Vector2::new(1.0, 0.0),
                Vector2::new(0.0, 1.0),
                Vector2::new(-1.0, 0.0),
                Vector2::new(0.0, -1.0),
            ],
            NormKind::LInf => vec![
                Vector2::new(1.0, -1.0),
                Vector2::new(1.0, 1.0),
                Vector2::new(-1.0, 1.0),
                Vector2::new(-1.0, -1.0),
            ],
            _ => (0..samples)
                .map(|i| {
                    let d = Vector2::from_angle(std::f64::consts::TAU * i as f64 / samples as f64);
                    d.scale(1.0 / self.eval(d))
                })
                .collect(),
        }
    }

    /// Random smooth unit vector (uniform Euclidean angle, resampled on the
    /// measure-zero non-smooth set).
    pub fn random_smooth_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> Vector2 {
        loop {
            let d = Vector2::from_angle(rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI));
            if self.is_smooth_at(d).unwrap_or(false) {
                return d.scale(1.0 / self.eval(d));
            }
        }
    }

    /// Two smooth unit directions whose support functionals are independent
    /// (sine of their angle above `min_independence`).
    pub fn independent_smooth_pair<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        min_independence: f64,
    ) -> (Vector2, Vector2) {
        loop {
            let y1 = self.random_smooth_unit(rng);
            let y2 = self.random_smooth_unit(rng);
            let f1 = self.dual_map_unit(y1).expect("smooth by construction");
            let f2 = self.dual_map_unit(y2).expect("smooth by construction");
            if independence(f1, f2) > min_independence {
                return (y1, y2);
            }
        }
    }
}

fn lp_norm(x: f64, y: f64, p: f64) -> f64 {
    let m = x.abs().max(y.abs());
    if m == 0.0 {
        return 0.0;
    }
    let (a, b) = (x.abs() / m, y.abs() / m);
    m * (a.powf(p) + b.powf(p)).powf(1.0 / p)
}

fn sign(c: f64) -> f64 {
    if c > 0.0 {
        1.0
    } else {
        -1.0
    }
}

fn l1_unit_support(v: Vector2) -> SupportSet {
    if v.x != 0.0 && v.y != 0.0 {
        return SupportSet::Point(Covector2::new(sign(v.x), sign(v.y)));
    }
    // On a coordinate axis the subdifferential spans the free coordinate.
    if v.y == 0.0 {
        let s = sign(v.x);
        // Counter-clockwise: the facet below the axis comes first for s > 0.
        let (f, g) = (Covector2::new(s, -s), Covector2::new(s, s));
        SupportSet::Segment(f, g)
    } else {
        let s = sign(v.y);
        let (f, g) = (Covector2::new(s, s), Covector2::new(-s, s));
        SupportSet::Segment(f, g)
    }
}

fn linf_unit_support(v: Vector2) -> SupportSet {
    let (ax, ay) = (v.x.abs(), v.y.abs());
    if ax > ay {
        SupportSet::Point(Covector2::new(sign(v.x), 0.0))
    } else if ay > ax {
        SupportSet::Point(Covector2::new(0.0, sign(v.y)))
    } else {
        let h = Covector2::new(sign(v.x), 0.0);
        let w = Covector2::new(0.0, sign(v.y));
        if sign(v.x) * sign(v.y) > 0.0 {
            SupportSet::Segment(h, w)
        } else {
            SupportSet::Segment(w, h)
        }
    }
}

/// Dual of `‖·‖₂ + ‖·‖∞`. Its dual unit ball is the Minkowski sum of the
/// Euclidean disc and the `ℓ1` diamond, so `‖f‖*` is the least `t` with
/// `dist₂(f, t·diamond) ≤ t`; that difference is strictly decreasing in `t`.
fn sc_dual(f: Covector2) -> f64 {
    let (a, b) = (f.a.abs(), f.b.abs());
    let dist_to_diamond = |t: f64| -> f64 {
        if a + b <= t {
            return 0.0;
        }
        let s = (a + b - t) / 2.0;
        if a - s >= 0.0 && b - s >= 0.0 {
            (a + b - t) / std::f64::consts::SQRT_2
        } else if a - s < 0.0 {
            // nearest point is the vertex (0, t)
            a.hypot(b - t)
        } else {
            (a - t).hypot(b)
        }
    };
    let (mut lo, mut hi) = (0.0, a.hypot(b));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if dist_to_diamond(mid) <= mid {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    hi
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            NormKind::Euclidean => write!(f, "euclidean"),
            NormKind::Lp(p) => write!(f, "lp:{p}"),
            NormKind::L1 => write!(f, "l1"),
            NormKind::LInf => write!(f, "linf"),
            NormKind::ScNonSmooth => write!(f, "sc-nonsmooth"),
            NormKind::Polyhedral(poly) => write!(f, "poly:{}", poly.half_spec()),
        }
    }
}

impl std::str::FromStr for Norm {
    type Err = ParseNormError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        parse::parse_norm_spec(s)
    }
}

/// Parses a norm spec such as `lp:4`, `linf` or `poly:(1,0);(1,1);(-1,1)`.
pub fn parse_norm_spec(s: &str) -> std::result::Result<Norm, ParseNormError> {
    parse::parse_norm_spec(s)
}

/// All built-in norm families with representative parameters.
pub fn builtin_norms() -> Vec<Norm> {
    vec![
        Norm::euclidean(),
        Norm::lp(1.5).unwrap(),
        Norm::lp(3.0).unwrap(),
        Norm::lp(4.0).unwrap(),
        Norm::l1(),
        Norm::linf(),
        parse_norm_spec("poly:(1,0);(1/2,1);(-1/2,1)").unwrap(),
        Norm::sc_nonsmooth(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx_eq::*;
    use proptest::prelude::{
        prop_assert, prop_assert_eq, prop_assume, prop_oneof, proptest, Strategy,
    };
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    mod approx_eq {
        pub fn close(a: f64, b: f64, tol: f64) -> bool {
            (a - b).abs() <= tol
        }
    }

    fn hexagon() -> Norm {
        parse_norm_spec("poly:(1,0);(1/2,1);(-1/2,1)").unwrap()
    }

    #[test]
    fn eval_examples() {
        let l4 = Norm::lp(4.0).unwrap();
        // summation oracle: (|1|^4 + |1|^4)^(1/4)
        let oracle = (1.0f64.powi(4) + 1.0f64.powi(4)).powf(0.25);
        assert!(close(l4.eval(Vector2::new(1.0, 1.0)), oracle, 1e-15));
        assert!(close(l4.eval(Vector2::new(1.0, 1.0)), 1.189_207_115, 1e-9));
        for n in builtin_norms() {
            assert_eq!(n.eval(Vector2::ZERO), 0.0);
        }
        assert_eq!(Norm::linf().eval(Vector2::new(-3.0, 2.0)), 3.0);
    }

    /// Brute-force oracle for the polygonal dual ball: maximise `f(v)·‖v‖`
    /// over the dual-ball vertices, which are the facet normals.
    fn support_oracle_polyhedral(facets: &[Covector2], v: Vector2, nv: f64) -> Vec<Covector2> {
        let best = facets
            .iter()
            .map(|f| f.apply(v))
            .fold(f64::NEG_INFINITY, f64::max);
        facets
            .iter()
            .filter(|f| (f.apply(v) - best).abs() < 1e-12)
            .map(|f| f.scale(nv))
            .collect()
    }

    #[test]
    fn support_set_examples() {
        let l1_facets = [
            Covector2::new(1.0, 1.0),
            Covector2::new(-1.0, 1.0),
            Covector2::new(-1.0, -1.0),
            Covector2::new(1.0, -1.0),
        ];
        let v = Vector2::new(1.0, 0.0);
        let oracle = support_oracle_polyhedral(&l1_facets, v, 1.0);
        assert_eq!(oracle.len(), 2);
        let got = Norm::l1().support_set(v).unwrap();
        assert_eq!(
            got,
            SupportSet::Segment(Covector2::new(1.0, -1.0), Covector2::new(1.0, 1.0))
        );
        for f in oracle {
            let (g, h) = got.endpoints();
            assert!(f == g || f == h);
        }

        assert_eq!(
            Norm::euclidean()
                .support_set(Vector2::new(3.0, 4.0))
                .unwrap(),
            SupportSet::Point(Covector2::new(3.0, 4.0))
        );

        let linf_facets = [
            Covector2::new(1.0, 0.0),
            Covector2::new(0.0, 1.0),
            Covector2::new(-1.0, 0.0),
            Covector2::new(0.0, -1.0),
        ];
        let v = Vector2::new(1.0, 1.0);
        assert_eq!(support_oracle_polyhedral(&linf_facets, v, 1.0).len(), 2);
        assert_eq!(
            Norm::linf().support_set(v).unwrap(),
            SupportSet::Segment(Covector2::new(1.0, 0.0), Covector2::new(0.0, 1.0))
        );
        assert!(matches!(
            Norm::l1().support_set(Vector2::ZERO),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn dual_map_examples() {
        let l4 = Norm::lp(4.0).unwrap();
        let f = l4.dual_map_unit(Vector2::new(1.0, 1.0)).unwrap();
        let expected = 2f64.powf(-0.75);
        assert!(close(f.a, expected, 1e-12) && close(f.b, expected, 1e-12));
        assert!(close(f.a, 0.594_60, 1e-5));
        let u = l4.normalize(Vector2::new(1.0, 1.0)).unwrap();
        assert!(close(f.apply(u), 1.0, 1e-12));
        assert!(close(lp_norm(f.a, f.b, 4.0 / 3.0), 1.0, 1e-12));

        let e = Norm::euclidean()
            .dual_map_unit(Vector2::new(3.0, 4.0))
            .unwrap();
        assert!(close(e.a, 0.6, 1e-15) && close(e.b, 0.8, 1e-15));

        // finite-difference gradient of the l1 norm at (1, 1)
        let l1 = Norm::l1();
        let h = 1e-6;
        let p = Vector2::new(1.0, 1.0);
        let gx =
            (l1.eval(p + Vector2::new(h, 0.0)) - l1.eval(p - Vector2::new(h, 0.0))) / (2.0 * h);
        let gy =
            (l1.eval(p + Vector2::new(0.0, h)) - l1.eval(p - Vector2::new(0.0, h))) / (2.0 * h);
        let f = l1.dual_map_unit(p).unwrap();
        assert!(close(f.a, gx, 1e-9) && close(f.b, gy, 1e-9));
        assert_eq!(f, Covector2::new(1.0, 1.0));

        let err = Norm::linf()
            .dual_map_unit(Vector2::new(2.0, -2.0))
            .unwrap_err();
        assert!(matches!(
            err,
            Error::NonSmooth {
                support: SupportSet::Segment(..),
                ..
            }
        ));
    }

    fn one_sided_derivatives(n: &Norm, v: Vector2, dir: Vector2, h: f64) -> (f64, f64) {
        let fwd = (n.eval(v + dir.scale(h)) - n.eval(v)) / h;
        let bwd = (n.eval(v) - n.eval(v - dir.scale(h))) / h;
        (fwd, bwd)
    }

    #[test]
    fn smoothness_examples() {
        assert!(Norm::linf().is_smooth_at(Vector2::new(1.0, 0.5)).unwrap());
        assert!(!Norm::linf().is_smooth_at(Vector2::new(1.0, 1.0)).unwrap());
        let sc = Norm::sc_nonsmooth();
        assert!(!sc.is_smooth_at(Vector2::new(1.0, 1.0)).unwrap());
        // left/right derivatives across the diagonal differ
        let (fwd, bwd) =
            one_sided_derivatives(&sc, Vector2::new(1.0, 1.0), Vector2::new(1.0, 0.0), 1e-7);
        assert!((fwd - bwd).abs() > 0.5);
        assert!(Norm::euclidean().is_smooth_at(Vector2::ZERO).is_err());
    }

    #[test]
    fn smoothness_agrees_with_directional_derivatives() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let probes = [
            Vector2::new(1.0, 0.0),
            Vector2::new(0.0, 1.0),
            Vector2::new(0.6, 0.8),
        ];
        for n in builtin_norms() {
            let mut dirs: Vec<Vector2> = (0..50)
                .map(|_| Vector2::from_angle(rng.gen_range(-3.0..3.0)))
                .collect();
            if let Some(d) = n.nonsmooth_direction() {
                dirs.push(d);
            }
            for v in dirs {
                let smooth = n.is_smooth_at(v).unwrap();
                let mismatch = probes
                    .iter()
                    .map(|&p| {
                        let (a, b) = one_sided_derivatives(&n, v, p, 1e-7);
                        (a - b).abs()
                    })
                    .fold(0.0, f64::max);
                if smooth {
                    assert!(mismatch < 1e-5, "{n} at {v}: {mismatch}");
                } else {
                    assert!(mismatch > 1e-3, "{n} at {v}: {mismatch}");
                }
            }
        }
    }

    #[test]
    fn flat_segment_examples() {
        let fs = Norm::linf().flat_segment().unwrap();
        assert_eq!(fs.x, Vector2::new(1.0, 0.0));
        assert_eq!(fs.x1, Vector2::new(1.0, -1.0));
        assert_eq!(fs.x2, Vector2::new(1.0, 1.0));
        assert!(Norm::euclidean().flat_segment().is_none());
        assert!(Norm::lp(3.0).unwrap().flat_segment().is_none());
        assert!(Norm::sc_nonsmooth().flat_segment().is_none());
        for n in [Norm::linf(), Norm::l1(), hexagon()] {
            let fs = n.flat_segment().unwrap();
            for p in [fs.x, fs.x1, fs.x2] {
                assert!(close(n.eval(p), 1.0, 1e-12));
            }
            let phi = n.dual_map_unit(fs.x).unwrap();
            assert!(close(phi.apply(fs.x1), 1.0, 1e-12));
            assert!(close(phi.apply(fs.x2), 1.0, 1e-12));
            assert_ne!(fs.x1, fs.x2);
        }
    }

    #[test]
    fn classification_matches_kind() {
        let c = |s: &str| parse_norm_spec(s).unwrap().classification();
        assert_eq!(
            c("euclidean"),
            Classification {
                strictly_convex: true,
                smooth: true,
                euclidean: true
            }
        );
        assert_eq!(
            c("lp:3"),
            Classification {
                strictly_convex: true,
                smooth: true,
                euclidean: false
            }
        );
        for s in ["l1", "linf", "poly:(1,0);(0,1)"] {
            assert_eq!(
                c(s),
                Classification {
                    strictly_convex: false,
                    smooth: false,
                    euclidean: false
                }
            );
        }
        assert_eq!(
            c("sc-nonsmooth"),
            Classification {
                strictly_convex: true,
                smooth: false,
                euclidean: false
            }
        );
    }

    #[test]
    fn sc_dual_matches_sampling() {
        let n = Norm::sc_nonsmooth();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let f = Covector2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let sampled = (0..20000)
                .map(|i| {
                    let d = Vector2::from_angle(std::f64::consts::TAU * i as f64 / 20000.0);
                    f.apply(d) / n.eval(d)
                })
                .fold(f64::NEG_INFINITY, f64::max);
            let exact = n.dual_eval(f);
            assert!(exact >= sampled - 1e-12);
            assert!(exact - sampled < 1e-6, "{exact} vs {sampled}");
        }
    }

    #[test]
    fn strict_convexity_midpoints() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in builtin_norms()
            .into_iter()
            .filter(|n| n.classification().strictly_convex)
        {
            for _ in 0..1000 {
                let x = n
                    .normalize(Vector2::from_angle(rng.gen_range(-3.2..3.2)))
                    .unwrap();
                let y = n
                    .normalize(Vector2::from_angle(rng.gen_range(-3.2..3.2)))
                    .unwrap();
                if x == y {
                    continue;
                }
                assert!(n.eval((x + y).scale(0.5)) < 1.0 - 1e-12, "{n}: {x} {y}");
            }
        }
        // the flat piece of a polygonal norm violates it
        let fs = Norm::linf().flat_segment().unwrap();
        assert_eq!(Norm::linf().eval((fs.x1 + fs.x2).scale(0.5)), 1.0);
    }

    #[test]
    fn dual_map_injective_on_samples() {
        for n in builtin_norms()
            .into_iter()
            .filter(|n| n.classification().strictly_convex)
        {
            let images: Vec<Covector2> = (0..720)
                .filter_map(|i| {
                    let d = Vector2::from_angle(std::f64::consts::TAU * (i as f64 + 0.25) / 720.0);
                    n.dual_map_unit(d).ok()
                })
                .collect();
            for i in 0..images.len() {
                for j in i + 1..images.len() {
                    assert!(images[i].max_abs_diff(images[j]) > 1e-9, "{n}: {i} {j}");
                }
            }
        }
    }

    #[test]
    fn dual_map_continuity_under_refinement() {
        for n in builtin_norms()
            .into_iter()
            .filter(|n| n.classification().smooth)
        {
            let gap = |samples: usize| {
                let f: Vec<Covector2> = (0..=samples)
                    .map(|i| {
                        let d =
                            Vector2::from_angle(std::f64::consts::TAU * i as f64 / samples as f64);
                        n.dual_map_unit(d).unwrap()
                    })
                    .collect();
                f.windows(2)
                    .map(|w| w[0].max_abs_diff(w[1]))
                    .fold(0.0, f64::max)
            };
            let (g1, g2, g3) = (gap(360), gap(3600), gap(36000));
            assert!(g2 < g1 && g3 < g2, "{n}: {g1} {g2} {g3}");
            assert!(g3 < 0.02, "{n}: {g3}");
        }
    }

    #[test]
    fn independent_pair_is_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in builtin_norms() {
            let (a, b) = n.independent_smooth_pair(&mut rng, 1e-6);
            let (fa, fb) = (n.dual_map_unit(a).unwrap(), n.dual_map_unit(b).unwrap());
            assert!(fa.det(fb).abs() > 1e-6);
        }
    }

    fn arb_norm() -> impl Strategy<Value = Norm> {
        (0..builtin_norms().len()).prop_map(|i| builtin_norms()[i].clone())
    }

    proptest! {
        #[test]
        fn support_identity(n in arb_norm(), x in -10.0f64..10.0, y in -10.0f64..10.0, t in 0.0f64..=1.0) {
            let v = Vector2::new(x, y);
            prop_assume!(!v.is_zero());
            let nv = n.eval(v);
            let set = n.support_set(v).unwrap();
            for h in [set.endpoints().0, set.endpoints().1, set.at(t)] {
                prop_assert!((h.apply(v) - nv * nv).abs() <= 1e-9 * nv * nv);
                prop_assert!((n.dual_eval(h) - nv).abs() <= 1e-9 * nv);
            }
            if let SupportSet::Segment(f, g) = set {
                prop_assert!(f.det(g).abs() > 1e-12);
            }
        }

        #[test]
        fn homogeneity(n in arb_norm(), x in -10.0f64..10.0, y in -10.0f64..10.0, a in prop_oneof![-8.0f64..-0.125, 0.125f64..8.0]) {
            let v = Vector2::new(x, y);
            prop_assume!(!v.is_zero());
            let base = n.support_set(v).unwrap();
            let scaled = n.support_set(v.scale(a)).unwrap();
            prop_assert!((n.eval(v.scale(a)) - a.abs() * n.eval(v)).abs() <= 1e-12 * n.eval(v) * a.abs().max(1.0));
            prop_assert_eq!(base.is_point(), scaled.is_point());
            // members of φ[a·v] are a·(members of φ[v]); a segment may list
            // its endpoints in the opposite order after a sign flip
            let (f, g) = base.endpoints();
            let (fs, gs) = scaled.endpoints();
            let tol = 1e-9 * n.eval(v) * a.abs();
            let same = f.scale(a).max_abs_diff(fs) <= tol && g.scale(a).max_abs_diff(gs) <= tol;
            let swapped = f.scale(a).max_abs_diff(gs) <= tol && g.scale(a).max_abs_diff(fs) <= tol;
            prop_assert!(same || swapped);
        }

        #[test]
        fn gradient_matches_dual_map(n in arb_norm(), theta in -3.2f64..3.2, r in 0.5f64..3.0) {
            let v = Vector2::from_angle(theta).scale(r);
            let h = 1e-5;
            let ex = Vector2::new(h, 0.0);
            let ey = Vector2::new(0.0, h);
            // skip stencils that straddle a non-smooth direction
            let f = n.dual_map_unit(v);
            prop_assume!(f.is_ok());
            let f = f.unwrap();
            for s in [v + ex, v - ex, v + ey, v - ey] {
                let g = n.dual_map_unit(s);
                prop_assume!(g.is_ok() && g.unwrap().max_abs_diff(f) < 1e-2);
            }
            let gx = (n.eval(v + ex) - n.eval(v - ex)) / (2.0 * h);
            let gy = (n.eval(v + ey) - n.eval(v - ey)) / (2.0 * h);
            prop_assert!((gx - f.a).abs() < 1e-6, "{} {} {}", n, gx, f.a);
            prop_assert!((gy - f.b).abs() < 1e-6, "{} {} {}", n, gy, f.b);
        }

        #[test]
        fn triangle_inequality(n in arb_norm(), a in -5.0f64..5.0, b in -5.0f64..5.0, c in -5.0f64..5.0, d in -5.0f64..5.0) {
            let (u, v) = (Vector2::new(a, b), Vector2::new(c, d));
            prop_assert!(n.eval(u + v) <= n.eval(u) + n.eval(v) + 1e-12);
        }
    }
}
