//! Centrally symmetric convex polygons as unit balls.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{FlatSegment, SupportSet};
use crate::vector::{Covector2, Vector2};

/// Exact rational point or functional.
pub type RationalPair = (BigRational, BigRational);

/// A centrally symmetric convex polygon with the origin in its interior,
/// stored as its full counter-clockwise vertex list. Facet `i` joins vertex
/// `i` to vertex `i + 1`; its outer normal is scaled so that it takes the
/// value 1 on the facet, making it the unit support functional of every
/// interior facet point.
#[derive(Debug, Clone)]
pub struct Polygon {
    exact: Vec<RationalPair>,
    vertices: Vec<Vector2>,
    normals_exact: Vec<RationalPair>,
    normals: Vec<Covector2>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolygonError {
    TooFewVertices,
    NotSymmetric,
    NotConvex(usize),
    OriginNotInterior(usize),
}

impl std::fmt::Display for PolygonError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PolygonError::TooFewVertices => write!(f, "a polygon needs at least 4 vertices"),
            PolygonError::NotSymmetric => write!(f, "polygon is not centrally symmetric"),
            PolygonError::NotConvex(i) => {
                write!(f, "polygon is not strictly convex at vertex {i}")
            }
            PolygonError::OriginNotInterior(i) => {
                write!(f, "origin is not interior to the polygon (facet {i})")
            }
        }
    }
}

pub(crate) fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn cross(a: &RationalPair, b: &RationalPair) -> BigRational {
    &a.0 * &b.1 - &a.1 * &b.0
}

impl Polygon {
    /// Builds a polygon from its full vertex list, in either orientation.
    /// The list must be closed under negation.
    pub fn from_full(mut exact: Vec<RationalPair>) -> Result<Self, PolygonError> {
        let n = exact.len();
        if n < 4 {
            return Err(PolygonError::TooFewVertices);
        }
        if n % 2 != 0
            || !exact
                .iter()
                .all(|(x, y)| exact.iter().any(|(u, w)| *u == -x && *w == -y))
        {
            return Err(PolygonError::NotSymmetric);
        }
        let turn = |i: usize, e: &[RationalPair]| {
            let (a, b, c) = (&e[i], &e[(i + 1) % n], &e[(i + 2) % n]);
            let ab = (&b.0 - &a.0, &b.1 - &a.1);
            let bc = (&c.0 - &b.0, &c.1 - &b.1);
            cross(&ab, &bc)
        };
        if (0..n).map(|i| turn(i, &exact)).any(|t| t.is_negative()) {
            exact.reverse();
        }
        // Vertices lying inside an edge are allowed (zero turn) as long as
        // the boundary keeps moving forward.
        for i in 0..n {
            let t = turn(i, &exact);
            let (a, b, c) = (&exact[i], &exact[(i + 1) % n], &exact[(i + 2) % n]);
            let forward = (&b.0 - &a.0) * (&c.0 - &b.0) + (&b.1 - &a.1) * (&c.1 - &b.1);
            if t.is_negative() || (t.is_zero() && !forward.is_positive()) {
                return Err(PolygonError::NotConvex((i + 1) % n));
            }
        }
        for i in 0..n {
            if !cross(&exact[i], &exact[(i + 1) % n]).is_positive() {
                return Err(PolygonError::OriginNotInterior(i));
            }
        }
        // Positive turns and positive origin wedges together force the
        // vertex angles to increase; the total winding must be one turn.
        let winding: f64 = (0..n)
            .map(|i| {
                let a = Vector2::new(to_f64(&exact[i].0), to_f64(&exact[i].1));
                let b = Vector2::new(to_f64(&exact[(i + 1) % n].0), to_f64(&exact[(i + 1) % n].1));
                a.cross(b).atan2(a.dot(b))
            })
            .sum();
        if (winding - std::f64::consts::TAU).abs() > 1e-6 {
            return Err(PolygonError::NotConvex(0));
        }
        let normals_exact: Vec<RationalPair> = (0..n)
            .map(|i| {
                let (a, b) = (&exact[i], &exact[(i + 1) % n]);
                let d = cross(a, b);
                ((&b.1 - &a.1) / &d, (&a.0 - &b.0) / &d)
            })
            .collect();
        let vertices = exact
            .iter()
            .map(|(x, y)| Vector2::new(to_f64(x), to_f64(y)))
            .collect();
        let normals = normals_exact
            .iter()
            .map(|(a, b)| Covector2::new(to_f64(a), to_f64(b)))
            .collect();
        Ok(Self {
            exact,
            vertices,
            normals_exact,
            normals,
        })
    }

    /// Builds a polygon from one half of its vertices; the rest are the
    /// negations.
    pub fn from_half(half: Vec<RationalPair>) -> Result<Self, PolygonError> {
        let mut full = half.clone();
        full.extend(half.into_iter().map(|(x, y)| (-x, -y)));
        Self::from_full(full)
    }

    /// Polygon from `f64` vertices (converted exactly to rationals).
    pub fn from_f64_full(vertices: &[Vector2]) -> Result<Self, PolygonError> {
        let exact = vertices
            .iter()
            .map(|v| Some((BigRational::from_float(v.x)?, BigRational::from_float(v.y)?)))
            .collect::<Option<Vec<_>>>()
            .ok_or(PolygonError::TooFewVertices)?;
        Self::from_full(exact)
    }

    pub fn vertices(&self) -> &[Vector2] {
        &self.vertices
    }

    pub fn exact_vertices(&self) -> &[RationalPair] {
        &self.exact
    }

    pub fn normals(&self) -> &[Covector2] {
        &self.normals
    }

    pub fn exact_normals(&self) -> &[RationalPair] {
        &self.normals_exact
    }

    pub fn eval(&self, v: Vector2) -> f64 {
        self.normals.iter().map(|n| n.apply(v)).fold(0.0, f64::max)
    }

    pub fn dual_eval(&self, f: Covector2) -> f64 {
        self.vertices
            .iter()
            .map(|&v| f.apply(v))
            .fold(0.0, f64::max)
    }

    /// Indices of the facets supporting the direction `v`: one facet, or the
    /// two facets meeting at a vertex (in counter-clockwise order). Ties are
    /// settled in exact arithmetic.
    pub fn supporting_facets(&self, v: Vector2) -> (usize, Option<usize>) {
        let n = self.normals.len();
        let vals: Vec<f64> = self.normals.iter().map(|f| f.apply(v)).collect();
        let best = (0..n)
            .max_by(|&i, &j| vals[i].total_cmp(&vals[j]))
            .expect("non-empty polygon");
        let scale = vals[best].abs().max(f64::MIN_POSITIVE);
        let near: Vec<usize> = (0..n)
            .filter(|&i| vals[best] - vals[i] <= 1e-9 * scale)
            .collect();
        if near.len() == 1 {
            return (best, None);
        }
        let (x, y) = (
            BigRational::from_float(v.x).expect("finite"),
            BigRational::from_float(v.y).expect("finite"),
        );
        let exact_val = |i: usize| {
            let (a, b) = &self.normals_exact[i];
            a * &x + b * &y
        };
        let mut top: Vec<usize> = Vec::new();
        let mut top_val: Option<BigRational> = None;
        for &i in &near {
            let val = exact_val(i);
            match &top_val {
                Some(t) if val < *t => {}
                Some(t) if val == *t => top.push(i),
                _ => {
                    top = vec![i];
                    top_val = Some(val);
                }
            }
        }
        // The supporting facets form a cyclic run; redundant vertices can make
        // it longer than two, but it carries at most two distinct normals.
        let first = *top
            .iter()
            .find(|&&i| !top.contains(&((i + n - 1) % n)))
            .expect("a run has a start");
        let last = *top
            .iter()
            .find(|&&i| !top.contains(&((i + 1) % n)))
            .expect("a run has an end");
        if self.normals_exact[first] == self.normals_exact[last] {
            (first, None)
        } else {
            (first, Some(last))
        }
    }

    pub fn unit_support_set(&self, v: Vector2) -> SupportSet {
        match self.supporting_facets(v) {
            (i, None) => SupportSet::Point(self.normals[i]),
            (i, Some(j)) => SupportSet::Segment(self.normals[i], self.normals[j]),
        }
    }

    /// Exact unit support functional of the direction `(x, y)`, if smooth.
    pub fn exact_unit_support(&self, x: &BigRational, y: &BigRational) -> Option<RationalPair> {
        let n = self.normals_exact.len();
        let vals: Vec<BigRational> = self
            .normals_exact
            .iter()
            .map(|(a, b)| a * x + b * y)
            .collect();
        let best = vals.iter().max()?.clone();
        let top: Vec<usize> = (0..n).filter(|&i| vals[i] == best).collect();
        let first = &self.normals_exact[top[0]];
        top.iter()
            .all(|&i| self.normals_exact[i] == *first)
            .then(|| first.clone())
    }

    /// A vertex where the boundary genuinely turns.
    pub fn corner(&self) -> Vector2 {
        let n = self.normals.len();
        (0..n)
            .find(|&i| self.normals_exact[(i + n - 1) % n] != self.normals_exact[i])
            .map(|i| self.vertices[i])
            .expect("a polygon has corners")
    }

    /// Exact norm of a rational vector.
    pub fn exact_eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        self.normals_exact
            .iter()
            .map(|(a, b)| a * x + b * y)
            .max()
            .expect("non-empty polygon")
    }

    /// The maximal flat piece `[x1, x2]` of the boundary whose outer normal
    /// points closest to the positive x-axis, in exact coordinates.
    pub fn exact_flat_segment(&self) -> (RationalPair, RationalPair) {
        let n = self.vertices.len();
        let i = (0..n)
            .min_by(|&i, &j| {
                let ai = Vector2::new(self.normals[i].a, self.normals[i].b)
                    .angle()
                    .abs();
                let aj = Vector2::new(self.normals[j].a, self.normals[j].b)
                    .angle()
                    .abs();
                ai.total_cmp(&aj)
            })
            .expect("non-empty polygon");
        // widen over collinear vertices
        let same = |j: usize| self.normals_exact[j] == self.normals_exact[i];
        let mut start = i;
        while same((start + n - 1) % n) {
            start = (start + n - 1) % n;
        }
        let mut end = i;
        while same((end + 1) % n) {
            end = (end + 1) % n;
        }
        (self.exact[start].clone(), self.exact[(end + 1) % n].clone())
    }

    /// Floating form of `exact_flat_segment`, with the midpoint as witness.
    pub fn flat_segment(&self) -> FlatSegment {
        let (x1, x2) = self.exact_flat_segment();
        let x1 = Vector2::new(to_f64(&x1.0), to_f64(&x1.1));
        let x2 = Vector2::new(to_f64(&x2.0), to_f64(&x2.1));
        FlatSegment {
            x: (x1 + x2).scale(0.5),
            x1,
            x2,
        }
    }

    /// First half of the counter-clockwise vertex list in `(x,y);...` form.
    pub fn half_spec(&self) -> String {
        self.exact[..self.exact.len() / 2]
            .iter()
            .map(|(x, y)| format!("({},{})", fmt_rational(x), fmt_rational(y)))
            .collect::<Vec<_>>()
            .join(";")
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl PartialEq for Polygon {
    fn eq(&self, other: &Self) -> bool {
        self.exact == other.exact
    }
}
