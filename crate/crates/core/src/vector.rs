//! Points of the plane and linear functionals on it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A point (or direction) of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vector2 {
    pub x: f64,
    pub y: f64,
}

/// The linear functional `(x, y) ↦ a·x + b·y`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Covector2 {
    pub a: f64,
    pub b: f64,
}

impl Vector2 {
    pub const ZERO: Vector2 = Vector2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Checked constructor: rejects NaN and infinite components.
    pub fn try_new(x: f64, y: f64) -> Option<Self> {
        (x.is_finite() && y.is_finite()).then_some(Self { x, y })
    }

    pub fn is_zero(self) -> bool {
        self.x == 0.0 && self.y == 0.0
    }

    pub fn dot(self, other: Vector2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the planar cross product; positive when `other` is
    /// counter-clockwise from `self`.
    pub fn cross(self, other: Vector2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn euclidean_len(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s)
    }

    /// Euclidean angle in `(-π, π]`.
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn from_angle(theta: f64) -> Self {
        Self::new(theta.cos(), theta.sin())
    }
}

impl Covector2 {
    pub const ZERO: Covector2 = Covector2 { a: 0.0, b: 0.0 };

    pub const fn new(a: f64, b: f64) -> Self {
        Self { a, b }
    }

    pub fn try_new(a: f64, b: f64) -> Option<Self> {
        (a.is_finite() && b.is_finite()).then_some(Self { a, b })
    }

    pub fn apply(self, v: Vector2) -> f64 {
        self.a * v.x + self.b * v.y
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.a * s, self.b * s)
    }

    /// Determinant of the 2×2 matrix with rows `self`, `other`.
    pub fn det(self, other: Covector2) -> f64 {
        self.a * other.b - self.b * other.a
    }

    pub fn max_abs_diff(self, other: Covector2) -> f64 {
        (self.a - other.a).abs().max((self.b - other.b).abs())
    }

    pub fn euclidean_len(self) -> f64 {
        self.a.hypot(self.b)
    }
}

/// `|det(f, g)| / (|f|·|g|)`, the sine of the angle between two functionals.
/// Zero when either is zero.
pub fn independence(f: Covector2, g: Covector2) -> f64 {
    let denom = f.euclidean_len() * g.euclidean_len();
    if denom == 0.0 {
        0.0
    } else {
        f.det(g).abs() / denom
    }
}

impl Add for Vector2 {
    type Output = Vector2;
    fn add(self, o: Vector2) -> Vector2 {
        Vector2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vector2 {
    type Output = Vector2;
    fn sub(self, o: Vector2) -> Vector2 {
        Vector2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Vector2 {
    type Output = Vector2;
    fn neg(self) -> Vector2 {
        Vector2::new(-self.x, -self.y)
    }
}

impl Mul<Vector2> for f64 {
    type Output = Vector2;
    fn mul(self, v: Vector2) -> Vector2 {
        v.scale(self)
    }
}

impl Add for Covector2 {
    type Output = Covector2;
    fn add(self, o: Covector2) -> Covector2 {
        Covector2::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for Covector2 {
    type Output = Covector2;
    fn sub(self, o: Covector2) -> Covector2 {
        Covector2::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for Covector2 {
    type Output = Covector2;
    fn neg(self) -> Covector2 {
        Covector2::new(-self.a, -self.b)
    }
}

impl Mul<Covector2> for f64 {
    type Output = Covector2;
    fn mul(self, f: Covector2) -> Covector2 {
        f.scale(self)
    }
}

impl fmt::Display for Vector2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Covector2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}
