//! Plain 3D vector math in grid units.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

/// A point (or free vector) in continuous grid space.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const ORIGIN: Point3 = Point3 { x: 0.0, y: 0.0, z: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    #[inline]
    pub fn from_array(a: [f64; 3]) -> Self {
        Point3::new(a[0], a[1], a[2])
    }

    #[inline]
    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// Component by axis index 0, 1, 2.
    #[inline]
    pub fn get(self, axis: usize) -> f64 {
        match axis {
            0 => self.x,
            1 => self.y,
            _ => self.z,
        }
    }

    #[inline]
    pub fn dot(self, o: Point3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    #[inline]
    pub fn cross(self, o: Point3) -> Point3 {
        Point3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    #[inline]
    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    #[inline]
    pub fn distance(self, o: Point3) -> f64 {
        (self - o).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    #[inline]
    pub fn lerp(self, o: Point3, s: f64) -> Point3 {
        self + (o - self) * s
    }
}

impl Add for Point3 {
    type Output = Point3;
    #[inline]
    fn add(self, o: Point3) -> Point3 {
        Point3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Point3 {
    #[inline]
    fn add_assign(&mut self, o: Point3) {
        *self = *self + o;
    }
}

impl Sub for Point3 {
    type Output = Point3;
    #[inline]
    fn sub(self, o: Point3) -> Point3 {
        Point3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Point3 {
    type Output = Point3;
    #[inline]
    fn mul(self, s: f64) -> Point3 {
        Point3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Div<f64> for Point3 {
    type Output = Point3;
    #[inline]
    fn div(self, s: f64) -> Point3 {
        Point3::new(self.x / s, self.y / s, self.z / s)
    }
}

impl Neg for Point3 {
    type Output = Point3;
    #[inline]
    fn neg(self) -> Point3 {
        Point3::new(-self.x, -self.y, -self.z)
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// A closed line segment. `a == b` is allowed and behaves as a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment3 {
    pub a: Point3,
    pub b: Point3,
}

impl Segment3 {
    pub fn new(a: Point3, b: Point3) -> Self {
        Segment3 { a, b }
    }

    #[inline]
    pub fn at(&self, s: f64) -> Point3 {
        self.a.lerp(self.b, s)
    }

    pub fn length(&self) -> f64 {
        self.a.distance(self.b)
    }

    /// Distance from `p` to the closest point of the segment.
    pub fn distance_to_point(&self, p: Point3) -> f64 {
        let d = self.b - self.a;
        let len2 = d.norm_squared();
        if len2 == 0.0 {
            return p.distance(self.a);
        }
        let s = ((p - self.a).dot(d) / len2).clamp(0.0, 1.0);
        p.distance(self.at(s))
    }

    /// Closest pair of points between two segments, as parameters `(s, u)` on
    /// `self` and `other`.
    pub fn closest_params(&self, other: &Segment3) -> (f64, f64) {
        let d1 = self.b - self.a;
        let d2 = other.b - other.a;
        let r = self.a - other.a;
        let a = d1.norm_squared();
        let e = d2.norm_squared();
        let f = d2.dot(r);
        if a <= f64::EPSILON && e <= f64::EPSILON {
            return (0.0, 0.0);
        }
        if a <= f64::EPSILON {
            return (0.0, (f / e).clamp(0.0, 1.0));
        }
        let c = d1.dot(r);
        if e <= f64::EPSILON {
            return ((-c / a).clamp(0.0, 1.0), 0.0);
        }
        let b = d1.dot(d2);
        let denom = a * e - b * b;
        let mut s = if denom > f64::EPSILON * a * e {
            ((b * f - c * e) / denom).clamp(0.0, 1.0)
        } else {
            0.0
        };
        let mut u = (b * s + f) / e;
        if u < 0.0 {
            u = 0.0;
            s = (-c / a).clamp(0.0, 1.0);
        } else if u > 1.0 {
            u = 1.0;
            s = ((b - c) / a).clamp(0.0, 1.0);
        }
        (s, u)
    }

    pub fn distance_to_segment(&self, other: &Segment3) -> f64 {
        let (s, u) = self.closest_params(other);
        self.at(s).distance(other.at(u))
    }
}

/// Boundary band for containment predicates, in grid units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    tau: f64,
}

impl Tolerance {
    pub const DEFAULT_TAU: f64 = 1e-9;

    /// Returns `None` unless `0 < tau < 0.5`.
    pub fn new(tau: f64) -> Option<Self> {
        (tau > 0.0 && tau < 0.5).then_some(Tolerance { tau })
    }

    #[inline]
    pub fn tau(&self) -> f64 {
        self.tau
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { tau: Self::DEFAULT_TAU }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_bounds() {
        assert!(Tolerance::new(0.0).is_none());
        assert!(Tolerance::new(0.5).is_none());
        assert!(Tolerance::new(1e-6).is_some());
        assert_eq!(Tolerance::default().tau(), 1e-9);
    }

    #[test]
    fn segment_distances() {
        let s = Segment3::new(Point3::new(0.0, 0.0, 0.0), Point3::new(1.0, 0.0, 0.0));
        assert_eq!(s.distance_to_point(Point3::new(0.5, 2.0, 0.0)), 2.0);
        assert_eq!(s.distance_to_point(Point3::new(-3.0, 4.0, 0.0)), 5.0);
        let t = Segment3::new(Point3::new(0.5, -1.0, 1.0), Point3::new(0.5, 1.0, 1.0));
        assert!((s.distance_to_segment(&t) - 1.0).abs() < 1e-15);
        let (a, b) = s.closest_params(&t);
        assert!((a - 0.5).abs() < 1e-15 && (b - 0.5).abs() < 1e-15);
    }

    #[test]
    fn degenerate_segment_is_a_point() {
        let p = Point3::new(1.0, 1.0, 1.0);
        let s = Segment3::new(p, p);
        assert_eq!(s.length(), 0.0);
        assert_eq!(s.distance_to_point(Point3::new(1.0, 1.0, 3.0)), 2.0);
    }
}
