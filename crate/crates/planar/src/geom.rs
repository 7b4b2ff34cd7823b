//! Points, segments, and rectifiable polyline paths.
//!
//! A [`PolyPath`] is an admissible rectifiable path: an ordered vertex
//! sequence with no zero-length segment and finite positive total length.
//! Cumulative arc lengths are stored alongside the vertices so that
//! arc-length parametrization, subpaths, and path integrals are cheap.

use num_complex::Complex64;
use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use thiserror::Error;

/// A point of the plane, identified with a complex number.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub re: f64,
    pub im: f64,
}

impl Point {
    pub const ZERO: Point = Point { re: 0.0, im: 0.0 };

    pub fn new(re: f64, im: f64) -> Point {
        Point { re, im }
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn dist(&self, other: Point) -> f64 {
        (*self - other).abs()
    }

    /// Dot product, treating points as vectors.
    pub fn dot(&self, other: Point) -> f64 {
        self.re * other.re + self.im * other.im
    }

    /// z-component of the cross product, treating points as vectors.
    pub fn cross(&self, other: Point) -> f64 {
        self.re * other.im - self.im * other.re
    }

    /// Linear interpolation `self + t (other - self)`.
    pub fn lerp(&self, other: Point, t: f64) -> Point {
        Point::new(
            self.re + t * (other.re - self.re),
            self.im + t * (other.im - self.im),
        )
    }

    pub fn scale(&self, s: f64) -> Point {
        Point::new(self.re * s, self.im * s)
    }

    /// Unit vector in the same direction; `None` for the zero vector.
    pub fn normalized(&self) -> Option<Point> {
        let n = self.abs();
        if n == 0.0 || !n.is_finite() {
            None
        } else {
            Some(self.scale(1.0 / n))
        }
    }

    /// Rotation by 90 degrees counterclockwise.
    pub fn perp(&self) -> Point {
        Point::new(-self.im, self.re)
    }
}

impl From<Complex64> for Point {
    fn from(z: Complex64) -> Point {
        Point::new(z.re, z.im)
    }
}

impl From<Point> for Complex64 {
    fn from(p: Point) -> Complex64 {
        p.to_complex()
    }
}

impl std::ops::Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl std::ops::Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl std::ops::Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.re, -self.im)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.re, self.im)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im >= 0.0 {
            write!(f, "{}+{}i", self.re, self.im)
        } else {
            write!(f, "{}{}i", self.re, self.im)
        }
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&self.re)?;
        seq.serialize_element(&self.im)?;
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Point, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Point::new(re, im))
    }
}

#[derive(Debug, Error)]
pub enum GeomError {
    #[error("a path needs at least two vertices, got {0}")]
    TooFewVertices(usize),
    #[error("zero-length segment at index {0} (constant subpaths are not admissible)")]
    ZeroLengthSegment(usize),
    #[error("non-finite coordinate at vertex {0}")]
    NonFinite(usize),
    #[error("degenerate parameter interval [{0}, {1}]")]
    DegenerateInterval(f64, f64),
    #[error("arc-length parameter {0} outside [0, {1}]")]
    ParamOutOfRange(f64, f64),
}

/// Checks admissibility of a raw vertex sequence: at least two vertices,
/// no two consecutive vertices coincide (exact coordinate equality), and
/// all coordinates finite. Self-retracing vertex sequences are admissible.
pub fn is_admissible(vertices: &[Point]) -> bool {
    if vertices.len() < 2 {
        return false;
    }
    if vertices.iter().any(|v| !v.is_finite()) {
        return false;
    }
    vertices.windows(2).all(|w| w[0] != w[1])
}

/// An admissible rectifiable polyline path.
#[derive(Clone, PartialEq)]
pub struct PolyPath {
    vertices: Vec<Point>,
    cumlen: Vec<f64>,
}

impl PolyPath {
    pub fn new(vertices: Vec<Point>) -> Result<PolyPath, GeomError> {
        if vertices.len() < 2 {
            return Err(GeomError::TooFewVertices(vertices.len()));
        }
        if let Some(k) = vertices.iter().position(|v| !v.is_finite()) {
            return Err(GeomError::NonFinite(k));
        }
        let mut cumlen = Vec::with_capacity(vertices.len());
        cumlen.push(0.0);
        for (k, w) in vertices.windows(2).enumerate() {
            if w[0] == w[1] {
                return Err(GeomError::ZeroLengthSegment(k));
            }
            let len = w[0].dist(w[1]);
            cumlen.push(cumlen[k] + len);
        }
        let total = *cumlen.last().unwrap();
        if !total.is_finite() || total <= 0.0 {
            return Err(GeomError::NonFinite(0));
        }
        Ok(PolyPath { vertices, cumlen })
    }

    /// Straight segment from `a` to `b`.
    pub fn segment(a: Point, b: Point) -> Result<PolyPath, GeomError> {
        PolyPath::new(vec![a, b])
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn cumlen(&self) -> &[f64] {
        &self.cumlen
    }

    /// Total length `|γ|`.
    pub fn arc_length(&self) -> f64 {
        *self.cumlen.last().unwrap()
    }

    /// Start point `γ⁻`.
    pub fn start(&self) -> Point {
        self.vertices[0]
    }

    /// End point `γ⁺`.
    pub fn end(&self) -> Point {
        *self.vertices.last().unwrap()
    }

    pub fn segments(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    /// The point at arc-length parameter `s ∈ [0, |γ|]`.
    ///
    /// Exactly reproduces stored vertices when `s` equals a cumulative
    /// length, so the parametrization preserves the vertex set.
    pub fn point_at(&self, s: f64) -> Result<Point, GeomError> {
        let total = self.arc_length();
        if !(0.0..=total).contains(&s) {
            // Tolerate rounding just past the ends.
            if s > total && s - total < 1e-9 * (1.0 + total) {
                return Ok(self.end());
            }
            if s < 0.0 && -s < 1e-9 * (1.0 + total) {
                return Ok(self.start());
            }
            return Err(GeomError::ParamOutOfRange(s, total));
        }
        match self.cumlen.binary_search_by(|c| c.total_cmp(&s)) {
            Ok(k) => Ok(self.vertices[k]),
            Err(k) => {
                // s lies strictly inside segment k-1 .. k
                let k = k.min(self.vertices.len() - 1);
                let s0 = self.cumlen[k - 1];
                let s1 = self.cumlen[k];
                let t = (s - s0) / (s1 - s0);
                Ok(self.vertices[k - 1].lerp(self.vertices[k], t))
            }
        }
    }

    /// Restriction of the path to arc-length parameters `[s0, s1]`.
    ///
    /// Degenerate intervals are rejected: a constant subpath is not
    /// admissible.
    pub fn subpath(&self, s0: f64, s1: f64) -> Result<PolyPath, GeomError> {
        let total = self.arc_length();
        if !(s0 < s1) {
            return Err(GeomError::DegenerateInterval(s0, s1));
        }
        if s0 < 0.0 || s1 > total * (1.0 + 1e-12) + 1e-300 {
            return Err(GeomError::ParamOutOfRange(if s0 < 0.0 { s0 } else { s1 }, total));
        }
        let s1 = s1.min(total);
        let mut verts = vec![self.point_at(s0)?];
        for (k, &c) in self.cumlen.iter().enumerate() {
            if c > s0 && c < s1 {
                let v = self.vertices[k];
                if v != *verts.last().unwrap() {
                    verts.push(v);
                }
            }
        }
        let endp = self.point_at(s1)?;
        if endp != *verts.last().unwrap() {
            verts.push(endp);
        }
        if verts.len() < 2 {
            // s0 and s1 round to the same point; treat as degenerate.
            return Err(GeomError::DegenerateInterval(s0, s1));
        }
        PolyPath::new(verts)
    }

    /// Arc-length parametrization of the path.
    pub fn reparametrize_by_arclength(&self) -> ArcLengthParam {
        ArcLengthParam { path: self.clone() }
    }

    /// Parameter of the point on the path nearest to `p`, with the
    /// achieved distance. Ties resolve to the smallest parameter.
    pub fn project(&self, p: Point) -> (f64, f64) {
        let mut best = (0.0f64, f64::INFINITY);
        for (k, (a, b)) in self.segments().enumerate() {
            let d = b - a;
            let len2 = d.dot(d);
            let t = ((p - a).dot(d) / len2).clamp(0.0, 1.0);
            let q = a.lerp(b, t);
            let dist = p.dist(q);
            if dist < best.1 {
                best = (self.cumlen[k] + t * (self.cumlen[k + 1] - self.cumlen[k]), dist);
            }
        }
        best
    }

    /// Reversed path.
    pub fn reversed(&self) -> PolyPath {
        let mut v = self.vertices.clone();
        v.reverse();
        PolyPath::new(v).expect("reversal preserves admissibility")
    }
}

impl fmt::Debug for PolyPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyPath({} vertices, |γ|={})", self.vertices.len(), self.arc_length())
    }
}

impl Serialize for PolyPath {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.vertices.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyPath {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<PolyPath, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Vec<Point>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of [re, im] pairs")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let mut out = Vec::new();
                while let Some(p) = seq.next_element::<Point>()? {
                    out.push(p);
                }
                Ok(out)
            }
        }
        let verts = d.deserialize_seq(V)?;
        PolyPath::new(verts).map_err(serde::de::Error::custom)
    }
}

/// Arc-length parametrization of a [`PolyPath`]: Lipschitz with constant 1,
/// preserving endpoints and image.
pub struct ArcLengthParam {
    path: PolyPath,
}

impl ArcLengthParam {
    pub fn path(&self) -> &PolyPath {
        &self.path
    }

    pub fn domain(&self) -> (f64, f64) {
        (0.0, self.path.arc_length())
    }

    pub fn map(&self, s: f64) -> Result<Point, GeomError> {
        self.path.point_at(s)
    }
}

/// Arc length of a path; equals the last cumulative length.
pub fn arc_length(path: &PolyPath) -> f64 {
    path.arc_length()
}

/// Polyline approximation of the circular arc of `radius` around `center`
/// from angle `a0` to `a1` (radians, either orientation), with
/// `chords_per_quarter` chords per quarter turn. Both endpoint angles are
/// hit exactly.
pub fn circle_arc(
    center: Point,
    radius: f64,
    a0: f64,
    a1: f64,
    chords_per_quarter: usize,
) -> Vec<Point> {
    let span = a1 - a0;
    let quarter = std::f64::consts::FRAC_PI_2;
    let n = ((span.abs() / quarter * chords_per_quarter as f64).ceil() as usize).max(1);
    (0..=n)
        .map(|k| {
            let a = a0 + span * (k as f64 / n as f64);
            Point::new(center.re + radius * a.cos(), center.im + radius * a.sin())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn p(re: f64, im: f64) -> Point {
        Point::new(re, im)
    }

    /// The first leg of the zig-zag arc used throughout the gallery tests:
    /// vertices 1/2, 1/2+i/2, 3/8+i/2, 3/8, 1/4.
    fn zigzag_leg() -> PolyPath {
        PolyPath::new(vec![
            p(0.5, 0.0),
            p(0.5, 0.5),
            p(0.375, 0.5),
            p(0.375, 0.0),
            p(0.25, 0.0),
        ])
        .unwrap()
    }

    #[test]
    fn arc_length_examples() {
        let unit = PolyPath::segment(p(0.0, 0.0), p(1.0, 0.0)).unwrap();
        assert_eq!(unit.arc_length(), 1.0);

        // 1/2 + 1/8 + 1/2 + 1/8 = 5/4, exactly in binary arithmetic
        assert_eq!(zigzag_leg().arc_length(), 1.25);

        let right_angle =
            PolyPath::new(vec![p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0)]).unwrap();
        assert_eq!(right_angle.arc_length(), 2.0);
    }

    #[test]
    fn admissibility() {
        assert!(is_admissible(&[p(0.0, 0.0), p(1.0, 0.0)]));
        assert!(!is_admissible(&[p(0.0, 0.0), p(0.0, 0.0), p(1.0, 0.0)]));
        // self-retracing is admissible (a path is not its image)
        assert!(is_admissible(&[p(0.0, 0.0), p(1.0, 0.0), p(0.0, 0.0)]));
        assert!(!is_admissible(&[p(0.0, 0.0)]));
        assert!(PolyPath::new(vec![p(0.0, 0.0), p(0.0, 0.0), p(1.0, 0.0)]).is_err());
    }

    #[test]
    fn parametrization_examples() {
        let unit = PolyPath::segment(p(0.0, 0.0), p(1.0, 0.0)).unwrap();
        let m = unit.reparametrize_by_arclength();
        assert_eq!(m.map(0.25).unwrap(), p(0.25, 0.0));

        let right_angle =
            PolyPath::new(vec![p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0)]).unwrap();
        let m = right_angle.reparametrize_by_arclength();
        assert_eq!(m.map(1.5).unwrap(), p(1.0, 0.5));

        // walk 0.5 along the first (vertical) segment of the zig-zag leg
        let m = zigzag_leg().reparametrize_by_arclength();
        assert_eq!(m.map(0.5).unwrap(), p(0.5, 0.5));

        // vertices are reproduced exactly at their cumulative lengths
        let path = zigzag_leg();
        for (k, &c) in path.cumlen().iter().enumerate() {
            assert_eq!(path.point_at(c).unwrap(), path.vertices()[k]);
        }
    }

    #[test]
    fn lipschitz_one_on_random_pairs() {
        let path = zigzag_leg();
        let m = path.reparametrize_by_arclength();
        let total = path.arc_length();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let s: f64 = rng.gen_range(0.0..total);
            let t: f64 = rng.gen_range(0.0..total);
            let d = m.map(s).unwrap().dist(m.map(t).unwrap());
            assert!(d <= (s - t).abs() * (1.0 + 1e-12) + 1e-15);
        }
    }

    #[test]
    fn subpath_examples() {
        let unit = PolyPath::segment(p(0.0, 0.0), p(1.0, 0.0)).unwrap();
        let sub = unit.subpath(0.0, 0.5).unwrap();
        assert_eq!(sub.vertices(), &[p(0.0, 0.0), p(0.5, 0.0)]);
        assert_eq!(sub.arc_length(), 0.5);

        let right_angle =
            PolyPath::new(vec![p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0)]).unwrap();
        let sub = right_angle.subpath(0.5, 1.5).unwrap();
        assert_eq!(sub.vertices(), &[p(0.5, 0.0), p(1.0, 0.0), p(1.0, 0.5)]);

        let path = zigzag_leg();
        let same = path.subpath(0.0, path.arc_length()).unwrap();
        assert_eq!(same.vertices(), path.vertices());

        assert!(unit.subpath(0.5, 0.5).is_err());
        assert!(unit.subpath(0.7, 0.2).is_err());
    }

    #[test]
    fn subpath_lengths_are_additive() {
        let path = zigzag_leg();
        let total = path.arc_length();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let mut abc: Vec<f64> = (0..3).map(|_| rng.gen_range(0.0..total)).collect();
            abc.sort_by(f64::total_cmp);
            let (a, b, c) = (abc[0], abc[1], abc[2]);
            if b - a < 1e-6 || c - b < 1e-6 {
                continue;
            }
            let l1 = path.subpath(a, b).unwrap().arc_length();
            let l2 = path.subpath(b, c).unwrap().arc_length();
            let l3 = path.subpath(a, c).unwrap().arc_length();
            assert!(((l1 + l2) - l3).abs() <= 1e-12 * l3.max(1.0));
        }
    }

    #[test]
    fn length_at_least_endpoint_distance() {
        let path = zigzag_leg();
        assert!(path.arc_length() >= path.start().dist(path.end()));
    }

    #[test]
    fn polypath_json_round_trip() {
        let path = zigzag_leg();
        let s = serde_json::to_string(&path).unwrap();
        assert!(s.starts_with("[[0.5,0.0]"));
        let back: PolyPath = serde_json::from_str(&s).unwrap();
        assert_eq!(back.vertices(), path.vertices());
    }
}
