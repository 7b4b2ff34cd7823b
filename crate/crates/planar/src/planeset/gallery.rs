//! Parametrized gallery constructions, truncated at finite depth.
//!
//! Each construction materializes into a [`Region`] or [`Skeleton`] that
//! contains every feature of index `n <= depth` plus the construction's
//! limit points as explicit vertices, so the truncation is compact.
//!
//! Coordinates of the zig-zag arc (`BadArc`) are dyadic rationals; exact
//! rational values are exposed for the zero-tolerance quotient checks.

use super::{PlaneSet, Region, SetError, Skeleton};
use crate::geom::{circle_arc, Point, PolyPath};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::OnceLock;

pub type Rational = Ratio<i128>;

/// A positive sequence rule, serializable for reproducible set descriptions.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum SeqRule {
    /// `a_n = ratio^n`
    Geometric { ratio: f64 },
    /// `a_n = scale * n^-exponent`
    Power { exponent: f64, scale: f64 },
    Table { values: Vec<f64> },
}

impl SeqRule {
    pub fn eval(&self, n: u32) -> f64 {
        match self {
            SeqRule::Geometric { ratio } => ratio.powi(n as i32),
            SeqRule::Power { exponent, scale } => scale * (n as f64).powf(-exponent),
            SeqRule::Table { values } => values.get((n - 1) as usize).copied().unwrap_or(f64::NAN),
        }
    }

    /// Checks the rule is strictly decreasing and positive over `1..=upto`.
    fn validate_decreasing(&self, upto: u32, what: &str) -> Result<(), SetError> {
        let mut prev = f64::INFINITY;
        for n in 1..=upto {
            let v = self.eval(n);
            if !(v > 0.0 && v < prev && v < 1.0) {
                return Err(SetError::InvalidParams(format!(
                    "{what} must be strictly decreasing in (0,1); failed at n={n} (value {v})"
                )));
            }
            prev = v;
        }
        Ok(())
    }
}

/// Dent-depth rule for the dented square, defined relative to the strip
/// height sequence: `r_n` as a function of `s_{2n-1}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum DentRule {
    /// `r_n = factor * s_{2n-1}`
    MatchDepth { factor: f64 },
    /// `r_n = factor * n * s_{2n-1}`
    LinearDepth { factor: f64 },
    /// `r_n = sqrt(s_{2n-1})`
    SqrtDepth,
    /// `r_n = value`
    Const { value: f64 },
    Table { values: Vec<f64> },
}

impl DentRule {
    pub fn eval(&self, n: u32, s_odd: f64) -> f64 {
        match self {
            DentRule::MatchDepth { factor } => factor * s_odd,
            DentRule::LinearDepth { factor } => factor * n as f64 * s_odd,
            DentRule::SqrtDepth => s_odd.sqrt(),
            DentRule::Const { value } => *value,
            DentRule::Table { values } => values.get((n - 1) as usize).copied().unwrap_or(f64::NAN),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
pub struct Disc {
    pub center: Point,
    pub radius: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", content = "params", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GalleryKind {
    /// Zig-zag arc descending to 0 through vertices at dyadic heights.
    BadArc {},
    /// Unit interval with a square attached over each complementary
    /// interval of the middle-thirds Cantor set.
    CantorSquares {},
    /// Unit square with rectangles `[0, r_n) x (s_2n, s_2n-1)` removed
    /// from the left edge.
    DentedSquare { r: DentRule, s: SeqRule },
    /// Closed unit disc with open sectors deleted along angles shrinking
    /// toward the point 1 (radially self-absorbing construction).
    RsaDisc {},
    /// Boundary of the unit square plus horizontal lines at heights `y_n`.
    CrossedSquare { y: SeqRule },
    /// Fattened zig-zag arc crossing a triangle: every piece is a block,
    /// consecutive blocks meet at a single point `v_n`.
    Superman { heights: SeqRule, width_ratio: f64 },
    /// Closed unit disc minus open discs with pairwise disjoint closures.
    DiscDeletion { discs: Vec<Disc> },
    /// Triangle-crossing arc with only the horizontal pieces fattened;
    /// the edge-following pieces stay one-dimensional.
    FattenedTriangleArc { heights: SeqRule, width_ratio: f64 },
}

impl GalleryKind {
    pub fn name(&self) -> &'static str {
        match self {
            GalleryKind::BadArc {} => "bad-arc",
            GalleryKind::CantorSquares {} => "cantor-squares",
            GalleryKind::DentedSquare { .. } => "dented-square",
            GalleryKind::RsaDisc {} => "rsa-disc",
            GalleryKind::CrossedSquare { .. } => "crossed-square",
            GalleryKind::Superman { .. } => "superman",
            GalleryKind::DiscDeletion { .. } => "disc-deletion",
            GalleryKind::FattenedTriangleArc { .. } => "fattened-triangle-arc",
        }
    }
}

fn default_chords() -> usize {
    64
}

/// A gallery construction with explicit truncation depth.
#[derive(Debug, Serialize, Deserialize)]
pub struct GallerySpec {
    #[serde(flatten)]
    pub kind: GalleryKind,
    pub depth: u32,
    /// Chords per quarter circle when polygonalizing curved boundaries.
    #[serde(default = "default_chords")]
    pub chords_per_quarter: usize,
    #[serde(skip)]
    cache: OnceLock<Box<PlaneSet>>,
}

impl Clone for GallerySpec {
    fn clone(&self) -> Self {
        GallerySpec {
            kind: self.kind.clone(),
            depth: self.depth,
            chords_per_quarter: self.chords_per_quarter,
            cache: OnceLock::new(),
        }
    }
}

impl PartialEq for GallerySpec {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.depth == other.depth
            && self.chords_per_quarter == other.chords_per_quarter
    }
}

/// A dent of a region: a witness point `w` near the probe, an excluded
/// point `a` inside the dent, and the unit direction of a half-line from
/// `a` that misses the set.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct DentData {
    pub w: Point,
    pub a: Point,
    pub dir: Point,
}

impl GallerySpec {
    pub fn new(kind: GalleryKind, depth: u32) -> Result<GallerySpec, SetError> {
        if depth == 0 {
            return Err(SetError::InvalidParams("depth must be at least 1".into()));
        }
        let spec = GallerySpec {
            kind,
            depth,
            chords_per_quarter: default_chords(),
            cache: OnceLock::new(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_chords(mut self, chords_per_quarter: usize) -> Self {
        self.chords_per_quarter = chords_per_quarter.max(1);
        self.cache = OnceLock::new();
        self
    }

    fn validate(&self) -> Result<(), SetError> {
        let n = self.depth;
        match &self.kind {
            GalleryKind::DentedSquare { r, s } => {
                s.validate_decreasing(2 * n, "s")?;
                for k in 1..=n {
                    let rk = r.eval(k, s.eval(2 * k - 1));
                    if !(rk > 0.0 && rk < 1.0) {
                        return Err(SetError::InvalidParams(format!(
                            "dent depth r_{k} = {rk} outside (0,1)"
                        )));
                    }
                }
            }
            GalleryKind::CrossedSquare { y } => y.validate_decreasing(n, "y")?,
            GalleryKind::Superman { heights, width_ratio }
            | GalleryKind::FattenedTriangleArc { heights, width_ratio } => {
                heights.validate_decreasing(n + 1, "heights")?;
                if !(*width_ratio > 0.0 && *width_ratio < 1.0) {
                    return Err(SetError::InvalidParams(format!(
                        "width ratio {width_ratio} outside (0,1)"
                    )));
                }
            }
            GalleryKind::DiscDeletion { discs } => {
                for (i, d) in discs.iter().enumerate() {
                    if !(d.radius > 0.0) || d.center.abs() + d.radius >= 1.0 {
                        return Err(SetError::InvalidParams(format!(
                            "disc {i} not strictly inside the unit disc"
                        )));
                    }
                    for e in &discs[i + 1..] {
                        if d.center.dist(e.center) <= d.radius + e.radius {
                            return Err(SetError::InvalidParams(
                                "deleted discs must have disjoint closures".into(),
                            ));
                        }
                    }
                }
            }
            _ => {}
        }
        Ok(())
    }

    pub fn materialized(&self) -> Result<&PlaneSet, SetError> {
        if let Some(b) = self.cache.get() {
            return Ok(b);
        }
        self.validate()?;
        let set = self.build()?;
        let _ = self.cache.set(Box::new(set));
        Ok(self.cache.get().expect("cache just set"))
    }

    fn build(&self) -> Result<PlaneSet, SetError> {
        let n = self.depth;
        let chords = self.chords_per_quarter;
        match &self.kind {
            GalleryKind::BadArc {} => bad_arc(n),
            GalleryKind::CantorSquares {} => cantor_squares(n),
            GalleryKind::DentedSquare { r, s } => dented_square(r, s, n),
            GalleryKind::RsaDisc {} => rsa_disc(n, chords),
            GalleryKind::CrossedSquare { y } => crossed_square(y, n),
            GalleryKind::Superman { heights, width_ratio } => {
                Ok(PlaneSet::Region(triangle_arc_region(heights, *width_ratio, n, true)?))
            }
            GalleryKind::DiscDeletion { discs } => disc_deletion(discs, chords),
            GalleryKind::FattenedTriangleArc { heights, width_ratio } => {
                Ok(PlaneSet::Region(triangle_arc_region(heights, *width_ratio, n, false)?))
            }
        }
    }

    /// Natural completeness probes for this construction.
    pub fn default_probes(&self) -> Vec<Point> {
        match &self.kind {
            GalleryKind::BadArc {} => vec![Point::ZERO, Point::new(0.5, 0.0)],
            GalleryKind::CantorSquares {} => vec![Point::ZERO, Point::new(1.0, 0.0)],
            GalleryKind::DentedSquare { .. } => {
                vec![Point::ZERO, Point::new(1.0, 0.0), Point::new(1.0, 1.0)]
            }
            GalleryKind::RsaDisc {} => vec![Point::new(1.0, 0.0), Point::ZERO],
            GalleryKind::CrossedSquare { .. } => {
                vec![Point::new(0.5, 0.0), Point::ZERO, Point::new(1.0, 1.0)]
            }
            GalleryKind::Superman { .. } | GalleryKind::FattenedTriangleArc { .. } => {
                vec![Point::ZERO, Point::new(1.0, 1.0)]
            }
            GalleryKind::DiscDeletion { .. } => vec![Point::new(1.0, 0.0), Point::ZERO],
        }
    }

    /// Witness sequences approaching the probe, used for regularity
    /// sampling. Features smaller than `min_feature` are skipped.
    pub fn regularity_witnesses(&self, z0: Point, min_feature: f64) -> Vec<Point> {
        let n = self.depth;
        match &self.kind {
            GalleryKind::BadArc {} if z0 == Point::ZERO => (1..=n)
                .map(|k| Point::new(0.5f64.powi(k as i32), 0.0))
                .filter(|w| w.re >= min_feature)
                .collect(),
            GalleryKind::DentedSquare { r: _, s } if z0 == Point::ZERO => (1..=n)
                .map(|k| Point::new(0.0, s.eval(2 * k - 1)))
                .filter(|w| w.im >= min_feature)
                .collect(),
            GalleryKind::RsaDisc {} if z0 == Point::new(1.0, 0.0) => (1..=n)
                .map(|k| {
                    let a = alpha(k);
                    Point::new(a.cos(), a.sin())
                })
                .filter(|w| z0.dist(*w) >= min_feature)
                .collect(),
            GalleryKind::CrossedSquare { y } if z0 == Point::new(0.5, 0.0) => (1..=n)
                .map(|k| Point::new(0.5, y.eval(k)))
                .filter(|w| w.im >= min_feature)
                .collect(),
            GalleryKind::Superman { .. } | GalleryKind::FattenedTriangleArc { .. }
                if z0 == Point::ZERO =>
            {
                self.meeting_points()
                    .map(|(_, vs)| {
                        vs.into_iter().filter(|v| v.abs() >= min_feature).collect()
                    })
                    .unwrap_or_default()
            }
            _ => Vec::new(),
        }
    }

    /// Dent witnesses `(w_n, a_n, L_n)` for the probe, when the
    /// construction defines them.
    pub fn dent_items(&self, z0: Point) -> Option<Vec<DentData>> {
        let n = self.depth;
        match &self.kind {
            GalleryKind::RsaDisc {} if z0 == Point::new(1.0, 0.0) => Some(
                (1..=n)
                    .map(|k| {
                        let b = beta(k);
                        let dir = Point::new(b.cos(), b.sin());
                        DentData {
                            w: {
                                let a = alpha(k);
                                Point::new(a.cos(), a.sin())
                            },
                            a: dir.scale(1.0 - rsa_r(k)),
                            dir,
                        }
                    })
                    .collect(),
            ),
            GalleryKind::DentedSquare { r, s } if z0 == Point::ZERO => Some(
                (1..=n)
                    .map(|k| {
                        let top = s.eval(2 * k - 1);
                        let bot = s.eval(2 * k);
                        let rk = r.eval(k, top);
                        DentData {
                            w: Point::new(0.0, top),
                            a: Point::new(rk * (1.0 - 1e-3), 0.5 * (top + bot)),
                            dir: Point::new(-1.0, 0.0),
                        }
                    })
                    .collect(),
            ),
            _ => None,
        }
    }

    /// For the block-chain constructions, the accumulation target and the
    /// sequence of block meeting points `v_n`.
    pub fn meeting_points(&self) -> Option<(Point, Vec<Point>)> {
        match &self.kind {
            GalleryKind::Superman { heights, .. }
            | GalleryKind::FattenedTriangleArc { heights, .. } => {
                let mut vs = vec![Point::new(-1.0, 1.0)];
                for k in 1..=self.depth {
                    let h = heights.eval(k);
                    let side = if k % 2 == 1 { -1.0 } else { 1.0 };
                    vs.push(Point::new(side * h, h));
                    vs.push(Point::new(-side * h, h));
                }
                Some((Point::ZERO, vs))
            }
            _ => None,
        }
    }
}

// ---------------------------------------------------------------------------
// zig-zag arc

fn pow2(n: i32) -> f64 {
    2f64.powi(n)
}

/// Arc vertices for depth N: for n = 1..N the leg
/// `z_n -> w_n -> w'_n -> z'_n -> z_{n+1}`, then the terminal point 0.
fn bad_arc_vertices(depth: u32) -> Vec<Point> {
    let mut v = Vec::with_capacity(4 * depth as usize + 2);
    for n in 1..=depth as i32 {
        let x = pow2(-n);
        let dx = pow2(-3 * n);
        v.push(Point::new(x, 0.0)); // z_n
        v.push(Point::new(x, x)); // w_n
        v.push(Point::new(x - dx, x)); // w'_n
        v.push(Point::new(x - dx, 0.0)); // z'_n
    }
    v.push(Point::new(pow2(-(depth as i32 + 1)), 0.0)); // z_{N+1}
    v.push(Point::ZERO);
    v
}

fn bad_arc(depth: u32) -> Result<PlaneSet, SetError> {
    let path = PolyPath::new(bad_arc_vertices(depth))?;
    Ok(PlaneSet::Skeleton(Skeleton::new(vec![path])?))
}

/// Exact rational coordinates of the depth-N arc vertices.
pub fn bad_arc_rational_vertices(depth: u32) -> Vec<(Rational, Rational)> {
    let mut v = Vec::new();
    for n in 1..=depth {
        let x = Rational::new(1, 1 << n);
        let dx = Rational::new(1, 1i128 << (3 * n));
        let zero = Rational::new(0, 1);
        v.push((x, zero));
        v.push((x, x));
        v.push((x - dx, x));
        v.push((x - dx, zero));
    }
    v.push((Rational::new(1, 1i128 << (depth + 1)), Rational::new(0, 1)));
    v.push((Rational::new(0, 1), Rational::new(0, 1)));
    v
}

/// Values of the arc's step function at the leg endpoints: `c_n = 2^-n / n`.
pub fn bad_arc_plateau_value(n: u32) -> Rational {
    Rational::new(1, (n as i128) * (1i128 << n))
}

/// Exact Lipschitz quotient of the arc function at `(z_n, z'_n)`:
/// `(c_n - c_{n+1}) / 2^{-3n}`, computed from the construction values.
pub fn bad_arc_quotient_exact(n: u32) -> Rational {
    let diff = bad_arc_plateau_value(n) - bad_arc_plateau_value(n + 1);
    diff * Rational::new(1i128 << (3 * n), 1)
}

// ---------------------------------------------------------------------------
// Cantor squares

/// Closed complementary intervals of the middle-thirds Cantor set with
/// level at most `depth`, sorted by left endpoint.
pub fn cantor_gaps(depth: u32) -> Vec<(f64, f64)> {
    fn rec(a: f64, b: f64, level: u32, out: &mut Vec<(f64, f64)>) {
        if level == 0 {
            return;
        }
        let third = (b - a) / 3.0;
        out.push((a + third, b - third));
        rec(a, a + third, level - 1, out);
        rec(b - third, b, level - 1, out);
    }
    let mut out = Vec::new();
    rec(0.0, 1.0, depth, &mut out);
    out.sort_by(|x, y| x.0.total_cmp(&y.0));
    out
}

fn cantor_squares(depth: u32) -> Result<PlaneSet, SetError> {
    let gaps = cantor_gaps(depth);
    // Outline: the bottom edge left-to-right, then back right-to-left with
    // a counterclockwise excursion around each attached square. Interval
    // pieces between squares are traced twice (zero-width slits).
    let mut ring = vec![Point::ZERO, Point::new(1.0, 0.0)];
    for &(a, b) in gaps.iter().rev() {
        let side = b - a;
        ring.push(Point::new(b, 0.0));
        ring.push(Point::new(b, side));
        ring.push(Point::new(a, side));
        ring.push(Point::new(a, 0.0));
    }
    Ok(PlaneSet::Region(Region::new(ring, Vec::new())?))
}

// ---------------------------------------------------------------------------
// dented square

fn dented_square(r: &DentRule, s: &SeqRule, depth: u32) -> Result<PlaneSet, SetError> {
    let mut ring = vec![
        Point::ZERO,
        Point::new(1.0, 0.0),
        Point::new(1.0, 1.0),
        Point::new(0.0, 1.0),
    ];
    for k in 1..=depth {
        let top = s.eval(2 * k - 1);
        let bot = s.eval(2 * k);
        let rk = r.eval(k, top);
        ring.push(Point::new(0.0, top));
        ring.push(Point::new(rk, top));
        ring.push(Point::new(rk, bot));
        ring.push(Point::new(0.0, bot));
    }
    Ok(PlaneSet::Region(Region::new(ring, Vec::new())?))
}

// ---------------------------------------------------------------------------
// sector-deleted disc

pub fn rsa_r(n: u32) -> f64 {
    0.25 / (n as f64).sqrt()
}

pub fn alpha(n: u32) -> f64 {
    PI / (4.0 * (n as f64) * (n as f64))
}

pub fn beta(n: u32) -> f64 {
    0.5 * (alpha(n) + alpha(n + 1))
}

fn rsa_disc(depth: u32, chords: usize) -> Result<PlaneSet, SetError> {
    let n = depth;
    let w = |k: u32| {
        let a = alpha(k);
        Point::new(a.cos(), a.sin())
    };
    let z = |k: u32| {
        let b = beta(k);
        Point::new(b.cos(), b.sin()).scale(1.0 - 2.0 * rsa_r(k))
    };
    // arc from w_1 counterclockwise through the point 1 (kept as an exact
    // vertex: it is the accumulation point of the construction) to w_{N+1}
    let mut ring = circle_arc(Point::ZERO, 1.0, alpha(1), 2.0 * PI, chords);
    *ring.last_mut().unwrap() = Point::new(1.0, 0.0);
    let mut tail = circle_arc(Point::ZERO, 1.0, 2.0 * PI, 2.0 * PI + alpha(n + 1), chords);
    *tail.last_mut().unwrap() = w(n + 1);
    ring.extend_from_slice(&tail[1..]);
    // notch chain back up to w_1: each deleted sector leaves the walls
    // w_{k+1} -> z_k -> w_k
    for k in (1..=n).rev() {
        ring.push(z(k));
        if k > 1 {
            ring.push(w(k));
        }
    }
    Ok(PlaneSet::Region(Region::new(ring, Vec::new())?))
}

// ---------------------------------------------------------------------------
// crossed square

fn crossed_square(y: &SeqRule, depth: u32) -> Result<PlaneSet, SetError> {
    let ys: Vec<f64> = (1..=depth).map(|k| y.eval(k)).collect();
    let mut left = vec![Point::ZERO];
    let mut right = vec![Point::new(1.0, 0.0)];
    for &h in ys.iter().rev() {
        left.push(Point::new(0.0, h));
        right.push(Point::new(1.0, h));
    }
    left.push(Point::new(0.0, 1.0));
    right.push(Point::new(1.0, 1.0));
    let mut arcs = vec![
        PolyPath::segment(Point::ZERO, Point::new(1.0, 0.0))?,
        PolyPath::segment(Point::new(0.0, 1.0), Point::new(1.0, 1.0))?,
        PolyPath::new(left)?,
        PolyPath::new(right)?,
    ];
    for &h in &ys {
        arcs.push(PolyPath::segment(Point::new(0.0, h), Point::new(1.0, h))?);
    }
    Ok(PlaneSet::Skeleton(Skeleton::new(arcs)?))
}

// ---------------------------------------------------------------------------
// disc deletion

fn disc_deletion(discs: &[Disc], chords: usize) -> Result<PlaneSet, SetError> {
    let mut outer = circle_arc(Point::ZERO, 1.0, 0.0, 2.0 * PI, chords);
    outer.pop(); // ring closes implicitly
    *outer.first_mut().unwrap() = Point::new(1.0, 0.0);
    let holes = discs
        .iter()
        .map(|d| {
            let mut ring = circle_arc(d.center, d.radius, 0.0, 2.0 * PI, chords);
            ring.pop();
            ring
        })
        .collect();
    Ok(PlaneSet::Region(Region::new(outer, holes)?))
}

// ---------------------------------------------------------------------------
// triangle-crossing block chains

#[derive(Clone, Copy)]
struct Block {
    verts: [Point; 4],
    entry: usize,
    exit: Option<usize>,
}

/// Horizontal crossing block at height `h`, thickness `w`, sitting above
/// its height line. Vertices counterclockwise from the bottom-left corner.
fn crossing_block(h: f64, w: f64, enter_left: bool) -> Block {
    let verts = [
        Point::new(-h, h),
        Point::new(h, h),
        Point::new(h, h + w),
        Point::new(-h, h + w),
    ];
    if enter_left {
        Block { verts, entry: 0, exit: Some(1) }
    } else {
        Block { verts, entry: 1, exit: Some(0) }
    }
}

/// Edge-following block: the fattened segment of the triangle edge between
/// heights `h_a > h_b`, offset outward so that it meets the crossing
/// blocks at exactly the corner points `(±h, h)`.
fn edge_block(h_a: f64, h_b: f64, w: f64, left_side: bool) -> Block {
    let s = if left_side { -1.0 } else { 1.0 };
    // counterclockwise order depends on the side
    let (verts, entry, exit) = if left_side {
        (
            [
                Point::new(s * h_b, h_b),
                Point::new(s * h_a, h_a),
                Point::new(s * h_a - w, h_a),
                Point::new(s * h_b - w, h_b),
            ],
            1,
            Some(0),
        )
    } else {
        (
            [
                Point::new(s * h_b, h_b),
                Point::new(s * h_b + w, h_b),
                Point::new(s * h_a + w, h_a),
                Point::new(s * h_a, h_a),
            ],
            3,
            Some(0),
        )
    };
    Block { verts, entry, exit }
}

/// Traces the outline of a chain of blocks joined either at single corner
/// points (`doubled_connectors = false`) or by explicitly retraced
/// connector segments between exit and entry corners. The terminal
/// accumulation point is attached by a doubled pinch at the terminal
/// block's nearest corner.
fn trace_chain(blocks: &[Block], doubled_connectors: bool, terminal: Point) -> Vec<Point> {
    fn push_dedup(out: &mut Vec<Point>, p: Point) {
        if out.last() != Some(&p) {
            out.push(p);
        }
    }
    fn emit(blocks: &[Block], k: usize, doubled: bool, terminal: Point, out: &mut Vec<Point>) {
        let b = &blocks[k];
        let last = k + 1 == blocks.len();
        let pinch_at = if last {
            (0..4).min_by(|&i, &j| {
                b.verts[i].dist(terminal).total_cmp(&b.verts[j].dist(terminal))
            })
        } else {
            None
        };
        let entry_v = b.verts[b.entry];
        for i in 0..4 {
            let vi = (b.entry + i) % 4;
            let v = b.verts[vi];
            push_dedup(out, v);
            if b.exit == Some(vi) && !last {
                emit(blocks, k + 1, doubled, terminal, out);
                push_dedup(out, v);
            }
            if pinch_at == Some(vi) {
                out.push(terminal);
                out.push(v);
            }
        }
        push_dedup(out, entry_v);
    }
    let mut out = Vec::new();
    emit(blocks, 0, doubled_connectors, terminal, &mut out);
    if out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

fn triangle_arc_region(
    heights: &SeqRule,
    width_ratio: f64,
    depth: u32,
    fatten_edges: bool,
) -> Result<Region, SetError> {
    let hs: Vec<f64> = std::iter::once(1.0)
        .chain((1..=depth).map(|k| heights.eval(k)))
        .collect();
    let widths: Vec<f64> = hs
        .windows(2)
        .map(|w| width_ratio * (w[0] - w[1]))
        .chain(std::iter::once(width_ratio * hs[hs.len() - 1]))
        .collect();
    let mut blocks = Vec::new();
    for (k, &h) in hs.iter().enumerate() {
        let enter_left = k % 2 == 1;
        blocks.push(crossing_block(h, widths[k], enter_left));
        if fatten_edges {
            if let Some(&h_next) = hs.get(k + 1) {
                let left_side = k % 2 == 0;
                blocks.push(edge_block(h, h_next, widths[k].min(widths[k + 1]), left_side));
            }
        }
    }
    if let Some(b) = blocks.last_mut() {
        b.exit = None;
    }
    let ring = if fatten_edges {
        trace_chain(&blocks, false, Point::ZERO)
    } else {
        trace_chain(&blocks, true, Point::ZERO)
    };
    Region::new(ring, Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gallery(kind: GalleryKind, depth: u32) -> GallerySpec {
        GallerySpec::new(kind, depth).unwrap()
    }

    #[test]
    fn bad_arc_depth_one() {
        let g = gallery(GalleryKind::BadArc {}, 1);
        let set = g.materialized().unwrap();
        let sk = set.as_skeleton().unwrap();
        let verts = sk.arcs()[0].vertices();
        let expect = [
            Point::new(0.5, 0.0),
            Point::new(0.5, 0.5),
            Point::new(0.375, 0.5),
            Point::new(0.375, 0.0),
            Point::new(0.25, 0.0),
            Point::ZERO,
        ];
        assert_eq!(verts, expect);
    }

    #[test]
    fn bad_arc_point_membership() {
        let g = gallery(GalleryKind::BadArc {}, 3);
        let set = g.materialized().unwrap();
        // midpoint of the wall w'_1 -> z'_1
        assert!(set.contains(Point::new(0.375, 0.25), 1e-9).unwrap());
        assert!(!set.contains(Point::new(0.45, 0.25), 1e-9).unwrap());
    }

    #[test]
    fn bad_arc_exact_quotients_match_closed_form() {
        for n in 1..=20u32 {
            let got = bad_arc_quotient_exact(n);
            let formula = Rational::new(1i128 << (2 * n - 1), 1)
                * Rational::new(n as i128 + 2, (n as i128) * (n as i128 + 1));
            assert_eq!(got, formula, "n = {n}");
        }
        assert_eq!(bad_arc_quotient_exact(1), Rational::new(3, 1));
        assert_eq!(bad_arc_quotient_exact(2), Rational::new(16, 3));
    }

    #[test]
    fn cantor_squares_counts() {
        let g = gallery(GalleryKind::CantorSquares {}, 4);
        assert_eq!(cantor_gaps(4).len(), 15); // 2^4 - 1
        let set = g.materialized().unwrap();
        let r = set.as_region().unwrap();
        // middle square interior
        assert!(r.contains(Point::new(0.5, 0.2), 0.0));
        // the base interval belongs to the set, gaps above it do not
        assert!(r.contains(Point::new(0.05, 0.0), 1e-12));
        assert!(!r.contains(Point::new(0.05, 0.05), 0.0));
    }

    #[test]
    fn dented_square_geometry() {
        let g = gallery(
            GalleryKind::DentedSquare {
                r: DentRule::MatchDepth { factor: 1.0 },
                s: SeqRule::Geometric { ratio: 0.5 },
            },
            3,
        );
        let set = g.materialized().unwrap();
        let r = set.as_region().unwrap();
        assert_eq!(r.outer().len(), 4 + 4 * 3);
        // inside the first dent (removed): s_1 = 1/2, s_2 = 1/4, r_1 = 1/2
        assert!(!r.contains(Point::new(0.2, 0.4), 0.0));
        // dent walls belong to the set
        assert!(r.contains(Point::new(0.2, 0.5), 0.0));
        // the dent mouth on the left edge is not in the set
        assert!(!r.contains(Point::new(0.0, 0.4), 0.0));
        // deep interior
        assert!(r.contains(Point::new(0.8, 0.5), 0.0));
    }

    #[test]
    fn rsa_disc_depth_one() {
        let g = gallery(GalleryKind::RsaDisc {}, 1);
        let set = g.materialized().unwrap();
        let r = set.as_region().unwrap();
        let b1 = beta(1);
        let z1 = Point::new(b1.cos(), b1.sin()).scale(0.5);
        assert!(
            r.outer().iter().any(|&v| v.dist(z1) < 1e-12),
            "sector vertex z_1 missing"
        );
        assert!(
            r.outer().iter().any(|&v| v == Point::new(1.0, 0.0)),
            "limit point 1 missing"
        );
        // a point inside the deleted sector, just inside z_1's radius + eps
        let a1 = Point::new(b1.cos(), b1.sin()).scale(1.0 - rsa_r(1));
        assert!(!r.contains(a1, 0.0));
        assert!(r.contains(Point::new(-0.5, 0.0), 0.0));
    }

    #[test]
    fn crossed_square_structure() {
        let g = gallery(
            GalleryKind::CrossedSquare { y: SeqRule::Geometric { ratio: 0.5 } },
            4,
        );
        let set = g.materialized().unwrap();
        let sk = set.as_skeleton().unwrap();
        assert_eq!(sk.arcs().len(), 4 + 4);
        assert!(sk.contains(Point::new(0.5, 0.25), 1e-12));
        assert!(!sk.contains(Point::new(0.5, 0.3), 1e-12));

        let h = super::super::hull(set).unwrap();
        let hr = h.as_region().unwrap();
        assert!(hr.contains(Point::new(0.5, 0.3), 0.0));
        assert!((super::super::signed_area2(hr.outer()) / 2.0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn disc_deletion_holes() {
        let g = gallery(
            GalleryKind::DiscDeletion {
                discs: vec![
                    Disc { center: Point::new(0.4, 0.0), radius: 0.2 },
                    Disc { center: Point::new(-0.4, 0.2), radius: 0.15 },
                ],
            },
            1,
        );
        let set = g.materialized().unwrap();
        let r = set.as_region().unwrap();
        assert_eq!(r.holes().len(), 2);
        assert!(!r.contains(Point::new(0.4, 0.0), 0.0));
        assert!(r.contains(Point::ZERO, 0.0));
    }

    #[test]
    fn superman_chain() {
        let g = gallery(
            GalleryKind::Superman {
                heights: SeqRule::Geometric { ratio: 0.5 },
                width_ratio: 0.2,
            },
            4,
        );
        let set = g.materialized().unwrap();
        let r = set.as_region().unwrap();
        // limit point is a vertex
        assert!(r.outer().iter().any(|&v| v == Point::ZERO));
        // inside the top crossing block
        assert!(r.contains(Point::new(0.0, 1.05), 0.0));
        // far from the chain
        assert!(!r.contains(Point::new(0.5, 0.4), 0.0));
        let (z0, vs) = g.meeting_points().unwrap();
        assert_eq!(z0, Point::ZERO);
        assert_eq!(vs.len(), 1 + 8);
    }

    #[test]
    fn fattened_triangle_arc_chain() {
        let g = gallery(
            GalleryKind::FattenedTriangleArc {
                heights: SeqRule::Geometric { ratio: 0.5 },
                width_ratio: 0.2,
            },
            3,
        );
        let set = g.materialized().unwrap();
        let r = set.as_region().unwrap();
        assert!(r.outer().iter().any(|&v| v == Point::ZERO));
        // a point on a connector segment (zero-width) is in the set
        let mid = Point::new(-0.75, 0.75);
        assert!(r.contains(mid, 1e-12));
        assert!(!r.contains(Point::new(-0.70, 0.75), 0.0));
    }

    #[test]
    fn gallery_json_round_trip() {
        let g = gallery(
            GalleryKind::DentedSquare {
                r: DentRule::SqrtDepth,
                s: SeqRule::Geometric { ratio: 0.25 },
            },
            5,
        );
        let set = PlaneSet::Gallery(g);
        let s = serde_json::to_string(&set).unwrap();
        assert!(s.contains("\"kind\":\"dented-square\""));
        assert!(s.contains("\"depth\":5"));
        let back: PlaneSet = serde_json::from_str(&s).unwrap();
        assert!(back.gallery().is_some());
        assert_eq!(back.gallery().unwrap().depth, 5);
    }

    #[test]
    fn invalid_params_rejected() {
        // a non-decreasing s sequence
        let ok = GallerySpec::new(
            GalleryKind::DentedSquare {
                r: DentRule::MatchDepth { factor: 1.0 },
                s: SeqRule::Table { values: vec![0.5, 0.4, 0.6] },
            },
            1,
        );
        assert!(ok.is_ok()); // only s_1, s_2 used at depth 1
        let err = GallerySpec::new(
            GalleryKind::DentedSquare {
                r: DentRule::MatchDepth { factor: 1.0 },
                s: SeqRule::Table { values: vec![0.5, 0.4, 0.6, 0.3] },
            },
            2,
        );
        assert!(err.is_err());
    }
}
