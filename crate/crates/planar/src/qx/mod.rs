//! Certified lower bounds for the completeness functional.
//!
//! For a connected compact plane set X and a point z, the functional
//! Q_X(z) is the supremum of |f(z) − f(w)| / (|z − w| |f'|_X) over
//! admissible test functions; the set's differentiable-function algebra is
//! complete exactly when Q_X is finite everywhere. Everything here
//! produces certified lower bounds from explicit test functions, never
//! upper bounds: sup norms of test derivatives enter through closed-form
//! maxima.

pub mod arcfn;
pub mod report;
pub mod series;

pub use arcfn::{arc_test_function, chained_arc_bound, nonrectifiable_arc_verdict, ArcTestFn};
pub use report::{completeness_report, long_dents_verdict, CompletenessReport, ReportConfig};
pub use series::{blodges_condition, blodges_condition_scalar, c1_ratio_estimate};

use crate::geodesic::GeodesicError;
use crate::geom::{GeomError, Point};
use crate::pathint::PathIntError;
use crate::planeset::{PlaneSet, SetError};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum QxError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("points must lie in opposite open quadrants across the cut: z = {0}, w = {1}")]
    WrongQuadrants(Point, Point),
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Geodesic(#[from] GeodesicError),
    #[error(transparent)]
    PathInt(#[from] PathIntError),
}

/// Universal constants of the power test function F(z) = z^(1+i):
/// from |F(z) − F(w)| ≥ |z| − e^π |z − w| and |F'| ≤ √2 e^π one gets
/// Q_X(z) ≥ C_Q |z| / |z − w| − C'_Q with C_Q = 1/(√2 e^π) and
/// C'_Q = 1/√2.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct TestConstants {
    pub c_q: f64,
    pub c_q_prime: f64,
}

impl Default for TestConstants {
    fn default() -> Self {
        TestConstants {
            c_q: 1.0 / (2f64.sqrt() * PI.exp()),
            c_q_prime: 1.0 / 2f64.sqrt(),
        }
    }
}

fn in_open_second_quadrant(p: Point) -> bool {
    p.re < 0.0 && p.im > 0.0
}

fn in_open_third_quadrant(p: Point) -> bool {
    p.re < 0.0 && p.im < 0.0
}

/// Lower bound `max(0, C_Q |z|/|z−w| − C'_Q)` for Q_X(z), valid whenever z
/// and w lie in opposite open quadrants left of the imaginary axis (the
/// configuration where the power test function forces a unit-size jump).
/// A reflected configuration (z below, w above) is normalized first.
pub fn zpow_bound(z: Point, w: Point) -> Result<f64, QxError> {
    let (z, w) = if in_open_third_quadrant(z) && in_open_second_quadrant(w) {
        (Point::new(z.re, -z.im), Point::new(w.re, -w.im))
    } else {
        (z, w)
    };
    if !in_open_second_quadrant(z) || !in_open_third_quadrant(w) {
        return Err(QxError::WrongQuadrants(z, w));
    }
    let c = TestConstants::default();
    Ok((c.c_q * z.abs() / z.dist(w) - c.c_q_prime).max(0.0))
}

/// One dent of a set relative to a probe z0: a witness w in the set, a
/// point `a` outside the set, and the unit direction of a closed half-line
/// from `a` missing the set, such that z0 and w sit in the half-plane
/// bisected by the half-line and the straight segment from z0 to w meets
/// it.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct DentItem {
    pub w: Point,
    pub a: Point,
    pub dir: Point,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DentSpec {
    pub z0: Point,
    pub items: Vec<DentItem>,
}

impl DentSpec {
    /// Dent data published by a gallery construction for the probe.
    pub fn from_gallery(set: &PlaneSet, z0: Point) -> Option<DentSpec> {
        let g = set.gallery()?;
        let items = g
            .dent_items(z0)?
            .into_iter()
            .map(|d| DentItem { w: d.w, a: d.a, dir: d.dir })
            .collect();
        Some(DentSpec { z0, items })
    }
}

/// Validates a dent item against the set by sampling: `a` outside, the
/// half-line `a + t dir` misses the set for all sampled t up to past the
/// set's bounding box, both points inside the bisected half-plane, and the
/// straight segment from z0 to w crossing the half-line.
pub fn validate_dent_item(
    set: &PlaneSet,
    z0: Point,
    item: &DentItem,
    ray_samples: usize,
) -> Result<(), QxError> {
    let dir = item
        .dir
        .normalized()
        .ok_or_else(|| QxError::Precondition("dent direction must be nonzero".into()))?;
    if set.contains(item.a, 0.0)? {
        return Err(QxError::Precondition(format!(
            "dent point a = {} lies in the set",
            item.a
        )));
    }
    // the half-line must clear the bounding box of the set; sample both
    // linearly (far field) and geometrically (all scales near the origin
    // of the half-line, where constructions shrink)
    let bbox = set.bbox()?;
    let reach = item.a.dist(bbox.min) + item.a.dist(bbox.max) + bbox.diameter();
    let n = ray_samples.max(8);
    let linear = (1..=n).map(|k| reach * k as f64 / n as f64);
    let geometric = (1..60).map(|k| reach * 0.5f64.powi(k));
    for t in linear.chain(geometric) {
        let p = item.a + dir.scale(t);
        if set.contains(p, 0.0)? {
            return Err(QxError::Precondition(format!(
                "half-line from {} hits the set at {}",
                item.a, p
            )));
        }
    }
    // half-plane H: { p : <p - a, dir> >= 0 }
    if (z0 - item.a).dot(dir) < 0.0 || (item.w - item.a).dot(dir) < 0.0 {
        return Err(QxError::Precondition(
            "probe or witness outside the bisected half-plane".into(),
        ));
    }
    // the segment z0 -> w must cross the half-line
    let n = dir.perp();
    let sz = (z0 - item.a).dot(n);
    let sw = (item.w - item.a).dot(n);
    if !(sz * sw < 0.0) {
        return Err(QxError::Precondition(
            "segment from probe to witness does not straddle the half-line".into(),
        ));
    }
    let t_seg = sz / (sz - sw);
    let crossing = z0.lerp(item.w, t_seg);
    if (crossing - item.a).dot(dir) < 0.0 {
        return Err(QxError::Precondition(
            "segment crosses the supporting line behind the half-line origin".into(),
        ));
    }
    Ok(())
}

/// Half-line dent bound: a rigid motion takes the half-line onto the
/// negative real axis from the origin, after which the power-function
/// bound applies, giving `Q_X(z0) ≥ C_Q |z0−a|/|z0−w| − C'_Q`.
pub fn halfline_bound(
    set: &PlaneSet,
    z0: Point,
    item: &DentItem,
    ray_samples: usize,
) -> Result<f64, QxError> {
    validate_dent_item(set, z0, item, ray_samples)?;
    halfline_bound_unchecked(z0, item)
}

/// The bound itself, without the sampled geometric validation.
pub fn halfline_bound_unchecked(z0: Point, item: &DentItem) -> Result<f64, QxError> {
    let dir = item
        .dir
        .normalized()
        .ok_or_else(|| QxError::Precondition("dent direction must be nonzero".into()))?;
    let phi = PI - dir.im.atan2(dir.re);
    let rot = Point::new(phi.cos(), phi.sin());
    let map = |p: Point| {
        let d = p - item.a;
        Point::new(rot.re * d.re - rot.im * d.im, rot.re * d.im + rot.im * d.re)
    };
    zpow_bound(map(z0), map(item.w))
}
