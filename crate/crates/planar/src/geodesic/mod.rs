//! Geodesic distance inside a plane set, regularity constants, and
//! geometry-driven completeness classifiers.

pub mod grid_oracle;
pub mod skeleton;
pub mod visibility;

pub use grid_oracle::GridOracle;
pub use skeleton::SkeletonGraph;
pub use visibility::{segment_in_region, VisibilityGraph};

use crate::diverge::{DivergenceRule, GrowthFit, Verdict};
use crate::geom::{GeomError, Point, PolyPath};
use crate::planeset::{DentRule, GalleryKind, GallerySpec, PlaneSet, SeqRule, SetError};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeodesicError {
    #[error("point {0} is not in the set")]
    OutsideSet(Point),
    #[error("no rectifiable path connects {0} to {1} in the set")]
    Unreachable(Point, Point),
    #[error("operation requires a polygonal region")]
    NotARegion,
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

const MEMBERSHIP_TOL: f64 = 1e-9;

/// A geodesic between two points: a rectifiable path inside the set whose
/// length attains the computed distance.
#[derive(Clone, Debug, Serialize)]
pub struct GeodesicResult {
    pub path: PolyPath,
    pub length: f64,
}

/// Prepared shortest-path engine for one materialized set.
pub enum GeodesicContext<'a> {
    Region(VisibilityGraph<'a>),
    Skeleton(&'a crate::planeset::Skeleton),
}

impl<'a> GeodesicContext<'a> {
    pub fn new(set: &'a PlaneSet) -> Result<Self, GeodesicError> {
        match set.materialized()? {
            PlaneSet::Region(r) => Ok(GeodesicContext::Region(VisibilityGraph::new(r))),
            PlaneSet::Skeleton(s) => Ok(GeodesicContext::Skeleton(s)),
            PlaneSet::Gallery(_) => unreachable!("materialized"),
        }
    }

    pub fn distance(&self, z: Point, w: Point) -> Result<GeodesicResult, GeodesicError> {
        Ok(self.distances_from(z, &[w])?.pop().unwrap())
    }

    /// Geodesics from `z` to every target (single shortest-path pass).
    pub fn distances_from(
        &self,
        z: Point,
        targets: &[Point],
    ) -> Result<Vec<GeodesicResult>, GeodesicError> {
        match self {
            GeodesicContext::Region(g) => {
                if !g.region().contains(z, MEMBERSHIP_TOL) {
                    return Err(GeodesicError::OutsideSet(z));
                }
                for &t in targets {
                    if !g.region().contains(t, MEMBERSHIP_TOL) {
                        return Err(GeodesicError::OutsideSet(t));
                    }
                }
                let results = g.shortest_paths(z, targets);
                results
                    .into_iter()
                    .zip(targets)
                    .map(|(r, &t)| match r {
                        Some((length, pts)) => Ok(GeodesicResult {
                            path: path_from_points(pts, z)?,
                            length,
                        }),
                        None => Err(GeodesicError::Unreachable(z, t)),
                    })
                    .collect()
            }
            GeodesicContext::Skeleton(sk) => {
                let mut graph = SkeletonGraph::new(sk);
                let src = graph
                    .add_point(z, MEMBERSHIP_TOL)
                    .ok_or(GeodesicError::OutsideSet(z))?;
                let ids: Vec<usize> = targets
                    .iter()
                    .map(|&t| {
                        graph
                            .add_point(t, MEMBERSHIP_TOL)
                            .ok_or(GeodesicError::OutsideSet(t))
                    })
                    .collect::<Result<_, _>>()?;
                ids.into_iter()
                    .zip(targets)
                    .map(|(dst, &t)| {
                        let (length, chain) = graph
                            .shortest_path(src, dst)
                            .ok_or(GeodesicError::Unreachable(z, t))?;
                        let pts: Vec<Point> = chain.iter().map(|&i| graph.point_of(i)).collect();
                        Ok(GeodesicResult { path: path_from_points(pts, z)?, length })
                    })
                    .collect()
            }
        }
    }
}

fn path_from_points(mut pts: Vec<Point>, fallback: Point) -> Result<PolyPath, GeomError> {
    pts.dedup();
    if pts.len() < 2 {
        // coincident endpoints: report a degenerate two-point stub
        let base = *pts.first().unwrap_or(&fallback);
        return PolyPath::new(vec![
            base,
            Point::new(base.re + f64::MIN_POSITIVE, base.im),
        ]);
    }
    PolyPath::new(pts)
}

/// Geodesic distance between two points of the set.
pub fn geodesic_distance(
    set: &PlaneSet,
    z: Point,
    w: Point,
) -> Result<GeodesicResult, GeodesicError> {
    GeodesicContext::new(set)?.distance(z, w)
}

/// Sampled geodesic diameter: the maximum of pairwise geodesic distances
/// over the construction vertices, a lower bound of the true diameter.
pub fn geodesic_diameter(set: &PlaneSet, sample_budget: usize) -> Result<f64, GeodesicError> {
    match set.materialized()? {
        PlaneSet::Region(r) => {
            let g = VisibilityGraph::with_all_ring_vertices(r);
            let mut candidates: Vec<Point> = r.all_vertices().collect();
            candidates.dedup();
            if candidates.len() > sample_budget.max(4) {
                let step = candidates.len() / sample_budget.max(4) + 1;
                candidates = candidates.into_iter().step_by(step).collect();
            }
            let mut best: f64 = 0.0;
            for (i, &u) in candidates.iter().enumerate() {
                let rest = &candidates[i + 1..];
                if rest.is_empty() {
                    break;
                }
                for r in g.shortest_paths(u, rest).into_iter().flatten() {
                    best = best.max(r.0);
                }
            }
            Ok(best)
        }
        PlaneSet::Skeleton(sk) => {
            let graph = SkeletonGraph::new(sk);
            let n = graph.nodes().len();
            let mut best: f64 = 0.0;
            let step = (n / sample_budget.max(4) + 1).max(1);
            for u in (0..n).step_by(step) {
                for d in graph.distances_from(u) {
                    if d.is_finite() {
                        best = best.max(d);
                    }
                }
            }
            Ok(best)
        }
        PlaneSet::Gallery(_) => unreachable!("materialized"),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularitySample {
    pub w: Point,
    pub geodesic: f64,
    pub quotient: f64,
}

/// Sampled geodesic/Euclidean quotients at a centre point, with a
/// divergence verdict under the shared growth rule.
#[derive(Clone, Debug, Serialize)]
pub struct RegularityReport {
    #[serde(rename = "z")]
    pub center: Point,
    pub samples: Vec<RegularitySample>,
    #[serde(rename = "kz")]
    pub kz_estimate: f64,
    pub verdict: Verdict,
    pub fit: GrowthFit,
}

impl RegularityReport {
    pub fn diverging(&self) -> bool {
        self.verdict == Verdict::Diverging
    }
}

/// Computes `δ(z, w) / |z - w|` for each witness and classifies the
/// quotient sequence.
pub fn regularity_at(
    set: &PlaneSet,
    z: Point,
    witnesses: &[Point],
    rule: &DivergenceRule,
) -> Result<RegularityReport, GeodesicError> {
    let ctx = GeodesicContext::new(set)?;
    let results = ctx.distances_from(z, witnesses)?;
    let mut samples = Vec::with_capacity(witnesses.len());
    for (r, &w) in results.iter().zip(witnesses) {
        let sep = z.dist(w);
        if sep == 0.0 {
            continue;
        }
        samples.push(RegularitySample {
            w,
            geodesic: r.length,
            quotient: r.length / sep,
        });
    }
    let quotients: Vec<f64> = samples.iter().map(|s| s.quotient).collect();
    let fit = rule.classify(&quotients);
    let kz_estimate = quotients.iter().copied().fold(0.0, f64::max);
    Ok(RegularityReport { center: z, samples, kz_estimate, verdict: fit.verdict, fit })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DentedVerdict {
    CompletePointwiseRegular,
    IncompleteIrregularAtZero,
}

#[derive(Clone, Debug, Serialize)]
pub struct DentedClassification {
    pub ratios: Vec<f64>,
    pub fit: GrowthFit,
    pub verdict: DentedVerdict,
}

/// Ratio test for the dented square: the set is regular at 0 (and its
/// differentiable-function algebra complete) exactly when `r_n / s_{2n-1}`
/// stays bounded; plateaus classify as complete, steady growth as
/// incomplete.
pub fn classify_dented_square(
    r: &DentRule,
    s: &SeqRule,
    depth: u32,
    rule: &DivergenceRule,
) -> DentedClassification {
    let ratios: Vec<f64> = (1..=depth)
        .map(|n| {
            let top = s.eval(2 * n - 1);
            r.eval(n, top) / top
        })
        .collect();
    let fit = rule.classify(&ratios);
    let verdict = match fit.verdict {
        Verdict::Diverging => DentedVerdict::IncompleteIrregularAtZero,
        Verdict::Bounded => DentedVerdict::CompletePointwiseRegular,
    };
    DentedClassification { ratios, fit, verdict }
}

/// A point of the polygon kernel (the set of star-centres), when the
/// region is star-shaped. The returned point is verified: the segment
/// from it to every boundary vertex stays in the region.
pub fn star_centre(set: &PlaneSet) -> Result<Option<Point>, GeodesicError> {
    let region = match set.materialized()? {
        PlaneSet::Region(r) => r,
        _ => return Err(GeodesicError::NotARegion),
    };
    if !region.holes().is_empty() {
        return Ok(None);
    }
    let outer = region.outer();
    let bbox = region.bbox().inflate(1.0);
    let mut kernel = vec![
        bbox.min,
        Point::new(bbox.max.re, bbox.min.im),
        bbox.max,
        Point::new(bbox.min.re, bbox.max.im),
    ];
    let n = outer.len();
    for i in 0..n {
        kernel = clip_left(&kernel, outer[i], outer[(i + 1) % n]);
        if kernel.len() < 3 {
            return Ok(None);
        }
    }
    let centroid = kernel
        .iter()
        .fold(Point::ZERO, |acc, &p| acc + p)
        .scale(1.0 / kernel.len() as f64);
    if is_star_centre(set, centroid)? {
        Ok(Some(centroid))
    } else {
        Ok(None)
    }
}

/// Verifies the star-centre property by segment tests from `a` to every
/// ring vertex and edge midpoint.
pub fn is_star_centre(set: &PlaneSet, a: Point) -> Result<bool, GeodesicError> {
    let region = match set.materialized()? {
        PlaneSet::Region(r) => r,
        _ => return Err(GeodesicError::NotARegion),
    };
    if !region.contains(a, MEMBERSHIP_TOL) {
        return Ok(false);
    }
    for (p, q) in region.boundary_edges() {
        if !segment_in_region(region, a, p) {
            return Ok(false);
        }
        if !segment_in_region(region, a, p.lerp(q, 0.5)) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn clip_left(poly: &[Point], a: Point, b: Point) -> Vec<Point> {
    let d = b - a;
    let side = |p: Point| d.cross(p - a);
    let mut out = Vec::with_capacity(poly.len() + 2);
    let n = poly.len();
    for i in 0..n {
        let cur = poly[i];
        let nxt = poly[(i + 1) % n];
        let (sc, sn) = (side(cur), side(nxt));
        if sc >= 0.0 {
            out.push(cur);
        }
        if (sc > 0.0 && sn < 0.0) || (sc < 0.0 && sn > 0.0) {
            let t = sc / (sc - sn);
            out.push(cur.lerp(nxt, t));
        }
    }
    out
}

/// Truncated-depth convergence diagnostic: the geodesic distance between
/// two fixed points of a gallery construction at each listed depth. For
/// skeleton galleries the truncated distance may strictly exceed the
/// limiting distance; the scan makes the convergence visible.
pub fn geodesic_depth_scan(
    kind: &GalleryKind,
    z: Point,
    w: Point,
    depths: &[u32],
) -> Result<Vec<(u32, Option<f64>)>, GeodesicError> {
    let mut out = Vec::new();
    for &d in depths {
        let spec = GallerySpec::new(kind.clone(), d)?;
        let set = PlaneSet::Gallery(spec);
        let r = geodesic_distance(&set, z, w).ok().map(|g| g.length);
        out.push((d, r));
    }
    Ok(out)
}
