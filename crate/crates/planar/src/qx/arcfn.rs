//! Test functions built along arcs for completeness certificates.
//!
//! On any Jordan polyline from z0 to w0 there is a function with
//! derivative vanishing at both endpoints, |f'| at most 3 on the arc
//! (closed-form bound, not sampled), and f(w0) − f(z0) real exceeding
//! half the endpoint separation. Chaining the construction along
//! intermediate vertices accumulates a gap exceeding half the chord sum,
//! which turns long arcs between nearby points into lower bounds for the
//! completeness functional.

use super::QxError;
use crate::diverge::{DivergenceRule, GrowthFit, Verdict};
use crate::geom::{Point, PolyPath};
use crate::pathint::{c64, FunctionExpr, Piece, PiecewiseFn};
use serde::Serialize;

/// A constructed test function with its certificates.
#[derive(Clone, Debug)]
pub struct ArcTestFn {
    pub f: FunctionExpr,
    pub fprime: FunctionExpr,
    /// Closed-form upper bound for |f'| on the arc.
    pub deriv_bound: f64,
    /// f(w0) − f(z0), real and positive by construction.
    pub gap: f64,
    pub z0: Point,
    pub w0: Point,
}

/// First arc-length parameter at which the path leaves the sphere of
/// radius `eta` around `center`; `forward` scans from the start, otherwise
/// the last such parameter is returned (scanning from the end).
fn sphere_crossing(path: &PolyPath, center: Point, eta: f64, forward: bool) -> Option<f64> {
    let cum = path.cumlen();
    let verts = path.vertices();
    let mut hits: Vec<f64> = Vec::new();
    for k in 0..verts.len() - 1 {
        let (a, b) = (verts[k], verts[k + 1]);
        let d = b - a;
        let qa = d.dot(d);
        let qb = 2.0 * d.dot(a - center);
        let qc = (a - center).dot(a - center) - eta * eta;
        let disc = qb * qb - 4.0 * qa * qc;
        if disc < 0.0 {
            continue;
        }
        let sq = disc.sqrt();
        for u in [(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)] {
            if (0.0..=1.0).contains(&u) {
                hits.push(cum[k] + u * (cum[k + 1] - cum[k]));
            }
        }
    }
    if forward {
        hits.into_iter().min_by(f64::total_cmp)
    } else {
        hits.into_iter().max_by(f64::total_cmp)
    }
}

/// Builds the three-piece test function on the arc with starting value
/// `b_start`: quadratic cutoffs over the first and last pieces (split at
/// distance `|z0−w0|/100` from the endpoints), linear in between, rotated
/// so the endpoint gap is real and positive.
pub fn arc_test_function(path: &PolyPath, b_start: f64) -> Result<ArcTestFn, QxError> {
    let z0 = path.start();
    let w0 = path.end();
    let sep = z0.dist(w0);
    if sep == 0.0 {
        return Err(QxError::Precondition(
            "arc endpoints must be distinct".into(),
        ));
    }
    let eta = sep / 100.0;
    let total = path.arc_length();
    let s1 = sphere_crossing(path, z0, eta, true)
        .ok_or_else(|| QxError::Precondition("path never leaves the start ball".into()))?;
    let s2 = sphere_crossing(path, w0, eta, false)
        .ok_or_else(|| QxError::Precondition("path never enters the end ball".into()))?;
    if !(s1 < s2) {
        return Err(QxError::Precondition(
            "arc too short to split at the cutoff spheres".into(),
        ));
    }
    let z1 = path.point_at(s1)?.to_complex();
    let w1 = path.point_at(s2)?.to_complex();
    let z0c = z0.to_complex();
    let w0c = w0.to_complex();

    // g = (z − z0) − (z − z1)^2 / (2 (z0 − z1)) on the first piece,
    // g = z − z0 in the middle,
    // g = (z − z0) − (z − w1)^2 / (2 (w0 − w1)) on the last piece
    let k1 = 1.0 / (2.0 * (z0c - z1));
    let k3 = 1.0 / (2.0 * (w0c - w1));
    let lin = FunctionExpr::z().add(FunctionExpr::constant(-z0c));
    let g1 = lin.clone().add(
        FunctionExpr::z()
            .add(FunctionExpr::constant(-z1))
            .powi(2)
            .scale(-k1),
    );
    let g3 = lin.clone().add(
        FunctionExpr::z()
            .add(FunctionExpr::constant(-w1))
            .powi(2)
            .scale(-k3),
    );
    let g_z0 = -(z0c - z1) / 2.0;
    let g_w0 = (w0c - z0c) - (w0c - w1) / 2.0;
    let jump = g_w0 - g_z0;
    let rot = (c64(0.0, -jump.arg())).exp();
    let gap = jump.norm();
    if !(gap > 0.5 * sep) {
        return Err(QxError::Precondition(format!(
            "constructed gap {gap} does not exceed half the separation {sep}"
        )));
    }
    let offset = FunctionExpr::constant(c64(b_start, 0.0) - rot * g_z0);
    let wrap = |g: FunctionExpr| g.scale(rot).add(offset.clone());
    let pieces = vec![
        Piece { s0: 0.0, s1, expr: wrap(g1) },
        Piece { s0: s1, s1: s2, expr: wrap(lin) },
        Piece { s0: s2, s1: total, expr: wrap(g3) },
    ];
    let pw = PiecewiseFn { path: path.clone(), pieces, projection_tol: 1e-9 };
    let f = FunctionExpr::Piecewise(pw);
    let fprime = f.derivative().expect("pieces are polynomials");
    Ok(ArcTestFn { f, fprime, deriv_bound: 3.0, gap, z0, w0 })
}

/// A chained test function along a path with its per-breakpoint values.
#[derive(Clone, Debug)]
pub struct ChainedArc {
    pub f: FunctionExpr,
    pub fprime: FunctionExpr,
    pub deriv_bound: f64,
    /// Total gap f(w0) − f(z0), real positive, exceeding `a_target / 2`.
    pub gap: f64,
    /// (vertex index, f value) at each chain breakpoint; the derivative
    /// vanishes at every breakpoint.
    pub breakpoints: Vec<(usize, f64)>,
}

/// Chains the single-arc construction over intermediate vertices whose
/// chord sum exceeds `a_target`, matching values at the junctions. With
/// `coarsen`, vertices are subsampled as far as the chord sum allows;
/// without it every vertex becomes a breakpoint (so the derivative
/// vanishes at every vertex of the path).
pub fn chained_arc_core(
    path: &PolyPath,
    a_target: f64,
    coarsen: bool,
) -> Result<ChainedArc, QxError> {
    let verts = path.vertices();
    let cum = path.cumlen();
    let nseg = verts.len() - 1;
    if !(path.arc_length() > a_target) {
        return Err(QxError::Precondition(format!(
            "path length {} does not exceed the chord-sum target {a_target}",
            path.arc_length()
        )));
    }
    let chord_sum = |stride: usize| -> f64 {
        let mut sum = 0.0;
        let mut i = 0;
        while i < nseg {
            let j = (i + stride).min(nseg);
            sum += verts[i].dist(verts[j]);
            i = j;
        }
        sum
    };
    let mut stride = 1usize;
    if coarsen {
        while 2 * stride <= nseg && chord_sum(2 * stride) > a_target {
            stride *= 2;
        }
    }
    let mut indices = Vec::new();
    let mut i = 0;
    while i < nseg {
        indices.push(i);
        i = (i + stride).min(nseg);
    }
    indices.push(nseg);

    let mut pieces = Vec::new();
    let mut value = 0.0f64;
    let mut breakpoints = vec![(0usize, 0.0f64)];
    for w in indices.windows(2) {
        let (i, j) = (w[0], w[1]);
        let sub = path.subpath(cum[i], cum[j])?;
        let atf = arc_test_function(&sub, value)?;
        value += atf.gap;
        breakpoints.push((j, value));
        if let FunctionExpr::Piecewise(pw) = atf.f {
            for p in pw.pieces {
                pieces.push(Piece { s0: p.s0 + cum[i], s1: p.s1 + cum[i], expr: p.expr });
            }
        }
    }
    let f = FunctionExpr::Piecewise(PiecewiseFn {
        path: path.clone(),
        pieces,
        projection_tol: 1e-9,
    });
    let fprime = f.derivative().expect("pieces are polynomials");
    Ok(ChainedArc { f, fprime, deriv_bound: 3.0, gap: value, breakpoints })
}

/// Chained test function with maximal coarsening (the public form: chord
/// sum just above `a_target`).
pub fn chained_arc_bound(path: &PolyPath, a_target: f64) -> Result<ChainedArc, QxError> {
    chained_arc_core(path, a_target, true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArcVerdict {
    IncompleteCertified,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct NonrectArcReport {
    /// Certified quotient per depth; `None` when the truncated arc is too
    /// short for the chord-sum target.
    pub quotients: Vec<Option<f64>>,
    pub fit: GrowthFit,
    pub verdict: ArcVerdict,
}

const CHAIN_TARGET: f64 = 6.0;

/// Depth-schedule test for non-rectifiability certificates: each
/// truncated arc must share the endpoint `z0`; arcs longer than the
/// chord-sum target 6 receive a chained test function whose certified
/// quotient is `gap / (3 |z0 − w0|) ≥ 1 / |z0 − w0|`. Diverging quotients
/// certify incompleteness; bounded truncated lengths leave the test
/// inconclusive.
pub fn nonrectifiable_arc_verdict(
    arcs: &[PolyPath],
    z0: Point,
    rule: &DivergenceRule,
) -> Result<NonrectArcReport, QxError> {
    let mut quotients = Vec::with_capacity(arcs.len());
    for arc in arcs {
        let oriented;
        let arc = if arc.start() == z0 {
            arc
        } else if arc.end() == z0 {
            oriented = arc.reversed();
            &oriented
        } else {
            return Err(QxError::Precondition(format!(
                "arc endpoints {} .. {} do not include the probe {z0}",
                arc.start(),
                arc.end()
            )));
        };
        if arc.arc_length() <= CHAIN_TARGET {
            quotients.push(None);
            continue;
        }
        let chain = chained_arc_bound(arc, CHAIN_TARGET)?;
        let w0 = arc.end();
        quotients.push(Some(chain.gap / (chain.deriv_bound * z0.dist(w0))));
    }
    let usable: Vec<f64> = quotients.iter().flatten().copied().collect();
    let fit = rule.classify(&usable);
    let verdict = if fit.verdict == Verdict::Diverging {
        ArcVerdict::IncompleteCertified
    } else {
        ArcVerdict::Inconclusive
    };
    Ok(NonrectArcReport { quotients, fit, verdict })
}

/// Sampled maximum of |f'| along the reference path of a piecewise test
/// function (used to confirm the closed-form bound).
pub fn sampled_deriv_max(fprime: &FunctionExpr, path: &PolyPath, samples: usize) -> f64 {
    let total = path.arc_length();
    let mut best: f64 = 0.0;
    for k in 0..=samples {
        let s = total * k as f64 / samples as f64;
        if let Ok(v) = fprime.eval_param(path, s) {
            best = best.max(v.norm());
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(re: f64, im: f64) -> Point {
        Point::new(re, im)
    }

    #[test]
    fn single_segment_certificates() {
        let path = PolyPath::segment(p(0.0, 0.0), p(1.0, 0.0)).unwrap();
        let atf = arc_test_function(&path, 0.0).unwrap();
        // f(1) − f(0) ≥ 1/2 and sampled |f'| within the closed-form bound
        assert!(atf.gap > 0.5);
        assert!((atf.gap - 0.99).abs() < 1e-12); // straight segment: 1 − η
        let fmax = sampled_deriv_max(&atf.fprime, &path, 10_000);
        assert!(fmax <= 3.0 + 1e-9, "sampled max {fmax}");
        // endpoint values
        let f0 = atf.f.eval_param(&path, 0.0).unwrap();
        let f1 = atf.f.eval_param(&path, 1.0).unwrap();
        assert!((f0 - c64(0.0, 0.0)).norm() < 1e-12);
        assert!((f1.re - atf.gap).abs() < 1e-12 && f1.im.abs() < 1e-12);
        // derivative vanishes at the endpoints
        assert!(atf.fprime.eval_param(&path, 0.0).unwrap().norm() < 1e-12);
        assert!(atf.fprime.eval_param(&path, 1.0).unwrap().norm() < 1e-12);
    }

    #[test]
    fn right_angle_with_offset_start() {
        let path =
            PolyPath::new(vec![p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0)]).unwrap();
        let atf = arc_test_function(&path, 5.0).unwrap();
        let f0 = atf.f.eval_param(&path, 0.0).unwrap();
        assert!((f0.re - 5.0).abs() < 1e-12 && f0.im.abs() < 1e-12);
        let fend = atf.f.eval_param(&path, 2.0).unwrap();
        assert!(fend.re - 5.0 > 2f64.sqrt() / 2.0);
        assert!(fend.im.abs() < 1e-12);
    }

    #[test]
    fn degenerate_endpoints_rejected() {
        let loop_path =
            PolyPath::new(vec![p(0.0, 0.0), p(1.0, 0.0), p(0.0, 0.0)]).unwrap();
        assert!(arc_test_function(&loop_path, 0.0).is_err());
    }

    #[test]
    fn staircase_chain() {
        // staircase of 2k unit steps with k = 4: chord sum 8 > A = 4
        let k = 4;
        let mut pts = vec![p(0.0, 0.0)];
        for i in 0..k {
            pts.push(p(i as f64 + 1.0, i as f64));
            pts.push(p(i as f64 + 1.0, i as f64 + 1.0));
        }
        let path = PolyPath::new(pts).unwrap();
        let chain = chained_arc_bound(&path, k as f64).unwrap();
        assert!(chain.gap > k as f64 / 2.0);
        let fmax = sampled_deriv_max(&chain.fprime, &path, 20_000);
        assert!(fmax <= 3.0 + 1e-9, "sampled max {fmax}");
        // breakpoint values are nondecreasing
        for w in chain.breakpoints.windows(2) {
            assert!(w[1].1 >= w[0].1);
        }
    }

    #[test]
    fn short_single_piece_chain() {
        let path = PolyPath::segment(p(0.0, 0.0), p(1.0, 0.0)).unwrap();
        let chain = chained_arc_bound(&path, 0.5).unwrap();
        assert!(chain.gap > 0.25);
        assert!(chained_arc_bound(&path, 1.0).is_err());
    }

    #[test]
    fn straight_segment_is_inconclusive() {
        let arcs: Vec<PolyPath> = (1..=6)
            .map(|_| PolyPath::segment(p(0.0, 0.0), p(1.0, 0.0)).unwrap())
            .collect();
        let rep =
            nonrectifiable_arc_verdict(&arcs, p(0.0, 0.0), &DivergenceRule::default()).unwrap();
        assert_eq!(rep.verdict, ArcVerdict::Inconclusive);
        assert!(rep.quotients.iter().all(|q| q.is_none()));
    }
}
