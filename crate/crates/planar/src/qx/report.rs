//! Per-probe completeness reports.
//!
//! A probe collects regularity diagnostics, dent bounds (gallery-provided
//! or discovered at concave boundary features), and, on skeletons, chained
//! arc certificates. The probe is certified incomplete when a certified
//! bound sequence diverges under the shared growth rule; otherwise the
//! verdict is only "no divergence found", never "complete".

use super::arcfn::chained_arc_core;
use super::{halfline_bound_unchecked, validate_dent_item, DentItem, DentSpec, QxError};
use crate::diverge::{DivergenceRule, GrowthFit, Verdict};
use crate::geodesic::{regularity_at, star_centre, RegularityReport, SkeletonGraph};
use crate::geom::{Point, PolyPath};
use crate::planeset::{PlaneSet, Region};
use serde::Serialize;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ReportConfig {
    pub rule: DivergenceRule,
    /// Features smaller than this are skipped by geometric witnesses.
    pub min_feature: f64,
    /// Samples along each dent half-line during validation.
    pub ray_samples: usize,
    /// Cap on regularity witnesses per probe.
    pub max_witnesses: usize,
}

impl Default for ReportConfig {
    fn default() -> Self {
        ReportConfig {
            rule: DivergenceRule::default(),
            min_feature: 1e-7,
            ray_samples: 64,
            max_witnesses: 64,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    Zpow,
    Halfline,
    ArcChain,
}

/// One certified lower bound for the completeness functional at a probe.
/// Carries enough data to re-evaluate the bound from scratch.
#[derive(Clone, Debug, Serialize)]
pub struct BoundRecord {
    pub test: BoundKind,
    pub w: Point,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Point>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dir: Option<Point>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<f64>,
    pub deriv_bound: f64,
    pub bound: f64,
}

impl BoundRecord {
    /// Recomputes the bound from the stored witness data.
    pub fn reevaluate(&self, z0: Point) -> Result<f64, QxError> {
        match self.test {
            BoundKind::Zpow => super::zpow_bound(z0, self.w),
            BoundKind::Halfline => {
                let item = DentItem {
                    w: self.w,
                    a: self.a.ok_or_else(|| {
                        QxError::Precondition("half-line record without dent point".into())
                    })?,
                    dir: self.dir.ok_or_else(|| {
                        QxError::Precondition("half-line record without direction".into())
                    })?,
                };
                halfline_bound_unchecked(z0, &item)
            }
            BoundKind::ArcChain => {
                let gap = self.gap.ok_or_else(|| {
                    QxError::Precondition("arc-chain record without gap".into())
                })?;
                Ok(gap / (self.deriv_bound * z0.dist(self.w)))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbeVerdict {
    NoDivergenceFound,
    IncompleteCertified,
}

/// Certified lower bounds for the completeness functional at one probe.
#[derive(Clone, Debug, Serialize)]
pub struct QxEstimate {
    pub center: Point,
    pub witnesses: Vec<BoundRecord>,
    pub best: f64,
    pub fit: GrowthFit,
    pub verdict: ProbeVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub z: Point,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regularity: Option<RegularityReport>,
    pub estimate: QxEstimate,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompletenessReport {
    pub probes: Vec<ProbeReport>,
    pub verdict: ProbeVerdict,
    /// Set when the region is star-shaped with a verified centre; for such
    /// sets completeness is equivalent to pointwise regularity, so the
    /// regularity diagnostics carry the full story.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub star_centre: Option<Point>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LongDentsReport {
    pub z0: Point,
    pub bounds: Vec<BoundRecord>,
    pub fit: GrowthFit,
    pub verdict: ProbeVerdict,
    pub rejected_items: usize,
}

/// Evaluates a dent specification: every valid item contributes the
/// half-line bound; the probe is certified incomplete exactly when the
/// bound sequence diverges under the rule.
pub fn long_dents_verdict(
    set: &PlaneSet,
    dents: &DentSpec,
    cfg: &ReportConfig,
) -> Result<LongDentsReport, QxError> {
    let mut bounds = Vec::new();
    let mut values = Vec::new();
    let mut rejected = 0usize;
    for item in &dents.items {
        match validate_dent_item(set, dents.z0, item, cfg.ray_samples) {
            Ok(()) => {
                let b = halfline_bound_unchecked(dents.z0, item)?;
                values.push(b);
                bounds.push(BoundRecord {
                    test: BoundKind::Halfline,
                    w: item.w,
                    a: Some(item.a),
                    dir: Some(item.dir),
                    gap: None,
                    deriv_bound: 1.0,
                    bound: b,
                });
            }
            Err(_) => rejected += 1,
        }
    }
    if bounds.is_empty() {
        return Err(QxError::Precondition(
            "no dent item passed validation".into(),
        ));
    }
    let fit = cfg.rule.classify(&values);
    let verdict = if fit.verdict == Verdict::Diverging {
        ProbeVerdict::IncompleteCertified
    } else {
        ProbeVerdict::NoDivergenceFound
    };
    Ok(LongDentsReport { z0: dents.z0, bounds, fit, verdict, rejected_items: rejected })
}

/// Dent candidates discovered on a region's boundary: for every edge whose
/// two endpoints both turn into the region (a dent back wall), a half-line
/// leaves the midpoint along the outward normal; witnesses are boundary
/// vertices near the probe on the far side of the wall.
fn auto_dents(region: &Region, z0: Point) -> Vec<DentItem> {
    let mut items = Vec::new();
    for ring in region.rings() {
        let n = ring.len();
        let reflex = |i: usize| {
            let u = ring[(i + n - 1) % n];
            let v = ring[i];
            let w = ring[(i + 1) % n];
            (v - u).cross(w - v) < 0.0
        };
        for i in 0..n {
            let j = (i + 1) % n;
            if !reflex(i) || !reflex(j) {
                continue;
            }
            let (p, q) = (ring[i], ring[j]);
            let edge = q - p;
            let Some(dir) = edge.normalized() else { continue };
            // interior is left of the edge, so the dent opens to the right
            let outward = -dir.perp();
            let pad = 1e-3 * p.dist(q);
            let a = p.lerp(q, 0.5) + outward.scale(pad);
            // nearest boundary vertex on the far side of the wall line
            let nvec = outward.perp();
            let sz = (z0 - a).dot(nvec);
            let mut best: Option<Point> = None;
            for cand in region.all_vertices() {
                let sw = (cand - a).dot(nvec);
                if sz * sw >= 0.0 || (cand - a).dot(outward) < 0.0 {
                    continue;
                }
                if best.map_or(true, |b| z0.dist(cand) < z0.dist(b)) {
                    best = Some(cand);
                }
            }
            if let Some(w) = best {
                items.push(DentItem { w, a, dir: outward });
            }
        }
    }
    items
}

/// Chained-arc certificates along skeleton geodesics from the probe to
/// each witness. The chained function climbs along the geodesic with
/// derivative vanishing at every graph vertex; the certificate is kept
/// only when the function extends over the off-path components (junction
/// values compatible with the derivative bound inside each component).
fn skeleton_chain_bounds(
    sk: &crate::planeset::Skeleton,
    z0: Point,
    witnesses: &[Point],
) -> Result<Vec<BoundRecord>, QxError> {
    let mut out = Vec::new();
    for &w in witnesses {
        let mut graph = SkeletonGraph::new(sk);
        let Some(src) = graph.add_point(z0, 1e-9) else { continue };
        let Some(dst) = graph.add_point(w, 1e-9) else { continue };
        if src == dst {
            continue;
        }
        let Some((length, chain)) = graph.shortest_path(src, dst) else { continue };
        let pts: Vec<Point> = chain.iter().map(|&i| graph.point_of(i)).collect();
        let Ok(path) = PolyPath::new(pts) else { continue };
        let target = 0.999 * length;
        let Ok(arc) = chained_arc_core(&path, target, false) else { continue };
        // values at path nodes, aligned with the chain breakpoints
        let mut node_value: std::collections::HashMap<usize, f64> = std::collections::HashMap::new();
        for (k, &(vi, val)) in arc.breakpoints.iter().enumerate() {
            debug_assert_eq!(vi, k);
            node_value.insert(chain[k], val);
        }
        // extension across off-path components: junction values must be
        // 3-Lipschitz (with margin) for the within-component distance
        let mut extendable = true;
        'comps: for comp in graph.components_off_path(&chain) {
            if comp.junctions.len() < 2 {
                continue;
            }
            for (a_idx, &ja) in comp.junctions.iter().enumerate() {
                let dists = graph.distances_within(&comp, &chain, ja);
                for &jb in &comp.junctions[a_idx + 1..] {
                    let (va, vb) = (node_value[&ja], node_value[&jb]);
                    if (va - vb).abs() > 0.9 * arc.deriv_bound * dists[jb] {
                        extendable = false;
                        break 'comps;
                    }
                }
            }
        }
        if !extendable {
            continue;
        }
        let bound = arc.gap / (arc.deriv_bound * z0.dist(w));
        out.push(BoundRecord {
            test: BoundKind::ArcChain,
            w,
            a: None,
            dir: None,
            gap: Some(arc.gap),
            deriv_bound: arc.deriv_bound,
            bound,
        });
    }
    Ok(out)
}

/// Fallback witnesses: boundary/skeleton vertices nearest the probe, in
/// decreasing separation so the sequence sharpens toward the probe.
fn fallback_witnesses(set: &PlaneSet, z0: Point, cap: usize) -> Result<Vec<Point>, QxError> {
    let mut verts = set.all_vertices()?;
    verts.retain(|&v| v != z0);
    verts.sort_by(|a, b| z0.dist(*a).total_cmp(&z0.dist(*b)));
    verts.dedup();
    verts.truncate(cap);
    verts.reverse();
    Ok(verts)
}

/// Runs every applicable certificate at each probe and aggregates the
/// verdicts; the whole-set verdict is incomplete-certified when any probe
/// certifies.
pub fn completeness_report(
    set: &PlaneSet,
    probes: &[Point],
    cfg: &ReportConfig,
) -> Result<CompletenessReport, QxError> {
    let mut notes = Vec::new();
    let mut reports = Vec::new();
    let is_region = set.as_region().is_some();
    for &z in probes {
        if !set.contains(z, 1e-9)? {
            notes.push(format!("probe {z} skipped: not in the set"));
            continue;
        }
        // witnesses for regularity diagnostics
        let witnesses: Vec<Point> = match set.gallery() {
            Some(g) => {
                let w = g.regularity_witnesses(z, cfg.min_feature);
                if w.is_empty() {
                    fallback_witnesses(set, z, cfg.max_witnesses)?
                } else {
                    w
                }
            }
            None => fallback_witnesses(set, z, cfg.max_witnesses)?,
        };
        let witnesses: Vec<Point> = witnesses
            .into_iter()
            .filter(|&w| set.contains(w, 1e-9).unwrap_or(false))
            .take(cfg.max_witnesses)
            .collect();
        let regularity = if witnesses.len() >= cfg.rule.min_points {
            regularity_at(set, z, &witnesses, &cfg.rule).ok()
        } else {
            None
        };

        // certified bounds
        let mut records: Vec<BoundRecord> = Vec::new();
        let dent_spec = DentSpec::from_gallery(set, z).or_else(|| {
            set.as_region().map(|r| DentSpec {
                z0: z,
                items: auto_dents(r, z),
            })
        });
        if let Some(spec) = dent_spec {
            if !spec.items.is_empty() {
                if let Ok(rep) = long_dents_verdict(set, &spec, cfg) {
                    records.extend(rep.bounds);
                }
            }
        }
        if let Some(sk) = set.as_skeleton() {
            records.extend(skeleton_chain_bounds(sk, z, &witnesses)?);
        }

        let values: Vec<f64> = records.iter().map(|r| r.bound).collect();
        let fit = cfg.rule.classify(&values);
        let verdict = if fit.verdict == Verdict::Diverging {
            ProbeVerdict::IncompleteCertified
        } else {
            ProbeVerdict::NoDivergenceFound
        };
        let best = values.iter().copied().fold(0.0, f64::max);
        reports.push(ProbeReport {
            z,
            regularity,
            estimate: QxEstimate { center: z, witnesses: records, best, fit, verdict },
        });
    }
    let verdict = if reports
        .iter()
        .any(|p| p.estimate.verdict == ProbeVerdict::IncompleteCertified)
    {
        ProbeVerdict::IncompleteCertified
    } else {
        ProbeVerdict::NoDivergenceFound
    };
    let star = if is_region {
        star_centre(set).unwrap_or(None)
    } else {
        None
    };
    if let Some(c) = star {
        if verdict == ProbeVerdict::NoDivergenceFound {
            notes.push(format!(
                "star-shaped with verified centre {c}: completeness is equivalent to pointwise regularity"
            ));
        }
    }
    Ok(CompletenessReport { probes: reports, verdict, star_centre: star, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planeset::{DentRule, GalleryKind, GallerySpec, SeqRule};

    fn p(re: f64, im: f64) -> Point {
        Point::new(re, im)
    }

    #[test]
    fn unit_square_probes_find_nothing() {
        let square = PlaneSet::Region(
            Region::new(
                vec![p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)],
                vec![],
            )
            .unwrap(),
        );
        let probes = [p(0.0, 0.0), p(1.0, 1.0), p(0.5, 0.5)];
        let rep = completeness_report(&square, &probes, &ReportConfig::default()).unwrap();
        assert_eq!(rep.verdict, ProbeVerdict::NoDivergenceFound);
        assert!(rep.star_centre.is_some());
        assert!(!rep.notes.is_empty());
    }

    #[test]
    fn deep_dents_certify_incompleteness() {
        let spec = GallerySpec::new(
            GalleryKind::DentedSquare {
                r: DentRule::SqrtDepth,
                s: SeqRule::Geometric { ratio: 0.25 },
            },
            10,
        )
        .unwrap();
        let set = PlaneSet::Gallery(spec);
        let dents = DentSpec::from_gallery(&set, p(0.0, 0.0)).unwrap();
        let rep = long_dents_verdict(&set, &dents, &ReportConfig::default()).unwrap();
        assert_eq!(rep.verdict, ProbeVerdict::IncompleteCertified, "fit {:?}", rep.fit);
        assert_eq!(rep.rejected_items, 0);
    }

    #[test]
    fn matched_dents_stay_inconclusive() {
        let spec = GallerySpec::new(
            GalleryKind::DentedSquare {
                r: DentRule::MatchDepth { factor: 1.0 },
                s: SeqRule::Geometric { ratio: 0.5 },
            },
            10,
        )
        .unwrap();
        let set = PlaneSet::Gallery(spec);
        let dents = DentSpec::from_gallery(&set, p(0.0, 0.0)).unwrap();
        let rep = long_dents_verdict(&set, &dents, &ReportConfig::default()).unwrap();
        assert_eq!(rep.verdict, ProbeVerdict::NoDivergenceFound);
    }

    #[test]
    fn bound_records_reproduce() {
        let spec = GallerySpec::new(
            GalleryKind::DentedSquare {
                r: DentRule::SqrtDepth,
                s: SeqRule::Geometric { ratio: 0.25 },
            },
            8,
        )
        .unwrap();
        let set = PlaneSet::Gallery(spec);
        let z0 = p(0.0, 0.0);
        let dents = DentSpec::from_gallery(&set, z0).unwrap();
        let rep = long_dents_verdict(&set, &dents, &ReportConfig::default()).unwrap();
        for rec in &rep.bounds {
            let re = rec.reevaluate(z0).unwrap();
            assert!((re - rec.bound).abs() <= 1e-10 * (1.0 + rec.bound));
        }
    }

    #[test]
    fn crossed_square_skeleton_certifies_but_hull_does_not() {
        let spec = GallerySpec::new(
            GalleryKind::CrossedSquare { y: SeqRule::Geometric { ratio: 0.5 } },
            10,
        )
        .unwrap();
        let set = PlaneSet::Gallery(spec);
        let probe = p(0.5, 0.0);
        let rep = completeness_report(&set, &[probe], &ReportConfig::default()).unwrap();
        assert_eq!(rep.verdict, ProbeVerdict::IncompleteCertified);
        let chain_bounds: Vec<&BoundRecord> = rep.probes[0]
            .estimate
            .witnesses
            .iter()
            .filter(|r| r.test == BoundKind::ArcChain)
            .collect();
        assert!(chain_bounds.len() >= 4, "want several chained certificates");

        let hull = crate::planeset::hull(&set).unwrap();
        let rep = completeness_report(&hull, &[probe], &ReportConfig::default()).unwrap();
        assert_eq!(rep.verdict, ProbeVerdict::NoDivergenceFound);
    }
}
