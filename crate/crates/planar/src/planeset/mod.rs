//! Representations of compact plane sets.
//!
//! A [`PlaneSet`] is a polygonal region with holes, a skeleton graph of
//! polyline arcs, or a parametrized gallery construction truncated at a
//! finite depth. Gallery constructions materialize into regions or
//! skeletons; every operation that needs concrete geometry goes through
//! [`PlaneSet::materialized`].

pub mod cantor;
pub mod gallery;
pub mod svg;

pub use cantor::cantor_function;
pub use gallery::{DentRule, Disc, GalleryKind, GallerySpec, SeqRule};

use crate::geom::{GeomError, Point, PolyPath};
use serde::{Deserialize, Serialize};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SetError {
    #[error("invalid construction parameters: {0}")]
    InvalidParams(String),
    #[error("skeleton arcs do not form a connected graph")]
    Disconnected,
    #[error("polygon ring needs at least 3 vertices, got {0}")]
    RingTooSmall(usize),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Axis-aligned bounding box.
#[derive(Clone, Copy, Debug)]
pub struct BBox {
    pub min: Point,
    pub max: Point,
}

impl BBox {
    pub fn of(points: impl Iterator<Item = Point>) -> BBox {
        let mut min = Point::new(f64::INFINITY, f64::INFINITY);
        let mut max = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            min.re = min.re.min(p.re);
            min.im = min.im.min(p.im);
            max.re = max.re.max(p.re);
            max.im = max.im.max(p.im);
        }
        BBox { min, max }
    }

    pub fn diameter(&self) -> f64 {
        self.min.dist(self.max)
    }

    pub fn inflate(&self, pad: f64) -> BBox {
        BBox {
            min: self.min - Point::new(pad, pad),
            max: self.max + Point::new(pad, pad),
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        (self.min.re..=self.max.re).contains(&p.re) && (self.min.im..=self.max.im).contains(&p.im)
    }
}

/// Winding number of `ring` around `p` (ring implicitly closed).
pub fn winding_number(ring: &[Point], p: Point) -> i32 {
    let mut w = 0;
    let n = ring.len();
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        if a.im <= p.im {
            if b.im > p.im && (b - a).cross(p - a) > 0.0 {
                w += 1;
            }
        } else if b.im <= p.im && (b - a).cross(p - a) < 0.0 {
            w -= 1;
        }
    }
    w
}

/// Twice the signed area of a ring (positive for counterclockwise).
pub fn signed_area2(ring: &[Point]) -> f64 {
    let n = ring.len();
    let mut s = 0.0;
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        s += a.cross(b);
    }
    s
}

/// Distance from `p` to the segment `a`-`b`.
pub fn segment_distance(a: Point, b: Point, p: Point) -> f64 {
    let d = b - a;
    let len2 = d.dot(d);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(d) / len2).clamp(0.0, 1.0);
    p.dist(a.lerp(b, t))
}

/// A closed polygonal region: one outer ring and disjoint hole rings.
///
/// The outer ring is stored counterclockwise and holes clockwise
/// (normalized on construction when orientation is detectable); rings may
/// be degenerate (zero-width slits traced twice), in which case the signed
/// winding number still classifies containment correctly.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Region {
    outer: Vec<Point>,
    #[serde(default)]
    holes: Vec<Vec<Point>>,
}

impl Region {
    pub fn new(outer: Vec<Point>, holes: Vec<Vec<Point>>) -> Result<Region, SetError> {
        if outer.len() < 3 {
            return Err(SetError::RingTooSmall(outer.len()));
        }
        for h in &holes {
            if h.len() < 3 {
                return Err(SetError::RingTooSmall(h.len()));
            }
        }
        let mut outer = outer;
        if signed_area2(&outer) < 0.0 {
            outer.reverse();
        }
        let holes = holes
            .into_iter()
            .map(|mut h| {
                if signed_area2(&h) > 0.0 {
                    h.reverse();
                }
                h
            })
            .collect();
        Ok(Region { outer, holes })
    }

    pub fn outer(&self) -> &[Point] {
        &self.outer
    }

    pub fn holes(&self) -> &[Vec<Point>] {
        &self.holes
    }

    pub fn rings(&self) -> impl Iterator<Item = &[Point]> {
        std::iter::once(self.outer.as_slice()).chain(self.holes.iter().map(|h| h.as_slice()))
    }

    pub fn boundary_edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.rings().flat_map(|ring| {
            let n = ring.len();
            (0..n).map(move |i| (ring[i], ring[(i + 1) % n]))
        })
    }

    pub fn boundary_distance(&self, p: Point) -> f64 {
        let mut best = f64::INFINITY;
        for (a, b) in self.boundary_edges() {
            best = best.min(segment_distance(a, b, p));
        }
        best
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        if self.boundary_distance(p) <= tol.max(0.0) {
            return true;
        }
        if winding_number(&self.outer, p) == 0 {
            return false;
        }
        for h in &self.holes {
            if winding_number(h, p) != 0 {
                return false;
            }
        }
        true
    }

    pub fn bbox(&self) -> BBox {
        BBox::of(self.rings().flatten().copied())
    }

    pub fn all_vertices(&self) -> impl Iterator<Item = Point> + '_ {
        self.rings().flatten().copied()
    }
}

/// A skeleton: a connected graph of polyline arcs joined at shared
/// endpoints (exact coordinate equality).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Skeleton {
    arcs: Vec<PolyPath>,
}

impl Skeleton {
    pub fn new(arcs: Vec<PolyPath>) -> Result<Skeleton, SetError> {
        if arcs.is_empty() {
            return Err(SetError::InvalidParams("skeleton needs at least one arc".into()));
        }
        let sk = Skeleton { arcs };
        if !sk.is_connected() {
            return Err(SetError::Disconnected);
        }
        Ok(sk)
    }

    pub fn arcs(&self) -> &[PolyPath] {
        &self.arcs
    }

    fn is_connected(&self) -> bool {
        // union-find over exact vertex coordinates
        let mut ids: Vec<(u64, u64, usize)> = Vec::new();
        let mut parent: Vec<usize> = Vec::new();
        let find = |ids: &mut Vec<(u64, u64, usize)>, parent: &mut Vec<usize>, p: Point| {
            let key = (p.re.to_bits(), p.im.to_bits());
            if let Some(&(_, _, id)) = ids.iter().find(|&&(a, b, _)| (a, b) == key) {
                id
            } else {
                let id = parent.len();
                ids.push((key.0, key.1, id));
                parent.push(id);
                id
            }
        };
        fn root(parent: &mut Vec<usize>, mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        let mut arc_roots = Vec::new();
        for arc in &self.arcs {
            let mut prev: Option<usize> = None;
            for &v in arc.vertices() {
                let id = find(&mut ids, &mut parent, v);
                if let Some(q) = prev {
                    let (ra, rb) = (root(&mut parent, q), root(&mut parent, id));
                    parent[ra] = rb;
                }
                prev = Some(id);
            }
            arc_roots.push(prev.unwrap());
        }
        let r0 = root(&mut parent, arc_roots[0]);
        arc_roots.iter().all(|&r| root(&mut parent, r) == r0)
    }

    pub fn distance_to(&self, p: Point) -> f64 {
        let mut best = f64::INFINITY;
        for arc in &self.arcs {
            for (a, b) in arc.segments() {
                best = best.min(segment_distance(a, b, p));
            }
        }
        best
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        self.distance_to(p) <= tol.max(0.0)
    }

    pub fn bbox(&self) -> BBox {
        BBox::of(self.arcs.iter().flat_map(|a| a.vertices().iter().copied()))
    }

    pub fn all_vertices(&self) -> impl Iterator<Item = Point> + '_ {
        self.arcs.iter().flat_map(|a| a.vertices().iter().copied())
    }
}

/// A compact plane set.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PlaneSet {
    Region(Region),
    Skeleton(Skeleton),
    Gallery(GallerySpec),
}

impl PlaneSet {
    /// The concrete region or skeleton behind this set, materializing
    /// gallery constructions on first use (cached).
    pub fn materialized(&self) -> Result<&PlaneSet, SetError> {
        match self {
            PlaneSet::Gallery(g) => g.materialized(),
            other => Ok(other),
        }
    }

    pub fn as_region(&self) -> Option<&Region> {
        match self.materialized().ok()? {
            PlaneSet::Region(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_skeleton(&self) -> Option<&Skeleton> {
        match self.materialized().ok()? {
            PlaneSet::Skeleton(s) => Some(s),
            _ => None,
        }
    }

    pub fn gallery(&self) -> Option<&GallerySpec> {
        match self {
            PlaneSet::Gallery(g) => Some(g),
            _ => None,
        }
    }

    /// Membership test: point-in-polygon (with holes) for regions,
    /// distance at most `tol` for skeletons.
    pub fn contains(&self, p: Point, tol: f64) -> Result<bool, SetError> {
        Ok(match self.materialized()? {
            PlaneSet::Region(r) => r.contains(p, tol),
            PlaneSet::Skeleton(s) => s.contains(p, tol),
            PlaneSet::Gallery(_) => unreachable!("materialized"),
        })
    }

    pub fn bbox(&self) -> Result<BBox, SetError> {
        Ok(match self.materialized()? {
            PlaneSet::Region(r) => r.bbox(),
            PlaneSet::Skeleton(s) => s.bbox(),
            PlaneSet::Gallery(_) => unreachable!("materialized"),
        })
    }

    /// All construction vertices of the materialized set.
    pub fn all_vertices(&self) -> Result<Vec<Point>, SetError> {
        Ok(match self.materialized()? {
            PlaneSet::Region(r) => r.all_vertices().collect(),
            PlaneSet::Skeleton(s) => s.all_vertices().collect(),
            PlaneSet::Gallery(_) => unreachable!("materialized"),
        })
    }
}

/// Polynomially convex hull: holes are removed from regions and the
/// enclosed faces of a skeleton are filled (the skeleton's outer face walk
/// becomes the outer ring). Idempotent: hulls map to themselves with the
/// same vertex set.
pub fn hull(set: &PlaneSet) -> Result<PlaneSet, SetError> {
    match set.materialized()? {
        PlaneSet::Region(r) => Ok(PlaneSet::Region(Region {
            outer: r.outer.clone(),
            holes: Vec::new(),
        })),
        PlaneSet::Skeleton(s) => {
            let ring = outer_face_walk(s)?;
            Ok(PlaneSet::Region(Region { outer: ring, holes: Vec::new() }))
        }
        PlaneSet::Gallery(_) => unreachable!("materialized"),
    }
}

/// Walks the outer face of the skeleton graph. Tree-like skeletons (no
/// cycles) produce a degenerate ring traversing every edge twice, which
/// still has the correct point set and winding behaviour.
fn outer_face_walk(sk: &Skeleton) -> Result<Vec<Point>, SetError> {
    // exact-coordinate node index
    let mut nodes: Vec<Point> = Vec::new();
    let mut index = std::collections::HashMap::new();
    let mut id_of = |nodes: &mut Vec<Point>, p: Point| -> usize {
        let key = (p.re.to_bits(), p.im.to_bits());
        *index.entry(key).or_insert_with(|| {
            nodes.push(p);
            nodes.len() - 1
        })
    };
    let mut adj: Vec<Vec<usize>> = Vec::new();
    for arc in sk.arcs() {
        let mut prev: Option<usize> = None;
        for &v in arc.vertices() {
            let id = id_of(&mut nodes, v);
            if adj.len() <= id {
                adj.resize(id + 1, Vec::new());
            }
            if let Some(q) = prev {
                if q != id {
                    if !adj[q].contains(&id) {
                        adj[q].push(id);
                    }
                    if !adj[id].contains(&q) {
                        adj[id].push(q);
                    }
                }
            }
            prev = Some(id);
        }
    }
    // bottom-most, then left-most node
    let start = (0..nodes.len())
        .min_by(|&a, &b| {
            (nodes[a].im, nodes[a].re)
                .partial_cmp(&(nodes[b].im, nodes[b].re))
                .unwrap()
        })
        .ok_or(SetError::Disconnected)?;
    let angle = |from: usize, to: usize| -> f64 {
        let d = nodes[to] - nodes[from];
        d.im.atan2(d.re)
    };
    // outgoing edge closest to the +x direction (all edges point upward
    // from the bottom-most node)
    let first = *adj[start]
        .iter()
        .min_by(|&&a, &&b| angle(start, a).partial_cmp(&angle(start, b)).unwrap())
        .ok_or(SetError::Disconnected)?;
    let mut ring = vec![nodes[start]];
    let (mut u, mut v) = (start, first);
    let edge_count: usize = adj.iter().map(|a| a.len()).sum();
    for _ in 0..(2 * edge_count + 2) {
        if v == start && {
            // would we leave along the starting edge again?
            next_ccw(&nodes, &adj, u, v) == first
        } {
            return Ok(ring);
        }
        ring.push(nodes[v]);
        let w = next_ccw(&nodes, &adj, u, v);
        u = v;
        v = w;
    }
    Err(SetError::Disconnected)
}

/// First outgoing edge counterclockwise from the reversal of the arrival
/// direction; falls back to retracing when the node is a leaf.
fn next_ccw(nodes: &[Point], adj: &[Vec<usize>], u: usize, v: usize) -> usize {
    let back = nodes[u] - nodes[v];
    let base = back.im.atan2(back.re);
    let mut best: Option<(f64, usize)> = None;
    for &w in &adj[v] {
        let d = nodes[w] - nodes[v];
        let mut a = d.im.atan2(d.re) - base;
        while a <= 1e-15 {
            a += std::f64::consts::TAU;
        }
        if best.map_or(true, |(ba, _)| a < ba) {
            best = Some((a, w));
        }
    }
    best.map(|(_, w)| w).unwrap_or(u)
}
