//! Visibility-graph shortest paths inside a polygonal region with holes.
//!
//! Geodesics in a polygonal region turn only at reflex vertices of the
//! boundary (outer-ring right turns and hole convex corners), so the base
//! graph is built over those turning vertices; query points are attached
//! per query. An edge is kept when the whole segment stays in the closed
//! region, decided by splitting at all boundary intersections and testing
//! the midpoint of every piece.

use crate::geom::Point;
use crate::planeset::Region;
use std::cmp::Reverse;
use std::collections::BinaryHeap;

pub struct VisibilityGraph<'a> {
    region: &'a Region,
    nodes: Vec<Point>,
    adj: Vec<Vec<(usize, f64)>>,
}

/// Collects the parameters (along `a`->`b`) where the segment meets the
/// segment `p`->`q`, including the overlap ends of collinear contact.
fn intersection_params(a: Point, b: Point, p: Point, q: Point, out: &mut Vec<f64>) {
    let d1 = b - a;
    let d2 = q - p;
    let denom = d1.cross(d2);
    let scale = d1.abs() * d2.abs();
    if denom.abs() > 1e-14 * scale.max(1e-300) {
        let t = (p - a).cross(d2) / denom;
        let u = (p - a).cross(d1) / denom;
        if (-1e-12..=1.0 + 1e-12).contains(&t) && (-1e-12..=1.0 + 1e-12).contains(&u) {
            out.push(t.clamp(0.0, 1.0));
        }
        return;
    }
    // parallel; collinear when p is on the line through a, b
    if (p - a).cross(d1).abs() > 1e-14 * (d1.abs() * (p - a).abs()).max(1e-300) {
        return;
    }
    let len2 = d1.dot(d1);
    if len2 == 0.0 {
        return;
    }
    let tp = (p - a).dot(d1) / len2;
    let tq = (q - a).dot(d1) / len2;
    let (lo, hi) = (tp.min(tq).max(0.0), tp.max(tq).min(1.0));
    if lo <= hi {
        out.push(lo);
        out.push(hi);
    }
}

/// Whether the closed segment from `a` to `b` stays inside the region.
pub fn segment_in_region(region: &Region, a: Point, b: Point) -> bool {
    if a == b {
        return region.contains(a, 0.0);
    }
    let mut ts = vec![0.0, 1.0];
    for (p, q) in region.boundary_edges() {
        intersection_params(a, b, p, q, &mut ts);
    }
    ts.sort_by(f64::total_cmp);
    ts.dedup_by(|x, y| (*x - *y).abs() < 1e-12);
    let scale = 1e-12 * (1.0 + a.abs().max(b.abs()));
    for w in ts.windows(2) {
        if w[1] - w[0] < 1e-12 {
            continue;
        }
        let mid = a.lerp(b, 0.5 * (w[0] + w[1]));
        if !region.contains(mid, scale) {
            return false;
        }
    }
    true
}

/// Turning vertices of the region: ring vertices where a shortest path can
/// bend (right turns of the counterclockwise outer ring, equivalently
/// negative-cross corners of the clockwise hole rings).
pub fn turning_vertices(region: &Region) -> Vec<Point> {
    let mut out = Vec::new();
    for ring in region.rings() {
        let n = ring.len();
        for i in 0..n {
            let u = ring[(i + n - 1) % n];
            let v = ring[i];
            let w = ring[(i + 1) % n];
            if (v - u).cross(w - v) < 0.0 {
                out.push(v);
            }
        }
    }
    out.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    out.dedup();
    out
}

impl<'a> VisibilityGraph<'a> {
    pub fn new(region: &'a Region) -> Self {
        Self::over_nodes(region, turning_vertices(region))
    }

    /// Base graph over the turning vertices plus every ring vertex; used
    /// where endpoints must include all construction vertices (diameter).
    pub fn with_all_ring_vertices(region: &'a Region) -> Self {
        let mut nodes = turning_vertices(region);
        nodes.extend(region.all_vertices());
        nodes.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        nodes.dedup();
        Self::over_nodes(region, nodes)
    }

    fn over_nodes(region: &'a Region, nodes: Vec<Point>) -> Self {
        let n = nodes.len();
        let mut adj = vec![Vec::new(); n];
        for i in 0..n {
            for j in (i + 1)..n {
                if segment_in_region(region, nodes[i], nodes[j]) {
                    let w = nodes[i].dist(nodes[j]);
                    adj[i].push((j, w));
                    adj[j].push((i, w));
                }
            }
        }
        VisibilityGraph { region, nodes, adj }
    }

    pub fn nodes(&self) -> &[Point] {
        &self.nodes
    }

    pub fn region(&self) -> &Region {
        self.region
    }

    /// Shortest path between two points of the region; `None` when no
    /// path exists (the region is disconnected between them).
    pub fn shortest_path(&self, z: Point, w: Point) -> Option<(f64, Vec<Point>)> {
        let mut r = self.shortest_paths(z, &[w]);
        r.pop().unwrap_or(None)
    }

    /// Single-source shortest paths from `z` to each target. All query
    /// points participate as graph nodes, which can only refine paths.
    pub fn shortest_paths(&self, z: Point, targets: &[Point]) -> Vec<Option<(f64, Vec<Point>)>> {
        let base = self.nodes.len();
        let mut nodes = self.nodes.clone();
        nodes.push(z);
        nodes.extend_from_slice(targets);
        let total = nodes.len();
        let mut adj: Vec<Vec<(usize, f64)>> = self.adj.clone();
        adj.resize(total, Vec::new());
        for i in base..total {
            for j in 0..total {
                if j == i || (j >= base && j < i) {
                    continue;
                }
                if nodes[i] == nodes[j] {
                    adj[i].push((j, 0.0));
                    adj[j].push((i, 0.0));
                    continue;
                }
                if segment_in_region(self.region, nodes[i], nodes[j]) {
                    let w = nodes[i].dist(nodes[j]);
                    adj[i].push((j, w));
                    adj[j].push((i, w));
                }
            }
        }
        let (dist, prev) = dijkstra(&adj, base);
        targets
            .iter()
            .enumerate()
            .map(|(k, _)| {
                let t = base + 1 + k;
                if dist[t].is_finite() {
                    let mut chain = Vec::new();
                    let mut cur = t;
                    loop {
                        chain.push(nodes[cur]);
                        if cur == base {
                            break;
                        }
                        cur = prev[cur]?;
                    }
                    chain.reverse();
                    chain.dedup();
                    Some((dist[t], chain))
                } else {
                    None
                }
            })
            .collect()
    }
}

/// Plain Dijkstra over an adjacency list; returns distances and parents.
pub fn dijkstra(adj: &[Vec<(usize, f64)>], src: usize) -> (Vec<f64>, Vec<Option<usize>>) {
    #[derive(PartialEq)]
    struct Item(f64, usize);
    impl Eq for Item {}
    impl PartialOrd for Item {
        fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
            Some(self.cmp(other))
        }
    }
    impl Ord for Item {
        fn cmp(&self, other: &Self) -> std::cmp::Ordering {
            self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
        }
    }
    let n = adj.len();
    let mut dist = vec![f64::INFINITY; n];
    let mut prev = vec![None; n];
    let mut heap = BinaryHeap::new();
    dist[src] = 0.0;
    heap.push(Reverse(Item(0.0, src)));
    while let Some(Reverse(Item(d, u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, w) in &adj[u] {
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                prev[v] = Some(u);
                heap.push(Reverse(Item(nd, v)));
            }
        }
    }
    (dist, prev)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(re: f64, im: f64) -> Point {
        Point::new(re, im)
    }

    fn square_with_wall() -> Region {
        // unit square with a wall jutting up from the bottom at x = 0.5
        Region::new(
            vec![
                p(0.0, 0.0),
                p(0.45, 0.0),
                p(0.45, 0.7),
                p(0.55, 0.7),
                p(0.55, 0.0),
                p(1.0, 0.0),
                p(1.0, 1.0),
                p(0.0, 1.0),
            ],
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn convex_square_straight_line() {
        let sq = Region::new(
            vec![p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)],
            vec![],
        )
        .unwrap();
        let g = VisibilityGraph::new(&sq);
        assert!(g.nodes().is_empty()); // no reflex vertices in a convex region
        let (d, path) = g.shortest_path(p(0.0, 0.0), p(1.0, 1.0)).unwrap();
        assert_eq!(d, 2f64.sqrt());
        assert_eq!(path.len(), 2);
    }

    #[test]
    fn wall_forces_detour() {
        let region = square_with_wall();
        let g = VisibilityGraph::new(&region);
        assert_eq!(g.nodes().len(), 2); // the two wall-top corners
        let (d, path) = g.shortest_path(p(0.2, 0.1), p(0.8, 0.1)).unwrap();
        assert!(path.len() >= 3, "path must round the wall");
        let direct = 0.6;
        assert!(d > direct + 0.5, "detour length {d}");
        // symmetric query
        let (d2, _) = g.shortest_path(p(0.8, 0.1), p(0.2, 0.1)).unwrap();
        assert!((d - d2).abs() < 1e-12);
    }

    #[test]
    fn hole_detour_and_unreachable() {
        let region = Region::new(
            vec![p(0.0, 0.0), p(3.0, 0.0), p(3.0, 3.0), p(0.0, 3.0)],
            vec![vec![p(1.0, 1.0), p(2.0, 1.0), p(2.0, 2.0), p(1.0, 2.0)]],
        )
        .unwrap();
        let g = VisibilityGraph::new(&region);
        let (d, _) = g.shortest_path(p(0.5, 1.5), p(2.5, 1.5)).unwrap();
        assert!(d > 2.0 && d < 2.6, "around the hole: {d}");
        // a straight path exists below the hole
        let (d2, path2) = g.shortest_path(p(0.5, 0.5), p(2.5, 0.5)).unwrap();
        assert_eq!(d2, 2.0);
        assert_eq!(path2.len(), 2);
    }

    #[test]
    fn boundary_travel_is_allowed() {
        let region = square_with_wall();
        let g = VisibilityGraph::new(&region);
        // from a bottom-left point to the wall top: path may hug the wall
        let (d, _) = g.shortest_path(p(0.45, 0.0), p(0.45, 0.7)).unwrap();
        assert!((d - 0.7).abs() < 1e-12);
    }
}
