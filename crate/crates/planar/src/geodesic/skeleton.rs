//! Shortest paths along skeleton graphs.
//!
//! Skeleton arcs become graph edges between exact-coordinate nodes; query
//! points enter by splitting the nearest edge. The graph also exposes the
//! pieces needed by completeness certificates: path node sequences,
//! off-path components and their junctions, and distances inside
//! components.

use super::visibility::dijkstra;
use crate::geom::Point;
use crate::planeset::{segment_distance, Skeleton};
use std::collections::HashMap;

pub struct SkeletonGraph {
    nodes: Vec<Point>,
    index: HashMap<(u64, u64), usize>,
    adj: Vec<Vec<(usize, f64)>>,
}

impl SkeletonGraph {
    pub fn new(sk: &Skeleton) -> SkeletonGraph {
        let mut g = SkeletonGraph {
            nodes: Vec::new(),
            index: HashMap::new(),
            adj: Vec::new(),
        };
        for arc in sk.arcs() {
            let mut prev: Option<usize> = None;
            for &v in arc.vertices() {
                let id = g.node_id(v);
                if let Some(u) = prev {
                    if u != id {
                        g.add_edge(u, id);
                    }
                }
                prev = Some(id);
            }
        }
        g
    }

    pub fn nodes(&self) -> &[Point] {
        &self.nodes
    }

    pub fn neighbors(&self, u: usize) -> &[(usize, f64)] {
        &self.adj[u]
    }

    fn node_id(&mut self, p: Point) -> usize {
        let key = (p.re.to_bits(), p.im.to_bits());
        if let Some(&id) = self.index.get(&key) {
            return id;
        }
        let id = self.nodes.len();
        self.nodes.push(p);
        self.adj.push(Vec::new());
        self.index.insert(key, id);
        id
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        let w = self.nodes[u].dist(self.nodes[v]);
        if !self.adj[u].iter().any(|&(x, _)| x == v) {
            self.adj[u].push((v, w));
            self.adj[v].push((u, w));
        }
    }

    /// Distance from `p` to the skeleton and the nearest edge with the
    /// interpolation parameter on it.
    fn locate(&self, p: Point) -> Option<(usize, usize, f64, f64)> {
        let mut best: Option<(usize, usize, f64, f64)> = None;
        for u in 0..self.nodes.len() {
            for &(v, _) in &self.adj[u] {
                if v < u {
                    continue;
                }
                let (a, b) = (self.nodes[u], self.nodes[v]);
                let d = b - a;
                let t = ((p - a).dot(d) / d.dot(d)).clamp(0.0, 1.0);
                let dist = p.dist(a.lerp(b, t));
                if best.map_or(true, |(_, _, _, bd)| dist < bd) {
                    best = Some((u, v, t, dist));
                }
            }
        }
        best
    }

    /// Inserts `p` as a graph node, splitting the nearest edge when `p`
    /// lies inside it. Returns the node id, or `None` when `p` is farther
    /// than `tol` from the skeleton.
    pub fn add_point(&mut self, p: Point, tol: f64) -> Option<usize> {
        let key = (p.re.to_bits(), p.im.to_bits());
        if let Some(&id) = self.index.get(&key) {
            return Some(id);
        }
        let (u, v, t, dist) = self.locate(p)?;
        if dist > tol {
            return None;
        }
        if t <= 0.0 {
            return Some(u);
        }
        if t >= 1.0 {
            return Some(v);
        }
        let id = self.node_id(p);
        self.adj[u].retain(|&(x, _)| x != v);
        self.adj[v].retain(|&(x, _)| x != u);
        self.add_edge(u, id);
        self.add_edge(id, v);
        Some(id)
    }

    /// Shortest node path between two node ids.
    pub fn shortest_path(&self, src: usize, dst: usize) -> Option<(f64, Vec<usize>)> {
        let (dist, prev) = dijkstra(&self.adj, src);
        if !dist[dst].is_finite() {
            return None;
        }
        let mut chain = vec![dst];
        let mut cur = dst;
        while cur != src {
            cur = prev[cur]?;
            chain.push(cur);
        }
        chain.reverse();
        Some((dist[dst], chain))
    }

    pub fn distances_from(&self, src: usize) -> Vec<f64> {
        dijkstra(&self.adj, src).0
    }

    pub fn point_of(&self, id: usize) -> Point {
        self.nodes[id]
    }

    /// Connected components of the graph with the given path edges
    /// removed. Every component is returned with its node set and its
    /// junctions (nodes that lie on the path).
    pub fn components_off_path(&self, path: &[usize]) -> Vec<OffPathComponent> {
        let on_path: std::collections::HashSet<usize> = path.iter().copied().collect();
        let path_edges: std::collections::HashSet<(usize, usize)> = path
            .windows(2)
            .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
            .collect();
        let n = self.nodes.len();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            // grow a component over non-path edges
            let mut stack = vec![start];
            comp[start] = count;
            while let Some(u) = stack.pop() {
                for &(v, _) in &self.adj[u] {
                    let key = (u.min(v), u.max(v));
                    if path_edges.contains(&key) || comp[v] != usize::MAX {
                        continue;
                    }
                    comp[v] = count;
                    stack.push(v);
                }
            }
            count += 1;
        }
        let mut out: Vec<OffPathComponent> = (0..count)
            .map(|id| OffPathComponent {
                nodes: Vec::new(),
                junctions: Vec::new(),
                id,
            })
            .collect();
        for u in 0..n {
            out[comp[u]].nodes.push(u);
            if on_path.contains(&u) {
                out[comp[u]].junctions.push(u);
            }
        }
        // components that are only a single path node carry no off-path
        // structure
        out.retain(|c| c.nodes.len() > 1 || c.junctions.is_empty());
        out
    }

    /// Distances between `src` and all nodes using only edges inside the
    /// component (path edges removed).
    pub fn distances_within(&self, component: &OffPathComponent, path: &[usize], src: usize) -> Vec<f64> {
        let path_edges: std::collections::HashSet<(usize, usize)> = path
            .windows(2)
            .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
            .collect();
        let allowed: std::collections::HashSet<usize> = component.nodes.iter().copied().collect();
        let adj: Vec<Vec<(usize, f64)>> = (0..self.nodes.len())
            .map(|u| {
                if !allowed.contains(&u) {
                    return Vec::new();
                }
                self.adj[u]
                    .iter()
                    .copied()
                    .filter(|&(v, _)| {
                        allowed.contains(&v) && !path_edges.contains(&(u.min(v), u.max(v)))
                    })
                    .collect()
            })
            .collect();
        dijkstra(&adj, src).0
    }

    pub fn distance_to_skeleton(&self, p: Point) -> f64 {
        let mut best = f64::INFINITY;
        for u in 0..self.nodes.len() {
            for &(v, _) in &self.adj[u] {
                if v < u {
                    continue;
                }
                best = best.min(segment_distance(self.nodes[u], self.nodes[v], p));
            }
        }
        best
    }
}

#[derive(Debug, Clone)]
pub struct OffPathComponent {
    pub id: usize,
    pub nodes: Vec<usize>,
    pub junctions: Vec<usize>,
}
