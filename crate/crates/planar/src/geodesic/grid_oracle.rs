//! Dense-grid Dijkstra reference for geodesic distances in regions.
//!
//! This oracle is independent of the visibility-graph engine: it
//! discretizes the region at a fixed pixel size, runs Dijkstra over a
//! 16-neighbourhood lattice, and straightens the resulting lattice path by
//! greedy shortcutting validated against the region's own membership test.

use crate::geom::Point;
use crate::planeset::Region;
use std::cmp::Reverse;
use std::collections::BinaryHeap;

pub struct GridOracle<'a> {
    region: &'a Region,
    origin: Point,
    pixel: f64,
    nx: usize,
    ny: usize,
    valid: Vec<bool>,
}

// knight moves included to tame the lattice metric distortion
const MOVES: [(i64, i64); 16] = [
    (1, 0),
    (-1, 0),
    (0, 1),
    (0, -1),
    (1, 1),
    (1, -1),
    (-1, 1),
    (-1, -1),
    (2, 1),
    (2, -1),
    (-2, 1),
    (-2, -1),
    (1, 2),
    (1, -2),
    (-1, 2),
    (-1, -2),
];

impl<'a> GridOracle<'a> {
    pub fn new(region: &'a Region, pixel: f64) -> GridOracle<'a> {
        let bbox = region.bbox().inflate(2.0 * pixel);
        let nx = ((bbox.max.re - bbox.min.re) / pixel).ceil() as usize + 1;
        let ny = ((bbox.max.im - bbox.min.im) / pixel).ceil() as usize + 1;
        let origin = bbox.min;
        let mut valid = vec![false; nx * ny];
        let tol = 1e-9 * pixel;
        for j in 0..ny {
            for i in 0..nx {
                let p = Point::new(
                    origin.re + pixel * i as f64,
                    origin.im + pixel * j as f64,
                );
                valid[j * nx + i] = region.contains(p, tol);
            }
        }
        GridOracle { region, origin, pixel, nx, ny, valid }
    }

    fn point(&self, idx: usize) -> Point {
        let (i, j) = (idx % self.nx, idx / self.nx);
        Point::new(
            self.origin.re + self.pixel * i as f64,
            self.origin.im + self.pixel * j as f64,
        )
    }

    fn is_valid(&self, i: i64, j: i64) -> bool {
        i >= 0
            && j >= 0
            && (i as usize) < self.nx
            && (j as usize) < self.ny
            && self.valid[j as usize * self.nx + i as usize]
    }

    /// Both intermediate lattice points of a knight move (or the two
    /// orthogonal neighbours of a diagonal) must be valid, so moves never
    /// jump across thin obstacles.
    fn move_allowed(&self, i: i64, j: i64, di: i64, dj: i64) -> bool {
        if !self.is_valid(i + di, j + dj) {
            return false;
        }
        match (di.abs(), dj.abs()) {
            (1, 0) | (0, 1) => true,
            (1, 1) => self.is_valid(i + di, j) && self.is_valid(i, j + dj),
            (2, 1) => self.is_valid(i + di / 2, j) && self.is_valid(i + di / 2, j + dj),
            (1, 2) => self.is_valid(i, j + dj / 2) && self.is_valid(i + di, j + dj / 2),
            _ => unreachable!(),
        }
    }

    fn segment_free(&self, a: Point, b: Point) -> bool {
        let len = a.dist(b);
        let steps = ((len / (0.25 * self.pixel)).ceil() as usize).max(1);
        let tol = 1e-9 * self.pixel;
        for k in 0..=steps {
            let p = a.lerp(b, k as f64 / steps as f64);
            if !self.region.contains(p, tol) {
                return false;
            }
        }
        true
    }

    /// Lattice nodes within 2.5 pixels of `p` reachable by a straight
    /// in-region segment.
    fn attach(&self, p: Point) -> Vec<(usize, f64)> {
        let i0 = ((p.re - self.origin.re) / self.pixel).round() as i64;
        let j0 = ((p.im - self.origin.im) / self.pixel).round() as i64;
        let mut out = Vec::new();
        for dj in -3i64..=3 {
            for di in -3i64..=3 {
                let (i, j) = (i0 + di, j0 + dj);
                if !self.is_valid(i, j) {
                    continue;
                }
                let q = self.point(j as usize * self.nx + i as usize);
                if p.dist(q) <= 2.5 * self.pixel && self.segment_free(p, q) {
                    out.push((j as usize * self.nx + i as usize, p.dist(q)));
                }
            }
        }
        out
    }

    /// Reference geodesic length between `z` and `w`, or `None` when the
    /// grid cannot connect them.
    pub fn distance(&self, z: Point, w: Point) -> Option<f64> {
        if z == w {
            return Some(0.0);
        }
        let sources = self.attach(z);
        let sinks = self.attach(w);
        if sources.is_empty() || sinks.is_empty() {
            return None;
        }

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

        let n = self.nx * self.ny;
        let mut dist = vec![f64::INFINITY; n];
        let mut prev: Vec<u32> = vec![u32::MAX; n];
        let mut heap = BinaryHeap::new();
        for &(s, d) in &sources {
            if d < dist[s] {
                dist[s] = d;
                heap.push(Reverse(Item(d, s)));
            }
        }
        let sink_set: std::collections::HashMap<usize, f64> = sinks.iter().copied().collect();
        let mut remaining = sink_set.len();
        while let Some(Reverse(Item(d, u))) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            if sink_set.contains_key(&u) {
                remaining -= 1;
                if remaining == 0 {
                    break;
                }
            }
            let (i, j) = ((u % self.nx) as i64, (u / self.nx) as i64);
            for &(di, dj) in &MOVES {
                if !self.move_allowed(i, j, di, dj) {
                    continue;
                }
                let v = (j + dj) as usize * self.nx + (i + di) as usize;
                let step = self.pixel * ((di * di + dj * dj) as f64).sqrt();
                let nd = d + step;
                if nd < dist[v] {
                    dist[v] = nd;
                    prev[v] = u as u32;
                    heap.push(Reverse(Item(nd, v)));
                }
            }
        }
        let (&best_sink, snap) = sink_set
            .iter()
            .filter(|(&s, _)| dist[s].is_finite())
            .min_by(|a, b| (dist[*a.0] + a.1).total_cmp(&(dist[*b.0] + b.1)))?;
        let _ = snap;

        // reconstruct, then straighten by greedy shortcutting
        let mut chain = vec![w, self.point(best_sink)];
        let mut cur = best_sink;
        while prev[cur] != u32::MAX {
            cur = prev[cur] as usize;
            chain.push(self.point(cur));
        }
        // cur is now a source node; prepend z via its snap edge
        chain.push(z);
        chain.reverse(); // z .. lattice .. w
        let slim = self.shortcut(&chain);
        Some(slim.windows(2).map(|p| p[0].dist(p[1])).sum())
    }

    fn shortcut(&self, chain: &[Point]) -> Vec<Point> {
        let mut out = vec![chain[0]];
        let mut i = 0;
        while i + 1 < chain.len() {
            let mut j = chain.len() - 1;
            while j > i + 1 {
                if self.segment_free(chain[i], chain[j]) {
                    break;
                }
                j -= 1;
            }
            out.push(chain[j]);
            i = j;
        }
        out
    }
}
