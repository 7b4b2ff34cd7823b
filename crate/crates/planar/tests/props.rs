//! Property-based invariants across the crate.

use num_complex::Complex64;
use planar::diverge::DivergenceRule;
use planar::geodesic::GeodesicContext;
use planar::geom::{Point, PolyPath};
use planar::pathint::{c64, path_integral, FunctionExpr};
use planar::planeset::{cantor_function, hull, PlaneSet, Region};
use planar::qx::{zpow_bound, TestConstants};
use proptest::prelude::*;

fn finite_coord() -> impl Strategy<Value = f64> {
    (-8.0f64..8.0).prop_map(|x| (x * 16.0).round() / 16.0)
}

fn point() -> impl Strategy<Value = Point> {
    (finite_coord(), finite_coord()).prop_map(|(re, im)| Point::new(re, im))
}

/// Random admissible polyline: consecutive duplicates are nudged apart.
fn polyline(max_len: usize) -> impl Strategy<Value = PolyPath> {
    prop::collection::vec(point(), 2..max_len).prop_map(|mut pts| {
        for i in 1..pts.len() {
            if pts[i] == pts[i - 1] {
                pts[i].re += 0.125;
            }
        }
        PolyPath::new(pts).expect("nudged polyline is admissible")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn arc_length_dominates_endpoint_distance(path in polyline(12)) {
        prop_assert!(path.arc_length() >= path.start().dist(path.end()) - 1e-12);
    }

    #[test]
    fn arclength_map_is_lipschitz_one(path in polyline(10), s in 0.0..1.0f64, t in 0.0..1.0f64) {
        let m = path.reparametrize_by_arclength();
        let total = path.arc_length();
        let (a, b) = (s * total, t * total);
        let d = m.map(a).unwrap().dist(m.map(b).unwrap());
        prop_assert!(d <= (a - b).abs() * (1.0 + 1e-9) + 1e-12);
    }

    #[test]
    fn subpath_lengths_are_additive(path in polyline(10), cuts in (0.05..0.45f64, 0.55..0.95f64)) {
        let total = path.arc_length();
        let (a, b) = (cuts.0 * total, cuts.1 * total);
        let l1 = path.subpath(0.0, a).unwrap().arc_length();
        let l2 = path.subpath(a, b).unwrap().arc_length();
        let l3 = path.subpath(b, total).unwrap().arc_length();
        prop_assert!(((l1 + l2 + l3) - total).abs() <= 1e-9 * total.max(1.0));
    }

    #[test]
    fn path_json_round_trip(path in polyline(10)) {
        let json = serde_json::to_string(&path).unwrap();
        let back: PolyPath = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back.vertices(), path.vertices());
    }

    #[test]
    fn integral_additive_under_splitting(path in polyline(8), frac in 0.1..0.9f64) {
        // analytic integrand: defects only from quadrature rounding
        let f = FunctionExpr::polynomial(&[
            c64(0.3, -0.1),
            c64(-1.0, 0.5),
            c64(0.0, 1.0),
            c64(0.25, 0.0),
        ]);
        let total = path.arc_length();
        let s = frac * total;
        let whole = path_integral(&f, &path, 1e-12).unwrap().value;
        let left = path_integral(&f, &path.subpath(0.0, s).unwrap(), 1e-12).unwrap().value;
        let right = path_integral(&f, &path.subpath(s, total).unwrap(), 1e-12).unwrap().value;
        let scale = 1.0 + whole.norm() + left.norm() + right.norm();
        prop_assert!((whole - (left + right)).norm() <= 1e-10 * scale);
    }

    #[test]
    fn cantor_is_monotone_and_bounded(a in 0.0..=1.0f64, b in 0.0..=1.0f64) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let (va, vb) = (cantor_function(lo).unwrap(), cantor_function(hi).unwrap());
        prop_assert!(va <= vb);
        prop_assert!((0.0..=1.0).contains(&va));
    }

    #[test]
    fn expr_json_round_trip(coeffs in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..6)) {
        let cs: Vec<Complex64> = coeffs.iter().map(|&(r, i)| c64(r, i)).collect();
        let f = FunctionExpr::polynomial(&cs).add(FunctionExpr::ppow(c64(0.0, 1.0)));
        let json = serde_json::to_string(&f).unwrap();
        let back: FunctionExpr = serde_json::from_str(&json).unwrap();
        let z = c64(0.7, 0.3);
        prop_assert!((back.eval(z).unwrap() - f.eval(z).unwrap()).norm() < 1e-15);
    }

    #[test]
    fn zpow_bound_is_dominated_by_direct_quotient(
        zre in -3.0..-0.01f64, zim in 0.01..3.0f64,
        wre in -3.0..-0.01f64, wim in -3.0..-0.01f64,
    ) {
        let (z, w) = (Point::new(zre, zim), Point::new(wre, wim));
        let bound = zpow_bound(z, w).unwrap();
        let f = |q: Point| Complex64::from(q).powc(c64(1.0, 1.0));
        let c = TestConstants::default();
        let direct = (f(z) - f(w)).norm() * c.c_q / z.dist(w);
        prop_assert!(bound <= direct + 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn geodesic_metric_axioms_on_walled_square(
        seeds in prop::collection::vec((0.05..0.95f64, 0.05..0.95f64), 3),
    ) {
        // square with an interior wall: geodesics genuinely bend
        let region = Region::new(
            vec![
                Point::new(0.0, 0.0),
                Point::new(0.45, 0.0),
                Point::new(0.45, 0.6),
                Point::new(0.55, 0.6),
                Point::new(0.55, 0.0),
                Point::new(1.0, 0.0),
                Point::new(1.0, 1.0),
                Point::new(0.0, 1.0),
            ],
            vec![],
        )
        .unwrap();
        let set = PlaneSet::Region(region.clone());
        let pts: Vec<Point> = seeds
            .iter()
            .map(|&(x, y)| Point::new(x, y))
            .filter(|&p| region.contains(p, 0.0))
            .collect();
        prop_assume!(pts.len() == 3);
        let ctx = GeodesicContext::new(&set).unwrap();
        let d = |a: Point, b: Point| ctx.distance(a, b).unwrap().length;
        let (z, w, u) = (pts[0], pts[1], pts[2]);
        prop_assume!(z != w && w != u && z != u);
        // symmetry, domination, triangle inequality
        prop_assert!((d(z, w) - d(w, z)).abs() <= 1e-9);
        prop_assert!(d(z, w) >= z.dist(w) - 1e-9);
        prop_assert!(d(z, u) <= d(z, w) + d(w, u) + 1e-9);
    }

    #[test]
    fn hull_is_idempotent_on_star_polygons(radii in prop::collection::vec(0.2..1.0f64, 5..12)) {
        let n = radii.len();
        let ring: Vec<Point> = radii
            .iter()
            .enumerate()
            .map(|(i, &r)| {
                let a = std::f64::consts::TAU * i as f64 / n as f64;
                Point::new(r * a.cos(), r * a.sin())
            })
            .collect();
        let set = PlaneSet::Region(Region::new(ring, vec![]).unwrap());
        let h1 = hull(&set).unwrap();
        let h2 = hull(&h1).unwrap();
        prop_assert_eq!(
            h1.as_region().unwrap().outer(),
            h2.as_region().unwrap().outer()
        );
    }

    #[test]
    fn regularity_quotients_at_least_one(
        witnesses in prop::collection::vec((0.1..0.9f64, 0.1..0.9f64), 4..10),
    ) {
        let square = PlaneSet::Region(
            Region::new(
                vec![
                    Point::new(0.0, 0.0),
                    Point::new(1.0, 0.0),
                    Point::new(1.0, 1.0),
                    Point::new(0.0, 1.0),
                ],
                vec![],
            )
            .unwrap(),
        );
        let ws: Vec<Point> = witnesses.iter().map(|&(x, y)| Point::new(x, y)).collect();
        let rep = planar::geodesic::regularity_at(
            &square,
            Point::new(0.5, 0.5),
            &ws,
            &DivergenceRule::default(),
        )
        .unwrap();
        for s in &rep.samples {
            prop_assert!(s.quotient >= 1.0 - 1e-12);
        }
    }
}
