//! Path integration and derivative verification along rectifiable paths.
//!
//! The central check is the fundamental theorem of calculus for a
//! candidate derivative pair: `∫_γ g = f(γ⁺) − f(γ⁻)` for every path γ of
//! a family. Families are finite surrogates for the effective families of
//! admissible paths; reports are always relative to the family tested.

pub mod expr;
pub mod quad;
pub mod semidirect;

pub use expr::{c64, EvalError, FunctionExpr, Piece, PiecewiseFn};
pub use quad::{path_integral, QuadError, Quadrature};
pub use semidirect::{diff_norm, lip_seminorm, lipschitz_quotient, sup_norm, SemidirectElement};

use crate::geom::{GeomError, Point, PolyPath};
use crate::planeset::{PlaneSet, SetError};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PathIntError {
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Set(#[from] SetError),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// A function together with a candidate derivative for it.
#[derive(Clone, Debug)]
pub struct FDerivPair {
    pub f: FunctionExpr,
    pub g: FunctionExpr,
}

impl FDerivPair {
    pub fn new(f: FunctionExpr, g: FunctionExpr) -> Self {
        FDerivPair { f, g }
    }

    /// Pair `(f, f')` with the symbolic derivative.
    pub fn with_derivative(f: FunctionExpr) -> Result<Self, PathIntError> {
        let g = f
            .derivative()
            .map_err(|e| PathIntError::Precondition(e.to_string()))?;
        Ok(FDerivPair { f, g })
    }

    /// The product-rule combination of two pairs:
    /// `(f1 f2, f1 g2 + g1 f2)`.
    pub fn product(&self, other: &FDerivPair) -> FDerivPair {
        let f = self.f.clone().mul(other.f.clone());
        let g = self
            .f
            .clone()
            .mul(other.g.clone())
            .add(self.g.clone().mul(other.f.clone()));
        FDerivPair { f, g }
    }
}

/// Result of one fundamental-theorem check along a path.
#[derive(Clone, Debug, Serialize)]
pub struct FtcReport {
    pub integral: Complex64,
    pub endpoint_difference: Complex64,
    pub defect: f64,
    pub quad_err: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Compares `∫_γ g` with `f(γ⁺) − f(γ⁻)` at absolute tolerance `tol`.
pub fn ftc_check(
    f: &FunctionExpr,
    g: &FunctionExpr,
    path: &PolyPath,
    tol: f64,
) -> Result<FtcReport, PathIntError> {
    let q = path_integral(g, path, (0.1 * tol).max(1e-14))?;
    let fa = eval_endpoint(f, path, path.start(), 0.0)?;
    let fb = eval_endpoint(f, path, path.end(), path.arc_length())?;
    let delta = fb - fa;
    let defect = (q.value - delta).norm();
    Ok(FtcReport {
        integral: q.value,
        endpoint_difference: delta,
        defect,
        quad_err: q.err_estimate,
        tol,
        pass: defect <= tol,
    })
}

fn eval_endpoint(
    f: &FunctionExpr,
    path: &PolyPath,
    p: Point,
    s: f64,
) -> Result<Complex64, PathIntError> {
    match f {
        FunctionExpr::Piecewise(pw) => {
            // exact when the path is the reference path itself; otherwise
            // fall back to projection
            if pw.path.vertices() == path.vertices() {
                Ok(pw.eval_param(s)?)
            } else {
                Ok(pw.eval(p.to_complex())?)
            }
        }
        other => Ok(other.eval(p.to_complex())?),
    }
}

/// A finite family of admissible paths, closed under the subpath sampling
/// performed by the verifiers.
#[derive(Clone, Debug)]
pub struct PathFamily {
    pub paths: Vec<PolyPath>,
    pub effective: bool,
}

impl PathFamily {
    pub fn new(paths: Vec<PolyPath>) -> Self {
        PathFamily { paths, effective: false }
    }

    /// Marks the family effective after checking density: every vertex of
    /// the materialized set must lie within `resolution` of some path
    /// image.
    pub fn validate_effective(
        mut self,
        set: &PlaneSet,
        resolution: f64,
    ) -> Result<Self, PathIntError> {
        for v in set.all_vertices()? {
            let near = self.paths.iter().any(|p| p.project(v).1 <= resolution);
            if !near {
                return Err(PathIntError::Precondition(format!(
                    "vertex {v} is farther than {resolution} from every family path"
                )));
            }
        }
        self.effective = true;
        Ok(self)
    }
}

/// Per-path outcome inside a family verification report.
#[derive(Clone, Debug, Serialize)]
pub struct PathOutcome {
    pub path_index: usize,
    pub subpath: Option<(f64, f64)>,
    pub defect: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub outcomes: Vec<PathOutcome>,
    pub max_defect: f64,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub subpaths_per_path: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { subpaths_per_path: 8, seed: 0 }
    }
}

/// Runs the fundamental-theorem check on every family path plus random
/// subpaths of each; passes only if every check passes.
pub fn verify_fderivative(
    pair: &FDerivPair,
    family: &PathFamily,
    tol: f64,
    cfg: VerifyConfig,
) -> Result<FamilyReport, PathIntError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut outcomes = Vec::new();
    for (idx, path) in family.paths.iter().enumerate() {
        let whole = ftc_check(&pair.f, &pair.g, path, tol)?;
        outcomes.push(PathOutcome {
            path_index: idx,
            subpath: None,
            defect: whole.defect,
            pass: whole.pass,
        });
        let total = path.arc_length();
        for _ in 0..cfg.subpaths_per_path {
            let mut s0 = rng.gen_range(0.0..total);
            let mut s1 = rng.gen_range(0.0..total);
            if s0 > s1 {
                std::mem::swap(&mut s0, &mut s1);
            }
            if s1 - s0 < 1e-6 * total {
                continue;
            }
            let sub = path.subpath(s0, s1)?;
            let rep = ftc_check(&pair.f, &pair.g, &sub, tol)?;
            outcomes.push(PathOutcome {
                path_index: idx,
                subpath: Some((s0, s1)),
                defect: rep.defect,
                pass: rep.pass,
            });
        }
    }
    let max_defect = outcomes.iter().map(|o| o.defect).fold(0.0, f64::max);
    let pass = outcomes.iter().all(|o| o.pass);
    Ok(FamilyReport { outcomes, max_defect, pass })
}

/// Verifies the product rule: if both input pairs pass on the family, the
/// pair `(f1 f2, f1 g2 + g1 f2)` must pass as well.
pub fn verify_product_rule(
    p1: &FDerivPair,
    p2: &FDerivPair,
    family: &PathFamily,
    tol: f64,
    cfg: VerifyConfig,
) -> Result<FamilyReport, PathIntError> {
    for (name, p) in [("first", p1), ("second", p2)] {
        let rep = verify_fderivative(p, family, tol, cfg)?;
        if !rep.pass {
            return Err(PathIntError::Precondition(format!(
                "{name} pair fails its own derivative check (max defect {:.3e})",
                rep.max_defect
            )));
        }
    }
    verify_fderivative(&p1.product(p2), family, tol, cfg)
}

/// Maximal closed parameter intervals of `path` on which the pair `(f, g)`
/// satisfies the fundamental theorem on every sampled subpath.
///
/// The arc length is divided into `grid` cells; every cell subpath is
/// checked at tolerance `tol`, runs of passing cells are merged (adjacent
/// passing intervals share an endpoint and union into one), and each
/// merged run is re-checked end to end.
pub fn interval_decomposition(
    f: &FunctionExpr,
    g: &FunctionExpr,
    path: &PolyPath,
    tol: f64,
    grid: usize,
) -> Result<Vec<(f64, f64)>, PathIntError> {
    if grid < 1 {
        return Err(PathIntError::Precondition("grid must be positive".into()));
    }
    let total = path.arc_length();
    let cell = |j: usize| total * j as f64 / grid as f64;
    let mut passing = Vec::with_capacity(grid);
    for j in 0..grid {
        let sub = path.subpath(cell(j), cell(j + 1))?;
        let rep = ftc_check(f, g, &sub, tol)?;
        passing.push(rep.pass);
    }
    let mut intervals = Vec::new();
    let mut j = 0;
    while j < grid {
        if passing[j] {
            let start = j;
            while j < grid && passing[j] {
                j += 1;
            }
            let (s0, s1) = (cell(start), cell(j));
            let rep = ftc_check(f, g, &path.subpath(s0, s1)?, tol)?;
            if rep.pass {
                intervals.push((s0, s1));
            } else {
                // keep the constituent cells that individually passed
                for k in start..j {
                    intervals.push((cell(k), cell(k + 1)));
                }
            }
        } else {
            j += 1;
        }
    }
    Ok(intervals)
}

/// The zig-zag arc of depth N together with the step-like function on it:
/// constant `c_{n+1} = 2^{-n-1}/(n+1)` on each leg except the vertical
/// entry segment, where it interpolates between `c_n` and `c_{n+1}` by a
/// cosine in the height, and linear on the terminal segment into 0.
pub fn zigzag_arc_function(depth: u32) -> Result<(PolyPath, FunctionExpr), PathIntError> {
    use crate::planeset::{GalleryKind, GallerySpec};
    let spec = GallerySpec::new(GalleryKind::BadArc {}, depth)?;
    let set = spec.materialized()?;
    let path = set.as_skeleton().expect("zig-zag arc is a skeleton").arcs()[0].clone();
    let c = |n: u32| 2f64.powi(-(n as i32)) / n as f64;
    let cum = path.cumlen().to_vec();
    let mut pieces = Vec::new();
    for n in 1..=depth {
        let k = 4 * (n - 1) as usize; // z_n at vertex index k
        let x_n = 2f64.powi(-(n as i32));
        let a = 0.5 * (c(n) + c(n + 1));
        let b = 0.5 * (c(n) - c(n + 1));
        // on the vertical segment z = x_n + iy: y = (z - x_n)/i, so
        // f = a + b cos(2^n π (z - x_n)/i), analytic in z
        let freq = c64(0.0, -(2f64.powi(n as i32) * std::f64::consts::PI));
        let cos_arg = FunctionExpr::z().add(FunctionExpr::real(-x_n)).scale(freq);
        let entry = FunctionExpr::real(a).add(cos_arg.cos().scale(c64(b, 0.0)));
        pieces.push(Piece { s0: cum[k], s1: cum[k + 1], expr: entry });
        pieces.push(Piece {
            s0: cum[k + 1],
            s1: cum[k + 4],
            expr: FunctionExpr::real(c(n + 1)),
        });
    }
    // terminal straight run z_{N+1} -> 0: linear, f(0) = 0
    let k = 4 * depth as usize;
    let x_last = 2f64.powi(-(depth as i32 + 1));
    pieces.push(Piece {
        s0: cum[k],
        s1: cum[k + 1],
        expr: FunctionExpr::z().scale(c64(c(depth + 1) / x_last, 0.0)),
    });
    let f = FunctionExpr::Piecewise(PiecewiseFn {
        path: path.clone(),
        pieces,
        projection_tol: 1e-9,
    });
    Ok((path, f))
}

/// Quasi-uniform sample points of a set: all construction vertices plus
/// interior grid points (regions) or per-segment interpolations
/// (skeletons), up to roughly `budget` points.
pub fn sample_points(set: &PlaneSet, budget: usize, seed: u64) -> Result<Vec<Point>, PathIntError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = set.all_vertices()?;
    match set.materialized()? {
        PlaneSet::Region(r) => {
            let bbox = r.bbox();
            let side = (budget as f64).sqrt().ceil() as usize;
            let (w, h) = (bbox.max.re - bbox.min.re, bbox.max.im - bbox.min.im);
            for i in 0..side {
                for j in 0..side {
                    let p = Point::new(
                        bbox.min.re + w * (i as f64 + rng.gen_range(0.25..0.75)) / side as f64,
                        bbox.min.im + h * (j as f64 + rng.gen_range(0.25..0.75)) / side as f64,
                    );
                    if r.contains(p, 0.0) {
                        pts.push(p);
                    }
                }
            }
        }
        PlaneSet::Skeleton(s) => {
            let per_arc = (budget / s.arcs().len().max(1)).max(2);
            for arc in s.arcs() {
                let total = arc.arc_length();
                for k in 1..per_arc {
                    pts.push(arc.point_at(total * k as f64 / per_arc as f64)?);
                }
            }
        }
        PlaneSet::Gallery(_) => unreachable!("materialized"),
    }
    Ok(pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_segment() -> PolyPath {
        PolyPath::segment(Point::ZERO, Point::new(1.0, 0.0)).unwrap()
    }

    fn right_angle() -> PolyPath {
        PolyPath::new(vec![Point::ZERO, Point::new(1.0, 0.0), Point::new(1.0, 1.0)]).unwrap()
    }

    #[test]
    fn ftc_for_cube() {
        let f = FunctionExpr::z().powi(3);
        let g = f.derivative().unwrap();
        let path = PolyPath::new(vec![
            Point::new(0.1, 0.2),
            Point::new(0.8, 0.1),
            Point::new(0.4, 0.9),
        ])
        .unwrap();
        let rep = ftc_check(&f, &g, &path, 1e-9).unwrap();
        assert!(rep.pass, "defect {}", rep.defect);
    }

    #[test]
    fn ftc_fails_for_cantor_pair_on_unit_interval() {
        let f = FunctionExpr::Cantor;
        let g = FunctionExpr::constant(Complex64::ZERO);
        let rep = ftc_check(&f, &g, &unit_segment(), 1e-9).unwrap();
        assert!(!rep.pass);
        assert!((rep.defect - 1.0).abs() < 1e-12, "defect {}", rep.defect);
    }

    #[test]
    fn fderivative_family_check() {
        let pair = FDerivPair::with_derivative(FunctionExpr::z().powi(2)).unwrap();
        let family = PathFamily::new(vec![unit_segment(), right_angle()]);
        let rep = verify_fderivative(&pair, &family, 1e-9, VerifyConfig::default()).unwrap();
        assert!(rep.pass, "max defect {}", rep.max_defect);
    }

    #[test]
    fn product_rule_on_monomials() {
        let p1 = FDerivPair::with_derivative(FunctionExpr::z().powi(2)).unwrap();
        let p2 = FDerivPair::with_derivative(FunctionExpr::z().powi(3)).unwrap();
        let family = PathFamily::new(vec![right_angle()]);
        let rep = verify_product_rule(&p1, &p2, &family, 1e-9, VerifyConfig::default()).unwrap();
        assert!(rep.pass);
    }

    #[test]
    fn product_rule_rejects_bad_inputs() {
        let p1 = FDerivPair::new(FunctionExpr::z().powi(2), FunctionExpr::real(1.0));
        let p2 = FDerivPair::with_derivative(FunctionExpr::z()).unwrap();
        let family = PathFamily::new(vec![unit_segment()]);
        let err = verify_product_rule(&p1, &p2, &family, 1e-9, VerifyConfig::default());
        assert!(matches!(err, Err(PathIntError::Precondition(_))));
    }

    #[test]
    fn decomposition_whole_interval_for_true_derivative() {
        let f = FunctionExpr::z().powi(2);
        let g = f.derivative().unwrap();
        let path = right_angle();
        let iv = interval_decomposition(&f, &g, &path, 1e-9, 27).unwrap();
        assert_eq!(iv.len(), 1);
        assert_eq!(iv[0], (0.0, 2.0));
    }

    #[test]
    fn decomposition_half_passing_piecewise() {
        // f = z on [0, 1/2] of the segment, constant after; g = 1
        let path = unit_segment();
        let f = FunctionExpr::Piecewise(PiecewiseFn {
            path: path.clone(),
            pieces: vec![
                Piece { s0: 0.0, s1: 0.5, expr: FunctionExpr::z() },
                Piece { s0: 0.5, s1: 1.0, expr: FunctionExpr::real(0.5) },
            ],
            projection_tol: 1e-7,
        });
        let g = FunctionExpr::real(1.0);
        let iv = interval_decomposition(&f, &g, &path, 1e-9, 16).unwrap();
        assert_eq!(iv, vec![(0.0, 0.5)]);
    }

    #[test]
    fn zigzag_function_values() {
        let (_path, f) = zigzag_arc_function(3).unwrap();
        // f(z_1) = c_1 = 1/2, f(z'_1) = c_2 = 1/8
        let at = |re: f64, im: f64| f.eval(c64(re, im)).unwrap().re;
        assert!((at(0.5, 0.0) - 0.5).abs() < 1e-12);
        assert!((at(0.375, 0.0) - 0.125).abs() < 1e-12);
        // quotient at n = 1: (1/2 - 1/8) / 2^-3 = 3
        let q = (at(0.5, 0.0) - at(0.375, 0.0)) / 0.125;
        assert!((q - 3.0).abs() < 1e-12);
    }
}
