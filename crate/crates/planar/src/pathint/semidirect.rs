//! The semidirect-product algebra of function pairs and sampled norms.
//!
//! Pairs multiply by `(f1, f2)(g1, g2) = (f1 g1, f1 g2 + f2 g1)`, with the
//! norm `|f|_X + |g|_X`. The embedding `f ↦ (f, f')` is isometric for the
//! differentiable-function norm when both sides are sampled on the same
//! point set; norms here are always sampled lower bounds of the true sups.

use super::expr::{EvalError, FunctionExpr};
use super::PathIntError;
use crate::geom::Point;
use num_complex::Complex64;

/// An element `(f, g)` of the pair algebra over a common domain.
#[derive(Clone, Debug)]
pub struct SemidirectElement {
    pub f: FunctionExpr,
    pub g: FunctionExpr,
}

impl SemidirectElement {
    pub fn new(f: FunctionExpr, g: FunctionExpr) -> Self {
        SemidirectElement { f, g }
    }

    /// Multiplicative identity `(1, 0)`.
    pub fn identity() -> Self {
        SemidirectElement {
            f: FunctionExpr::real(1.0),
            g: FunctionExpr::constant(Complex64::ZERO),
        }
    }

    /// The embedding `ι(f) = (f, f')`.
    pub fn embed(f: FunctionExpr) -> Result<Self, PathIntError> {
        let g = f
            .derivative()
            .map_err(|e| PathIntError::Precondition(e.to_string()))?;
        Ok(SemidirectElement { f, g })
    }

    pub fn multiply(&self, other: &SemidirectElement) -> SemidirectElement {
        SemidirectElement {
            f: self.f.clone().mul(other.f.clone()),
            g: self
                .f
                .clone()
                .mul(other.g.clone())
                .add(self.g.clone().mul(other.f.clone())),
        }
    }

    /// Evaluates both components at a point.
    pub fn eval(&self, z: Complex64) -> Result<(Complex64, Complex64), EvalError> {
        Ok((self.f.eval(z)?, self.g.eval(z)?))
    }
}

/// Sampled sup norm of an expression over the given points.
pub fn sup_norm(f: &FunctionExpr, samples: &[Point]) -> Result<f64, EvalError> {
    let mut best: f64 = 0.0;
    for &p in samples {
        best = best.max(f.eval(p.to_complex())?.norm());
    }
    Ok(best)
}

/// Sampled pair norm `|f|_X + |g|_X`.
pub fn semidirect_norm(a: &SemidirectElement, samples: &[Point]) -> Result<f64, EvalError> {
    Ok(sup_norm(&a.f, samples)? + sup_norm(&a.g, samples)?)
}

/// Sampled differentiable-function norm `|f|_X + |f'|_X` for an explicit
/// derivative; a certified lower bound of the true norm.
pub fn diff_norm(
    f: &FunctionExpr,
    fprime: &FunctionExpr,
    samples: &[Point],
) -> Result<f64, EvalError> {
    Ok(sup_norm(f, samples)? + sup_norm(fprime, samples)?)
}

/// The quotient `|f(z) - f(w)| / |z - w|`.
pub fn lipschitz_quotient(
    f: &FunctionExpr,
    z: Point,
    w: Point,
) -> Result<f64, PathIntError> {
    if z == w {
        return Err(PathIntError::Precondition(
            "Lipschitz quotient needs distinct points".into(),
        ));
    }
    let fz = f.eval(z.to_complex())?;
    let fw = f.eval(w.to_complex())?;
    Ok((fz - fw).norm() / z.dist(w))
}

/// Sampled Lipschitz seminorm: the maximal quotient over all distinct
/// pairs of the sample set (a lower bound of the true seminorm).
pub fn lip_seminorm(f: &FunctionExpr, samples: &[Point]) -> Result<f64, PathIntError> {
    let mut best: f64 = 0.0;
    for (i, &z) in samples.iter().enumerate() {
        let fz = f.eval(z.to_complex())?;
        for &w in &samples[i + 1..] {
            if z == w {
                continue;
            }
            let fw = f.eval(w.to_complex())?;
            best = best.max((fz - fw).norm() / z.dist(w));
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathint::c64;

    fn square_corners() -> Vec<Point> {
        vec![
            Point::ZERO,
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
            Point::new(0.5, 0.5),
        ]
    }

    #[test]
    fn identity_multiplication() {
        let e = SemidirectElement::identity();
        let a = SemidirectElement::new(FunctionExpr::z(), FunctionExpr::real(1.0));
        let prod = e.multiply(&a);
        let z = c64(0.3, 0.7);
        assert_eq!(prod.eval(z).unwrap(), a.eval(z).unwrap());
    }

    #[test]
    fn nilpotent_square_is_zero() {
        let n = SemidirectElement::new(
            FunctionExpr::constant(Complex64::ZERO),
            FunctionExpr::real(1.0),
        );
        let sq = n.multiply(&n);
        let (f, g) = sq.eval(c64(0.4, -0.2)).unwrap();
        assert_eq!(f, Complex64::ZERO);
        assert_eq!(g, Complex64::ZERO);
    }

    #[test]
    fn embedding_is_multiplicative_on_z() {
        let iota_z = SemidirectElement::embed(FunctionExpr::z()).unwrap();
        let prod = iota_z.multiply(&iota_z);
        let direct = SemidirectElement::embed(FunctionExpr::z().powi(2)).unwrap();
        for z in [c64(0.0, 0.0), c64(1.0, 2.0), c64(-0.5, 0.25)] {
            let (pf, pg) = prod.eval(z).unwrap();
            let (df, dg) = direct.eval(z).unwrap();
            assert!((pf - df).norm() < 1e-14);
            assert!((pg - dg).norm() < 1e-14);
        }
    }

    #[test]
    fn diff_norm_of_z_on_square() {
        // |z|_X = √2 at the corner 1+i, |1|_X = 1
        let f = FunctionExpr::z();
        let fp = f.derivative().unwrap();
        let n = diff_norm(&f, &fp, &square_corners()).unwrap();
        assert!((n - (2f64.sqrt() + 1.0)).abs() < 1e-14);
        // constants: norm is |c|
        let c = FunctionExpr::constant(c64(3.0, -4.0));
        let cp = c.derivative().unwrap();
        assert!((diff_norm(&c, &cp, &square_corners()).unwrap() - 5.0).abs() < 1e-14);
    }

    #[test]
    fn embedding_norm_matches_diff_norm() {
        let p = FunctionExpr::polynomial(&[c64(0.5, 0.0), c64(-1.0, 2.0), c64(0.0, 1.0)]);
        let samples = square_corners();
        let iota = SemidirectElement::embed(p.clone()).unwrap();
        let lhs = semidirect_norm(&iota, &samples).unwrap();
        let rhs = diff_norm(&p, &p.derivative().unwrap(), &samples).unwrap();
        assert!((lhs - rhs).abs() < 1e-14);
    }

    #[test]
    fn lipschitz_of_identity() {
        let f = FunctionExpr::z();
        let q = lipschitz_quotient(&f, Point::ZERO, Point::new(0.3, 0.4)).unwrap();
        assert!((q - 1.0).abs() < 1e-14);
        assert!(lipschitz_quotient(&f, Point::ZERO, Point::ZERO).is_err());
        assert!((lip_seminorm(&f, &square_corners()).unwrap() - 1.0).abs() < 1e-14);
    }
}
