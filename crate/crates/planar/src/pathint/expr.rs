//! Expression trees for functions of the complex variable z.
//!
//! The node set covers polynomials, the principal power z^α on the cut
//! plane, trigonometric compositions, the Cantor-function composition
//! g(Re z), and piecewise-on-path functions given by a table of analytic
//! pieces over arc-length intervals of a reference path.
//!
//! Serialization uses lowercase node tags: `const`, `z`, `add`, `mul`,
//! `pow`, `ppow`, `cos`, `sin`, `cantor`, `piecewise`.

use crate::geom::PolyPath;
use crate::planeset::cantor_function;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Debug, Error, Clone)]
pub enum EvalError {
    #[error("principal power undefined at the origin")]
    AtOrigin,
    #[error("argument {0} outside the domain: {1}")]
    OutsideDomain(Complex64, &'static str),
    #[error("point {0} not on the reference path (distance {1:.3e})")]
    NotOnPath(Complex64, f64),
    #[error("no piece covers arc-length parameter {0}")]
    NoPiece(f64),
}

#[derive(Debug, Error)]
pub enum ExprError {
    #[error("expression is not differentiable: {0}")]
    NotDifferentiable(&'static str),
}

/// One analytic piece of a piecewise-on-path function, valid for
/// arc-length parameters in `[s0, s1]` of the reference path.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Piece {
    pub s0: f64,
    pub s1: f64,
    pub expr: FunctionExpr,
}

/// A function defined along a reference path by analytic pieces.
///
/// Evaluation at a plane point projects onto the reference path to locate
/// the governing piece; evaluation by arc-length parameter skips the
/// projection and is exact.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PiecewiseFn {
    pub path: PolyPath,
    pub pieces: Vec<Piece>,
    #[serde(default = "default_projection_tol")]
    pub projection_tol: f64,
}

fn default_projection_tol() -> f64 {
    1e-7
}

impl PiecewiseFn {
    fn piece_at(&self, s: f64) -> Result<&Piece, EvalError> {
        self.pieces
            .iter()
            .find(|p| p.s0 <= s && s <= p.s1)
            .ok_or(EvalError::NoPiece(s))
    }

    pub fn eval_param(&self, s: f64) -> Result<Complex64, EvalError> {
        let z = self
            .path
            .point_at(s)
            .map_err(|_| EvalError::NoPiece(s))?
            .to_complex();
        self.piece_at(s)?.expr.eval(z)
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64, EvalError> {
        let (s, dist) = self.path.project(z.into());
        if dist > self.projection_tol * (1.0 + z.norm()) {
            return Err(EvalError::NotOnPath(z, dist));
        }
        self.piece_at(s)?.expr.eval(z)
    }

    pub fn derivative(&self) -> Result<PiecewiseFn, ExprError> {
        let pieces = self
            .pieces
            .iter()
            .map(|p| {
                Ok(Piece {
                    s0: p.s0,
                    s1: p.s1,
                    expr: p.expr.derivative()?,
                })
            })
            .collect::<Result<Vec<_>, ExprError>>()?;
        Ok(PiecewiseFn {
            path: self.path.clone(),
            pieces,
            projection_tol: self.projection_tol,
        })
    }
}

/// Expression tree over the complex variable z.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FunctionExpr {
    Const(Complex64),
    Z,
    Add(Box<FunctionExpr>, Box<FunctionExpr>),
    Mul(Box<FunctionExpr>, Box<FunctionExpr>),
    /// Integer power of a subexpression.
    Pow(Box<FunctionExpr>, u32),
    /// Principal power z^α on the cut plane. Points on the negative real
    /// axis evaluate on the branch edge selected by the sign of the zero
    /// imaginary part; only the origin is rejected.
    PPow(Complex64),
    Cos(Box<FunctionExpr>),
    Sin(Box<FunctionExpr>),
    /// Cantor-function composition g(Re z), Re z in [0, 1].
    Cantor,
    Piecewise(PiecewiseFn),
}

use FunctionExpr as E;

impl FunctionExpr {
    pub fn constant(c: Complex64) -> Self {
        E::Const(c)
    }

    pub fn real(x: f64) -> Self {
        E::Const(c64(x, 0.0))
    }

    pub fn z() -> Self {
        E::Z
    }

    pub fn add(self, other: Self) -> Self {
        E::Add(Box::new(self), Box::new(other))
    }

    pub fn sub(self, other: Self) -> Self {
        self.add(other.scale(c64(-1.0, 0.0)))
    }

    pub fn mul(self, other: Self) -> Self {
        E::Mul(Box::new(self), Box::new(other))
    }

    pub fn scale(self, c: Complex64) -> Self {
        E::Const(c).mul(self)
    }

    pub fn powi(self, n: u32) -> Self {
        E::Pow(Box::new(self), n)
    }

    pub fn ppow(alpha: Complex64) -> Self {
        E::PPow(alpha)
    }

    pub fn cos(self) -> Self {
        E::Cos(Box::new(self))
    }

    /// Polynomial with the given coefficients, constant term first.
    pub fn polynomial(coeffs: &[Complex64]) -> Self {
        let mut terms: Option<FunctionExpr> = None;
        for (k, &c) in coeffs.iter().enumerate() {
            if c == Complex64::ZERO && coeffs.len() > 1 {
                continue;
            }
            let term = match k {
                0 => E::Const(c),
                1 => E::Z.scale(c),
                _ => E::Z.powi(k as u32).scale(c),
            };
            terms = Some(match terms {
                None => term,
                Some(acc) => acc.add(term),
            });
        }
        terms.unwrap_or(E::Const(Complex64::ZERO))
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64, EvalError> {
        Ok(match self {
            E::Const(c) => *c,
            E::Z => z,
            E::Add(a, b) => a.eval(z)? + b.eval(z)?,
            E::Mul(a, b) => a.eval(z)? * b.eval(z)?,
            E::Pow(a, n) => a.eval(z)?.powu(*n),
            E::PPow(alpha) => {
                if z == Complex64::ZERO {
                    return Err(EvalError::AtOrigin);
                }
                z.powc(*alpha)
            }
            E::Cos(a) => a.eval(z)?.cos(),
            E::Sin(a) => a.eval(z)?.sin(),
            E::Cantor => {
                let x = z.re;
                let v = cantor_function(x)
                    .map_err(|_| EvalError::OutsideDomain(z, "Re z outside [0, 1]"))?;
                c64(v, 0.0)
            }
            E::Piecewise(pw) => pw.eval(z)?,
        })
    }

    /// Evaluation along a piecewise function's reference path by
    /// arc-length parameter; other node kinds evaluate at the path point.
    pub fn eval_param(&self, pw_path: &PolyPath, s: f64) -> Result<Complex64, EvalError> {
        match self {
            E::Piecewise(pw) => pw.eval_param(s),
            other => {
                let z = pw_path
                    .point_at(s)
                    .map_err(|_| EvalError::NoPiece(s))?
                    .to_complex();
                other.eval(z)
            }
        }
    }

    /// Symbolic derivative. Defined for polynomial-type nodes, principal
    /// powers, trigonometric compositions, and piecewise tables of such.
    pub fn derivative(&self) -> Result<FunctionExpr, ExprError> {
        Ok(match self {
            E::Const(_) => E::Const(Complex64::ZERO),
            E::Z => E::Const(c64(1.0, 0.0)),
            E::Add(a, b) => a.derivative()?.add(b.derivative()?),
            E::Mul(a, b) => {
                let da = a.derivative()?;
                let db = b.derivative()?;
                da.mul((**b).clone()).add((**a).clone().mul(db))
            }
            E::Pow(a, n) => match n {
                0 => E::Const(Complex64::ZERO),
                1 => a.derivative()?,
                _ => {
                    let da = a.derivative()?;
                    E::Const(c64(*n as f64, 0.0))
                        .mul((**a).clone().powi(n - 1))
                        .mul(da)
                }
            },
            E::PPow(alpha) => {
                // d/dz z^α = α z^(α-1)
                E::PPow(alpha - c64(1.0, 0.0)).scale(*alpha)
            }
            E::Cos(a) => {
                let da = a.derivative()?;
                E::Sin(a.clone()).scale(c64(-1.0, 0.0)).mul(da)
            }
            E::Sin(a) => {
                let da = a.derivative()?;
                E::Cos(a.clone()).mul(da)
            }
            E::Cantor => return Err(ExprError::NotDifferentiable("cantor composition")),
            E::Piecewise(pw) => E::Piecewise(pw.derivative()?),
        })
    }

    pub fn uses_principal_power(&self) -> bool {
        match self {
            E::PPow(_) => true,
            E::Add(a, b) | E::Mul(a, b) => a.uses_principal_power() || b.uses_principal_power(),
            E::Pow(a, _) | E::Cos(a) | E::Sin(a) => a.uses_principal_power(),
            E::Piecewise(pw) => pw.pieces.iter().any(|p| p.expr.uses_principal_power()),
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    #[test]
    fn polynomial_eval_and_derivative() {
        // p(z) = 1 + 2z + 3z^2
        let p = FunctionExpr::polynomial(&[c64(1.0, 0.0), c64(2.0, 0.0), c64(3.0, 0.0)]);
        let z = c64(0.5, -1.0);
        assert_eq!(p.eval(z).unwrap(), 1.0 + 2.0 * z + 3.0 * z * z);
        let dp = p.derivative().unwrap();
        let expect = 2.0 + 6.0 * z;
        assert!((dp.eval(z).unwrap() - expect).norm() < 1e-14);
    }

    #[test]
    fn principal_power_matches_exp_log() {
        let f = FunctionExpr::ppow(c64(1.0, 1.0));
        let z = c64(-1.0, 2.0);
        let expect = (c64(1.0, 1.0) * z.ln()).exp();
        assert!((f.eval(z).unwrap() - expect).norm() < 1e-14);
        assert!(f.eval(Complex64::ZERO).is_err());
        // edge convention on the cut: Arg = π from above
        let on_cut = f.eval(c64(-1.0, 0.0)).unwrap();
        let expect = (c64(1.0, 1.0) * c64(0.0, std::f64::consts::PI)).exp();
        assert!((on_cut - expect).norm() < 1e-14);
    }

    #[test]
    fn cantor_node_uses_real_part() {
        let f = E::Cantor;
        assert_eq!(f.eval(c64(0.25, 5.0)).unwrap().re, 1.0 / 3.0);
        assert!(f.eval(c64(1.5, 0.0)).is_err());
    }

    #[test]
    fn piecewise_on_param_and_projection() {
        let path = PolyPath::new(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
        ])
        .unwrap();
        let pw = PiecewiseFn {
            path: path.clone(),
            pieces: vec![
                Piece { s0: 0.0, s1: 1.0, expr: E::Z },
                Piece { s0: 1.0, s1: 2.0, expr: FunctionExpr::real(7.0) },
            ],
            projection_tol: 1e-7,
        };
        assert_eq!(pw.eval_param(0.5).unwrap(), c64(0.5, 0.0));
        assert_eq!(pw.eval_param(1.5).unwrap(), c64(7.0, 0.0));
        assert_eq!(pw.eval(c64(0.25, 0.0)).unwrap(), c64(0.25, 0.0));
        assert!(pw.eval(c64(0.5, 0.5)).is_err());
    }

    #[test]
    fn json_tags() {
        let f = FunctionExpr::z()
            .powi(2)
            .add(FunctionExpr::ppow(c64(0.0, 1.0)));
        let s = serde_json::to_string(&f).unwrap();
        assert!(s.contains("\"add\""), "{s}");
        assert!(s.contains("\"pow\""), "{s}");
        assert!(s.contains("\"ppow\""), "{s}");
        let back: FunctionExpr = serde_json::from_str(&s).unwrap();
        let z = c64(2.0, 1.0);
        assert!((back.eval(z).unwrap() - f.eval(z).unwrap()).norm() < 1e-15);
    }
}
