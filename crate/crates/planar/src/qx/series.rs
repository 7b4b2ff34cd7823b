//! Series-based completeness criteria: block-chain tail sums and the
//! sampled constant of the derivative-dominates-value inequality.

use super::QxError;
use crate::diverge::{DivergenceRule, GrowthFit, Verdict};
use crate::geom::Point;
use crate::pathint::{sup_norm, FunctionExpr};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailVerdict {
    /// sup_n Σ_{k≥n} |v_{k+1} − v_k| / |z0 − v_n| grows without bound.
    ConditionHolds,
    Fails,
}

#[derive(Clone, Debug, Serialize)]
pub struct TailReport {
    /// (truncation N', max over n ≤ N' of the truncated tail ratio).
    pub checkpoints: Vec<(usize, f64)>,
    pub fit: GrowthFit,
    pub verdict: TailVerdict,
    pub warning: Option<String>,
}

/// Evaluates the tail-sum condition on explicit step lengths
/// `steps[k] = |v_{k+2} − v_{k+1}|` is not assumed; the slices are simply
/// `steps[k] = |v_{k+1} − v_k|` and `dists[n] = |z0 − v_{n+1}|`, both
/// 0-indexed. The supremum is tracked across a geometric schedule of
/// truncations so growth in the truncation depth is visible.
pub fn blodges_condition_scalar(
    steps: &[f64],
    dists: &[f64],
    rule: &DivergenceRule,
) -> Result<TailReport, QxError> {
    let n = steps.len().min(dists.len());
    if n < 4 {
        return Err(QxError::Precondition(
            "tail condition needs at least 4 terms".into(),
        ));
    }
    let checkpoints_n: Vec<usize> = {
        let mut out = Vec::new();
        let mut c = n;
        while c >= 4 && out.len() < 10 {
            out.push(c);
            c /= 2;
        }
        out.reverse();
        out
    };
    let mut checkpoints = Vec::new();
    for &trunc in &checkpoints_n {
        // suffix sums of steps up to the truncation
        let mut best: f64 = 0.0;
        let mut tail = 0.0;
        for k in (0..trunc).rev() {
            tail += steps[k];
            if dists[k] > 0.0 {
                best = best.max(tail / dists[k]);
            }
        }
        checkpoints.push((trunc, best));
    }
    let values: Vec<f64> = checkpoints.iter().map(|&(_, v)| v).collect();
    let fit = rule.classify(&values);
    let verdict = if fit.verdict == Verdict::Diverging {
        TailVerdict::ConditionHolds
    } else {
        TailVerdict::Fails
    };
    Ok(TailReport { checkpoints, fit, verdict, warning: None })
}

/// The tail-sum condition for an explicit sequence of block meeting
/// points converging to `z0`. A warning is attached when the sequence has
/// not numerically converged to `z0` by the final term.
pub fn blodges_condition(
    v: &[Point],
    z0: Point,
    rule: &DivergenceRule,
) -> Result<TailReport, QxError> {
    if v.len() < 5 {
        return Err(QxError::Precondition(
            "tail condition needs at least 5 meeting points".into(),
        ));
    }
    let steps: Vec<f64> = v.windows(2).map(|w| w[0].dist(w[1])).collect();
    let dists: Vec<f64> = v[..v.len() - 1].iter().map(|&p| z0.dist(p)).collect();
    let mut report = blodges_condition_scalar(&steps, &dists, rule)?;
    let first = z0.dist(v[0]);
    let last = z0.dist(*v.last().unwrap());
    if last > 1e-3 * first.max(1e-300) {
        report.warning = Some(format!(
            "meeting points have not converged to the probe: |z0 - v_N| = {last:.3e}"
        ));
    }
    Ok(report)
}

/// Sampled lower bound for the best constant in `|f|_X ≤ C |f'|_X` over a
/// family of `(f, f', certified sup bound for |f'|)` with every f
/// vanishing at `z0`. The derivative bound must come from a closed-form
/// maximum (it is cross-checked against the sampled |f'|), so each
/// quotient is a true lower bound for the constant.
pub fn c1_ratio_estimate(
    family: &[(FunctionExpr, FunctionExpr, f64)],
    z0: Point,
    samples: &[Point],
) -> Result<f64, QxError> {
    let mut best: f64 = 0.0;
    for (f, fprime, deriv_upper) in family {
        let at_z0 = f
            .eval(z0.to_complex())
            .map_err(|e| QxError::Precondition(e.to_string()))?;
        if at_z0.norm() > 1e-12 {
            return Err(QxError::Precondition(format!(
                "family member does not vanish at the base point: |f(z0)| = {:.3e}",
                at_z0.norm()
            )));
        }
        if !(*deriv_upper > 0.0) {
            return Err(QxError::Precondition(
                "derivative bound must be positive".into(),
            ));
        }
        let sampled_deriv =
            sup_norm(fprime, samples).map_err(|e| QxError::Precondition(e.to_string()))?;
        if sampled_deriv > deriv_upper * (1.0 + 1e-9) {
            return Err(QxError::Precondition(format!(
                "claimed derivative bound {deriv_upper} is below the sampled sup {sampled_deriv}"
            )));
        }
        let sup = sup_norm(f, samples).map_err(|e| QxError::Precondition(e.to_string()))?;
        best = best.max(sup / deriv_upper);
    }
    Ok(best)
}
