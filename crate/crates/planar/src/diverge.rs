//! Shared divergence detection for sampled quotient/bound sequences.
//!
//! Asymptotic claims (unbounded Lipschitz quotients, diverging dent bounds,
//! non-summable tails) are decided at finite depth by one configurable rule
//! so that every classifier in the crate agrees on what "diverging" means.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Bounded,
    Diverging,
}

/// Decision rule for divergence of a positive sequence.
///
/// A sequence diverges when either
///   - its maximum exceeds `median_factor` times the median of its positive
///     entries (a decade-spanning blow-up), or
///   - the positive entries span more than `growth_factor` between min and
///     max *and* the least-squares slope of log(value) against log(index)
///     exceeds `slope_threshold` (steady growth, e.g. linear in the index).
///
/// Entries that are zero, negative, or non-finite are ignored; fewer than
/// `min_points` usable entries always yields `Bounded`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct DivergenceRule {
    pub median_factor: f64,
    pub growth_factor: f64,
    pub slope_threshold: f64,
    pub min_points: usize,
}

impl Default for DivergenceRule {
    fn default() -> Self {
        DivergenceRule {
            median_factor: 10.0,
            growth_factor: 2.0,
            slope_threshold: 0.1,
            min_points: 4,
        }
    }
}

/// Outcome of applying a [`DivergenceRule`], with the fitted growth data.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct GrowthFit {
    pub verdict: Verdict,
    /// Least-squares slope of log(value) vs log(1-based index).
    pub loglog_slope: f64,
    pub max: f64,
    pub median: f64,
    pub positive_points: usize,
}

impl DivergenceRule {
    /// Classifies the sequence `values`; indices enter the log-log fit as
    /// their (1-based) position in the full sequence.
    pub fn classify(&self, values: &[f64]) -> GrowthFit {
        let pos: Vec<(usize, f64)> = values
            .iter()
            .copied()
            .enumerate()
            .filter(|(_, v)| v.is_finite() && *v > 0.0)
            .map(|(i, v)| (i + 1, v))
            .collect();
        let mut fit = GrowthFit {
            verdict: Verdict::Bounded,
            loglog_slope: 0.0,
            max: pos.iter().map(|&(_, v)| v).fold(0.0, f64::max),
            median: 0.0,
            positive_points: pos.len(),
        };
        if pos.len() < self.min_points {
            return fit;
        }
        let mut sorted: Vec<f64> = pos.iter().map(|&(_, v)| v).collect();
        sorted.sort_by(f64::total_cmp);
        fit.median = sorted[sorted.len() / 2];
        let min = sorted[0];
        fit.loglog_slope = loglog_slope(&pos);

        let median_blowup = fit.max > self.median_factor * fit.median;
        let steady_growth =
            fit.max > self.growth_factor * min && fit.loglog_slope > self.slope_threshold;
        if median_blowup || steady_growth {
            fit.verdict = Verdict::Diverging;
        }
        fit
    }

    /// Classifies values re-indexed by explicit abscissae (e.g. the feature
    /// index n of a construction), fitting log(value) against log(n).
    pub fn classify_indexed(&self, indexed: &[(f64, f64)]) -> GrowthFit {
        let pos: Vec<(f64, f64)> = indexed
            .iter()
            .copied()
            .filter(|&(n, v)| n > 0.0 && v.is_finite() && v > 0.0)
            .collect();
        let mut fit = GrowthFit {
            verdict: Verdict::Bounded,
            loglog_slope: 0.0,
            max: pos.iter().map(|&(_, v)| v).fold(0.0, f64::max),
            median: 0.0,
            positive_points: pos.len(),
        };
        if pos.len() < self.min_points {
            return fit;
        }
        let mut sorted: Vec<f64> = pos.iter().map(|&(_, v)| v).collect();
        sorted.sort_by(f64::total_cmp);
        fit.median = sorted[sorted.len() / 2];
        let min = sorted[0];
        fit.loglog_slope = fit_slope(pos.iter().map(|&(n, v)| (n.ln(), v.ln())));

        let median_blowup = fit.max > self.median_factor * fit.median;
        let steady_growth =
            fit.max > self.growth_factor * min && fit.loglog_slope > self.slope_threshold;
        if median_blowup || steady_growth {
            fit.verdict = Verdict::Diverging;
        }
        fit
    }
}

fn loglog_slope(points: &[(usize, f64)]) -> f64 {
    fit_slope(points.iter().map(|&(i, v)| ((i as f64).ln(), v.ln())))
}

/// Least-squares slope of y against x.
pub fn fit_slope(points: impl Iterator<Item = (f64, f64)>) -> f64 {
    let pts: Vec<(f64, f64)> = points.collect();
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return 0.0;
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_are_bounded() {
        let rule = DivergenceRule::default();
        let vals = vec![2.0; 30];
        assert_eq!(rule.classify(&vals).verdict, Verdict::Bounded);
    }

    #[test]
    fn geometric_growth_diverges() {
        let rule = DivergenceRule::default();
        let vals: Vec<f64> = (1..20).map(|n| 2f64.powi(n)).collect();
        assert_eq!(rule.classify(&vals).verdict, Verdict::Diverging);
    }

    #[test]
    fn linear_growth_diverges() {
        let rule = DivergenceRule::default();
        let vals: Vec<f64> = (1..=40).map(|n| n as f64).collect();
        let fit = rule.classify(&vals);
        assert_eq!(fit.verdict, Verdict::Diverging);
        assert!((fit.loglog_slope - 1.0).abs() < 0.1);
    }

    #[test]
    fn noisy_plateau_is_bounded() {
        let rule = DivergenceRule::default();
        let vals: Vec<f64> = (0..50)
            .map(|n| 3.0 + 0.4 * ((n as f64) * 1.7).sin())
            .collect();
        assert_eq!(rule.classify(&vals).verdict, Verdict::Bounded);
    }

    #[test]
    fn zeros_are_ignored() {
        let rule = DivergenceRule::default();
        let mut vals = vec![0.0; 23];
        vals.extend((24..=40).map(|n| 0.03 * n as f64 - 0.7));
        assert_eq!(rule.classify(&vals).verdict, Verdict::Diverging);
        assert_eq!(rule.classify(&vals[..23]).verdict, Verdict::Bounded);
    }
}
