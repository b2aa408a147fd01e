//! Curve areas and Welch's t-test on them.

use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::harness::{MetricKind, MetricSeries, RunResult};

/// Trapezoidal area under a metric curve over the episode axis.
/// A single point contributes `value × 1`. Panics on an empty series.
pub fn auc(series: &MetricSeries) -> f64 {
    assert!(!series.points.is_empty(), "AUC of an empty series");
    if series.points.len() == 1 {
        return series.points[0].1;
    }
    series
        .points
        .windows(2)
        .map(|w| {
            let (x0, y0) = w[0];
            let (x1, y1) = w[1];
            (x1 - x0) as f64 * (y0 + y1) / 2.0
        })
        .sum()
}

/// Welch's two-sample t-test (unequal variances), two-sided.
/// Returns `(t, degrees_of_freedom, p)`. Needs two samples per side.
///
/// Degenerate case: when both samples have zero variance the statistic is
/// ±∞ (p = 0) for different means and 0 (p = 1) for equal means.
pub fn welch_t_test(a: &[f64], b: &[f64]) -> (f64, f64, f64) {
    assert!(a.len() >= 2 && b.len() >= 2, "Welch t-test needs at least two values per side");
    let na = a.len() as f64;
    let nb = b.len() as f64;
    let ma = a.iter().sum::<f64>() / na;
    let mb = b.iter().sum::<f64>() / nb;
    let va = a.iter().map(|x| (x - ma).powi(2)).sum::<f64>() / (na - 1.0);
    let vb = b.iter().map(|x| (x - mb).powi(2)).sum::<f64>() / (nb - 1.0);
    let se2 = va / na + vb / nb;
    if se2 == 0.0 {
        return if ma == mb {
            (0.0, f64::INFINITY, 1.0)
        } else {
            ((ma - mb).signum() * f64::INFINITY, f64::INFINITY, 0.0)
        };
    }
    let t = (ma - mb) / se2.sqrt();
    let df = se2 * se2 / ((va / na).powi(2) / (na - 1.0) + (vb / nb).powi(2) / (nb - 1.0));
    let dist = StudentsT::new(0.0, 1.0, df).expect("valid Student-t parameters");
    let p = (2.0 * (1.0 - dist.cdf(t.abs()))).clamp(0.0, 1.0);
    (t, df, p)
}

/// Outcome of comparing two methods' per-run curve areas.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TTestReport {
    pub mean_auc_a: f64,
    pub mean_auc_b: f64,
    pub t_statistic: f64,
    pub p_value: f64,
    pub significant_at_05: bool,
}

/// Per-run AUCs of `metric` on both sides, then Welch's test on them.
pub fn t_test_auc(runs_a: &[RunResult], runs_b: &[RunResult], metric: MetricKind) -> TTestReport {
    assert!(runs_a.len() >= 2 && runs_b.len() >= 2, "need at least two runs per side");
    let aucs_a: Vec<f64> = runs_a.iter().map(|r| auc(&r.series[&metric])).collect();
    let aucs_b: Vec<f64> = runs_b.iter().map(|r| auc(&r.series[&metric])).collect();
    let (t, _df, p) = welch_t_test(&aucs_a, &aucs_b);
    TTestReport {
        mean_auc_a: aucs_a.iter().sum::<f64>() / aucs_a.len() as f64,
        mean_auc_b: aucs_b.iter().sum::<f64>() / aucs_b.len() as f64,
        t_statistic: t,
        p_value: p,
        significant_at_05: p < 0.05,
    }
}
