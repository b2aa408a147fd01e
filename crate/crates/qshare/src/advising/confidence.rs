//! Asking/giving probabilities and the confidence functions.

use crate::learning::{QFunction, StateKey, StateView, VisitCounters};

/// Probability that an agent who has visited a state `n_visit` times asks
/// for advice there: `(1 + v_a)^(−√n_visit)`, in `(0, 1]`.
pub fn p_ask(n_visit: u64, v_a: f64) -> f64 {
    (1.0 + v_a).powf(-(n_visit as f64).sqrt())
}

/// Spread of the value row at `s`: `max_a Q(s,a) − min_a Q(s,a)`.
pub fn q_range(qf: &QFunction, s: &StateView) -> f64 {
    let row = qf.row(s);
    let max = row.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = row.iter().cloned().fold(f64::INFINITY, f64::min);
    max - min
}

/// Probability that a teacher gives advice for a state it has visited
/// `n_visit` times with Q-range `range`: `1 − (1 + v_b)^(−√n_visit × range)`,
/// in `[0, 1)`. Zero for unseen states and for flat rows.
pub fn p_give(n_visit: u64, range: f64, v_b: f64) -> f64 {
    1.0 - (1.0 + v_b).powf(-(n_visit as f64).sqrt() * range)
}

/// Q-range normalized to `[0, 1)`: `d / (d + 1)`.
pub fn xi(qf: &QFunction, s: &StateView) -> f64 {
    let d = q_range(qf, s);
    d / (d + 1.0)
}

/// Partaker confidence: the number of executed updates of `(s, a)`.
pub fn phi(counters: &VisitCounters, key: &StateKey, action: usize) -> u64 {
    counters.m_visit(key, action)
}

/// Sharer confidence: the update count scaled down by the normalized
/// Q-range, `m_visit(s,a) × ξ(s)`.
pub fn psi(counters: &VisitCounters, qf: &QFunction, s: &StateView, action: usize) -> f64 {
    counters.m_visit(s.key, action) as f64 * xi(qf, s)
}
