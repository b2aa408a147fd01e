//! Visit counters keyed by exact state signature.

use std::collections::BTreeMap;

use crate::learning::observation::StateKey;

/// Counts of executed visits: `n_visit(s)` per state and `m_visit(s, a)`
/// per state-action pair. Only executed pairs are counted, never
/// trace-propagated updates, so `n_visit(s) = Σ_a m_visit(s, a)` holds at
/// all times.
#[derive(Clone, Debug)]
pub struct VisitCounters {
    num_actions: usize,
    counts: BTreeMap<StateKey, Counts>,
}

#[derive(Clone, Debug)]
struct Counts {
    n: u64,
    m: Vec<u64>,
}

impl VisitCounters {
    pub fn new(num_actions: usize) -> Self {
        VisitCounters { num_actions, counts: BTreeMap::new() }
    }

    /// Records one executed `(state, action)`.
    pub fn record(&mut self, key: &StateKey, action: usize) {
        assert!(action < self.num_actions);
        let slot = self
            .counts
            .entry(key.clone())
            .or_insert_with(|| Counts { n: 0, m: vec![0; self.num_actions] });
        slot.n += 1;
        slot.m[action] += 1;
    }

    pub fn n_visit(&self, key: &StateKey) -> u64 {
        self.counts.get(key).map_or(0, |c| c.n)
    }

    pub fn m_visit(&self, key: &StateKey, action: usize) -> u64 {
        self.counts.get(key).map_or(0, |c| c.m[action])
    }

    /// Full per-action visit row; zeros for unseen states.
    pub fn m_row(&self, key: &StateKey) -> Vec<u64> {
        self.counts.get(key).map_or_else(|| vec![0; self.num_actions], |c| c.m.clone())
    }
}
