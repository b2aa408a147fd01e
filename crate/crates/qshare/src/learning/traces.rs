//! Accumulating eligibility traces.

use std::collections::VecDeque;

use crate::learning::observation::StateView;
use crate::learning::qfunction::QFunction;

/// Entries whose trace decays below this are dropped; the stored value then
/// differs from the true geometric value by strictly less than the cutoff.
const TRACE_CUTOFF: f64 = 1e-12;

/// When the global scale shrinks past this, stored values are folded and
/// the scale reset, keeping everything in the normal f64 range.
const RESCALE_FLOOR: f64 = 1e-120;

/// Per-pair credit, decayed by γλ every step and bumped by 1 on visits.
/// Cleared at episode start. The tile backend traces individual weights.
///
/// Entries live in age order, keyed by the Q-function's dense update slots.
/// Decay is O(1): a global `scale` accumulates the product of decay factors
/// and an entry's trace is `stored × scale`, with `stored` fixed at
/// `1/scale` on insertion. A slot visited several times simply owns several
/// entries; the slot's trace is their sum, which is exactly the
/// accumulating-trace recurrence. Because factors are at most 1, the oldest
/// entry is always the smallest, so expiry is a pop from the front.
#[derive(Clone, Debug)]
pub struct EligibilityTraces {
    slots: VecDeque<u64>,
    stored: VecDeque<f64>,
    scale: f64,
}

impl Default for EligibilityTraces {
    fn default() -> Self {
        EligibilityTraces { slots: VecDeque::new(), stored: VecDeque::new(), scale: 1.0 }
    }
}

impl EligibilityTraces {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn clear(&mut self) {
        self.slots.clear();
        self.stored.clear();
        self.scale = 1.0;
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Current trace of one update slot: the sum of its live entries.
    pub fn slot_value(&self, slot: u64) -> f64 {
        self.slots
            .iter()
            .zip(&self.stored)
            .filter(|(s, _)| **s == slot)
            .map(|(_, v)| v * self.scale)
            .sum()
    }

    /// One trace step: every existing entry is multiplied by `decay` (γλ),
    /// then the slots addressed by the executed `(s, action)` are
    /// incremented by one (accumulating traces).
    pub fn decay_then_bump(
        &mut self,
        qf: &mut QFunction,
        s: &StateView,
        action: usize,
        decay: f64,
    ) {
        assert!((0.0..=1.0).contains(&decay), "decay must be in [0, 1], got {decay}");
        if decay == 0.0 {
            self.clear();
        } else {
            self.scale *= decay;
            while let Some(stored) = self.stored.front() {
                if stored * self.scale < TRACE_CUTOFF {
                    self.stored.pop_front();
                    self.slots.pop_front();
                } else {
                    break;
                }
            }
            if self.scale < RESCALE_FLOOR {
                for v in self.stored.iter_mut() {
                    *v *= self.scale;
                }
                self.scale = 1.0;
            }
        }
        for slot in qf.trace_slots(s, action) {
            self.slots.push_back(slot);
            self.stored.push_back(1.0 / self.scale);
        }
    }

    /// Applies the traced TD update: every traced slot gets `+= step × e`,
    /// with `step = α·δ`.
    pub fn apply(&self, qf: &mut QFunction, step: f64) {
        if step == 0.0 {
            return;
        }
        let factor = step * self.scale;
        for (slot, stored) in self.slots.iter().zip(&self.stored) {
            qf.add_slot(*slot, factor * stored);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learning::observation::{Observation, StateKey};

    fn state(vals: &[f64], scale: u32) -> (Observation, StateKey) {
        let obs = Observation::new(vals.to_vec());
        let key = StateKey::from_observation(&obs, scale);
        (obs, key)
    }

    #[test]
    fn first_visit_sets_one() {
        let mut qf = QFunction::tabular(3);
        let (obs, key) = state(&[0.2, 0.4], 5);
        let s = StateView { obs: &obs, key: &key };
        let mut tr = EligibilityTraces::new();
        tr.decay_then_bump(&mut qf, &s, 1, 0.81);
        let slot = qf.trace_slots(&s, 1)[0];
        assert_eq!(tr.slot_value(slot), 1.0);
    }

    #[test]
    fn decay_and_revisit() {
        let mut qf = QFunction::tabular(3);
        let (obs_a, key_a) = state(&[0.2, 0.4], 5);
        let (obs_b, key_b) = state(&[-0.2, 0.0], 5);
        let a = StateView { obs: &obs_a, key: &key_a };
        let b = StateView { obs: &obs_b, key: &key_b };
        let d = 0.9 * 0.9;
        let mut tr = EligibilityTraces::new();

        tr.decay_then_bump(&mut qf, &a, 0, d);
        tr.decay_then_bump(&mut qf, &b, 0, d);
        let slot_a = qf.trace_slots(&a, 0)[0];
        let e = tr.slot_value(slot_a);
        assert!((e - 0.81).abs() <= 1e-12, "visiting another pair decays to γλ: {e}");

        let mut tr = EligibilityTraces::new();
        tr.decay_then_bump(&mut qf, &a, 0, d);
        tr.decay_then_bump(&mut qf, &a, 0, d);
        let e = tr.slot_value(slot_a);
        assert!((e - 1.81).abs() <= 1e-12, "revisit accumulates: {e}");
    }

    #[test]
    fn geometric_decay_k_steps() {
        let mut qf = QFunction::tabular(2);
        let (obs_a, key_a) = state(&[0.2], 5);
        let (obs_b, key_b) = state(&[-0.2], 5);
        let a = StateView { obs: &obs_a, key: &key_a };
        let b = StateView { obs: &obs_b, key: &key_b };
        let d = 0.9 * 0.9;
        let mut tr = EligibilityTraces::new();
        tr.decay_then_bump(&mut qf, &a, 1, d);
        for _ in 0..10 {
            tr.decay_then_bump(&mut qf, &b, 0, d);
        }
        let slot = qf.trace_slots(&a, 1)[0];
        assert!((tr.slot_value(slot) - d.powi(10)).abs() <= 1e-12);
    }

    #[test]
    fn tiny_traces_are_dropped() {
        let mut qf = QFunction::tabular(2);
        let (obs_a, key_a) = state(&[0.2], 5);
        let (obs_b, key_b) = state(&[-0.2], 5);
        let a = StateView { obs: &obs_a, key: &key_a };
        let b = StateView { obs: &obs_b, key: &key_b };
        let mut tr = EligibilityTraces::new();
        tr.decay_then_bump(&mut qf, &a, 1, 0.81);
        for _ in 0..200 {
            tr.decay_then_bump(&mut qf, &b, 0, 0.81);
        }
        // true value 0.81^200 ≈ 5e-19, stored as 0 — both below the cutoff
        let slot = qf.trace_slots(&a, 1)[0];
        assert_eq!(tr.slot_value(slot), 0.0);
    }

    #[test]
    fn survives_deep_decay_without_overflow() {
        let mut qf = QFunction::tabular(2);
        let (obs_a, key_a) = state(&[0.2], 5);
        let (obs_b, key_b) = state(&[-0.2], 5);
        let a = StateView { obs: &obs_a, key: &key_a };
        let b = StateView { obs: &obs_b, key: &key_b };
        // decay 0.5 crosses the rescale floor after ~400 steps
        let mut tr = EligibilityTraces::new();
        for _ in 0..3000 {
            tr.decay_then_bump(&mut qf, &b, 0, 0.5);
        }
        tr.decay_then_bump(&mut qf, &a, 1, 0.5);
        tr.decay_then_bump(&mut qf, &b, 0, 0.5);
        let slot = qf.trace_slots(&a, 1)[0];
        assert!((tr.slot_value(slot) - 0.5).abs() <= 1e-12);
        // b accumulated a near-geometric sum (→ 2), was decayed twice and
        // refreshed once: somewhere strictly between 1 and 2.
        let e_b = tr.slot_value(qf.trace_slots(&b, 0)[0]);
        assert!(e_b > 1.0 && e_b < 2.0, "accumulated trace in range: {e_b}");
    }

    #[test]
    fn lambda_zero_keeps_only_current_visit() {
        let mut qf = QFunction::tabular(2);
        let (obs_a, key_a) = state(&[0.2], 5);
        let (obs_b, key_b) = state(&[-0.2], 5);
        let a = StateView { obs: &obs_a, key: &key_a };
        let b = StateView { obs: &obs_b, key: &key_b };
        let mut tr = EligibilityTraces::new();
        tr.decay_then_bump(&mut qf, &a, 0, 0.0);
        tr.decay_then_bump(&mut qf, &b, 1, 0.0);
        let slot_a = qf.trace_slots(&a, 0)[0];
        let slot_b = qf.trace_slots(&b, 1)[0];
        assert_eq!(tr.slot_value(slot_a), 0.0);
        assert_eq!(tr.slot_value(slot_b), 1.0);
    }

    #[test]
    fn apply_scales_by_trace() {
        let mut qf = QFunction::tabular(2);
        let (obs_a, key_a) = state(&[0.2], 5);
        let (obs_b, key_b) = state(&[-0.2], 5);
        let a = StateView { obs: &obs_a, key: &key_a };
        let b = StateView { obs: &obs_b, key: &key_b };
        let mut tr = EligibilityTraces::new();
        let d = 0.9 * 0.9;
        tr.decay_then_bump(&mut qf, &a, 0, d); // e = 0.81 after next decay
        tr.decay_then_bump(&mut qf, &b, 0, d); // e(a) = 0.81, e(b) = 1
        tr.apply(&mut qf, 0.1 * 1.0);
        assert!((qf.q(&b, 0) - 0.1).abs() <= 1e-12);
        assert!((qf.q(&a, 0) - 0.081).abs() <= 1e-12);
    }

    #[test]
    fn zero_step_is_noop() {
        let mut qf = QFunction::tabular(2);
        let (obs_a, key_a) = state(&[0.2], 5);
        let a = StateView { obs: &obs_a, key: &key_a };
        let mut tr = EligibilityTraces::new();
        tr.decay_then_bump(&mut qf, &a, 0, 0.81);
        let before = qf.content_digest();
        tr.apply(&mut qf, 0.0);
        assert_eq!(qf.content_digest(), before);
    }
}
