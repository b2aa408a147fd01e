//! Action-value storage: exact tabular and tile-coded linear backends.

use std::collections::BTreeMap;

use crate::learning::observation::{StateKey, StateView};
use crate::learning::tile::TileCoder;
use crate::rng::fnv1a64;

/// Per-agent action-value function. Unwritten entries read as 0.
///
/// Both backends expose their updatable cells as dense `u64` slots
/// (`cell_index × num_actions + action`), which keeps eligibility traces
/// flat and cheap. The tabular backend interns state signatures into dense
/// row indices in first-touch order.
#[derive(Clone, Debug)]
pub enum QFunction {
    /// One value row per exact state signature.
    Tabular { num_actions: usize, index: BTreeMap<StateKey, u32>, rows: Vec<Vec<f64>> },
    /// Linear value over binary tile features: Q(s,a) is the sum of the
    /// active weights of action `a`. Weights are stored tile-major
    /// (`weights[tile * num_actions + action]`) so one tile's action
    /// values share a cache line.
    TileLinear { num_actions: usize, coder: TileCoder, weights: Vec<f64> },
}

impl QFunction {
    pub fn tabular(num_actions: usize) -> Self {
        QFunction::Tabular { num_actions, index: BTreeMap::new(), rows: Vec::new() }
    }

    pub fn tile_linear(num_actions: usize, coder: TileCoder) -> Self {
        let weights = vec![0.0; num_actions * coder.table_size()];
        QFunction::TileLinear { num_actions, coder, weights }
    }

    pub fn num_actions(&self) -> usize {
        match self {
            QFunction::Tabular { num_actions, .. } => *num_actions,
            QFunction::TileLinear { num_actions, .. } => *num_actions,
        }
    }

    pub fn q(&self, s: &StateView, action: usize) -> f64 {
        assert!(action < self.num_actions());
        match self {
            QFunction::Tabular { index, rows, .. } => {
                index.get(s.key).map_or(0.0, |&i| rows[i as usize][action])
            }
            QFunction::TileLinear { num_actions, coder, weights } => {
                coder.features(s.obs).iter().map(|&i| weights[i * num_actions + action]).sum()
            }
        }
    }

    /// Full value row at `s`, one entry per action.
    pub fn row(&self, s: &StateView) -> Vec<f64> {
        match self {
            QFunction::Tabular { num_actions, index, rows } => index
                .get(s.key)
                .map_or_else(|| vec![0.0; *num_actions], |&i| rows[i as usize].clone()),
            QFunction::TileLinear { num_actions, coder, weights } => {
                let a = *num_actions;
                let mut row = vec![0.0; a];
                for &i in &coder.features(s.obs) {
                    let base = i * a;
                    for (slot, w) in row.iter_mut().zip(&weights[base..base + a]) {
                        *slot += w;
                    }
                }
                row
            }
        }
    }

    /// Exact overwrite: afterwards `q(s, action)` reads `value`. The tile
    /// backend spreads the required correction evenly over the active
    /// weights (on a fresh function each weight lands on
    /// `value / num_tilings`), which still perturbs neighboring states
    /// sharing those tiles; that is the cost of generalization.
    pub fn set(&mut self, s: &StateView, action: usize, value: f64) {
        assert!(action < self.num_actions());
        match self {
            QFunction::Tabular { .. } => {
                let i = self.intern(s.key);
                if let QFunction::Tabular { rows, .. } = self {
                    rows[i][action] = value;
                }
            }
            QFunction::TileLinear { num_actions, coder, weights } => {
                let feats = coder.features(s.obs);
                let current: f64 = feats.iter().map(|&i| weights[i * *num_actions + action]).sum();
                let share = (value - current) / feats.len() as f64;
                for &i in &feats {
                    weights[i * *num_actions + action] += share;
                }
            }
        }
    }

    fn intern(&mut self, key: &StateKey) -> usize {
        match self {
            QFunction::Tabular { num_actions, index, rows } => {
                if let Some(&i) = index.get(key) {
                    i as usize
                } else {
                    let i = rows.len();
                    rows.push(vec![0.0; *num_actions]);
                    index.insert(key.clone(), i as u32);
                    i
                }
            }
            QFunction::TileLinear { .. } => unreachable!("interning is a tabular concern"),
        }
    }

    /// The updatable slots a visit to `(s, action)` credits: the exact
    /// state-action cell for the tabular backend, the active weights of
    /// `action` for the tile backend.
    pub fn trace_slots(&mut self, s: &StateView, action: usize) -> Vec<u64> {
        match self {
            QFunction::Tabular { .. } => {
                let a = self.num_actions();
                let i = self.intern(s.key);
                vec![(i * a + action) as u64]
            }
            QFunction::TileLinear { num_actions, coder, .. } => {
                let a = *num_actions;
                coder.features(s.obs).iter().map(|&i| (i * a + action) as u64).collect()
            }
        }
    }

    pub(crate) fn add_slot(&mut self, slot: u64, delta: f64) {
        match self {
            QFunction::Tabular { num_actions, rows, .. } => {
                let (i, a) = (slot as usize / *num_actions, slot as usize % *num_actions);
                rows[i][a] += delta;
            }
            QFunction::TileLinear { weights, .. } => {
                weights[slot as usize] += delta;
            }
        }
    }

    /// Per-slot scaling of the TD step. A tile-coded Q-value is a sum of
    /// `num_tilings` active weights, so the gradient step splits evenly
    /// across them; one executed pair then moves its Q-value by α·δ·e in
    /// total, matching the tabular update.
    pub fn step_scale(&self) -> f64 {
        match self {
            QFunction::Tabular { .. } => 1.0,
            QFunction::TileLinear { coder, .. } => 1.0 / coder.num_tilings() as f64,
        }
    }

    /// Order-independent digest of the stored contents; used to check that
    /// frozen evaluation leaves values untouched.
    pub fn content_digest(&self) -> u64 {
        let mut h: u64 = 0xdead_beef_cafe_f00d;
        match self {
            QFunction::Tabular { index, rows, .. } => {
                for (key, &i) in index {
                    for v in &key.0 {
                        h ^= fnv1a64(&v.to_le_bytes());
                        h = h.rotate_left(7);
                    }
                    for q in &rows[i as usize] {
                        h ^= fnv1a64(&q.to_bits().to_le_bytes());
                        h = h.rotate_left(7);
                    }
                }
            }
            QFunction::TileLinear { weights, .. } => {
                for (i, w) in weights.iter().enumerate() {
                    if *w != 0.0 {
                        h ^= fnv1a64(&(i as u64).to_le_bytes());
                        h ^= fnv1a64(&w.to_bits().to_le_bytes());
                        h = h.rotate_left(7);
                    }
                }
            }
        }
        h
    }
}
