//! The advising wire records.

use crate::learning::{Observation, StateKey};

/// Broadcast by a partaker: its state and its full per-action confidence
/// row. The row is broadcast whole because a sharer tests the confidence at
/// its *own* best action, which the partaker cannot know in advance.
#[derive(Clone, Debug)]
pub struct ShareRequest {
    pub partaker_id: usize,
    pub obs: Observation,
    pub key: StateKey,
    /// Φ per action: the partaker's executed update counts at `key`.
    pub confidence: Vec<u64>,
}

/// A sharer's answer: its best action at the requested state, with the
/// corresponding Q-value and Ψ confidence where the framework shares them
/// (absent for bare action advice).
#[derive(Clone, Debug, PartialEq)]
pub struct ShareResponse {
    pub sharer_id: usize,
    pub action: usize,
    pub q_value: Option<f64>,
    pub confidence: Option<f64>,
}

/// One completed share, as logged: who, where, which action, and both
/// sides' visit counts at event time. `shared_q` is empty for action
/// advice.
#[derive(Clone, Debug, PartialEq)]
pub struct ShareEvent {
    pub episode: u32,
    pub step: u32,
    pub partaker_id: usize,
    pub sharer_id: usize,
    pub state_key: StateKey,
    pub action: usize,
    pub partaker_n_visit: u64,
    pub sharer_n_visit: u64,
    pub partaker_m_visit: u64,
    pub sharer_m_visit: u64,
    pub shared_q: Option<f64>,
}
