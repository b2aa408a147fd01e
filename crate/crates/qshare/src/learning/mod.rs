//! Per-agent temporal-difference learning: Q(λ) and SARSA(λ) over tabular
//! or tile-coded value functions, ε-greedy exploration, and visit counting.

pub mod counters;
pub mod observation;
pub mod qfunction;
pub mod tile;
pub mod traces;

pub use counters::VisitCounters;
pub use observation::{Observation, StateKey, StateView};
pub use qfunction::QFunction;
pub use tile::TileCoder;
pub use traces::EligibilityTraces;

use rand::Rng;
use serde::{Deserialize, Serialize};

/// The two TD control algorithms in use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    QLambda,
    SarsaLambda,
}

/// Learning-rate and exploration parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LearnerConfig {
    pub alpha: f64,
    pub gamma: f64,
    pub lambda: f64,
    pub epsilon: f64,
    pub algorithm: Algorithm,
}

impl LearnerConfig {
    pub fn validate(&self) -> Result<(), String> {
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(format!("learner.alpha must be in [0,1], got {}", self.alpha));
        }
        if !(0.0..1.0).contains(&self.gamma) {
            return Err(format!("learner.gamma must be in [0,1), got {}", self.gamma));
        }
        if !(0.0..=1.0).contains(&self.lambda) {
            return Err(format!("learner.lambda must be in [0,1], got {}", self.lambda));
        }
        if !(0.0..=1.0).contains(&self.epsilon) {
            return Err(format!("learner.epsilon must be in [0,1], got {}", self.epsilon));
        }
        Ok(())
    }
}

/// One transition as seen by a single agent.
#[derive(Clone, Debug)]
pub struct Experience {
    pub state: Observation,
    pub action: usize,
    pub next_state: Observation,
    pub reward: f64,
    pub terminal: bool,
}

/// Greedy action at `s`; exact ties are broken uniformly at random.
pub fn best_action<R: Rng + ?Sized>(qf: &QFunction, s: &StateView, rng: &mut R) -> usize {
    let row = qf.row(s);
    debug_assert!(!row.is_empty());
    let best = row.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let ties: Vec<usize> =
        row.iter().enumerate().filter(|(_, q)| **q == best).map(|(a, _)| a).collect();
    if ties.len() == 1 {
        ties[0]
    } else {
        ties[rng.gen_range(0..ties.len())]
    }
}

/// ε-greedy: with probability `epsilon` a uniformly random action,
/// otherwise the greedy one.
pub fn epsilon_greedy<R: Rng + ?Sized>(
    qf: &QFunction,
    s: &StateView,
    epsilon: f64,
    rng: &mut R,
) -> usize {
    if epsilon > 0.0 && rng.gen::<f64>() < epsilon {
        rng.gen_range(0..qf.num_actions())
    } else {
        best_action(qf, s, rng)
    }
}

/// Everything one agent learns with: value function, traces, counters and
/// the scale used to recover exact state signatures from observations.
#[derive(Clone, Debug)]
pub struct Learner {
    pub cfg: LearnerConfig,
    pub qf: QFunction,
    pub traces: EligibilityTraces,
    pub counters: VisitCounters,
    key_scale: u32,
}

impl Learner {
    pub fn new(cfg: LearnerConfig, qf: QFunction, key_scale: u32) -> Self {
        let counters = VisitCounters::new(qf.num_actions());
        Learner { cfg, qf, traces: EligibilityTraces::new(), counters, key_scale }
    }

    pub fn key_scale(&self) -> u32 {
        self.key_scale
    }

    pub fn state_key(&self, obs: &Observation) -> StateKey {
        StateKey::from_observation(obs, self.key_scale)
    }

    /// Traces are per-episode; call at every episode start.
    pub fn begin_episode(&mut self) {
        self.traces.clear();
    }

    /// TD error for one experience. `next_action` must be supplied exactly
    /// when the algorithm is SARSA(λ) and the transition is non-terminal;
    /// the bootstrap term is zero on terminal transitions.
    pub fn td_error(&self, exp: &Experience, next_action: Option<usize>) -> f64 {
        let key = self.state_key(&exp.state);
        let s = StateView { obs: &exp.state, key: &key };
        let q_sa = self.qf.q(&s, exp.action);
        let bootstrap = if exp.terminal {
            0.0
        } else {
            let next_key = self.state_key(&exp.next_state);
            let s_next = StateView { obs: &exp.next_state, key: &next_key };
            match self.cfg.algorithm {
                Algorithm::QLambda => {
                    self.qf.row(&s_next).into_iter().fold(f64::NEG_INFINITY, f64::max)
                }
                Algorithm::SarsaLambda => {
                    let a_next = next_action
                        .expect("SARSA(λ) needs the next action for a non-terminal transition");
                    self.qf.q(&s_next, a_next)
                }
            }
        };
        exp.reward + self.cfg.gamma * bootstrap - q_sa
    }

    /// One full TD(λ) step: error, trace decay + bump for the executed
    /// pair, then the traced update of every eligible slot.
    pub fn update(&mut self, exp: &Experience, next_action: Option<usize>) {
        let delta = self.td_error(exp, next_action);
        let key = self.state_key(&exp.state);
        let s = StateView { obs: &exp.state, key: &key };
        let decay = self.cfg.gamma * self.cfg.lambda;
        let step = self.cfg.alpha * self.qf.step_scale() * delta;
        self.traces.decay_then_bump(&mut self.qf, &s, exp.action, decay);
        self.traces.apply(&mut self.qf, step);
    }

    /// Exact overwrite of one Q-value (integration of a shared value).
    pub fn integrate(&mut self, obs: &Observation, action: usize, value: f64) {
        let key = self.state_key(obs);
        let s = StateView { obs, key: &key };
        self.qf.set(&s, action, value);
    }

    pub fn record_visit(&mut self, key: &StateKey, action: usize) {
        self.counters.record(key, action);
    }
}
