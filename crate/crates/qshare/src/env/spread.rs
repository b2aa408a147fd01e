//! The Spread coverage task.
//!
//! Agents on a small grid must spread out and stand on fixed landmarks.
//! Agents may overlap and ignore each other; moves off the grid are
//! cancelled. Per step the team earns +1 when every landmark is covered,
//! −1 when none is, and 0 otherwise. Covering everything ends the episode.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::env::{action_delta, StepInfo, StepResult};
use crate::learning::Observation;

fn default_grid_n() -> u32 {
    6
}
fn default_n_agents() -> usize {
    2
}
fn default_landmarks() -> Vec<(i32, i32)> {
    vec![(1, 1), (4, 4)]
}
fn default_max_steps() -> u32 {
    20
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpreadConfig {
    #[serde(default = "default_grid_n")]
    pub grid_n: u32,
    #[serde(default = "default_n_agents")]
    pub n_agents: usize,
    #[serde(default = "default_landmarks")]
    pub landmark_positions: Vec<(i32, i32)>,
    #[serde(default = "default_max_steps")]
    pub max_steps: u32,
}

impl SpreadConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.n_agents == 0 {
            return Err("n_agents must be positive".into());
        }
        if self.landmark_positions.is_empty() {
            return Err("at least one landmark required".into());
        }
        let n = self.grid_n as i32;
        for (i, l) in self.landmark_positions.iter().enumerate() {
            if !((0..n).contains(&l.0) && (0..n).contains(&l.1)) {
                return Err(format!("landmark {i} at {l:?} outside the {n}x{n} grid"));
            }
        }
        let mut sorted = self.landmark_positions.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != self.landmark_positions.len() {
            return Err("landmarks must be distinct".into());
        }
        if self.max_steps == 0 {
            return Err("max_steps must be positive".into());
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpreadState {
    pub agents: Vec<(i32, i32)>,
    pub steps: u32,
}

#[derive(Clone, Debug)]
pub struct SpreadGame {
    cfg: SpreadConfig,
    state: SpreadState,
    terminal: bool,
    env_rng: ChaCha8Rng,
}

impl SpreadGame {
    pub fn new(cfg: SpreadConfig, env_rng: ChaCha8Rng) -> Self {
        let state = SpreadState { agents: vec![(0, 0); cfg.n_agents], steps: 0 };
        SpreadGame { cfg, state, terminal: true, env_rng }
    }

    pub fn config(&self) -> &SpreadConfig {
        &self.cfg
    }

    pub fn state(&self) -> &SpreadState {
        &self.state
    }

    pub fn is_terminal(&self) -> bool {
        self.terminal
    }

    /// Agents land on independent uniform cells; overlap is allowed.
    pub fn reset(&mut self) -> Vec<Observation> {
        let n = self.cfg.grid_n as i32;
        for a in self.state.agents.iter_mut() {
            *a = (self.env_rng.gen_range(0..n), self.env_rng.gen_range(0..n));
        }
        self.state.steps = 0;
        self.terminal = false;
        (0..self.cfg.n_agents).map(|i| self.observe(i)).collect()
    }

    /// Relative coordinates of the other agents (index order), then of
    /// every landmark (config order), normalized by the grid side.
    pub fn observe(&self, agent: usize) -> Observation {
        observe_spread(&self.state, &self.cfg, agent)
    }

    pub fn coverage(&self) -> u32 {
        self.cfg
            .landmark_positions
            .iter()
            .filter(|l| self.state.agents.contains(l))
            .count() as u32
    }

    /// All agents move simultaneously; off-grid moves are cancelled and
    /// stacking is fine. Reward per step: +1 all landmarks covered (episode
    /// ends), −1 none covered, 0 otherwise.
    pub fn step(&mut self, actions: &[usize]) -> StepResult {
        assert!(!self.terminal, "stepping a finished episode");
        assert_eq!(actions.len(), self.cfg.n_agents);
        let n = self.cfg.grid_n as i32;
        for (pos, &action) in self.state.agents.iter_mut().zip(actions) {
            let (dx, dy) = action_delta(action);
            let target = (pos.0 + dx, pos.1 + dy);
            if (0..n).contains(&target.0) && (0..n).contains(&target.1) {
                *pos = target;
            }
        }
        self.state.steps += 1;
        let coverage = self.coverage();
        let all = coverage as usize == self.cfg.landmark_positions.len();
        let reward = if all {
            1.0
        } else if coverage == 0 {
            -1.0
        } else {
            0.0
        };
        self.terminal = all || self.state.steps >= self.cfg.max_steps;
        StepResult {
            observations: (0..self.cfg.n_agents).map(|i| self.observe(i)).collect(),
            reward,
            terminal: self.terminal,
            info: StepInfo { caught: false, coverage },
        }
    }
}

pub fn observe_spread(state: &SpreadState, cfg: &SpreadConfig, agent: usize) -> Observation {
    let n = cfg.grid_n as f64;
    let (ax, ay) = state.agents[agent];
    let mut values = Vec::with_capacity(2 * (state.agents.len() - 1) + 2 * cfg.landmark_positions.len());
    for (j, (x, y)) in state.agents.iter().enumerate() {
        if j != agent {
            values.push((x - ax) as f64 / n);
            values.push((y - ay) as f64 / n);
        }
    }
    for (x, y) in &cfg.landmark_positions {
        values.push((x - ax) as f64 / n);
        values.push((y - ay) as f64 / n);
    }
    Observation::new(values)
}
