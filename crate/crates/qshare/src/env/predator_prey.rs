//! The Predator-Prey pursuit task.
//!
//! Predators learn to catch a fleeing prey on an N×N grid. Everyone picks
//! from the common five-action set and moves one cell at a time. The prey
//! acts randomly 20% of the time and otherwise moves away from all
//! predators. Catching ends the episode with common reward 1; a step limit
//! ends it with reward 0.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::env::{action_delta, StepInfo, StepResult, NUM_ACTIONS};
use crate::learning::Observation;

/// What counts as a catch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CatchRule {
    /// All four cardinal neighbors of the prey hold predators.
    Surround4,
    /// One predator shares the prey's cell and at least one other predator
    /// is cardinally adjacent.
    OnPlusAdjacent,
}

fn default_grid_n() -> u32 {
    7
}
fn default_prey_random_prob() -> f64 {
    0.2
}
fn default_max_steps() -> u32 {
    2500
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PredatorPreyConfig {
    #[serde(default = "default_grid_n")]
    pub grid_n: u32,
    pub n_predators: usize,
    #[serde(default = "default_prey_random_prob")]
    pub prey_random_prob: f64,
    #[serde(default = "default_max_steps")]
    pub max_steps: u32,
    pub catch_rule: CatchRule,
}

impl PredatorPreyConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.n_predators != 2 && self.n_predators != 4 {
            return Err(format!("n_predators must be 2 or 4, got {}", self.n_predators));
        }
        if self.catch_rule == CatchRule::Surround4 && self.grid_n < 4 {
            return Err(format!("grid_n must be at least 4 for surround4, got {}", self.grid_n));
        }
        if (self.grid_n as usize * self.grid_n as usize) < self.n_predators + 1 {
            return Err("grid too small to place all entities on distinct cells".into());
        }
        if !(0.0..=1.0).contains(&self.prey_random_prob) {
            return Err(format!("prey_random_prob must be in [0,1], got {}", self.prey_random_prob));
        }
        if self.max_steps == 0 {
            return Err("max_steps must be positive".into());
        }
        Ok(())
    }
}

/// Full grid state: predator cells, prey cell, step counter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPState {
    pub predators: Vec<(i32, i32)>,
    pub prey: (i32, i32),
    pub steps: u32,
}

#[derive(Clone, Debug)]
pub struct PredatorPrey {
    cfg: PredatorPreyConfig,
    state: PPState,
    terminal: bool,
    env_rng: ChaCha8Rng,
    prey_rng: ChaCha8Rng,
}

impl PredatorPrey {
    pub fn new(cfg: PredatorPreyConfig, env_rng: ChaCha8Rng, prey_rng: ChaCha8Rng) -> Self {
        let state = PPState { predators: vec![(0, 0); cfg.n_predators], prey: (0, 0), steps: 0 };
        PredatorPrey { cfg, state, terminal: true, env_rng, prey_rng }
    }

    pub fn config(&self) -> &PredatorPreyConfig {
        &self.cfg
    }

    pub fn state(&self) -> &PPState {
        &self.state
    }

    pub fn is_terminal(&self) -> bool {
        self.terminal
    }

    /// Places every predator and the prey uniformly at random on distinct
    /// cells and returns the initial observations.
    pub fn reset(&mut self) -> Vec<Observation> {
        let n = self.cfg.grid_n as i32;
        let mut taken: Vec<(i32, i32)> = Vec::with_capacity(self.cfg.n_predators + 1);
        while taken.len() < self.cfg.n_predators + 1 {
            let cell = (self.env_rng.gen_range(0..n), self.env_rng.gen_range(0..n));
            if !taken.contains(&cell) {
                taken.push(cell);
            }
        }
        self.state.prey = taken.pop().unwrap();
        self.state.predators = taken;
        self.state.steps = 0;
        self.terminal = false;
        (0..self.cfg.n_predators).map(|i| self.observe(i)).collect()
    }

    /// Relative coordinates of the other predators (in index order) and
    /// then the prey, normalized by the grid side.
    pub fn observe(&self, agent: usize) -> Observation {
        observe_pp(&self.state, agent, self.cfg.grid_n)
    }

    /// Advances one step: the prey picks its action, then all entities move
    /// in a uniformly random order; blocked moves are cancelled. Terminal on
    /// catch (reward 1) or when the step limit is reached (reward 0).
    pub fn step(&mut self, actions: &[usize]) -> StepResult {
        assert!(!self.terminal, "stepping a finished episode");
        assert_eq!(actions.len(), self.cfg.n_predators);
        assert!(self.state.steps < self.cfg.max_steps);

        let prey_action = prey_policy(&self.state, self.cfg.prey_random_prob, self.cfg.grid_n, &mut self.prey_rng);

        let n_pred = self.cfg.n_predators;
        let mut order: Vec<usize> = (0..=n_pred).collect(); // entity n_pred is the prey
        order.shuffle(&mut self.env_rng);
        for &entity in &order {
            let (pos, action) = if entity < n_pred {
                (self.state.predators[entity], actions[entity])
            } else {
                (self.state.prey, prey_action)
            };
            let (dx, dy) = action_delta(action);
            let target = (pos.0 + dx, pos.1 + dy);
            if !self.in_grid(target) {
                continue;
            }
            let blocked = if entity < n_pred {
                let other_predator = self
                    .state
                    .predators
                    .iter()
                    .enumerate()
                    .any(|(k, p)| k != entity && *p == target);
                let prey_blocks =
                    self.state.prey == target && self.cfg.catch_rule == CatchRule::Surround4;
                other_predator || prey_blocks
            } else {
                self.state.predators.contains(&target)
            };
            if blocked {
                continue;
            }
            if entity < n_pred {
                self.state.predators[entity] = target;
            } else {
                self.state.prey = target;
            }
        }

        self.state.steps += 1;
        let caught = self.catch_condition();
        self.terminal = caught || self.state.steps >= self.cfg.max_steps;
        StepResult {
            observations: (0..n_pred).map(|i| self.observe(i)).collect(),
            reward: if caught { 1.0 } else { 0.0 },
            terminal: self.terminal,
            info: StepInfo { caught, coverage: 0 },
        }
    }

    fn in_grid(&self, (x, y): (i32, i32)) -> bool {
        let n = self.cfg.grid_n as i32;
        (0..n).contains(&x) && (0..n).contains(&y)
    }

    fn catch_condition(&self) -> bool {
        let prey = self.state.prey;
        let neighbors = cardinal_neighbors(prey);
        match self.cfg.catch_rule {
            CatchRule::Surround4 => neighbors.iter().all(|c| {
                self.in_grid(*c) && self.state.predators.contains(c)
            }),
            CatchRule::OnPlusAdjacent => {
                let on = self.state.predators.iter().position(|p| *p == prey);
                match on {
                    None => false,
                    Some(idx) => self
                        .state
                        .predators
                        .iter()
                        .enumerate()
                        .any(|(k, p)| k != idx && neighbors.contains(p)),
                }
            }
        }
    }
}

pub fn cardinal_neighbors((x, y): (i32, i32)) -> [(i32, i32); 4] {
    [(x, y + 1), (x, y - 1), (x - 1, y), (x + 1, y)]
}

/// Per-agent observation: for every other predator in index order, then the
/// prey, the relative (Δx, Δy) divided by the grid side.
pub fn observe_pp(state: &PPState, agent: usize, grid_n: u32) -> Observation {
    let n = grid_n as f64;
    let (ax, ay) = state.predators[agent];
    let mut values = Vec::with_capacity(2 * state.predators.len());
    for (j, (x, y)) in state.predators.iter().enumerate() {
        if j != agent {
            values.push((x - ax) as f64 / n);
            values.push((y - ay) as f64 / n);
        }
    }
    values.push((state.prey.0 - ax) as f64 / n);
    values.push((state.prey.1 - ay) as f64 / n);
    Observation::new(values)
}

/// The prey's next action: uniformly random with probability
/// `random_prob`, otherwise the in-grid move maximizing the summed squared
/// Euclidean distance to all predators (ties uniform at random). Squared
/// Euclidean keeps the scoring in exact integers and, unlike Manhattan,
/// makes running straight away from a pursuer beat sidestepping it.
pub fn prey_policy<R: Rng + ?Sized>(
    state: &PPState,
    random_prob: f64,
    grid_n: u32,
    rng: &mut R,
) -> usize {
    if rng.gen::<f64>() < random_prob {
        return rng.gen_range(0..NUM_ACTIONS);
    }
    let n = grid_n as i32;
    let mut best_score = i64::MIN;
    let mut best_actions: Vec<usize> = Vec::with_capacity(NUM_ACTIONS);
    for action in 0..NUM_ACTIONS {
        let (dx, dy) = action_delta(action);
        let cell = (state.prey.0 + dx, state.prey.1 + dy);
        if !((0..n).contains(&cell.0) && (0..n).contains(&cell.1)) {
            continue;
        }
        let score: i64 = state
            .predators
            .iter()
            .map(|p| ((p.0 - cell.0).pow(2) + (p.1 - cell.1).pow(2)) as i64)
            .sum();
        if score > best_score {
            best_score = score;
            best_actions.clear();
            best_actions.push(action);
        } else if score == best_score {
            best_actions.push(action);
        }
    }
    if best_actions.len() == 1 {
        best_actions[0]
    } else {
        best_actions[rng.gen_range(0..best_actions.len())]
    }
}
