//! The two gridworld tasks behind one contract: reset, joint step,
//! per-agent observations, one common reward.

pub mod predator_prey;
pub mod spread;

pub use predator_prey::{CatchRule, PredatorPrey, PredatorPreyConfig};
pub use spread::{SpreadConfig, SpreadGame};

use serde::{Deserialize, Serialize};

use crate::learning::Observation;
use crate::rng::StreamSeeder;

/// The shared action set: Stay, Up, Down, Left, Right.
pub const NUM_ACTIONS: usize = 5;

/// Unit displacement of an action; Up increases `y`.
pub fn action_delta(action: usize) -> (i32, i32) {
    match action {
        0 => (0, 0),
        1 => (0, 1),
        2 => (0, -1),
        3 => (-1, 0),
        4 => (1, 0),
        _ => panic!("unknown action index {action}"),
    }
}

/// Result of one joint step. The reward is common to all agents.
#[derive(Clone, Debug)]
pub struct StepResult {
    pub observations: Vec<Observation>,
    pub reward: f64,
    pub terminal: bool,
    pub info: StepInfo,
}

/// Task-specific flags of one step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StepInfo {
    /// Predator-Prey: the catch condition held after this step.
    pub caught: bool,
    /// Spread: number of landmarks currently covered.
    pub coverage: u32,
}

/// Which task to run, with its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum EnvironmentConfig {
    PredatorPrey(PredatorPreyConfig),
    Spread(SpreadConfig),
}

impl EnvironmentConfig {
    pub fn validate(&self) -> Result<(), String> {
        match self {
            EnvironmentConfig::PredatorPrey(c) => c.validate(),
            EnvironmentConfig::Spread(c) => c.validate(),
        }
    }

    pub fn num_agents(&self) -> usize {
        match self {
            EnvironmentConfig::PredatorPrey(c) => c.n_predators,
            EnvironmentConfig::Spread(c) => c.n_agents,
        }
    }

    pub fn obs_dim(&self) -> usize {
        match self {
            EnvironmentConfig::PredatorPrey(c) => 2 * (c.n_predators - 1) + 2,
            EnvironmentConfig::Spread(c) => 2 * (c.n_agents - 1) + 2 * c.landmark_positions.len(),
        }
    }

    pub fn grid_n(&self) -> u32 {
        match self {
            EnvironmentConfig::PredatorPrey(c) => c.grid_n,
            EnvironmentConfig::Spread(c) => c.grid_n,
        }
    }

    /// Builds a live environment drawing from the run's named streams.
    pub fn build(&self, seeder: &StreamSeeder) -> EnvInstance {
        match self {
            EnvironmentConfig::PredatorPrey(c) => EnvInstance::PredatorPrey(PredatorPrey::new(
                c.clone(),
                seeder.stream("env"),
                seeder.stream("prey"),
            )),
            EnvironmentConfig::Spread(c) => {
                EnvInstance::Spread(SpreadGame::new(c.clone(), seeder.stream("env")))
            }
        }
    }
}

/// A live environment of either kind.
#[derive(Clone, Debug)]
pub enum EnvInstance {
    PredatorPrey(PredatorPrey),
    Spread(SpreadGame),
}

impl EnvInstance {
    pub fn num_agents(&self) -> usize {
        match self {
            EnvInstance::PredatorPrey(e) => e.config().n_predators,
            EnvInstance::Spread(e) => e.config().n_agents,
        }
    }

    pub fn grid_n(&self) -> u32 {
        match self {
            EnvInstance::PredatorPrey(e) => e.config().grid_n,
            EnvInstance::Spread(e) => e.config().grid_n,
        }
    }

    pub fn max_steps(&self) -> u32 {
        match self {
            EnvInstance::PredatorPrey(e) => e.config().max_steps,
            EnvInstance::Spread(e) => e.config().max_steps,
        }
    }

    pub fn reset(&mut self) -> Vec<Observation> {
        match self {
            EnvInstance::PredatorPrey(e) => e.reset(),
            EnvInstance::Spread(e) => e.reset(),
        }
    }

    pub fn step(&mut self, actions: &[usize]) -> StepResult {
        match self {
            EnvInstance::PredatorPrey(e) => e.step(actions),
            EnvInstance::Spread(e) => e.step(actions),
        }
    }

    pub fn is_terminal(&self) -> bool {
        match self {
            EnvInstance::PredatorPrey(e) => e.is_terminal(),
            EnvInstance::Spread(e) => e.is_terminal(),
        }
    }
}
