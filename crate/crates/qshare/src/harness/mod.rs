//! Experiment orchestration: schedules, metrics, multi-run execution,
//! statistics and CSV persistence.

pub mod analyze;
pub mod csvio;
pub mod episode;
pub mod experiment;
pub mod stats;

pub use analyze::{share_histogram, HistAxis, HistRole, Histogram};
pub use episode::{run_episode, EpisodeCtx, EpisodeRecord, Mode};
pub use experiment::{aggregate_mean, repeat_runs, run_experiment};
pub use stats::{auc, t_test_auc, welch_t_test, TTestReport};

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::advising::{AdvisingConfig, BudgetLimit, ShareEvent};
use crate::env::EnvironmentConfig;
use crate::learning::{LearnerConfig, StateKey};
use crate::{Error, Result};

/// When metric points are taken and how they are computed.
///
/// `WindowAverage` averages the per-training-episode metric (TG) over
/// consecutive windows. `PeriodicFrozenEval` pauses training every `every`
/// episodes and measures ARS over `n_eval_episodes` greedy episodes with
/// learning and sharing disabled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum EvalSchedule {
    WindowAverage { window: u32 },
    PeriodicFrozenEval { every: u32, n_eval_episodes: u32 },
}

impl EvalSchedule {
    pub fn validate(&self) -> Result<()> {
        let ok = match self {
            EvalSchedule::WindowAverage { window } => *window > 0,
            EvalSchedule::PeriodicFrozenEval { every, n_eval_episodes } => {
                *every > 0 && *n_eval_episodes > 0
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Config("eval_schedule parameters must be positive".into()))
        }
    }

    /// The metric this schedule produces.
    pub fn metric(&self) -> MetricKind {
        match self {
            EvalSchedule::WindowAverage { .. } => MetricKind::Tg,
            EvalSchedule::PeriodicFrozenEval { .. } => MetricKind::Ars,
        }
    }
}

/// The measured quantity of a series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MetricKind {
    /// Time to Goal: steps per training episode, window-averaged.
    Tg,
    /// Average Reward per Step over frozen evaluation episodes.
    Ars,
}

impl std::fmt::Display for MetricKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MetricKind::Tg => write!(f, "TG"),
            MetricKind::Ars => write!(f, "ARS"),
        }
    }
}

impl std::str::FromStr for MetricKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "TG" => Ok(MetricKind::Tg),
            "ARS" => Ok(MetricKind::Ars),
            other => Err(format!("unknown metric {other:?}")),
        }
    }
}

/// One metric-vs-episode curve; episode indices strictly increase.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricSeries {
    pub metric: MetricKind,
    pub points: Vec<(u32, f64)>,
}

/// Cumulative budget use of one agent at one schedule point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BudgetPoint {
    pub episode: u32,
    pub agent_id: usize,
    pub ask_used: u64,
    pub give_used: u64,
}

/// Why a Q-row trace entry was recorded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QTraceEvent {
    Visit,
    AdviceReceived,
    QValueReceived,
}

impl std::fmt::Display for QTraceEvent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            QTraceEvent::Visit => "visit",
            QTraceEvent::AdviceReceived => "advice_received",
            QTraceEvent::QValueReceived => "qvalue_received",
        };
        write!(f, "{s}")
    }
}

/// One captured Q-row of the traced agent at a watched state.
#[derive(Clone, Debug, PartialEq)]
pub struct QTraceRow {
    pub episode: u32,
    pub step: u32,
    pub state_key: StateKey,
    pub event: QTraceEvent,
    pub q_row: Vec<f64>,
}

/// Everything one run produces.
#[derive(Clone, Debug)]
pub struct RunResult {
    pub run_id: u32,
    pub seed: u64,
    pub series: BTreeMap<MetricKind, MetricSeries>,
    pub budget: Vec<BudgetPoint>,
    pub share_events: Vec<ShareEvent>,
    pub q_traces: Vec<QTraceRow>,
}

/// A full experiment: environment, learner, framework, budgets, schedule
/// and repetition plan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub environment: EnvironmentConfig,
    pub learner: LearnerConfig,
    pub advising: AdvisingConfig,
    pub b_ask: BudgetLimit,
    pub b_give: BudgetLimit,
    pub n_train_episodes: u32,
    pub eval_schedule: EvalSchedule,
    pub n_runs: u32,
    pub base_seed: u64,
    /// States whose Q-row history (agent 0) is recorded during training.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub qtrace_states: Vec<StateKey>,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        self.environment.validate().map_err(Error::Config)?;
        self.learner.validate().map_err(Error::Config)?;
        self.advising.validate().map_err(Error::Config)?;
        self.eval_schedule.validate()?;
        if self.n_train_episodes == 0 {
            return Err(Error::Config("n_train_episodes must be positive".into()));
        }
        if self.n_runs == 0 {
            return Err(Error::Config("n_runs must be positive".into()));
        }
        Ok(())
    }
}
