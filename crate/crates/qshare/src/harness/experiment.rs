//! Whole-run execution and multi-run repetition.

use rayon::prelude::*;

use crate::advising::{budget_snapshot, AdvisingAgent, Budget};
use crate::env::EnvironmentConfig;
use crate::harness::episode::{run_episode, EpisodeCtx, Mode};
use crate::harness::{
    BudgetPoint, EvalSchedule, ExperimentConfig, MetricKind, MetricSeries, RunResult,
};
use crate::learning::{Learner, QFunction, TileCoder};
use crate::rng::StreamSeeder;

/// Tile-coding defaults for the Predator-Prey value function.
const PP_NUM_TILINGS: usize = 8;
const PP_TILE_WIDTH: f64 = 0.5;
const PP_TABLE_SIZE: usize = 1 << 20;

/// Builds the team for one run. Predator-Prey uses the tile-coded linear
/// backend, Spread the exact tabular one.
fn build_team(cfg: &ExperimentConfig, seeder: &StreamSeeder) -> Vec<AdvisingAgent> {
    let n = cfg.environment.num_agents();
    let grid_n = cfg.environment.grid_n();
    (0..n)
        .map(|id| {
            let qf = match &cfg.environment {
                EnvironmentConfig::PredatorPrey(_) => QFunction::tile_linear(
                    crate::env::NUM_ACTIONS,
                    TileCoder::new(
                        PP_NUM_TILINGS,
                        PP_TILE_WIDTH,
                        cfg.environment.obs_dim(),
                        PP_TABLE_SIZE,
                    ),
                ),
                EnvironmentConfig::Spread(_) => QFunction::tabular(crate::env::NUM_ACTIONS),
            };
            AdvisingAgent {
                id,
                learner: Learner::new(cfg.learner, qf, grid_n),
                ask: Budget::new(cfg.b_ask),
                give: Budget::new(cfg.b_give),
                policy_rng: seeder.stream(&format!("agent{id}")),
                advise_rng: seeder.stream(&format!("advising{id}")),
            }
        })
        .collect()
}

/// Discounted per-step average of one episode's rewards:
/// `(Σ_k γ^k r_k) / T` over the realized length `T`.
pub fn ars(rewards: &[f64], gamma: f64) -> f64 {
    assert!(!rewards.is_empty());
    let mut discount = 1.0;
    let mut total = 0.0;
    for r in rewards {
        total += discount * r;
        discount *= gamma;
    }
    total / rewards.len() as f64
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Executes one full run: the training schedule, metric series, budget
/// snapshots at every schedule point, share events and Q-row traces.
/// Run `k` of an experiment derives all randomness from `base_seed + k`.
pub fn run_experiment(cfg: &ExperimentConfig, run_id: u32) -> RunResult {
    let seed = cfg.base_seed + run_id as u64;
    let seeder = StreamSeeder::new(seed);
    let mut env = cfg.environment.build(&seeder);
    let mut team = build_team(cfg, &seeder);

    let mut events = Vec::new();
    let mut q_traces = Vec::new();
    let mut points: Vec<(u32, f64)> = Vec::new();
    let mut budget = Vec::new();

    let snapshot = |team: &[AdvisingAgent], episode: u32, budget: &mut Vec<BudgetPoint>| {
        for (agent_id, (ask_used, give_used)) in budget_snapshot(team).into_iter().enumerate() {
            budget.push(BudgetPoint { episode, agent_id, ask_used, give_used });
        }
    };

    match cfg.eval_schedule {
        EvalSchedule::WindowAverage { window } => {
            let mut acc: Vec<f64> = Vec::with_capacity(window as usize);
            for ep in 1..=cfg.n_train_episodes {
                let mut ctx = EpisodeCtx {
                    episode: ep,
                    events: &mut events,
                    q_traces: &mut q_traces,
                    watched: &cfg.qtrace_states,
                };
                let rec = run_episode(&mut env, &mut team, &cfg.advising, Mode::Train, &mut ctx);
                acc.push(rec.steps as f64);
                if ep % window == 0 {
                    points.push((ep, mean(&acc)));
                    acc.clear();
                    snapshot(&team, ep, &mut budget);
                }
            }
            // a trailing partial window is dropped
        }
        EvalSchedule::PeriodicFrozenEval { every, n_eval_episodes } => {
            let gamma = cfg.learner.gamma;
            for ep in 1..=cfg.n_train_episodes {
                let mut ctx = EpisodeCtx {
                    episode: ep,
                    events: &mut events,
                    q_traces: &mut q_traces,
                    watched: &cfg.qtrace_states,
                };
                run_episode(&mut env, &mut team, &cfg.advising, Mode::Train, &mut ctx);
                if ep % every == 0 {
                    let mut vals = Vec::with_capacity(n_eval_episodes as usize);
                    for _ in 0..n_eval_episodes {
                        let mut ctx = EpisodeCtx {
                            episode: ep,
                            events: &mut events,
                            q_traces: &mut q_traces,
                            watched: &[],
                        };
                        let rec =
                            run_episode(&mut env, &mut team, &cfg.advising, Mode::Eval, &mut ctx);
                        vals.push(ars(&rec.rewards, gamma));
                    }
                    points.push((ep, mean(&vals)));
                    snapshot(&team, ep, &mut budget);
                }
            }
        }
    }

    let metric = cfg.eval_schedule.metric();
    let mut series = std::collections::BTreeMap::new();
    series.insert(metric, MetricSeries { metric, points });
    RunResult { run_id, seed, series, budget, share_events: events, q_traces }
}

/// All runs of the experiment, in run-id order. Runs are independent and
/// may execute on the current rayon pool; outputs are identical regardless
/// of scheduling.
pub fn repeat_runs(cfg: &ExperimentConfig) -> Vec<RunResult> {
    (0..cfg.n_runs).into_par_iter().map(|k| run_experiment(cfg, k)).collect()
}

/// Pointwise mean curve over runs, in run order.
pub fn aggregate_mean(runs: &[RunResult], metric: MetricKind) -> MetricSeries {
    assert!(!runs.is_empty());
    let first = &runs[0].series[&metric].points;
    let mut sums: Vec<(u32, f64)> = first.iter().map(|(ep, _)| (*ep, 0.0)).collect();
    for run in runs {
        let pts = &run.series[&metric].points;
        assert_eq!(pts.len(), sums.len(), "runs disagree on schedule length");
        for (slot, (ep, v)) in sums.iter_mut().zip(pts) {
            assert_eq!(slot.0, *ep);
            slot.1 += v;
        }
    }
    for slot in sums.iter_mut() {
        slot.1 /= runs.len() as f64;
    }
    MetricSeries { metric, points: sums }
}
