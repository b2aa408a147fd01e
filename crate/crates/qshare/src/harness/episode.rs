//! The per-episode loop for training and frozen evaluation.

use crate::advising::{partaker_step, AdvisingAgent, AdvisingConfig, Framework, ShareEvent};
use crate::env::EnvInstance;
use crate::harness::{QTraceEvent, QTraceRow};
use crate::learning::{best_action, Algorithm, Experience, StateKey, StateView};

/// Training episodes learn and may share; evaluation episodes act purely
/// greedily with learning, sharing and visit counting all disabled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Train,
    Eval,
}

/// What one episode reports back.
#[derive(Clone, Debug)]
pub struct EpisodeRecord {
    pub steps: u32,
    /// Common reward per executed step.
    pub rewards: Vec<f64>,
}

/// Mutable logging context threaded through an episode.
pub struct EpisodeCtx<'a> {
    pub episode: u32,
    pub events: &'a mut Vec<ShareEvent>,
    pub q_traces: &'a mut Vec<QTraceRow>,
    /// States whose Q-row history is recorded for agent 0.
    pub watched: &'a [StateKey],
}

/// Runs one episode to termination.
///
/// Per training step each agent first selects its action through the
/// advising protocol, then the environment advances, then every agent
/// applies its TD(λ) update and records its visit. SARSA(λ) updates are
/// completed at the next step's action selection, when the successor action
/// becomes known; terminal transitions update immediately with a zero
/// bootstrap.
pub fn run_episode(
    env: &mut EnvInstance,
    team: &mut [AdvisingAgent],
    cfg: &AdvisingConfig,
    mode: Mode,
    ctx: &mut EpisodeCtx,
) -> EpisodeRecord {
    let n = team.len();
    let scale = env.grid_n();
    let mut obs = env.reset();
    let mut keys: Vec<StateKey> =
        obs.iter().map(|o| StateKey::from_observation(o, scale)).collect();

    for agent in team.iter_mut() {
        agent.learner.begin_episode();
    }
    let sarsa = team[0].learner.cfg.algorithm == Algorithm::SarsaLambda;
    let mut pending: Vec<Option<Experience>> = vec![None; n];
    let mut rewards = Vec::new();
    let mut step: u32 = 0;

    loop {
        let mut actions = vec![0usize; n];
        for i in 0..n {
            match mode {
                Mode::Train => {
                    let events_before = ctx.events.len();
                    actions[i] =
                        partaker_step(team, i, &obs[i], &keys[i], cfg, ctx.episode, step, ctx.events);
                    if i == 0 && ctx.watched.contains(&keys[0]) {
                        let received = ctx.events[events_before..]
                            .iter()
                            .any(|e| e.partaker_id == 0);
                        let event = if !received {
                            QTraceEvent::Visit
                        } else if cfg.framework == Framework::AdhocTd {
                            QTraceEvent::AdviceReceived
                        } else {
                            QTraceEvent::QValueReceived
                        };
                        let s = StateView { obs: &obs[0], key: &keys[0] };
                        ctx.q_traces.push(QTraceRow {
                            episode: ctx.episode,
                            step,
                            state_key: keys[0].clone(),
                            event,
                            q_row: team[0].learner.qf.row(&s),
                        });
                    }
                }
                Mode::Eval => {
                    let s = StateView { obs: &obs[i], key: &keys[i] };
                    let agent = &mut team[i];
                    actions[i] = best_action(&agent.learner.qf, &s, &mut agent.policy_rng);
                }
            }
        }

        if mode == Mode::Train && sarsa {
            for i in 0..n {
                if let Some(exp) = pending[i].take() {
                    team[i].learner.update(&exp, Some(actions[i]));
                }
            }
        }

        let res = env.step(&actions);
        step += 1;
        rewards.push(res.reward);

        if mode == Mode::Train {
            for i in 0..n {
                team[i].learner.record_visit(&keys[i], actions[i]);
                let exp = Experience {
                    state: obs[i].clone(),
                    action: actions[i],
                    next_state: res.observations[i].clone(),
                    reward: res.reward,
                    terminal: res.terminal,
                };
                if sarsa && !res.terminal {
                    pending[i] = Some(exp);
                } else {
                    team[i].learner.update(&exp, None);
                }
            }
        }

        obs = res.observations;
        if res.terminal {
            break;
        }
        keys = obs.iter().map(|o| StateKey::from_observation(o, scale)).collect();
    }

    EpisodeRecord { steps: step, rewards }
}
