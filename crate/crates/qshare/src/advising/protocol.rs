//! The partaker/sharer exchange: when to ask, when to answer, how to use
//! what arrives.
//!
//! Message passing is synchronous and in-process: a partaker polls every
//! other agent within the same simulation step, so the "wait for answers"
//! timeout of a distributed deployment collapses away and runs stay
//! deterministic under a seed.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::advising::confidence::{p_ask, p_give, psi, q_range};
use crate::advising::messages::{ShareEvent, ShareRequest, ShareResponse};
use crate::advising::{AdvisingConfig, Budget, Framework, GammaPolicy};
use crate::learning::{best_action, epsilon_greedy, Learner, Observation, StateKey, StateView};

/// One agent of the team: its learner, its two budget accounts, and its two
/// private random streams (action selection vs. advising draws).
#[derive(Clone, Debug)]
pub struct AdvisingAgent {
    pub id: usize,
    pub learner: Learner,
    pub ask: Budget,
    pub give: Budget,
    /// ε-greedy draws and greedy tie-breaks.
    pub policy_rng: ChaCha8Rng,
    /// Ask/give gating draws, sharer tie-breaks and Γ selection.
    pub advise_rng: ChaCha8Rng,
}

impl AdvisingAgent {
    fn greedy(&mut self, s: &StateView) -> usize {
        best_action(&self.learner.qf, s, &mut self.policy_rng)
    }

    fn explore(&mut self, s: &StateView) -> usize {
        epsilon_greedy(&self.learner.qf, s, self.learner.cfg.epsilon, &mut self.policy_rng)
    }
}

/// A teacher's side of one sharing process. Returns an answer only when the
/// framework's gate passes; the give budget is spent exactly when an answer
/// is returned.
pub fn sharer_respond(
    agent: &mut AdvisingAgent,
    req: &ShareRequest,
    cfg: &AdvisingConfig,
) -> Option<ShareResponse> {
    assert_ne!(agent.id, req.partaker_id, "an agent cannot answer itself");
    if !agent.give.available() {
        return None;
    }
    let s = StateView { obs: &req.obs, key: &req.key };
    match cfg.framework {
        Framework::MultiIql => None,
        Framework::Psaf => {
            // The sharer evaluates its own Q-function at the partaker's
            // state; this is a pure query.
            let best = best_action(&agent.learner.qf, &s, &mut agent.advise_rng);
            let confidence = psi(&agent.learner.counters, &agent.learner.qf, &s, best);
            if confidence > req.confidence[best] as f64 {
                agent.give.spend();
                Some(ShareResponse {
                    sharer_id: agent.id,
                    action: best,
                    q_value: Some(agent.learner.qf.q(&s, best)),
                    confidence: Some(confidence),
                })
            } else {
                None
            }
        }
        Framework::AdhocTd | Framework::AdhocTdQ => {
            let n = agent.learner.counters.n_visit(&req.key);
            let range = q_range(&agent.learner.qf, &s);
            let u: f64 = agent.advise_rng.gen();
            if u < p_give(n, range, cfg.v_b) {
                let best = best_action(&agent.learner.qf, &s, &mut agent.advise_rng);
                agent.give.spend();
                let q_value = if cfg.framework == Framework::AdhocTdQ {
                    Some(agent.learner.qf.q(&s, best))
                } else {
                    None
                };
                Some(ShareResponse { sharer_id: agent.id, action: best, q_value, confidence: None })
            } else {
                None
            }
        }
    }
}

/// Γ: collapse the collected responses to one per advised action.
/// `RandomSelect` picks uniformly within each action group; `MaxConfidence`
/// keeps the largest-Ψ response (ties random). Panics on empty input.
pub fn select_gamma<R: Rng + ?Sized>(
    responses: &[ShareResponse],
    policy: GammaPolicy,
    rng: &mut R,
) -> BTreeMap<usize, ShareResponse> {
    assert!(!responses.is_empty(), "Γ selection needs at least one response");
    let mut groups: BTreeMap<usize, Vec<&ShareResponse>> = BTreeMap::new();
    for r in responses {
        groups.entry(r.action).or_default().push(r);
    }
    let mut picked = BTreeMap::new();
    for (action, group) in groups {
        let chosen = match policy {
            GammaPolicy::RandomSelect => group[rng.gen_range(0..group.len())],
            GammaPolicy::MaxConfidence => {
                let best =
                    group.iter().map(|r| r.confidence.unwrap_or(0.0)).fold(f64::NEG_INFINITY, f64::max);
                let ties: Vec<&ShareResponse> = group
                    .into_iter()
                    .filter(|r| r.confidence.unwrap_or(0.0) == best)
                    .collect();
                if ties.len() == 1 {
                    ties[0]
                } else {
                    ties[rng.gen_range(0..ties.len())]
                }
            }
        };
        picked.insert(action, chosen.clone());
    }
    picked
}

/// One action choice for agent `i` at its current state, following the
/// configured framework. May broadcast a request, collect answers from
/// every other agent, integrate shared Q-values and log one [`ShareEvent`]
/// per answer. Budgets move per the protocol: a give budget per answer, the
/// ask budget only when at least one answer arrived.
#[allow(clippy::too_many_arguments)]
pub fn partaker_step(
    team: &mut [AdvisingAgent],
    i: usize,
    obs: &Observation,
    key: &StateKey,
    cfg: &AdvisingConfig,
    episode: u32,
    step: u32,
    events: &mut Vec<ShareEvent>,
) -> usize {
    let s = StateView { obs, key };
    if cfg.framework == Framework::MultiIql {
        return team[i].explore(&s);
    }
    if !team[i].ask.available() {
        // Out of ask budget: indistinguishable from an independent learner.
        return team[i].explore(&s);
    }
    let n_visit = team[i].learner.counters.n_visit(key);
    let u: f64 = team[i].advise_rng.gen();
    if u >= p_ask(n_visit, cfg.v_a) {
        return team[i].explore(&s);
    }

    let request = ShareRequest {
        partaker_id: i,
        obs: obs.clone(),
        key: key.clone(),
        confidence: team[i].learner.counters.m_row(key),
    };
    let mut responses = Vec::new();
    for j in 0..team.len() {
        if j == i {
            continue;
        }
        if let Some(resp) = sharer_respond(&mut team[j], &request, cfg) {
            events.push(ShareEvent {
                episode,
                step,
                partaker_id: i,
                sharer_id: j,
                state_key: key.clone(),
                action: resp.action,
                partaker_n_visit: n_visit,
                sharer_n_visit: team[j].learner.counters.n_visit(key),
                partaker_m_visit: request.confidence[resp.action],
                sharer_m_visit: team[j].learner.counters.m_visit(key, resp.action),
                shared_q: resp.q_value,
            });
            responses.push(resp);
        }
    }
    if responses.is_empty() {
        // An unanswered ask costs nothing.
        return team[i].explore(&s);
    }
    team[i].ask.spend();
    match cfg.framework {
        Framework::Psaf | Framework::AdhocTdQ => {
            let selected = {
                let agent = &mut team[i];
                select_gamma(&responses, cfg.gamma_policy, &mut agent.advise_rng)
            };
            for (action, resp) in &selected {
                let q = resp.q_value.expect("Q-sharing frameworks always attach a value");
                team[i].learner.integrate(obs, *action, q);
            }
            // Exploit the freshly integrated row.
            team[i].greedy(&s)
        }
        Framework::AdhocTd => {
            let pick = team[i].advise_rng.gen_range(0..responses.len());
            responses[pick].action
        }
        Framework::MultiIql => unreachable!(),
    }
}

/// Cumulative (ask_used, give_used) per agent.
pub fn budget_snapshot(team: &[AdvisingAgent]) -> Vec<(u64, u64)> {
    team.iter().map(|a| (a.ask.used(), a.give.used())).collect()
}
