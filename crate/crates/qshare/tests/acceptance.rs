//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line. Criteria 4, 5 and 7 share one Predator-Prey comparison; criterion
//! 8 drives the compiled binary.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::OnceLock;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qshare::advising::{
    budget_snapshot, p_ask, p_give, partaker_step, phi, psi, q_range, xi, AdvisingAgent,
    AdvisingConfig, Budget, BudgetLimit, Framework, GammaPolicy, ShareEvent,
};
use qshare::env::{CatchRule, EnvironmentConfig, PredatorPreyConfig, SpreadConfig};
use qshare::harness::{
    repeat_runs, run_episode, t_test_auc, welch_t_test, EpisodeCtx, EvalSchedule,
    ExperimentConfig, MetricKind, Mode, RunResult,
};
use qshare::learning::{
    best_action, Algorithm, Experience, Learner, LearnerConfig, Observation, QFunction, StateKey,
    StateView, VisitCounters,
};
use qshare::rng::StreamSeeder;

fn verdict(criterion: &str, pass: bool, detail: &str) -> bool {
    println!("ACCEPTANCE {criterion}: {} — {detail}", if pass { "PASS" } else { "FAIL" });
    pass
}

// ---------------------------------------------------------------------------
// Criterion 1: closed-form formula exactness to 1e-12.
// ---------------------------------------------------------------------------

#[test]
fn criterion_1_formula_exactness() {
    const TOL: f64 = 1e-12;
    let mut ok = true;

    ok &= (p_ask(0, 0.2) - 1.0).abs() <= TOL;
    ok &= (p_ask(4, 0.2) - 1.0 / 1.44).abs() <= TOL;
    ok &= (p_ask(9, 1.0) - 0.125).abs() <= TOL;

    ok &= p_give(0, 1.0, 1.0).abs() <= TOL;
    ok &= p_give(100, 0.0, 1.0).abs() <= TOL;
    ok &= (p_give(4, 1.0, 1.0) - 0.75).abs() <= TOL;

    let obs = Observation::new(vec![0.25, -0.5]);
    let key = StateKey::from_observation(&obs, 4);
    let s = StateView { obs: &obs, key: &key };

    let mut qf = QFunction::tabular(4);
    ok &= q_range(&qf, &s).abs() <= TOL && xi(&qf, &s).abs() <= TOL;
    qf.set(&s, 0, 0.5);
    qf.set(&s, 1, -0.5);
    qf.set(&s, 3, 0.25);
    ok &= (q_range(&qf, &s) - 1.0).abs() <= TOL;
    ok &= (xi(&qf, &s) - 0.5).abs() <= TOL;

    let mut range3 = QFunction::tabular(2);
    range3.set(&s, 0, 3.0);
    ok &= (xi(&range3, &s) - 0.75).abs() <= TOL;

    let mut counters = VisitCounters::new(2);
    ok &= phi(&counters, &key, 0) == 0;
    for _ in 0..40 {
        counters.record(&key, 0);
    }
    ok &= phi(&counters, &key, 0) == 40;
    ok &= (psi(&counters, &range3, &s, 0) - 30.0).abs() <= TOL;
    ok &= psi(&counters, &range3, &s, 1).abs() <= TOL;

    assert!(verdict("1 (formula exactness)", ok, "p_ask, p_give, ξ, Φ, Ψ, I(s) vs hand values"));
}

// ---------------------------------------------------------------------------
// Criterion 2: TD oracles.
// ---------------------------------------------------------------------------

/// Deterministic chain with two actions; action 1 advances, action 0
/// retreats. Reward 1 on entering the goal state, which is terminal.
struct Chain {
    n_states: usize,
}

impl Chain {
    fn obs(&self, state: usize) -> Observation {
        let scale = self.n_states as f64;
        Observation::new(vec![(state as f64 - 2.0) / scale])
    }

    fn step(&self, state: usize, action: usize) -> (usize, f64, bool) {
        let next = if action == 1 { state + 1 } else { state.saturating_sub(1) };
        if next == self.n_states - 1 {
            (next, 1.0, true)
        } else {
            (next, 0.0, false)
        }
    }

    /// Value iteration to convergence; independent of the TD code path.
    fn value_iteration(&self, gamma: f64) -> Vec<f64> {
        let mut v = vec![0.0; self.n_states];
        for _ in 0..10_000 {
            let mut next = v.clone();
            for s in 0..self.n_states - 1 {
                let mut best = f64::NEG_INFINITY;
                for a in 0..2 {
                    let (s2, r, terminal) = self.step(s, a);
                    let q = r + if terminal { 0.0 } else { gamma * v[s2] };
                    best = best.max(q);
                }
                next[s] = best;
            }
            let diff: f64 =
                v.iter().zip(&next).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            v = next;
            if diff < 1e-14 {
                break;
            }
        }
        v
    }
}

#[test]
fn criterion_2_td_oracles() {
    // (a) Q(λ=0): one traced step must equal the one-step Q-learning update
    // computed by hand, bit for bit.
    let chain = Chain { n_states: 3 };
    let cfg = LearnerConfig {
        alpha: 0.1,
        gamma: 0.9,
        lambda: 0.0,
        epsilon: 0.0,
        algorithm: Algorithm::QLambda,
    };
    let mut learner = Learner::new(cfg, QFunction::tabular(2), 3);
    let s0 = chain.obs(0);
    let s1 = chain.obs(1);
    learner.integrate(&s0, 1, 0.3);
    learner.integrate(&s1, 0, 0.2);
    learner.integrate(&s1, 1, 0.6);
    let exp = Experience {
        state: s0.clone(),
        action: 1,
        next_state: s1.clone(),
        reward: 0.0,
        terminal: false,
    };
    learner.update(&exp, None);
    let oracle = 0.3 + 0.1 * (0.0 + 0.9 * 0.6 - 0.3);
    let key = learner.state_key(&s0);
    let got = learner.qf.q(&StateView { obs: &s0, key: &key }, 1);
    let exact = got == oracle;

    // (b) SARSA(λ) with ε decayed to zero reaches the value-iteration
    // optimum of the 5-state chain within 1e-3 inside 10,000 episodes.
    let chain = Chain { n_states: 5 };
    let vi = chain.value_iteration(0.9);
    let cfg = LearnerConfig {
        alpha: 0.1,
        gamma: 0.9,
        lambda: 0.9,
        epsilon: 0.1,
        algorithm: Algorithm::SarsaLambda,
    };
    let mut learner = Learner::new(cfg, QFunction::tabular(2), 5);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let episodes = 10_000u32;
    for ep in 0..episodes {
        let epsilon = 0.3 * (1.0 - f64::from(ep) / 5000.0).max(0.0);
        learner.begin_episode();
        let mut state = 0usize;
        let mut obs = chain.obs(state);
        let mut key = learner.state_key(&obs);
        let mut action = {
            let s = StateView { obs: &obs, key: &key };
            if rng.gen::<f64>() < epsilon {
                rng.gen_range(0..2)
            } else {
                best_action(&learner.qf, &s, &mut rng)
            }
        };
        for _ in 0..200 {
            let (next_state, reward, terminal) = chain.step(state, action);
            let next_obs = chain.obs(next_state);
            let exp = Experience {
                state: obs.clone(),
                action,
                next_state: next_obs.clone(),
                reward,
                terminal,
            };
            if terminal {
                learner.update(&exp, None);
                break;
            }
            let next_key = learner.state_key(&next_obs);
            let next_action = {
                let s = StateView { obs: &next_obs, key: &next_key };
                if rng.gen::<f64>() < epsilon {
                    rng.gen_range(0..2)
                } else {
                    best_action(&learner.qf, &s, &mut rng)
                }
            };
            learner.update(&exp, Some(next_action));
            state = next_state;
            obs = next_obs;
            key = next_key;
            action = next_action;
        }
    }
    let start = chain.obs(0);
    let key = learner.state_key(&start);
    let row = learner.qf.row(&StateView { obs: &start, key: &key });
    let max_q = row.into_iter().fold(f64::NEG_INFINITY, f64::max);
    let err = (max_q - vi[0]).abs();
    // d = 4 steps from start to goal: optimum is γ^3
    let gamma_form = (vi[0] - 0.9f64.powi(3)).abs() < 1e-12;
    let converged = err <= 1e-3;

    assert!(verdict(
        "2 (TD oracles)",
        exact && converged && gamma_form,
        &format!("λ=0 bit-exact: {exact}; SARSA vs value iteration |err| = {err:.2e}")
    ));
}

// ---------------------------------------------------------------------------
// Criterion 3: protocol invariants over 1,000 randomized mini-episodes.
// ---------------------------------------------------------------------------

fn mini_team(
    n: usize,
    cfg: LearnerConfig,
    scale: u32,
    ask: BudgetLimit,
    give: BudgetLimit,
    seeder: &StreamSeeder,
) -> Vec<AdvisingAgent> {
    (0..n)
        .map(|id| AdvisingAgent {
            id,
            learner: Learner::new(cfg, QFunction::tabular(5), scale),
            ask: Budget::new(ask),
            give: Budget::new(give),
            policy_rng: seeder.stream(&format!("agent{id}")),
            advise_rng: seeder.stream(&format!("advising{id}")),
        })
        .collect()
}

#[test]
fn criterion_3_protocol_invariants() {
    let frameworks =
        [Framework::MultiIql, Framework::AdhocTd, Framework::AdhocTdQ, Framework::Psaf];
    let budgets = [
        BudgetLimit::Limited(0),
        BudgetLimit::Limited(1),
        BudgetLimit::Limited(3),
        BudgetLimit::Unlimited,
    ];
    let mut integrations_checked = 0u64;
    let mut total_events = 0u64;

    for case in 0..1000u64 {
        let mut pick = ChaCha8Rng::seed_from_u64(case);
        let framework = frameworks[pick.gen_range(0..frameworks.len())];
        let b_ask = budgets[pick.gen_range(0..budgets.len())];
        let b_give = budgets[pick.gen_range(0..budgets.len())];
        let n_agents = pick.gen_range(2..=3);
        let advise = AdvisingConfig {
            framework,
            v_a: [0.2, 1.0][pick.gen_range(0..2)],
            v_b: [0.5, 1.0][pick.gen_range(0..2)],
            gamma_policy: if pick.gen::<bool>() {
                GammaPolicy::RandomSelect
            } else {
                GammaPolicy::MaxConfidence
            },
        };
        let grid_n = pick.gen_range(4..=6);
        let env_cfg = EnvironmentConfig::Spread(SpreadConfig {
            grid_n,
            n_agents,
            landmark_positions: vec![(1, 1), (grid_n as i32 - 2, grid_n as i32 - 2)],
            max_steps: pick.gen_range(8..=15),
        });
        let learner_cfg = LearnerConfig {
            alpha: 0.1,
            gamma: 0.9,
            lambda: if pick.gen::<bool>() { 0.9 } else { 0.0 },
            epsilon: 0.1,
            algorithm: if pick.gen::<bool>() {
                Algorithm::SarsaLambda
            } else {
                Algorithm::QLambda
            },
        };
        let seeder = StreamSeeder::new(case.wrapping_mul(0x9e37_79b9));
        let mut env = env_cfg.build(&seeder);
        let mut team = mini_team(n_agents, learner_cfg, grid_n, b_ask, b_give, &seeder);

        let mut events: Vec<ShareEvent> = Vec::new();
        let mut traces = Vec::new();
        let episodes = pick.gen_range(1..=3);
        for ep in 0..episodes {
            let mut ctx = EpisodeCtx {
                episode: ep,
                events: &mut events,
                q_traces: &mut traces,
                watched: &[],
            };
            run_episode(&mut env, &mut team, &advise, Mode::Train, &mut ctx);
        }

        // Eval emits nothing and leaves values untouched.
        let digests: Vec<u64> = team.iter().map(|a| a.learner.qf.content_digest()).collect();
        let events_before_eval = events.len();
        {
            let mut ctx = EpisodeCtx {
                episode: episodes,
                events: &mut events,
                q_traces: &mut traces,
                watched: &[],
            };
            run_episode(&mut env, &mut team, &advise, Mode::Eval, &mut ctx);
        }
        assert_eq!(events.len(), events_before_eval, "case {case}: eval sent messages");
        let digests_after: Vec<u64> =
            team.iter().map(|a| a.learner.qf.content_digest()).collect();
        assert_eq!(digests, digests_after, "case {case}: eval changed a Q-function");

        total_events += events.len() as u64;
        if framework == Framework::MultiIql {
            assert!(events.is_empty(), "case {case}: Multi-IQL sent messages");
        }

        // Budget safety and exact decrement accounting.
        for (agent_id, (ask_used, give_used)) in budget_snapshot(&team).into_iter().enumerate() {
            if let BudgetLimit::Limited(cap) = b_ask {
                assert!(ask_used <= cap, "case {case}: ask budget exceeded");
            }
            if let BudgetLimit::Limited(cap) = b_give {
                assert!(give_used <= cap, "case {case}: give budget exceeded");
            }
            let given =
                events.iter().filter(|e| e.sharer_id == agent_id).count() as u64;
            assert_eq!(given, give_used, "case {case}: one give decrement per response");
            let mut answered_asks: Vec<(u32, u32)> = events
                .iter()
                .filter(|e| e.partaker_id == agent_id)
                .map(|e| (e.episode, e.step))
                .collect();
            answered_asks.sort_unstable();
            answered_asks.dedup();
            assert_eq!(
                answered_asks.len() as u64,
                ask_used,
                "case {case}: ask decrements exactly on answered asks"
            );
        }

        // PSAF event precondition.
        if framework == Framework::Psaf {
            for e in &events {
                assert!(
                    e.sharer_m_visit > e.partaker_m_visit,
                    "case {case}: Ψ > Φ implies sharer visited strictly more"
                );
            }
        }

        // Integration exactness and greedy-after-integration, on a frozen
        // follow-up exchange using the trained team.
        if framework.shares_q_values() && team[0].ask.available() {
            let obs = env.reset();
            let key = StateKey::from_observation(&obs[0], grid_n);
            let mut probe_events = Vec::new();
            let before = events.len() as u64;
            let action = partaker_step(
                &mut team,
                0,
                &obs[0],
                &key,
                &advise,
                999,
                0,
                &mut probe_events,
            );
            let _ = before;
            if !probe_events.is_empty() {
                let s = StateView { obs: &obs[0], key: &key };
                let row = team[0].learner.qf.row(&s);
                for e in &probe_events {
                    let offered: Vec<f64> = probe_events
                        .iter()
                        .filter(|o| o.action == e.action)
                        .map(|o| o.shared_q.expect("q-sharing event carries a value"))
                        .collect();
                    let integrated = row[e.action];
                    assert!(
                        offered.iter().any(|q| (q - integrated).abs() <= 1e-12),
                        "case {case}: integrated value must equal an offered value exactly"
                    );
                }
                let best = row.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                assert!(
                    row[action] == best,
                    "case {case}: action after integration must attain the row maximum"
                );
                integrations_checked += 1;
            }
        }
    }

    assert!(total_events > 0, "the randomized suite never exercised sharing");
    assert!(integrations_checked > 50, "too few integration probes: {integrations_checked}");
    assert!(verdict(
        "3 (protocol invariants)",
        true,
        &format!(
            "1000 mini-episodes; {total_events} share events, {integrations_checked} integration probes"
        )
    ));
}

// ---------------------------------------------------------------------------
// Criteria 4, 5, 7: the desk-scale Predator-Prey comparison.
// ---------------------------------------------------------------------------

struct PpComparison {
    psaf: Vec<RunResult>,
    adhoc_td_q: Vec<RunResult>,
    multi_iql: Vec<RunResult>,
}

fn pp_experiment(framework: Framework) -> ExperimentConfig {
    ExperimentConfig {
        environment: EnvironmentConfig::PredatorPrey(PredatorPreyConfig {
            grid_n: 7,
            n_predators: 2,
            prey_random_prob: 0.2,
            max_steps: 2500,
            catch_rule: CatchRule::OnPlusAdjacent,
        }),
        learner: LearnerConfig {
            alpha: 0.1,
            gamma: 0.9,
            lambda: 0.9,
            epsilon: 0.1,
            algorithm: Algorithm::QLambda,
        },
        advising: AdvisingConfig {
            framework,
            v_a: 0.2,
            v_b: 1.0,
            gamma_policy: GammaPolicy::RandomSelect,
        },
        b_ask: BudgetLimit::Unlimited,
        b_give: BudgetLimit::Unlimited,
        n_train_episodes: 2000,
        eval_schedule: EvalSchedule::WindowAverage { window: 100 },
        n_runs: 20,
        base_seed: 1,
        qtrace_states: Vec::new(),
    }
}

fn pp_comparison() -> &'static PpComparison {
    static DATA: OnceLock<PpComparison> = OnceLock::new();
    DATA.get_or_init(|| PpComparison {
        psaf: repeat_runs(&pp_experiment(Framework::Psaf)),
        adhoc_td_q: repeat_runs(&pp_experiment(Framework::AdhocTdQ)),
        multi_iql: repeat_runs(&pp_experiment(Framework::MultiIql)),
    })
}

#[test]
fn criterion_4_pp_directional_claim() {
    let data = pp_comparison();
    let psaf = t_test_auc(&data.psaf, &data.multi_iql, MetricKind::Tg);
    let adq = t_test_auc(&data.adhoc_td_q, &data.multi_iql, MetricKind::Tg);
    let psaf_ok = psaf.mean_auc_a < psaf.mean_auc_b && psaf.p_value < 0.05;
    let adq_ok = adq.mean_auc_a < adq.mean_auc_b && adq.p_value < 0.05;
    let detail = format!(
        "PSAF AUC {:.0} vs IQL {:.0} (p = {:.4}) -> {}; AdhocTD-Q AUC {:.0} vs IQL {:.0} (p = {:.4}) -> {}",
        psaf.mean_auc_a,
        psaf.mean_auc_b,
        psaf.p_value,
        if psaf_ok { "ok" } else { "not ok" },
        adq.mean_auc_a,
        adq.mean_auc_b,
        adq.p_value,
        if adq_ok { "ok" } else { "not ok" },
    );
    assert!(verdict("4 (PP directional claim)", psaf_ok && adq_ok, &detail));
}

#[test]
fn criterion_5_budget_efficiency() {
    let data = pp_comparison();
    let give_per_agent = |runs: &[RunResult]| -> Vec<BTreeMap<usize, u64>> {
        runs.iter()
            .map(|run| {
                let mut final_give = BTreeMap::new();
                for p in &run.budget {
                    final_give.insert(p.agent_id, p.give_used); // last snapshot wins
                }
                final_give
            })
            .collect()
    };
    let psaf = give_per_agent(&data.psaf);
    let adq = give_per_agent(&data.adhoc_td_q);
    let mut wins = 0u32;
    let mut total = 0u32;
    for (p, a) in psaf.iter().zip(&adq) {
        for (agent, p_give) in p {
            total += 1;
            if p_give < &a[agent] {
                wins += 1;
            }
        }
    }
    let frac = f64::from(wins) / f64::from(total);
    assert!(verdict(
        "5 (budget efficiency)",
        frac >= 0.8,
        &format!("PSAF gives less than AdhocTD-Q in {wins}/{total} agent-runs ({:.0}%)", frac * 100.0)
    ));
}

#[test]
fn criterion_7_sharing_distribution() {
    let data = pp_comparison();
    let mut total = 0u64;
    let mut asym = 0u64;
    let mut low_partaker = 0u64;
    for run in &data.psaf {
        for e in &run.share_events {
            total += 1;
            if e.sharer_m_visit > e.partaker_m_visit {
                asym += 1;
            }
            if e.partaker_m_visit <= 5 {
                low_partaker += 1;
            }
        }
    }
    let all_asym = asym == total && total > 0;
    let low_frac = low_partaker as f64 / total as f64;
    assert!(verdict(
        "7 (sharing distribution)",
        all_asym && low_frac >= 0.6,
        &format!(
            "{asym}/{total} events sharer_m > partaker_m; {:.0}% with partaker_m ≤ 5", low_frac * 100.0
        )
    ));
}

// ---------------------------------------------------------------------------
// Criterion 6: the desk-scale Spread comparison.
// ---------------------------------------------------------------------------

#[test]
fn criterion_6_spread_directional_claim() {
    let base = ExperimentConfig {
        environment: EnvironmentConfig::Spread(SpreadConfig {
            grid_n: 6,
            n_agents: 2,
            landmark_positions: vec![(1, 1), (4, 4)],
            max_steps: 20,
        }),
        learner: LearnerConfig {
            alpha: 0.1,
            gamma: 0.9,
            lambda: 0.9,
            epsilon: 0.1,
            algorithm: Algorithm::SarsaLambda,
        },
        advising: AdvisingConfig {
            framework: Framework::Psaf,
            v_a: 1.0,
            v_b: 0.5,
            gamma_policy: GammaPolicy::RandomSelect,
        },
        b_ask: BudgetLimit::Unlimited,
        b_give: BudgetLimit::Unlimited,
        n_train_episodes: 5000,
        eval_schedule: EvalSchedule::PeriodicFrozenEval { every: 100, n_eval_episodes: 100 },
        n_runs: 20,
        base_seed: 1,
        qtrace_states: Vec::new(),
    };
    let psaf = repeat_runs(&base);
    let mut iql_cfg = base;
    iql_cfg.advising.framework = Framework::MultiIql;
    let iql = repeat_runs(&iql_cfg);
    let report = t_test_auc(&psaf, &iql, MetricKind::Ars);
    let ok = report.mean_auc_a > report.mean_auc_b && report.p_value < 0.05;
    assert!(verdict(
        "6 (Spread directional claim)",
        ok,
        &format!(
            "PSAF ARS AUC {:.1} vs Multi-IQL {:.1}, p = {:.2e}",
            report.mean_auc_a, report.mean_auc_b, report.p_value
        )
    ));
}

// ---------------------------------------------------------------------------
// Criterion 8: byte-identical CSV outputs across reruns and worker counts.
// ---------------------------------------------------------------------------

fn read_tree(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in std::fs::read_dir(&d).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path.strip_prefix(dir).unwrap().to_string_lossy().into_owned();
                out.insert(rel, std::fs::read(&path).unwrap());
            }
        }
    }
    out
}

#[test]
fn criterion_8_determinism_across_workers() {
    let dir = tempfile::tempdir().unwrap();
    let spec = serde_json::json!({
        "base": serde_json::to_value(pp_experiment(Framework::MultiIql)).unwrap(),
        "variants": [
            {"name": "psaf", "framework": "psaf"},
            {"name": "adhoc_td_q", "framework": "adhoc_td_q"},
            {"name": "multi_iql", "framework": "multi_iql"}
        ]
    });
    let cfg_path = dir.path().join("compare.json");
    std::fs::write(&cfg_path, serde_json::to_string_pretty(&spec).unwrap()).unwrap();

    let bin = env!("CARGO_BIN_EXE_qshare");
    let mut outputs = Vec::new();
    for workers in ["1", "8"] {
        let out = dir.path().join(format!("out{workers}"));
        let status = std::process::Command::new(bin)
            .args([
                "compare",
                "--config",
                cfg_path.to_str().unwrap(),
                "--out",
                out.to_str().unwrap(),
                "--workers",
                workers,
            ])
            .stdout(std::process::Stdio::null())
            .status()
            .unwrap();
        assert!(status.success(), "compare with --workers {workers} failed");
        outputs.push(read_tree(&out));
    }
    let identical = outputs[0] == outputs[1];
    let n_files = outputs[0].len();
    assert!(verdict(
        "8 (determinism)",
        identical && n_files >= 13,
        &format!("{n_files} files byte-identical between --workers 1 and --workers 8")
    ));
}

// ---------------------------------------------------------------------------
// Criterion 9: Welch statistics oracle.
// ---------------------------------------------------------------------------

#[test]
fn criterion_9_statistics_oracle() {
    // Fixture computed independently with 40-digit arithmetic from the
    // textbook Welch formulas (p through the regularized incomplete beta).
    let a = [14.1, 15.2, 13.7];
    let b = [12.9, 12.4, 13.0];
    let (t, df, p) = welch_t_test(&a, &b);
    let t_ok = (t.abs() - 3.2279732527941920636).abs() < 1e-9;
    let df_ok = (df - 2.6655595753514026452).abs() < 1e-9;
    let p_ok = (p - 0.056977175498398928222).abs() < 1e-6;
    assert!(verdict(
        "9 (statistics oracle)",
        t_ok && df_ok && p_ok,
        &format!("t = {t:.10}, df = {df:.10}, p = {p:.8}")
    ));
}
