//! Budget-constrained knowledge sharing between decentralized Q-learners.
//!
//! Four frameworks share one wire protocol:
//!
//! - `MultiIql` — independent learners, no communication.
//! - `AdhocTd` — probabilistic asking/giving of *best actions*.
//! - `AdhocTdQ` — same gating, but the teacher's maximum Q-value is shared
//!   and overwritten into the student's row.
//! - `Psaf` — partaker/sharer Q-value sharing gated by update-count
//!   confidences: a sharer answers only when its scaled confidence strictly
//!   exceeds the partaker's.

pub mod confidence;
pub mod messages;
pub mod protocol;

pub use confidence::{p_ask, p_give, phi, psi, q_range, xi};
pub use messages::{ShareEvent, ShareRequest, ShareResponse};
pub use protocol::{budget_snapshot, partaker_step, select_gamma, sharer_respond, AdvisingAgent};

use serde::{Deserialize, Serialize};

/// The sharing framework an experiment runs under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Framework {
    MultiIql,
    AdhocTd,
    AdhocTdQ,
    Psaf,
}

impl Framework {
    /// Whether responses carry Q-values (as opposed to bare actions).
    pub fn shares_q_values(self) -> bool {
        matches!(self, Framework::AdhocTdQ | Framework::Psaf)
    }
}

impl std::fmt::Display for Framework {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Framework::MultiIql => "multi_iql",
            Framework::AdhocTd => "adhoc_td",
            Framework::AdhocTdQ => "adhoc_td_q",
            Framework::Psaf => "psaf",
        };
        write!(f, "{s}")
    }
}

/// How a partaker picks one response per advised action from the collected
/// set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaPolicy {
    RandomSelect,
    MaxConfidence,
}

fn default_gamma_policy() -> GammaPolicy {
    GammaPolicy::RandomSelect
}

/// Framework parameters shared by every agent in a run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdvisingConfig {
    pub framework: Framework,
    pub v_a: f64,
    pub v_b: f64,
    #[serde(default = "default_gamma_policy")]
    pub gamma_policy: GammaPolicy,
}

impl AdvisingConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.v_a <= 0.0 {
            return Err(format!("advising.v_a must be positive, got {}", self.v_a));
        }
        if self.v_b <= 0.0 {
            return Err(format!("advising.v_b must be positive, got {}", self.v_b));
        }
        Ok(())
    }
}

/// A lifetime cap on sharing events, either unlimited or a fixed count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BudgetLimit {
    Unlimited,
    Limited(u64),
}

impl Serialize for BudgetLimit {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            BudgetLimit::Unlimited => ser.serialize_str("unlimited"),
            BudgetLimit::Limited(n) => ser.serialize_u64(*n),
        }
    }
}

impl<'de> Deserialize<'de> for BudgetLimit {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(u64),
            Word(String),
        }
        match Repr::deserialize(de)? {
            Repr::Num(n) => Ok(BudgetLimit::Limited(n)),
            Repr::Word(w) if w == "unlimited" => Ok(BudgetLimit::Unlimited),
            Repr::Word(w) => Err(serde::de::Error::custom(format!(
                "budget must be a count or \"unlimited\", got \"{w}\""
            ))),
        }
    }
}

/// Monotone budget account: `used` only grows, and spending past the limit
/// is impossible.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    limit: BudgetLimit,
    used: u64,
}

impl Budget {
    pub fn new(limit: BudgetLimit) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn available(&self) -> bool {
        match self.limit {
            BudgetLimit::Unlimited => true,
            BudgetLimit::Limited(cap) => self.used < cap,
        }
    }

    /// Consumes one unit. Panics when the budget is exhausted; callers must
    /// gate on [`Budget::available`] first.
    pub fn spend(&mut self) {
        assert!(self.available(), "budget overspent");
        self.used += 1;
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> BudgetLimit {
        self.limit
    }
}
