//! Decentralized multi-agent Q-learning with budget-constrained knowledge
//! sharing.
//!
//! The crate provides:
//!
//! - [`learning`]: per-agent temporal-difference learning (Q(λ) / SARSA(λ)),
//!   tabular and tile-coded Q-functions, eligibility traces, visit counters.
//! - [`advising`]: the four sharing frameworks (Multi-IQL, AdhocTD,
//!   AdhocTD-Q, PSAF), budget accounting and the partaker/sharer protocol.
//! - [`env`]: the Predator-Prey and Spread gridworld tasks.
//! - [`harness`]: experiment orchestration, metrics (TG / ARS), CSV output
//!   and Welch t-tests on curve areas.
//! - [`cli`]: the `qshare` command-line entry point.

pub mod advising;
pub mod cli;
pub mod env;
pub mod harness;
pub mod learning;
pub mod rng;

/// Crate-wide error type. Config problems map to exit code 2, I/O problems
/// to exit code 3.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("config error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 2,
            Error::Io(_) | Error::Csv(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
