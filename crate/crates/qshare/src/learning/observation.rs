//! Observations and their exact discrete signatures.

use serde::{Deserialize, Serialize};

/// A per-agent observation: an ordered list of values in `[-1, 1]`,
/// produced by normalizing relative grid offsets by the grid side length.
#[derive(Clone, Debug, PartialEq)]
pub struct Observation(Vec<f64>);

impl Observation {
    /// Panics if any value falls outside `[-1, 1]`.
    pub fn new(values: Vec<f64>) -> Self {
        assert!(
            values.iter().all(|v| (-1.0..=1.0).contains(v)),
            "observation value outside [-1, 1]: {values:?}"
        );
        Observation(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Exact discrete identity of an observation: the underlying integer grid
/// offsets, recovered by de-normalizing each value.
///
/// Two observations built from the same grid configuration always map to
/// the same key, so keys are safe to use for visit counting and for
/// cross-agent state exchange. Tile coding never enters here.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StateKey(pub Vec<i32>);

impl StateKey {
    /// Recovers the integer offsets from a normalized observation.
    /// `scale` is the divisor the environment used (the grid side length).
    pub fn from_observation(obs: &Observation, scale: u32) -> Self {
        let s = scale as f64;
        StateKey(obs.values().iter().map(|v| (v * s).round() as i32).collect())
    }
}

impl std::fmt::Display for StateKey {
    /// Colon-joined offsets, e.g. `0:2:0:1`. Used verbatim in CSV output.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for v in &self.0 {
            if !first {
                write!(f, ":")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl std::str::FromStr for StateKey {
    type Err = std::num::ParseIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(':').map(|p| p.parse::<i32>()).collect::<Result<Vec<_>, _>>().map(StateKey)
    }
}

/// An observation together with its discrete key: what a Q-function needs
/// to answer a query against either backend.
#[derive(Clone, Copy, Debug)]
pub struct StateView<'a> {
    pub obs: &'a Observation,
    pub key: &'a StateKey,
}
