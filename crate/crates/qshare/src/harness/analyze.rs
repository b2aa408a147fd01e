//! Derived views of the share-event log: sharing-opportunity histograms
//! and cumulative budget curves.

use std::collections::BTreeMap;

use crate::advising::ShareEvent;

/// Which count of an event feeds the histogram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HistAxis {
    NVisit,
    MVisit,
}

/// Whose count: the asking or the answering side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HistRole {
    Partaker,
    Sharer,
}

/// Counts per bin. With edges `e_0 < … < e_{k-1}` the bins are
/// `(-∞, e_0), [e_0, e_1), …, [e_{k-1}, ∞)` — every value lands somewhere,
/// so the counts always sum to the number of events.
#[derive(Clone, Debug, PartialEq)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
}

pub fn event_count(event: &ShareEvent, axis: HistAxis, role: HistRole) -> u64 {
    match (axis, role) {
        (HistAxis::NVisit, HistRole::Partaker) => event.partaker_n_visit,
        (HistAxis::NVisit, HistRole::Sharer) => event.sharer_n_visit,
        (HistAxis::MVisit, HistRole::Partaker) => event.partaker_m_visit,
        (HistAxis::MVisit, HistRole::Sharer) => event.sharer_m_visit,
    }
}

pub fn share_histogram(
    events: &[ShareEvent],
    axis: HistAxis,
    role: HistRole,
    edges: &[f64],
) -> Histogram {
    assert!(!edges.is_empty(), "need at least one bin edge");
    assert!(edges.windows(2).all(|w| w[0] < w[1]), "bin edges must increase strictly");
    let mut counts = vec![0u64; edges.len() + 1];
    for event in events {
        let v = event_count(event, axis, role) as f64;
        let bin = edges.partition_point(|e| *e <= v);
        counts[bin] += 1;
    }
    Histogram { edges: edges.to_vec(), counts }
}

/// Cumulative budget consumption per agent reconstructed from a share-event
/// log: one point per episode present in the log. Give budget counts
/// answers sent; ask budget counts steps on which at least one answer
/// arrived.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BudgetCurvePoint {
    pub episode: u32,
    pub agent_id: usize,
    pub ask_used: u64,
    pub give_used: u64,
}

pub fn budget_curves(events: &[ShareEvent]) -> Vec<BudgetCurvePoint> {
    let mut agents: Vec<usize> = Vec::new();
    for e in events {
        if !agents.contains(&e.partaker_id) {
            agents.push(e.partaker_id);
        }
        if !agents.contains(&e.sharer_id) {
            agents.push(e.sharer_id);
        }
    }
    agents.sort_unstable();

    // per episode: responses per sharer, answered (episode, step, partaker) asks
    let mut episodes: BTreeMap<u32, (BTreeMap<usize, u64>, BTreeMap<(u32, usize), ()>)> =
        BTreeMap::new();
    for e in events {
        let slot = episodes.entry(e.episode).or_default();
        *slot.0.entry(e.sharer_id).or_insert(0) += 1;
        slot.1.insert((e.step, e.partaker_id), ());
    }

    let mut cumulative_give: BTreeMap<usize, u64> = BTreeMap::new();
    let mut cumulative_ask: BTreeMap<usize, u64> = BTreeMap::new();
    let mut out = Vec::new();
    for (episode, (gives, asks)) in episodes {
        for (sharer, n) in gives {
            *cumulative_give.entry(sharer).or_insert(0) += n;
        }
        for ((_, partaker), ()) in asks {
            *cumulative_ask.entry(partaker).or_insert(0) += 1;
        }
        for &agent_id in &agents {
            out.push(BudgetCurvePoint {
                episode,
                agent_id,
                ask_used: cumulative_ask.get(&agent_id).copied().unwrap_or(0),
                give_used: cumulative_give.get(&agent_id).copied().unwrap_or(0),
            });
        }
    }
    out
}
