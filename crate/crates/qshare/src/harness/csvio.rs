//! CSV persistence. One file per artifact, UTF-8, header row. Floats are
//! written with Rust's shortest round-trip formatting, so files are
//! byte-identical across repeated invocations and recomputable bit-exactly.

use std::path::Path;

use crate::advising::ShareEvent;
use crate::harness::analyze::BudgetCurvePoint;
use crate::harness::{Histogram, MetricKind, RunResult, TTestReport};
use crate::learning::StateKey;
use crate::{Error, Result};

const SHARE_EVENT_HEADER: [&str; 12] = [
    "run_id",
    "episode",
    "step",
    "partaker_id",
    "sharer_id",
    "state_key",
    "action",
    "partaker_n",
    "sharer_n",
    "partaker_m",
    "sharer_m",
    "shared_q",
];

pub fn write_metrics_csv(path: &Path, runs: &[RunResult]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["run_id", "episode", "metric", "value"])?;
    for run in runs {
        for series in run.series.values() {
            for (episode, value) in &series.points {
                w.write_record(&[
                    run.run_id.to_string(),
                    episode.to_string(),
                    series.metric.to_string(),
                    value.to_string(),
                ])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_budget_csv(path: &Path, runs: &[RunResult]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["run_id", "episode", "agent_id", "ask_used", "give_used"])?;
    for run in runs {
        for p in &run.budget {
            w.write_record(&[
                run.run_id.to_string(),
                p.episode.to_string(),
                p.agent_id.to_string(),
                p.ask_used.to_string(),
                p.give_used.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_share_events_csv(path: &Path, runs: &[RunResult]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(SHARE_EVENT_HEADER)?;
    for run in runs {
        for e in &run.share_events {
            w.write_record(&[
                run.run_id.to_string(),
                e.episode.to_string(),
                e.step.to_string(),
                e.partaker_id.to_string(),
                e.sharer_id.to_string(),
                e.state_key.to_string(),
                e.action.to_string(),
                e.partaker_n_visit.to_string(),
                e.sharer_n_visit.to_string(),
                e.partaker_m_visit.to_string(),
                e.sharer_m_visit.to_string(),
                e.shared_q.map(|q| q.to_string()).unwrap_or_default(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_qtrace_csv(path: &Path, runs: &[RunResult], num_actions: usize) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    let mut header: Vec<String> =
        ["run_id", "episode", "step", "state_key", "event"].iter().map(|s| s.to_string()).collect();
    for a in 0..num_actions {
        header.push(format!("q_{a}"));
    }
    w.write_record(&header)?;
    for run in runs {
        for t in &run.q_traces {
            let mut rec = vec![
                run.run_id.to_string(),
                t.episode.to_string(),
                t.step.to_string(),
                t.state_key.to_string(),
                t.event.to_string(),
            ];
            for q in &t.q_row {
                rec.push(q.to_string());
            }
            w.write_record(&rec)?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_ttest_csv(
    path: &Path,
    rows: &[(MetricKind, String, String, TTestReport)],
) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record([
        "metric",
        "method_a",
        "method_b",
        "mean_auc_a",
        "mean_auc_b",
        "t",
        "p",
        "significant",
    ])?;
    for (metric, a, b, report) in rows {
        w.write_record(&[
            metric.to_string(),
            a.clone(),
            b.clone(),
            report.mean_auc_a.to_string(),
            report.mean_auc_b.to_string(),
            report.t_statistic.to_string(),
            report.p_value.to_string(),
            report.significant_at_05.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// One parsed `share_events.csv` row.
#[derive(Clone, Debug, PartialEq)]
pub struct ShareEventRow {
    pub run_id: u32,
    pub event: ShareEvent,
}

fn field_err(line: u64, column: &str, detail: impl std::fmt::Display) -> Error {
    Error::Config(format!("share_events.csv line {line}: bad {column}: {detail}"))
}

/// Strict reader for the share-event schema: the header must match
/// column-for-column, and the offending column is named on any mismatch.
pub fn read_share_events_csv(path: &Path) -> Result<Vec<ShareEventRow>> {
    let mut r = csv::Reader::from_path(path)?;
    let headers = r.headers()?.clone();
    if headers.len() != SHARE_EVENT_HEADER.len() {
        return Err(Error::Config(format!(
            "share_events.csv: expected {} columns, found {}",
            SHARE_EVENT_HEADER.len(),
            headers.len()
        )));
    }
    for (got, want) in headers.iter().zip(SHARE_EVENT_HEADER) {
        if got != want {
            return Err(Error::Config(format!(
                "share_events.csv: expected column \"{want}\", found \"{got}\""
            )));
        }
    }
    let mut rows = Vec::new();
    for (i, record) in r.records().enumerate() {
        let record = record?;
        let line = i as u64 + 2;
        let parse_u64 = |idx: usize| -> Result<u64> {
            record[idx]
                .parse::<u64>()
                .map_err(|e| field_err(line, SHARE_EVENT_HEADER[idx], e))
        };
        let shared_q = if record[11].is_empty() {
            None
        } else {
            Some(record[11].parse::<f64>().map_err(|e| field_err(line, "shared_q", e))?)
        };
        rows.push(ShareEventRow {
            run_id: parse_u64(0)? as u32,
            event: ShareEvent {
                episode: parse_u64(1)? as u32,
                step: parse_u64(2)? as u32,
                partaker_id: parse_u64(3)? as usize,
                sharer_id: parse_u64(4)? as usize,
                state_key: record[5]
                    .parse::<StateKey>()
                    .map_err(|e| field_err(line, "state_key", e))?,
                action: parse_u64(6)? as usize,
                partaker_n_visit: parse_u64(7)?,
                sharer_n_visit: parse_u64(8)?,
                partaker_m_visit: parse_u64(9)?,
                sharer_m_visit: parse_u64(10)?,
                shared_q,
            },
        });
    }
    Ok(rows)
}

/// One parsed `metrics.csv` row.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricRow {
    pub run_id: u32,
    pub episode: u32,
    pub metric: MetricKind,
    pub value: f64,
}

pub fn read_metrics_csv(path: &Path) -> Result<Vec<MetricRow>> {
    let mut r = csv::Reader::from_path(path)?;
    let mut rows = Vec::new();
    for record in r.records() {
        let record = record?;
        rows.push(MetricRow {
            run_id: record[0].parse().map_err(|e| Error::Config(format!("bad run_id: {e}")))?,
            episode: record[1].parse().map_err(|e| Error::Config(format!("bad episode: {e}")))?,
            metric: record[2].parse().map_err(Error::Config)?,
            value: record[3].parse().map_err(|e| Error::Config(format!("bad value: {e}")))?,
        });
    }
    Ok(rows)
}

/// Histogram rows for every (axis, role) pair, tidy format.
pub fn write_histograms_csv(
    path: &Path,
    histograms: &[(&str, &str, Histogram)],
) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["axis", "role", "bin_low", "bin_high", "count"])?;
    for (axis, role, h) in histograms {
        for (i, count) in h.counts.iter().enumerate() {
            let low = if i == 0 { "-inf".to_string() } else { h.edges[i - 1].to_string() };
            let high =
                if i == h.counts.len() - 1 { "inf".to_string() } else { h.edges[i].to_string() };
            w.write_record(&[axis.to_string(), role.to_string(), low, high, count.to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_budget_curve_csv(
    path: &Path,
    points: &[(u32, BudgetCurvePoint)],
) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["run_id", "episode", "agent_id", "ask_used", "give_used"])?;
    for (run_id, p) in points {
        w.write_record(&[
            run_id.to_string(),
            p.episode.to_string(),
            p.agent_id.to_string(),
            p.ask_used.to_string(),
            p.give_used.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
