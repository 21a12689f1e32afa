//! Per-operation cost traces in CSV form.
//!
//! A trace replays an enqueue/dequeue script against one implementation
//! and records, for every operation, the cost it emitted, the cost still
//! pending, the stored potential, and the amortized cost
//! `emitted + potential_after - potential_before`. A final `quit` row
//! flushes whatever the queue still owes, so the `cumulative_cost` column
//! ends at the full program cost.

use std::io::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::batched::batched_queue;
use crate::queue::{Alphabet, Element, QueueObj};
use crate::spec_queue::spec_queue;

/// One scripted operation, as read from the JSON ops file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum TraceOp {
    Enqueue { elem: Element },
    Dequeue,
}

/// Which implementation to replay the script against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceImpl {
    Spec,
    Batched,
}

impl TraceImpl {
    pub fn name(self) -> &'static str {
        match self {
            TraceImpl::Spec => "spec",
            TraceImpl::Batched => "batched",
        }
    }

    fn initial(self) -> QueueObj {
        match self {
            TraceImpl::Spec => spec_queue([]),
            TraceImpl::Batched => batched_queue([], []),
        }
    }
}

/// One CSV row. Field order is the column order.
///
/// `elem` is the enqueued element on enqueue rows and the dequeued element
/// (if any) on dequeue rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRow {
    pub index: usize,
    pub op: String,
    pub elem: Option<u8>,
    pub cost_emitted: u64,
    pub pending_after: u64,
    pub potential_after: u64,
    pub amortized_cost: i64,
    pub cumulative_cost: u64,
}

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("cannot parse ops file: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("op {index}: element {elem} is outside the alphabet 0..{size}")]
    ElementOutOfRange { index: usize, elem: u8, size: u8 },
    #[error("cannot write trace: {0}")]
    Csv(#[from] csv::Error),
}

/// Parses a JSON array of operations, e.g.
/// `[{"op":"enqueue","elem":1},{"op":"dequeue"}]`.
pub fn parse_ops(text: &str) -> Result<Vec<TraceOp>, TraceError> {
    Ok(serde_json::from_str(text)?)
}

/// Replays `ops` against the chosen implementation. With an alphabet the
/// enqueued elements are range-checked; without one anything goes.
pub fn run_trace(
    ops: &[TraceOp],
    which: TraceImpl,
    alphabet: Option<Alphabet>,
) -> Result<Vec<TraceRow>, TraceError> {
    if let Some(k) = alphabet {
        for (index, op) in ops.iter().enumerate() {
            if let TraceOp::Enqueue { elem } = op
                && !k.contains(*elem)
            {
                return Err(TraceError::ElementOutOfRange {
                    index,
                    elem: elem.value(),
                    size: k.size(),
                });
            }
        }
    }

    let mut rows = Vec::with_capacity(ops.len() + 1);
    let mut queue = which.initial();
    let mut cumulative = 0u64;
    let mut potential_before = queue.potential().value();

    for (index, op) in ops.iter().enumerate() {
        let row = match op {
            TraceOp::Enqueue { elem } => {
                queue = queue.enqueue(*elem);
                let potential_after = queue.potential().value();
                let amortized = potential_after as i64 - potential_before as i64;
                potential_before = potential_after;
                TraceRow {
                    index,
                    op: "enqueue".to_string(),
                    elem: Some(elem.value()),
                    cost_emitted: 0,
                    pending_after: queue.pending().value(),
                    potential_after,
                    amortized_cost: amortized,
                    cumulative_cost: cumulative,
                }
            }
            TraceOp::Dequeue => {
                let d = queue.dequeue();
                queue = d.rest;
                cumulative += d.cost.value();
                let potential_after = queue.potential().value();
                let amortized =
                    d.cost.value() as i64 + potential_after as i64 - potential_before as i64;
                potential_before = potential_after;
                TraceRow {
                    index,
                    op: "dequeue".to_string(),
                    elem: d.elem.map(Element::value),
                    cost_emitted: d.cost.value(),
                    pending_after: queue.pending().value(),
                    potential_after,
                    amortized_cost: amortized,
                    cumulative_cost: cumulative,
                }
            }
        };
        rows.push(row);
    }

    // Final settlement: pay the pending cost plus the stored potential.
    let quit = queue.quit();
    cumulative += quit.value();
    rows.push(TraceRow {
        index: ops.len(),
        op: "quit".to_string(),
        elem: None,
        cost_emitted: quit.value(),
        pending_after: 0,
        potential_after: 0,
        amortized_cost: quit.value() as i64 - potential_before as i64,
        cumulative_cost: cumulative,
    });
    Ok(rows)
}

/// Writes rows as CSV with the header
/// `index,op,elem,cost_emitted,pending_after,potential_after,amortized_cost,cumulative_cost`.
pub fn write_csv<W: Write>(rows: &[TraceRow], writer: W) -> Result<(), TraceError> {
    let mut out = csv::Writer::from_writer(writer);
    for row in rows {
        out.serialize(row)?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}
