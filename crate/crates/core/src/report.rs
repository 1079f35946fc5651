//! Serializable summary of a full C1P test.

use serde::{Deserialize, Serialize};

use crate::family::SetFamily;
use crate::refine::PipelineRun;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyReport {
    pub c1p: bool,
    pub n: usize,
    pub m: usize,
    pub total_size: usize,
    pub classes: Vec<ClassEntry>,
    pub singletons: Vec<usize>,
    pub stats: Stats,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassEntry {
    pub id: usize,
    pub rows: Vec<usize>,
    pub swap_order: Vec<usize>,
    pub c1p: bool,
    /// Column names per part, left to right.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parts: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fail: Option<FailInfo>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FailInfo {
    pub row: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stats {
    pub interval_total_length: usize,
    pub swap_count: usize,
    /// Wall time of the pipeline; omitted from output unless requested,
    /// since it is the only non-deterministic field.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl FamilyReport {
    pub fn new(f: &SetFamily, run: &PipelineRun) -> Self {
        let classes = run
            .labels
            .classes()
            .into_iter()
            .zip(run.orders.iter())
            .zip(&run.reports)
            .enumerate()
            .map(|(k, ((rows, order), report))| ClassEntry {
                id: k + 1,
                rows,
                swap_order: order.to_vec(),
                c1p: report.c1p,
                parts: report.parts.as_ref().map(|parts| {
                    parts
                        .iter()
                        .map(|part| part.iter().map(|&c| f.column_name(c).to_string()).collect())
                        .collect()
                }),
                fail: report.fail.as_ref().map(|fail| FailInfo { row: fail.row, reason: fail.reason.clone() }),
            })
            .collect();
        FamilyReport {
            c1p: run.c1p(),
            n: f.n(),
            m: f.m(),
            total_size: f.total_size(),
            classes,
            singletons: run.singletons.clone(),
            stats: Stats {
                interval_total_length: run.interval_total_length,
                swap_count: run.swap_count(),
                elapsed_ms: Some(run.elapsed_ms),
            },
        }
    }

    /// Drops the timing field so the report depends only on the input.
    pub fn without_timing(mut self) -> Self {
        self.stats.elapsed_ms = None;
        self
    }

    /// The first failing class, if any.
    pub fn first_failure(&self) -> Option<&ClassEntry> {
        self.classes.iter().find(|c| !c.c1p)
    }
}
