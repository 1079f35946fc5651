//! Scaling measurements over doubling instance sizes.

use std::time::Instant;

use cutswap::family::{c1p_instance, star_family};
use cutswap::refine::run_pipeline;
use cutswap::SetFamily;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub exponent: u32,
    pub n: usize,
    pub m: usize,
    pub total_size: usize,
    pub interval_total_length: usize,
    /// Fastest pipeline time over the repeats, excluding generation.
    pub elapsed_ms: f64,
    /// Time relative to the previous row.
    pub time_ratio: Option<f64>,
    /// Interval mass relative to the previous row.
    pub interval_ratio: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    /// C1P windows with total size near `2^e`.
    C1p,
    /// Star families with `2^(e-1)` rows `{hub, x_i}`, total size `2^e`.
    Star,
}

fn instance(ladder: Ladder, exponent: u32, seed: u64) -> SetFamily {
    match ladder {
        Ladder::C1p => c1p_instance(1 << exponent, seed),
        Ladder::Star => star_family(1 << (exponent - 1)),
    }
}

/// Times the pipeline on each rung of `ladder`. Repeats run round-robin over
/// the rungs so that a slow phase of the machine does not land on one size
/// only; each rung keeps its fastest run.
pub fn scaling(ladder: Ladder, exponents: std::ops::RangeInclusive<u32>, seed: u64, repeats: usize) -> Vec<BenchRow> {
    let families: Vec<(u32, SetFamily)> = exponents.map(|e| (e, instance(ladder, e, seed))).collect();
    let mut best = vec![f64::INFINITY; families.len()];
    let mut mass = vec![0; families.len()];
    for _ in 0..repeats.max(1) {
        for (k, (_, f)) in families.iter().enumerate() {
            let started = Instant::now();
            let run = run_pipeline(f).expect("pipeline failed on a generated instance");
            // Interference only adds time, so the fastest run is the least
            // noisy estimate.
            best[k] = best[k].min(started.elapsed().as_secs_f64() * 1e3);
            mass[k] = run.interval_total_length;
        }
    }
    let mut rows: Vec<BenchRow> = Vec::with_capacity(families.len());
    for (k, (exponent, f)) in families.iter().enumerate() {
        let prev = rows.last();
        rows.push(BenchRow {
            exponent: *exponent,
            n: f.n(),
            m: f.m(),
            total_size: f.total_size(),
            interval_total_length: mass[k],
            elapsed_ms: best[k],
            time_ratio: prev.map(|p| best[k] / p.elapsed_ms),
            interval_ratio: prev.map(|p| mass[k] as f64 / p.interval_total_length as f64),
        });
    }
    rows
}

pub fn render_table(rows: &[BenchRow]) -> String {
    let ratio = |r: Option<f64>| r.map_or_else(|| "-".to_string(), |r| format!("{r:.2}"));
    let mut out = format!(
        "{:>4} {:>10} {:>10} {:>10} {:>14} {:>12} {:>8} {:>8}\n",
        "exp", "n", "m", "N", "sum|I|", "ms", "t-ratio", "I-ratio"
    );
    for r in rows {
        out.push_str(&format!(
            "{:>4} {:>10} {:>10} {:>10} {:>14} {:>12.3} {:>8} {:>8}\n",
            r.exponent,
            r.n,
            r.m,
            r.total_size,
            r.interval_total_length,
            r.elapsed_ms,
            ratio(r.time_ratio),
            ratio(r.interval_ratio)
        ));
    }
    out
}
