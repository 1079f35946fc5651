//! Input model: set families, the decreasing-size row order, per-column row
//! lists, the `.rows` text format, and instance generators.

use std::collections::HashMap;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A finite family of subsets (rows) of a column set.
///
/// Rows are stored as strictly ascending column indices. A row's index is its
/// position in the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    columns: Vec<String>,
    rows: Vec<Vec<usize>>,
    total_size: usize,
}

impl SetFamily {
    /// Builds a family from column names and rows of column indices.
    ///
    /// Each row is sorted; empty rows, repeated indices and indices outside
    /// the column table are rejected.
    pub fn new(columns: Vec<String>, rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = columns.len();
        let mut total_size = 0;
        let mut out = Vec::with_capacity(rows.len());
        for (i, mut row) in rows.into_iter().enumerate() {
            if row.is_empty() {
                return Err(Error::InvalidRow { row: i, reason: "empty row".into() });
            }
            row.sort_unstable();
            if let Some(w) = row.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidRow { row: i, reason: format!("column {} repeated", w[0]) });
            }
            if let Some(&c) = row.last().filter(|&&c| c >= n) {
                return Err(Error::InvalidRow { row: i, reason: format!("column {c} out of range (n = {n})") });
            }
            total_size += row.len();
            out.push(row);
        }
        Ok(SetFamily { columns, rows: out, total_size })
    }

    /// A family over `n` unnamed columns whose rows are already sorted and
    /// valid.
    pub(crate) fn from_valid_rows(n: usize, rows: Vec<Vec<usize>>) -> Self {
        let total_size = rows.iter().map(Vec::len).sum();
        SetFamily { columns: vec![String::new(); n], rows, total_size }
    }

    /// Builds a family over columns named `c0..c{n-1}`.
    pub fn from_index_rows(n: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        Self::new((0..n).map(|i| format!("c{i}")).collect(), rows)
    }

    pub fn n(&self) -> usize {
        self.columns.len()
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    /// Sum of row sizes.
    pub fn total_size(&self) -> usize {
        self.total_size
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn column_name(&self, c: usize) -> &str {
        &self.columns[c]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn row(&self, r: usize) -> &[usize] {
        &self.rows[r]
    }

    /// Columns that belong to no row.
    pub fn unused_columns(&self) -> Vec<usize> {
        let mut used = vec![false; self.n()];
        for &c in self.rows.iter().flatten() {
            used[c] = true;
        }
        (0..self.n()).filter(|&c| !used[c]).collect()
    }

    /// Renders the family in the `.rows` format, one row per line.
    pub fn render(&self) -> String {
        let mut out = String::with_capacity(self.total_size * 4);
        for row in &self.rows {
            for (k, &c) in row.iter().enumerate() {
                if k > 0 {
                    out.push(' ');
                }
                out.push_str(&self.columns[c]);
            }
            out.push('\n');
        }
        out
    }
}

/// Parses the `.rows` text format.
///
/// One row per line, whitespace-separated tokens, `#` comments to end of line,
/// blank lines skipped. Column names are interned in order of first
/// appearance.
pub fn parse_family(text: &str) -> Result<SetFamily> {
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut columns = Vec::new();
    let mut rows = Vec::new();
    // Last line each column was seen on, for duplicate detection.
    let mut seen: Vec<usize> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let data = line.split('#').next().unwrap_or("");
        let mut row = Vec::new();
        for tok in data.split_whitespace() {
            let next = columns.len();
            let c = *index.entry(tok).or_insert_with(|| {
                columns.push(tok.to_string());
                seen.push(usize::MAX);
                next
            });
            if seen[c] == lineno {
                return Err(Error::MalformedRow { line: lineno + 1, token: tok.to_string() });
            }
            seen[c] = lineno;
            row.push(c);
        }
        if !row.is_empty() {
            rows.push(row);
        }
    }
    SetFamily::new(columns, rows)
}

/// Total order on rows by decreasing size; equal sizes by ascending input index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LrOrder {
    order: Vec<usize>,
    rank: Vec<usize>,
}

impl LrOrder {
    /// Wraps an explicit order, e.g. one carried over from another labeling.
    pub(crate) fn from_order(order: Vec<usize>) -> Self {
        let mut rank = vec![0; order.len()];
        for (pos, &r) in order.iter().enumerate() {
            rank[r] = pos;
        }
        LrOrder { order, rank }
    }

    /// Rows from first (largest) to last.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Position of `row` in the order.
    pub fn rank(&self, row: usize) -> usize {
        self.rank[row]
    }

    /// True when `a` strictly precedes `b`.
    pub fn precedes(&self, a: usize, b: usize) -> bool {
        self.rank[a] < self.rank[b]
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Stable bucket sort of the rows by decreasing size.
pub fn lr_order(f: &SetFamily) -> LrOrder {
    let max = f.rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max + 1];
    for (r, row) in f.rows.iter().enumerate() {
        buckets[row.len()].push(r);
    }
    let order: Vec<usize> = buckets.into_iter().rev().flatten().collect();
    let mut rank = vec![0; order.len()];
    for (pos, &r) in order.iter().enumerate() {
        rank[r] = pos;
    }
    LrOrder { order, rank }
}

/// For each column, the rows containing it from last to first in LR order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlLists {
    offsets: Vec<usize>,
    rows: Vec<usize>,
}

impl SlLists {
    pub fn get(&self, c: usize) -> &[usize] {
        &self.rows[self.offsets[c]..self.offsets[c + 1]]
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }
}

pub fn sl_lists(f: &SetFamily, lr: &LrOrder) -> SlLists {
    let n = f.n();
    let mut offsets = vec![0; n + 1];
    for &c in f.rows.iter().flatten() {
        offsets[c + 1] += 1;
    }
    for c in 0..n {
        offsets[c + 1] += offsets[c];
    }
    // Transpose in row id order, then sort each list by descending rank.
    // Rows sharing a column tend to have nearby ids, so both passes stay
    // local in memory.
    let mut fill = offsets.clone();
    let mut rows = vec![0; f.total_size];
    for (r, row) in f.rows.iter().enumerate() {
        for &c in row {
            rows[fill[c]] = r;
            fill[c] += 1;
        }
    }
    for c in 0..n {
        rows[offsets[c]..offsets[c + 1]].sort_unstable_by_key(|&r| std::cmp::Reverse(lr.rank[r]));
    }
    SlLists { offsets, rows }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorMode {
    /// Every row is a window of one hidden column permutation.
    C1pPositive,
    /// Every row is a uniform subset of its drawn size.
    UniformRandom,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub mode: GeneratorMode,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    /// Inclusive bounds on row length.
    pub min_len: usize,
    pub max_len: usize,
}

impl GeneratorSpec {
    pub fn new(mode: GeneratorMode, n: usize, m: usize, seed: u64) -> Self {
        GeneratorSpec { mode, n, m, seed, min_len: 1, max_len: n.max(1) }
    }

    pub fn with_lengths(mut self, min_len: usize, max_len: usize) -> Self {
        self.min_len = min_len;
        self.max_len = max_len;
        self
    }
}

/// Draws a family from `spec`. Output depends only on `spec`.
pub fn gen_family(spec: &GeneratorSpec) -> Result<SetFamily> {
    if spec.m > 0 {
        if spec.min_len == 0 {
            return Err(Error::BadSpec("row length lower bound must be at least 1".into()));
        }
        if spec.min_len > spec.max_len {
            return Err(Error::BadSpec(format!("min_len {} > max_len {}", spec.min_len, spec.max_len)));
        }
        if spec.max_len > spec.n {
            return Err(Error::BadSpec(format!("row length {} exceeds column count {}", spec.max_len, spec.n)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut rows = Vec::with_capacity(spec.m);
    match spec.mode {
        GeneratorMode::C1pPositive => {
            let mut perm: Vec<usize> = (0..spec.n).collect();
            perm.shuffle(&mut rng);
            for _ in 0..spec.m {
                let len = rng.gen_range(spec.min_len..=spec.max_len);
                let start = rng.gen_range(0..=spec.n - len);
                rows.push(perm[start..start + len].to_vec());
            }
        }
        GeneratorMode::UniformRandom => {
            for _ in 0..spec.m {
                let len = rng.gen_range(spec.min_len..=spec.max_len);
                rows.push(rand::seq::index::sample(&mut rng, spec.n, len).into_vec());
            }
        }
    }
    SetFamily::from_index_rows(spec.n, rows)
}

/// A C1P instance whose total size is close to `target`: windows of length
/// 2..=30 (mean 16) over `target / 8` columns.
pub fn c1p_instance(target: usize, seed: u64) -> SetFamily {
    let n = (target / 8).max(30);
    let m = (target / 16).max(1);
    let spec = GeneratorSpec::new(GeneratorMode::C1pPositive, n, m, seed).with_lengths(2, 30);
    gen_family(&spec).expect("valid generator spec")
}

/// `k` rows `{hub, x_i}`: every pair overlaps, the hub's row list has `k`
/// entries, and interval mass grows quadratically while `N = 2k`.
pub fn star_family(k: usize) -> SetFamily {
    let mut columns = Vec::with_capacity(k + 1);
    columns.push("hub".to_string());
    let mut label = String::new();
    for i in 0..k {
        label.clear();
        write!(label, "x{i}").unwrap();
        columns.push(label.clone());
    }
    let rows = (1..=k).map(|i| vec![0, i]).collect();
    SetFamily::new(columns, rows).expect("star rows are well formed")
}
