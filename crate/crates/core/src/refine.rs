//! Ordered partition refinement with cut-or-swap, deciding C1P per overlap
//! class.
//!
//! The partition lives in a circular buffer sized to the class support.
//! Positions are virtual integers mapped onto the buffer modulo its capacity,
//! so a new part can grow the window on either side. A part is a contiguous
//! range of virtual positions; part order is position order.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::family::{lr_order, sl_lists, LrOrder, SetFamily};
use crate::maxcomp::{bounds, refine_step1, MaxTable};
use crate::relabel::Relabeled;
use crate::overlap::{build_intervals_in, classes_and_orders, singleton_rows, ClassLabeling, SwapOrder};
use crate::report::FamilyReport;

/// Why a row leaves the partition unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoCutReason {
    /// No column of the row is embedded yet.
    Disjoint,
    /// The whole row sits inside one part.
    InsideOnePart,
    /// The row holds every embedded column.
    ContainsAllParts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Border {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CutCase {
    /// Every column of the row is embedded; the row spans parts `left..=right`.
    Embedded { left: usize, right: usize },
    /// Some columns are new; the embedded ones must sit flush against
    /// `border`, with `pivot` the innermost touched part.
    Extends { border: Option<Border>, pivot: usize, partial_parts: usize },
}

/// How a cutting row will be applied. Only valid until the next
/// [`PartitionArray::classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CutPlan {
    epoch: u32,
    case: CutCase,
}

impl CutPlan {
    /// True when all of the row's columns are already embedded.
    pub fn is_embedded(&self) -> bool {
        matches!(self.case, CutCase::Embedded { .. })
    }

    /// Border chosen for a row that brings new columns, if one is feasible.
    pub fn border(&self) -> Option<Border> {
        match self.case {
            CutCase::Embedded { .. } => None,
            CutCase::Extends { border, .. } => border,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    NoCut(NoCutReason),
    Cut(CutPlan),
}

/// Outcome of refining by one row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RefineOutcome {
    Cut,
    NoCut(NoCutReason),
    Fail(String),
}

#[derive(Debug, Clone)]
pub struct PartitionArray {
    cap: usize,
    cells: Vec<u32>,
    lo: i32,
    hi: i32,
    parts: Vec<PartState>,
    cols: Vec<ColState>,
    generation: u32,
    epoch: u32,
    touched: Vec<u32>,
}

/// Per-column state. `present` and `mark` are valid only when equal to the
/// current generation and epoch.
#[derive(Debug, Clone, Copy, Default)]
struct ColState {
    pos: i32,
    part: u32,
    present: u32,
    mark: u32,
}

/// Virtual range `b..e`; `count` is valid only when `count_epoch` is current.
#[derive(Debug, Clone, Copy)]
struct PartState {
    b: i32,
    e: i32,
    count: u32,
    count_epoch: u32,
}

impl PartState {
    fn len(&self) -> usize {
        (self.e - self.b) as usize
    }
}

impl PartitionArray {
    /// An empty structure for a family over `n` columns. Call
    /// [`reset`](Self::reset) before use.
    pub fn new(n: usize) -> Self {
        PartitionArray {
            cap: 0,
            cells: Vec::new(),
            lo: 0,
            hi: 0,
            parts: Vec::new(),
            cols: vec![ColState::default(); n],
            generation: 0,
            epoch: 0,
            touched: Vec::new(),
        }
    }

    /// One part holding `first_row`, in a buffer of `capacity` cells.
    pub fn init_partition(n: usize, first_row: &[usize], capacity: usize) -> Self {
        let mut p = Self::new(n);
        p.reset(first_row, capacity);
        p
    }

    /// Discards the current partition and starts over with `first_row` as
    /// the only part. Costs `O(capacity)`.
    pub fn reset(&mut self, first_row: &[usize], capacity: usize) {
        assert!(!first_row.is_empty(), "first row must be non-empty");
        assert!(first_row.len() <= capacity, "first row exceeds capacity");
        assert!(capacity <= i32::MAX as usize, "class support must fit in 31 bits");
        self.generation += 1;
        self.cap = capacity;
        self.cells.clear();
        self.cells.resize(capacity, u32::MAX);
        self.parts.clear();
        self.lo = 0;
        self.hi = 0;
        self.push_part(first_row, Border::Right);
    }

    /// Number of distinct columns over `rows`, using the mark scratch.
    pub fn support_size<'a>(&mut self, rows: impl IntoIterator<Item = &'a [usize]>) -> usize {
        let epoch = self.next_epoch();
        let mut size = 0;
        for &c in rows.into_iter().flatten() {
            if self.cols[c].mark != epoch {
                self.cols[c].mark = epoch;
                size += 1;
            }
        }
        size
    }

    pub fn capacity(&self) -> usize {
        self.cap
    }

    /// Number of embedded columns.
    pub fn window_len(&self) -> usize {
        (self.hi - self.lo) as usize
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    pub fn is_embedded(&self, c: usize) -> bool {
        self.cols[c].present == self.generation
    }

    /// Buffer index of virtual position `v`. The window never exceeds the
    /// capacity and starts at 0, so `v` lies in `-cap..cap`.
    fn index(&self, v: i32) -> usize {
        if v < 0 {
            (v + self.cap as i32) as usize
        } else {
            v as usize
        }
    }

    fn cell(&self, v: i32) -> usize {
        self.cells[self.index(v)] as usize
    }

    fn set_cell(&mut self, v: i32, c: usize) {
        let i = self.index(v);
        self.cells[i] = c as u32;
        self.cols[c].pos = v;
    }

    fn next_epoch(&mut self) -> u32 {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.cols.iter_mut().for_each(|c| c.mark = 0);
            self.parts.iter_mut().for_each(|p| p.count_epoch = 0);
            self.epoch = 1;
        }
        self.epoch
    }

    /// Parts left to right, each in buffer order.
    pub fn parts(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::with_capacity(self.parts.len());
        let mut current = u32::MAX;
        for v in self.lo..self.hi {
            let c = self.cell(v);
            if self.cols[c].part != current {
                current = self.cols[c].part;
                out.push(Vec::new());
            }
            out.last_mut().unwrap().push(c);
        }
        out
    }

    /// Parts left to right with each part sorted by column index.
    pub fn sorted_parts(&self) -> Vec<Vec<usize>> {
        let mut parts = self.parts();
        parts.iter_mut().for_each(|p| p.sort_unstable());
        parts
    }

    /// Checks that parts tile the window and the position index agrees with
    /// the cells.
    pub fn is_consistent(&self) -> bool {
        let mut ranges: Vec<(i32, i32)> = self.parts.iter().map(|p| (p.b, p.e)).collect();
        ranges.sort_unstable();
        let mut at = self.lo;
        for &(b, e) in &ranges {
            if b != at || e <= b {
                return false;
            }
            at = e;
        }
        if at != self.hi || self.window_len() > self.cap {
            return false;
        }
        (self.lo..self.hi).all(|v| {
            let c = self.cell(v);
            let part = self.parts[self.cols[c].part as usize];
            self.is_embedded(c) && self.cols[c].pos == v && part.b <= v && v < part.e
        })
    }

    fn count(&self, p: usize) -> usize {
        self.parts[p].count as usize
    }

    /// Marks `row` and decides whether it cuts the partition. Leaves the
    /// partition itself untouched. `O(|row|)`.
    pub fn classify(&mut self, row: &[usize]) -> Classification {
        let epoch = self.next_epoch();
        let generation = self.generation;
        self.touched.clear();
        let mut embedded = 0;
        for &c in row {
            let col = &mut self.cols[c];
            col.mark = epoch;
            if col.present != generation {
                continue;
            }
            embedded += 1;
            let part = &mut self.parts[col.part as usize];
            if part.count_epoch != epoch {
                part.count_epoch = epoch;
                part.count = 0;
                self.touched.push(col.part);
            }
            part.count += 1;
        }
        if embedded == 0 {
            return Classification::NoCut(NoCutReason::Disjoint);
        }
        if embedded == self.window_len() {
            return Classification::NoCut(NoCutReason::ContainsAllParts);
        }
        if embedded == row.len() && self.touched.len() == 1 {
            return Classification::NoCut(NoCutReason::InsideOnePart);
        }
        let first = self.touched[0] as usize;
        let (left, right) = self.touched.iter().fold((first, first), |(l, r), &p| {
            let p = p as usize;
            (
                if self.parts[p].b < self.parts[l].b { p } else { l },
                if self.parts[p].b > self.parts[r].b { p } else { r },
            )
        });
        let case = if embedded == row.len() {
            CutCase::Embedded { left, right }
        } else {
            let right_ok = embedded - self.count(left) == (self.hi - self.parts[left].e) as usize;
            let left_ok = embedded - self.count(right) == (self.parts[right].b - self.lo) as usize;
            let partial_parts = self.touched.iter().filter(|&&p| self.count(p as usize) < self.parts[p as usize].len()).count();
            match (right_ok, left_ok) {
                (true, _) => CutCase::Extends { border: Some(Border::Right), pivot: left, partial_parts },
                (false, true) => CutCase::Extends { border: Some(Border::Left), pivot: right, partial_parts },
                (false, false) => CutCase::Extends { border: None, pivot: left, partial_parts },
            }
        };
        Classification::Cut(CutPlan { epoch, case })
    }

    /// Applies a plan from [`classify`](Self::classify) on the same row.
    ///
    /// On failure the partition is left as it was and the returned message
    /// names the first violated condition.
    pub fn apply_refine(&mut self, row: &[usize], plan: CutPlan) -> std::result::Result<(), String> {
        assert_eq!(plan.epoch, self.epoch, "stale cut plan");
        match plan.case {
            CutCase::Embedded { left, right } => {
                let interior_partial = self.touched.iter().any(|&p| {
                    let p = p as usize;
                    p != left && p != right && self.count(p) < self.parts[p].len()
                });
                if interior_partial {
                    return Err("a touched part between the ends of the row is only partially touched".into());
                }
                let embedded = row.len();
                let inner = embedded - self.count(left) - self.count(right);
                if inner != (self.parts[right].b - self.parts[left].e) as usize {
                    return Err("untouched parts lie strictly between touched parts".into());
                }
                self.split(left, row, Border::Right);
                self.split(right, row, Border::Left);
            }
            CutCase::Extends { border, pivot, partial_parts } => {
                let Some(border) = border else {
                    return Err(if partial_parts > 1 {
                        "more than one touched part is only partially touched".into()
                    } else {
                        "touched block is not at an extremity of the partition".into()
                    });
                };
                self.split(pivot, row, border);
                let fresh: Vec<usize> = row.iter().copied().filter(|&c| !self.is_embedded(c)).collect();
                self.push_part(&fresh, border);
            }
        }
        Ok(())
    }

    /// [`classify`](Self::classify) followed by
    /// [`apply_refine`](Self::apply_refine) when the row cuts.
    pub fn refine(&mut self, row: &[usize]) -> RefineOutcome {
        match self.classify(row) {
            Classification::NoCut(reason) => RefineOutcome::NoCut(reason),
            Classification::Cut(plan) => match self.apply_refine(row, plan) {
                Ok(()) => RefineOutcome::Cut,
                Err(reason) => RefineOutcome::Fail(reason),
            },
        }
    }

    /// Moves the marked columns of part `p` to its `side` end and makes them
    /// a new part. No-op when `p` is fully marked. Swaps only out-of-place
    /// cells, so the cost is the number of marked columns in `p`.
    fn split(&mut self, p: usize, row: &[usize], side: Border) {
        let t = self.count(p);
        let PartState { b, e, .. } = self.parts[p];
        if t == self.parts[p].len() {
            return;
        }
        let t_i = t as i32;
        let (lo, hi) = match side {
            Border::Right => (e - t_i, e),
            Border::Left => (b, b + t_i),
        };
        let mut cursor = lo;
        for &c in row {
            let col = self.cols[c];
            if col.present != self.generation || col.part as usize != p {
                continue;
            }
            let v = col.pos;
            if (lo..hi).contains(&v) {
                continue;
            }
            while self.cols[self.cell(cursor)].mark == self.epoch {
                cursor += 1;
            }
            let other = self.cell(cursor);
            self.set_cell(cursor, c);
            self.set_cell(v, other);
            cursor += 1;
        }
        let fresh = self.parts.len() as u32;
        self.parts.push(PartState { b: lo, e: hi, count: 0, count_epoch: 0 });
        let (nb, ne) = match side {
            Border::Right => (b, lo),
            Border::Left => (hi, e),
        };
        self.parts[p].b = nb;
        self.parts[p].e = ne;
        for v in lo..hi {
            let c = self.cell(v);
            self.cols[c].part = fresh;
        }
    }

    /// Appends `cols` as a new part beyond `border`.
    fn push_part(&mut self, cols: &[usize], border: Border) {
        assert!(self.window_len() + cols.len() <= self.cap, "partition exceeds class support");
        let k = cols.len() as i32;
        let start = match border {
            Border::Right => {
                self.hi += k;
                self.hi - k
            }
            Border::Left => {
                self.lo -= k;
                self.lo
            }
        };
        let id = self.parts.len() as u32;
        self.parts.push(PartState { b: start, e: start + k, count: 0, count_epoch: 0 });
        let generation = self.generation;
        for (i, &c) in cols.iter().enumerate() {
            self.set_cell(start + i as i32, c);
            let col = &mut self.cols[c];
            col.present = generation;
            col.part = id;
        }
    }
}

/// Verdict for one overlap class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    pub class: usize,
    pub c1p: bool,
    /// Final parts left to right, each sorted by column index; present iff C1P.
    pub parts: Option<Vec<Vec<usize>>>,
    pub fail: Option<ClassFail>,
    pub swap_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFail {
    pub row: usize,
    pub reason: String,
}

/// One step of a traced swap partitioning.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub row: usize,
    pub outcome: RefineOutcome,
    /// Sorted parts after the step.
    pub parts: Vec<Vec<usize>>,
}

/// Runs swap partitioning class after class, reusing one buffer.
#[derive(Debug, Clone)]
pub struct SwapPartitioner {
    array: PartitionArray,
}

impl SwapPartitioner {
    pub fn new(n: usize) -> Self {
        SwapPartitioner { array: PartitionArray::new(n) }
    }

    pub fn array(&self) -> &PartitionArray {
        &self.array
    }

    /// Refines along `order`. A row that does not cut is deferred behind its
    /// successor; the successor must then cut, and so must the deferred row.
    pub fn run(
        &mut self,
        f: &SetFamily,
        class: usize,
        order: &[usize],
        mut trace: Option<&mut Vec<TraceStep>>,
    ) -> Result<ClassReport> {
        let Some(&first) = order.first() else {
            return Err(Error::InvalidOrder(format!("class {class} has an empty order")));
        };
        let capacity = self.array.support_size(order.iter().map(|&r| f.row(r)));
        self.array.reset(f.row(first), capacity);
        let mut record = |array: &PartitionArray, row: usize, outcome: RefineOutcome| {
            if let Some(t) = trace.as_deref_mut() {
                t.push(TraceStep { row, outcome, parts: array.sorted_parts() });
            }
        };
        record(&self.array, first, RefineOutcome::Cut);
        let mut swaps = 0;
        let fail = |row: usize, reason: String, swaps: usize| ClassReport {
            class,
            c1p: false,
            parts: None,
            fail: Some(ClassFail { row, reason }),
            swap_count: swaps,
        };
        let mut j = 1;
        while j < order.len() {
            let row = order[j];
            match self.array.refine(f.row(row)) {
                RefineOutcome::Cut => {
                    record(&self.array, row, RefineOutcome::Cut);
                    j += 1;
                }
                RefineOutcome::Fail(reason) => {
                    record(&self.array, row, RefineOutcome::Fail(reason.clone()));
                    return Ok(fail(row, reason, swaps));
                }
                RefineOutcome::NoCut(reason) => {
                    record(&self.array, row, RefineOutcome::NoCut(reason));
                    let Some(&next) = order.get(j + 1) else {
                        return Err(Error::InvalidOrder(format!(
                            "class {class}: last row {row} does not cut ({reason:?})"
                        )));
                    };
                    swaps += 1;
                    for r in [next, row] {
                        match self.array.refine(f.row(r)) {
                            RefineOutcome::Cut => record(&self.array, r, RefineOutcome::Cut),
                            RefineOutcome::Fail(reason) => {
                                record(&self.array, r, RefineOutcome::Fail(reason.clone()));
                                return Ok(fail(r, reason, swaps));
                            }
                            RefineOutcome::NoCut(reason) => {
                                return Err(Error::InvalidOrder(format!(
                                    "class {class}: row {r} does not cut after swapping {row} behind {next} ({reason:?})"
                                )));
                            }
                        }
                    }
                    j += 2;
                }
            }
        }
        Ok(ClassReport { class, c1p: true, parts: Some(self.array.sorted_parts()), fail: None, swap_count: swaps })
    }
}

/// Swap partitioning of one class along `order`.
pub fn swap_partition_class(f: &SetFamily, class: usize, order: &[usize]) -> Result<ClassReport> {
    SwapPartitioner::new(f.n()).run(f, class, order, None)
}

/// Like [`swap_partition_class`], also returning the partition after every
/// step.
pub fn swap_partition_traced(f: &SetFamily, class: usize, order: &[usize]) -> Result<(ClassReport, Vec<TraceStep>)> {
    let mut trace = Vec::new();
    let report = SwapPartitioner::new(f.n()).run(f, class, order, Some(&mut trace))?;
    Ok((report, trace))
}

/// Every intermediate result of the full test.
#[derive(Debug, Clone)]
pub struct PipelineRun {
    pub lr: LrOrder,
    pub max: MaxTable,
    pub labels: ClassLabeling,
    pub orders: SwapOrder,
    pub reports: Vec<ClassReport>,
    pub singletons: Vec<usize>,
    pub interval_total_length: usize,
    pub elapsed_ms: f64,
}

impl PipelineRun {
    pub fn c1p(&self) -> bool {
        self.reports.iter().all(|r| r.c1p)
    }

    pub fn swap_count(&self) -> usize {
        self.reports.iter().map(|r| r.swap_count).sum()
    }
}

pub fn run_pipeline(f: &SetFamily) -> Result<PipelineRun> {
    let started = Instant::now();
    let lr = lr_order(f);
    let pf = refine_step1(f, &lr);
    let (local, max) = Relabeled::new(f, &lr, &pf, &bounds(f, &pf));
    let g = &local.family;
    let sl = sl_lists(g, &local.lr);
    let mut ti = build_intervals_in(g, &local.lr, &sl, &local.max, &local.scan);
    let interval_total_length = ti.total_length();
    let (labels, orders) = classes_and_orders(&mut ti, g, &local.lr)?;
    let mut partitioner = SwapPartitioner::new(g.n());
    let reports = orders
        .iter()
        .enumerate()
        .map(|(k, order)| {
            let mut report = partitioner.run(g, k + 1, order, None)?;
            if let Some(parts) = report.parts.as_mut() {
                for part in parts.iter_mut() {
                    part.iter_mut().for_each(|c| *c = local.col_old[*c]);
                    part.sort_unstable();
                }
            }
            if let Some(fail) = report.fail.as_mut() {
                fail.row = local.row_old[fail.row];
            }
            Ok(report)
        })
        .collect::<Result<Vec<_>>>()?;
    let labels = labels.relabel(&local.row_old);
    let orders = orders.relabel(&local.row_old);
    let singletons = singleton_rows(&labels);
    Ok(PipelineRun {
        lr,
        max,
        labels,
        orders,
        reports,
        singletons,
        interval_total_length,
        elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}

/// Decides C1P for the whole family: the conjunction over overlap classes.
pub fn c1p_test(f: &SetFamily) -> Result<FamilyReport> {
    Ok(FamilyReport::new(f, &run_pipeline(f)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::parse_family;

    const F5: &str = "b c d\nc d e f g h\nd e\ne f g h\nb h\n";

    fn parts_of(text: &str, parts: &[&[usize]]) -> (SetFamily, PartitionArray) {
        let f = parse_family(text).unwrap();
        let mut p = PartitionArray::init_partition(f.n(), parts[0], f.n());
        for part in &parts[1..] {
            assert_eq!(p.refine(part), RefineOutcome::Cut);
        }
        (f, p)
    }

    #[test]
    fn init_single_part() {
        let p = PartitionArray::init_partition(7, &[0, 1, 2], 7);
        assert_eq!(p.parts(), vec![vec![0, 1, 2]]);
        assert_eq!((p.capacity(), p.window_len()), (7, 3));
        let p = PartitionArray::init_partition(1, &[0], 1);
        assert_eq!(p.parts(), vec![vec![0]]);
        assert!(p.is_consistent());
    }

    #[test]
    fn first_pair_rule() {
        let mut p = PartitionArray::init_partition(3, &[0, 1], 3);
        assert_eq!(p.refine(&[1, 2]), RefineOutcome::Cut);
        assert_eq!(p.sorted_parts(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn classify_no_cut_reasons() {
        let mut p = PartitionArray::init_partition(5, &[0, 1, 2, 3], 5);
        assert_eq!(p.classify(&[1, 2]), Classification::NoCut(NoCutReason::InsideOnePart));
        assert_eq!(p.classify(&[4]), Classification::NoCut(NoCutReason::Disjoint));
        assert_eq!(p.classify(&[0, 1, 2, 3, 4]), Classification::NoCut(NoCutReason::ContainsAllParts));
        assert_eq!(p.parts(), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn contains_all_parts() {
        let (_, mut p) = parts_of("a b c d e", &[&[0, 1], &[1, 2, 3]]);
        assert_eq!(p.sorted_parts(), vec![vec![0], vec![1], vec![2, 3]]);
        let before = p.parts();
        assert_eq!(p.classify(&[0, 1, 2, 3, 4]), Classification::NoCut(NoCutReason::ContainsAllParts));
        assert_eq!(p.parts(), before);
    }

    #[test]
    fn f5_trace_steps() {
        let f = parse_family(F5).unwrap();
        let mut p = PartitionArray::init_partition(f.n(), f.row(0), f.n());
        assert_eq!(p.parts(), vec![vec![0, 1, 2]]);
        assert_eq!(p.refine(f.row(1)), RefineOutcome::Cut);
        assert_eq!(p.sorted_parts(), vec![vec![0], vec![1, 2], vec![3, 4, 5, 6]]);
        assert_eq!(p.refine(f.row(2)), RefineOutcome::Cut);
        assert_eq!(p.sorted_parts(), vec![vec![0], vec![1], vec![2], vec![3], vec![4, 5, 6]]);
        assert_eq!(p.refine(f.row(3)), RefineOutcome::Cut);
        assert_eq!(p.sorted_parts(), vec![vec![0], vec![1], vec![2], vec![3], vec![4, 5, 6]]);
        match p.classify(f.row(4)) {
            Classification::Cut(plan) => {
                assert!(plan.is_embedded());
                let err = p.apply_refine(f.row(4), plan).unwrap_err();
                assert!(err.contains("strictly between"), "{err}");
            }
            other => panic!("expected a cut plan, got {other:?}"),
        }
        assert!(p.is_consistent());
    }

    #[test]
    fn growth_on_the_left_wraps_around() {
        // (abc) then {c,d}: right border. Then {a,x}: left border, wraps.
        let mut p = PartitionArray::init_partition(5, &[0, 1, 2], 5);
        assert_eq!(p.refine(&[2, 3]), RefineOutcome::Cut);
        assert_eq!(p.refine(&[0, 4]), RefineOutcome::Cut);
        assert_eq!(p.sorted_parts(), vec![vec![4], vec![0], vec![1], vec![2], vec![3]]);
        assert!(p.is_consistent());
    }

    #[test]
    fn extends_not_at_extremity_fails() {
        // (a)(b)(c) from {a,b},{b,c}; {b,x} touches the middle only
        let mut p = PartitionArray::init_partition(4, &[0, 1], 4);
        p.refine(&[1, 2]);
        assert_eq!(p.refine(&[1, 3]), RefineOutcome::Fail("touched block is not at an extremity of the partition".into()));
        assert!(p.is_consistent());
    }

    #[test]
    fn extends_with_two_partial_parts_fails() {
        // (a)(b c)(d e) then {a, d, x}? a full, (de) partial: gap. Use {c, d, x}.
        let mut p = PartitionArray::init_partition(6, &[0, 1, 2], 6);
        p.refine(&[1, 2, 3, 4]);
        assert_eq!(p.sorted_parts(), vec![vec![0], vec![1, 2], vec![3, 4]]);
        match p.refine(&[2, 3, 5]) {
            RefineOutcome::Fail(reason) => assert!(reason.contains("more than one"), "{reason}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn interior_partial_part_fails() {
        // (a)(b)(c d)(e)(f): {b, c, e} touches (cd) partially in the middle
        let mut p = PartitionArray::init_partition(6, &[0, 1, 2, 3], 6);
        p.refine(&[2, 3, 4]);
        p.refine(&[4, 5]);
        p.refine(&[0, 1, 2, 3, 4]);
        let cls = p.classify(&[1]);
        assert_eq!(cls, Classification::NoCut(NoCutReason::InsideOnePart));
        p.refine(&[1, 2, 3]);
        assert_eq!(p.sorted_parts(), vec![vec![0], vec![1], vec![2, 3], vec![4], vec![5]]);
        match p.refine(&[1, 2, 4]) {
            RefineOutcome::Fail(reason) => assert!(reason.contains("partially"), "{reason}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn swap_class_examples() {
        let f = parse_family(F5).unwrap();
        let r = swap_partition_class(&f, 1, &[0, 1, 4, 3, 2]).unwrap();
        assert!(!r.c1p);
        assert_eq!(r.fail.as_ref().unwrap().row, 4);

        // A={a,b,c,d}, B={b,c}, C={a,b,e}: B is deferred behind C.
        let f = parse_family("a b c d\nb c\na b e\n").unwrap();
        let r = swap_partition_class(&f, 1, &[0, 1, 2]).unwrap();
        assert!(r.c1p);
        assert_eq!(r.swap_count, 1);
        // (d)(c)(b)(a)(e): the right border is preferred for the first extension.
        assert_eq!(r.parts.unwrap(), vec![vec![3], vec![2], vec![1], vec![0], vec![4]]);

        let f = parse_family("a b\nb c\n").unwrap();
        let r = swap_partition_class(&f, 1, &[0, 1]).unwrap();
        assert_eq!(r.parts.unwrap(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn invalid_orders() {
        let f = parse_family("a b c d\nb c\n").unwrap();
        assert!(matches!(swap_partition_class(&f, 1, &[0, 1]), Err(Error::InvalidOrder(_))));
        let f = parse_family("a b c d\nb c\nx y\n").unwrap();
        assert!(matches!(swap_partition_class(&f, 1, &[0, 1, 2]), Err(Error::InvalidOrder(_))));
    }

    #[test]
    fn pipeline_verdicts() {
        assert!(!c1p_test(&parse_family(F5).unwrap()).unwrap().c1p);
        assert!(c1p_test(&parse_family("").unwrap()).unwrap().c1p);
        assert!(c1p_test(&parse_family("a b c").unwrap()).unwrap().c1p);
        assert!(c1p_test(&parse_family("a b c\nc d\nd e f\nb c d\n").unwrap()).unwrap().c1p);
    }
}
