//! Overlap classes and swap overlap orders.
//!
//! For every column `c` and every row `R` in `SL(c)` with `Max(R)` defined,
//! the run of `SL(c)` starting at `R` and continuing while rows are not
//! earlier than `Max(R)` in LR order forms an interval. All rows of an
//! interval lie in one overlap class. An interval is of kind `M` when it ends
//! on `Max(R)` itself and of kind `E` otherwise. Walking the intervals from
//! row to row labels the classes; emitting rows in the walk order gives a
//! swap overlap order for each class.

use crate::error::{Error, Result};
use crate::family::{LrOrder, SetFamily, SlLists};
use crate::maxcomp::MaxTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntervalKind {
    /// Ends on `Max(First)`.
    M,
    /// Ends before reaching `Max(First)`, which is not in this column's list.
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    pub column: usize,
    /// Slice bounds into `SL(column)`.
    pub start: usize,
    pub end: usize,
    pub kind: IntervalKind,
}

/// Intervals bucketed by member row.
///
/// Members of an interval are read from its slice of `SL(column)`. Each row's
/// cell lists the ids of the `M` intervals containing it, then those of the
/// `E` intervals, each group in insertion order. Removal only flags the
/// interval; per-row cursors skip flagged ids, so every cell entry is passed
/// over at most once.
///
/// Interval ids are insertion positions, which may differ from the order in
/// which intervals were discovered.
#[derive(Debug, Clone)]
pub struct TiTable<'s> {
    sl: &'s SlLists,
    intervals: Vec<Interval>,
    removed: Vec<bool>,
    live: usize,
    total_length: usize,
    cells: Vec<Cell>,
    cell_ids: Vec<u32>,
    /// `M` intervals grouped by first row, with a per-row cursor past the
    /// removed ones.
    own_m_offsets: Vec<u32>,
    own_m: Vec<u32>,
    own_m_cursor: Vec<u32>,
}

/// Bounds of one row's cell in `cell_ids`: `M` ids in `start..mid`, `E` ids
/// in `mid..end`, with one cursor per group past removed ids.
#[derive(Debug, Clone, Copy, Default)]
struct Cell {
    start: u32,
    mid: u32,
    end: u32,
    cursor: [u32; 2],
}

fn slot(kind: IntervalKind) -> usize {
    match kind {
        IntervalKind::M => 0,
        IntervalKind::E => 1,
    }
}

impl<'s> TiTable<'s> {
    /// `keys[i]` is the insertion position of `intervals[i]` and becomes its
    /// id.
    fn new(sl: &'s SlLists, intervals: Vec<Interval>, keys: &[u32], m: usize) -> Self {
        let mut cells = vec![Cell::default(); m];
        let mut own_count = vec![0u32; m + 1];
        let mut total_length = 0;
        for iv in &intervals {
            let members = &sl.get(iv.column)[iv.start..iv.end];
            total_length += members.len();
            let k = slot(iv.kind);
            for &r in members {
                cells[r].cursor[k] += 1;
            }
            if iv.kind == IntervalKind::M {
                own_count[members[0] + 1] += 1;
            }
        }
        assert!(total_length < u32::MAX as usize, "interval mass must fit in 32 bits");
        let mut acc = 0;
        for cell in &mut cells {
            let [nm, ne] = cell.cursor;
            cell.start = acc;
            cell.mid = acc + nm;
            cell.end = cell.mid + ne;
            cell.cursor = [cell.start, cell.mid];
            acc = cell.end;
        }
        for r in 0..m {
            own_count[r + 1] += own_count[r];
        }
        let intervals = if keys.iter().enumerate().all(|(i, &k)| k as usize == i) {
            intervals
        } else {
            let mut by_key = intervals.clone();
            for (iv, &key) in intervals.iter().zip(keys) {
                by_key[key as usize] = *iv;
            }
            by_key
        };
        let mut own_fill = own_count[..m].to_vec();
        let mut cell_ids = vec![0u32; acc as usize];
        let mut own_m = vec![0u32; own_count[m] as usize];
        for (i, iv) in intervals.iter().enumerate() {
            let members = &sl.get(iv.column)[iv.start..iv.end];
            let k = slot(iv.kind);
            for &r in members {
                let fill = &mut cells[r].cursor[k];
                cell_ids[*fill as usize] = i as u32;
                *fill += 1;
            }
            if iv.kind == IntervalKind::M {
                let r = members[0];
                own_m[own_fill[r] as usize] = i as u32;
                own_fill[r] += 1;
            }
        }
        for cell in &mut cells {
            cell.cursor = [cell.start, cell.mid];
        }
        TiTable {
            sl,
            removed: vec![false; intervals.len()],
            live: intervals.len(),
            intervals,
            total_length,
            cells,
            cell_ids,
            own_m_cursor: own_count[..m].to_vec(),
            own_m_offsets: own_count,
            own_m,
        }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn members(&self, i: usize) -> &'s [usize] {
        let iv = &self.intervals[i];
        &self.sl.get(iv.column)[iv.start..iv.end]
    }

    /// Sum of interval lengths.
    pub fn total_length(&self) -> usize {
        self.total_length
    }

    /// Intervals not yet removed.
    pub fn live(&self) -> usize {
        self.live
    }

    /// The first live interval of the given kind in `row`'s cell.
    fn first_in(&mut self, kind: IntervalKind, row: usize) -> Option<usize> {
        let k = slot(kind);
        let cell = &mut self.cells[row];
        let end = if k == 0 { cell.mid } else { cell.end };
        let cursor = &mut cell.cursor[k];
        while *cursor < end && self.removed[self.cell_ids[*cursor as usize] as usize] {
            *cursor += 1;
        }
        (*cursor < end).then(|| self.cell_ids[*cursor as usize] as usize)
    }

    /// A live `M` interval whose first row is `row`.
    fn own_m(&mut self, row: usize) -> Option<usize> {
        let end = self.own_m_offsets[row + 1];
        let cursor = &mut self.own_m_cursor[row];
        while *cursor < end && self.removed[self.own_m[*cursor as usize] as usize] {
            *cursor += 1;
        }
        (*cursor < end).then(|| self.own_m[*cursor as usize] as usize)
    }

    pub fn is_cell_empty(&mut self, row: usize) -> bool {
        self.first_in(IntervalKind::M, row).is_none() && self.first_in(IntervalKind::E, row).is_none()
    }

    /// Live intervals in `row`'s cell: `M` ones then `E` ones, each in
    /// insertion order.
    pub fn cell(&self, row: usize) -> Vec<usize> {
        let cell = self.cells[row];
        let ids = &self.cell_ids[cell.start as usize..cell.end as usize];
        ids.iter().map(|&i| i as usize).filter(|&i| !self.removed[i]).collect()
    }

    fn remove(&mut self, i: usize) {
        debug_assert!(!self.removed[i]);
        self.removed[i] = true;
        self.live -= 1;
    }
}

/// Builds every interval of length at least 2, scanning columns in index
/// order and each `SL(c)` front to back.
pub fn build_intervals<'s>(f: &SetFamily, lr: &LrOrder, sl: &'s SlLists, max: &MaxTable) -> TiTable<'s> {
    let scan: Vec<usize> = (0..f.n()).collect();
    build_intervals_in(f, lr, sl, max, &scan)
}

/// [`build_intervals`] where cells follow the column order `scan` (a
/// permutation of the columns) instead of index order. Storage order stays
/// by column index.
pub(crate) fn build_intervals_in<'s>(f: &SetFamily, lr: &LrOrder, sl: &'s SlLists, max: &MaxTable, scan: &[usize]) -> TiTable<'s> {
    assert_eq!(scan.len(), f.n(), "scan must list every column");
    let mut intervals = Vec::new();
    let mut col_first = Vec::with_capacity(f.n() + 1);
    let mut ranks = Vec::new();
    for c in 0..f.n() {
        col_first.push(intervals.len());
        let list = sl.get(c);
        // Ranks strictly decrease along SL(c), so each slice end is a binary
        // search.
        ranks.clear();
        ranks.extend(list.iter().map(|&y| lr.rank(y)));
        for (start, &r) in list.iter().enumerate() {
            let Some(mr) = max.get(r) else { continue };
            let limit = lr.rank(mr);
            let end = start + ranks[start..].partition_point(|&y| y >= limit);
            if end - start < 2 {
                continue;
            }
            let kind = if list[end - 1] == mr { IntervalKind::M } else { IntervalKind::E };
            intervals.push(Interval { column: c, start, end, kind });
        }
    }
    col_first.push(intervals.len());
    assert!(intervals.len() <= u32::MAX as usize, "interval ids must fit in 32 bits");
    let mut base = vec![0u32; f.n()];
    let mut acc = 0;
    for &c in scan {
        base[c] = acc;
        acc += (col_first[c + 1] - col_first[c]) as u32;
    }
    let keys: Vec<u32> = intervals
        .iter()
        .enumerate()
        .map(|(i, iv)| base[iv.column] + (i - col_first[iv.column]) as u32)
        .collect();
    TiTable::new(sl, intervals, &keys, f.m())
}

/// Overlap class id per row; 0 marks rows that overlap nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassLabeling {
    nc: Vec<usize>,
    count: usize,
}

impl ClassLabeling {
    pub fn class_of(&self, r: usize) -> usize {
        self.nc[r]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.nc
    }

    /// The same labeling over original row ids, `old[r]` being the original
    /// id of row `r`.
    pub(crate) fn relabel(&self, old: &[usize]) -> ClassLabeling {
        let mut nc = vec![0; self.nc.len()];
        for (r, &c) in self.nc.iter().enumerate() {
            nc[old[r]] = c;
        }
        ClassLabeling { nc, count: self.count }
    }

    /// Number of classes with at least two rows.
    pub fn count(&self) -> usize {
        self.count
    }

    /// Rows of each class (ids `1..=count`), ascending.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (r, &c) in self.nc.iter().enumerate() {
            if c > 0 {
                out[c - 1].push(r);
            }
        }
        out
    }
}

/// Emitted row sequence per class; entry `k` belongs to class `k + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapOrder {
    orders: Vec<Vec<usize>>,
}

impl SwapOrder {
    pub(crate) fn relabel(&self, old: &[usize]) -> SwapOrder {
        SwapOrder { orders: self.orders.iter().map(|o| o.iter().map(|&r| old[r]).collect()).collect() }
    }

    pub fn get(&self, class: usize) -> &[usize] {
        &self.orders[class - 1]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.orders.iter().map(Vec::as_slice)
    }
}

#[derive(Clone, Copy)]
enum Frame {
    /// Drains the `M` intervals of a row's cell, then its `E` intervals.
    Cell(usize),
    /// Visits members `next..` of an interval whose cells are non-empty.
    Members { interval: usize, next: usize },
    /// Resumes an `E` interval once its first row's cell has been drained.
    AfterFirst(usize),
}

struct Walk<'t, 's> {
    ti: &'t mut TiTable<'s>,
    nc: Vec<usize>,
    class: usize,
    order: Vec<usize>,
    stack: Vec<Frame>,
}

impl Walk<'_, '_> {
    fn emit(&mut self, r: usize) {
        if self.nc[r] == 0 {
            self.nc[r] = self.class;
            self.order.push(r);
        }
    }

    fn emit_members(&mut self, i: usize, from: usize) {
        for &r in &self.ti.members(i)[from..] {
            self.emit(r);
        }
    }

    /// Depth-first walk from one start cell, mirroring the recursive
    /// formulation with an explicit stack.
    fn run(&mut self, start: usize) -> Result<()> {
        self.stack.push(Frame::Cell(start));
        while let Some(&top) = self.stack.last() {
            match top {
                Frame::Cell(row) => {
                    // An unplaced row is reached only as the first row of an E
                    // interval (or as a start). Its own M interval must go
                    // first so the row is placed next to its Max before any
                    // row that only overlaps it.
                    let own = if self.nc[row] == 0 { self.ti.own_m(row) } else { None };
                    if let Some(i) = own.or_else(|| self.ti.first_in(IntervalKind::M, row)) {
                        self.ti.remove(i);
                        let members = self.ti.members(i);
                        let (first, last) = (members[0], members[members.len() - 1]);
                        self.emit(first);
                        self.emit(last);
                        for &r in &members[1..members.len() - 1] {
                            self.emit(r);
                        }
                        self.stack.push(Frame::Members { interval: i, next: 0 });
                    } else if let Some(i) = self.ti.first_in(IntervalKind::E, row) {
                        self.ti.remove(i);
                        let first = self.ti.members(i)[0];
                        self.stack.push(Frame::AfterFirst(i));
                        self.stack.push(Frame::Cell(first));
                    } else {
                        self.stack.pop();
                    }
                }
                Frame::Members { interval, next } => {
                    let members = &self.ti.members(interval)[next..];
                    match members.iter().position(|&r| !self.ti.is_cell_empty(r)) {
                        Some(k) => {
                            let row = members[k];
                            *self.stack.last_mut().unwrap() = Frame::Members { interval, next: next + k + 1 };
                            self.stack.push(Frame::Cell(row));
                        }
                        None => {
                            self.stack.pop();
                        }
                    }
                }
                Frame::AfterFirst(i) => {
                    let first = self.ti.members(i)[0];
                    if self.nc[first] != self.class {
                        return Err(Error::InternalInvariant(format!(
                            "first row {first} of an E interval is unlabeled after draining its cell"
                        )));
                    }
                    self.emit_members(i, 1);
                    *self.stack.last_mut().unwrap() = Frame::Members { interval: i, next: 1 };
                }
            }
        }
        Ok(())
    }
}

/// Labels overlap classes and emits a swap overlap order for each, consuming
/// the interval table.
///
/// A class is started at the earliest row in LR order whose cell still holds
/// an `M` interval.
pub fn classes_and_orders(ti: &mut TiTable<'_>, f: &SetFamily, lr: &LrOrder) -> Result<(ClassLabeling, SwapOrder)> {
    let mut walk = Walk { ti, nc: vec![0; f.m()], class: 0, order: Vec::new(), stack: Vec::new() };
    let mut orders = Vec::new();
    for &r in lr.order() {
        if walk.ti.first_in(IntervalKind::M, r).is_none() {
            continue;
        }
        walk.class += 1;
        walk.run(r)?;
        orders.push(std::mem::take(&mut walk.order));
    }
    if walk.ti.live() != 0 {
        return Err(Error::InternalInvariant(format!(
            "{} intervals left after every M start was exhausted",
            walk.ti.live()
        )));
    }
    Ok((ClassLabeling { nc: walk.nc, count: walk.class }, SwapOrder { orders }))
}

/// Rows belonging to no nontrivial class.
pub fn singleton_rows(labels: &ClassLabeling) -> Vec<usize> {
    labels.nc.iter().enumerate().filter(|&(_, &c)| c == 0).map(|(r, _)| r).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{lr_order, parse_family, sl_lists};
    use crate::maxcomp::compute_max;

    const F5: &str = "b c d\nc d e f g h\nd e\ne f g h\nb h\n";

    fn table(text: &str) -> (SetFamily, LrOrder, TiTable<'static>) {
        let f = parse_family(text).unwrap();
        let lr = lr_order(&f);
        let sl: &'static SlLists = Box::leak(Box::new(sl_lists(&f, &lr)));
        let max = compute_max(&f, &lr);
        let ti = build_intervals(&f, &lr, sl, &max);
        (f, lr, ti)
    }

    #[test]
    fn intervals_f5() {
        let (_, _, ti) = table(F5);
        let got: Vec<(usize, IntervalKind, Vec<usize>)> =
            (0..ti.intervals().len()).map(|i| (ti.intervals()[i].column, ti.intervals()[i].kind, ti.members(i).to_vec())).collect();
        use IntervalKind::*;
        // columns b=0 c=1 d=2 e=3 h=6; rows R2=0 R3=1 R4=2 R5=3 R7=4
        assert_eq!(
            got,
            vec![
                (0, E, vec![4, 0]),
                (1, M, vec![0, 1]),
                (2, E, vec![2, 0]),
                (2, M, vec![0, 1]),
                (3, M, vec![2, 3]),
                (6, M, vec![4, 3, 1]),
            ]
        );
        assert_eq!(ti.cell(1), [1, 3, 5]);
        assert_eq!(ti.total_length(), 13);
    }

    #[test]
    fn no_intervals_for_disjoint_rows() {
        let (f, lr, mut ti) = table("a b\nc d\n");
        assert!(ti.intervals().is_empty());
        let (labels, orders) = classes_and_orders(&mut ti, &f, &lr).unwrap();
        assert_eq!(labels.count(), 0);
        assert_eq!(orders.iter().count(), 0);
        assert_eq!(singleton_rows(&labels), [0, 1]);
    }

    #[test]
    fn order_f5() {
        let (f, lr, mut ti) = table(F5);
        let (labels, orders) = classes_and_orders(&mut ti, &f, &lr).unwrap();
        assert_eq!(labels.as_slice(), [1, 1, 1, 1, 1]);
        assert_eq!(orders.get(1), [0, 1, 4, 3, 2]);
        assert!(singleton_rows(&labels).is_empty());
        assert_eq!(ti.live(), 0);
    }

    #[test]
    fn nested_rows_are_singletons() {
        let (f, lr, mut ti) = table("a b c\nb\n");
        let (labels, _) = classes_and_orders(&mut ti, &f, &lr).unwrap();
        assert_eq!(singleton_rows(&labels), [0, 1]);
    }

    #[test]
    fn unplaced_first_row_is_placed_with_its_max() {
        // Draining R2's cell in insertion order would emit R3 and R1 before
        // R2, and neither of them overlaps R0 or R5.
        let text = "a e\nb d\na d\nc d\nb c d\na b c d\n";
        let (f, lr, mut ti) = table(text);
        let (labels, orders) = classes_and_orders(&mut ti, &f, &lr).unwrap();
        assert_eq!(labels.count(), 1);
        assert_eq!(orders.get(1), [0, 5, 2, 4, 1, 3]);
        assert!(crate::oracle::check_swap_order(&f, &labels.classes()[0], orders.get(1)));
    }

    #[test]
    fn two_classes() {
        let (f, lr, mut ti) = table("a b\nb c\nx y z\ny z w\nq\n");
        let (labels, orders) = classes_and_orders(&mut ti, &f, &lr).unwrap();
        assert_eq!(labels.count(), 2);
        assert_eq!(labels.classes(), vec![vec![2, 3], vec![0, 1]]);
        assert_eq!(orders.get(1), [3, 2]);
        assert_eq!(singleton_rows(&labels), [4]);
    }
}
