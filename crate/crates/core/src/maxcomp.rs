//! `Max(R)` for every row: the earliest row in LR order that precedes `R`
//! and overlaps it.
//!
//! Three passes, none of which materializes the row/column incidence matrix:
//!
//! 1. refine the column set by every row in LR order, always moving the
//!    row's columns to the right end of each part it touches; the final
//!    partition `P_f` sorts the columns lexicographically;
//! 2. record the leftmost and rightmost `P_f` position of every row and
//!    bucket the rows by right end, sorted by left end (the `AM` lists);
//! 3. refine again from `P_f` order. Whenever row `R2` splits a part into
//!    `C' C''` at boundary `l`, every pending row whose right end lies in
//!    `C''` and whose left end is at most `l` gets `Max = R2`.

use crate::family::{LrOrder, SetFamily};

const NIL: usize = usize::MAX;

/// An effective split `C' C''` produced by one refinement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Split {
    /// First position of `C''`; `C'` ends at `boundary - 1`.
    pub boundary: usize,
    /// One past the last position of `C''`.
    pub end: usize,
}

/// Ordered partition of all columns where a refining row is always split
/// off to the right of each part it touches.
#[derive(Debug, Clone)]
pub struct RestrictedPartition {
    elems: Vec<u32>,
    cols: Vec<ColState>,
    parts: Vec<PartState>,
    epoch: u32,
    touched: Vec<u32>,
    moves: usize,
}

#[derive(Debug, Clone, Copy, Default)]
struct ColState {
    pos: u32,
    part: u32,
    mark: u32,
}

#[derive(Debug, Clone, Copy, Default)]
struct PartState {
    start: u32,
    end: u32,
    count: u32,
    cursor: u32,
}

impl PartState {
    fn new(start: usize, end: usize) -> Self {
        PartState { start: start as u32, end: end as u32, count: 0, cursor: 0 }
    }
}

impl RestrictedPartition {
    /// One part holding every column in input order.
    pub fn new(n: usize) -> Self {
        Self::from_order((0..n).collect())
    }

    /// One part holding every column in the given order.
    pub fn from_order(order: Vec<usize>) -> Self {
        let n = order.len();
        let parts = if n == 0 { Vec::new() } else { vec![PartState::new(0, n)] };
        Self::build(order, vec![0; n], parts)
    }

    /// A partition with the given parts, left to right. Together the parts
    /// must hold each of `0..n` exactly once.
    pub fn from_parts(parts: &[Vec<usize>]) -> Self {
        let n: usize = parts.iter().map(Vec::len).sum();
        let mut elems = Vec::with_capacity(n);
        let mut part_of = vec![u32::MAX; n];
        let mut ranges = Vec::with_capacity(parts.len());
        for (p, part) in parts.iter().enumerate() {
            assert!(!part.is_empty(), "parts must be non-empty");
            let start = elems.len();
            for &c in part {
                assert!(c < n && part_of[c] == u32::MAX, "parts must tile 0..n");
                part_of[c] = p as u32;
                elems.push(c);
            }
            ranges.push(PartState::new(start, elems.len()));
        }
        Self::build(elems, part_of, ranges)
    }

    fn build(elems: Vec<usize>, part_of: Vec<u32>, parts: Vec<PartState>) -> Self {
        let n = elems.len();
        assert!(n < u32::MAX as usize, "column count must fit in 32 bits");
        let mut cols = vec![ColState::default(); n];
        for (i, &c) in elems.iter().enumerate() {
            cols[c] = ColState { pos: i as u32, part: part_of[c], mark: 0 };
        }
        RestrictedPartition {
            elems: elems.into_iter().map(|c| c as u32).collect(),
            cols,
            parts,
            epoch: 0,
            touched: Vec::new(),
            moves: 0,
        }
    }

    /// Columns left to right.
    pub fn elements(&self) -> Vec<usize> {
        self.elems.iter().map(|&c| c as usize).collect()
    }

    pub fn position(&self, c: usize) -> usize {
        self.cols[c].pos as usize
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    /// Number of element moves performed by all refinements so far.
    pub fn moves(&self) -> usize {
        self.moves
    }

    /// Parts left to right, each in array order.
    pub fn parts(&self) -> Vec<Vec<usize>> {
        let mut ranges: Vec<(usize, usize)> = self.parts.iter().map(|p| (p.start as usize, p.end as usize)).collect();
        ranges.sort_unstable();
        ranges.iter().map(|&(s, e)| self.elems[s..e].iter().map(|&c| c as usize).collect()).collect()
    }

    /// Refines every part by `row`, reporting each effective split.
    ///
    /// Columns of `row` are moved to the right end of their part, touching
    /// only cells that are out of place. Cost is `O(|row|)`.
    pub fn refine(&mut self, row: &[usize], mut on_split: impl FnMut(Split)) {
        self.epoch = self.epoch.checked_add(1).expect("refinement epoch overflow");
        let epoch = self.epoch;
        self.touched.clear();
        for &c in row {
            let col = &mut self.cols[c];
            col.mark = epoch;
            let part = &mut self.parts[col.part as usize];
            if part.count == 0 {
                self.touched.push(col.part);
            }
            part.count += 1;
        }
        for &p in &self.touched {
            let part = &mut self.parts[p as usize];
            part.cursor = part.end - part.count;
        }
        for &c in row {
            let ColState { pos: from, part: p, .. } = self.cols[c];
            let part = self.parts[p as usize];
            if part.end - part.start == part.count || from >= part.end - part.count {
                continue;
            }
            let mut q = part.cursor;
            while self.cols[self.elems[q as usize] as usize].mark == epoch {
                q += 1;
            }
            self.parts[p as usize].cursor = q + 1;
            let other = self.elems[q as usize];
            self.elems.swap(from as usize, q as usize);
            self.cols[c].pos = q;
            self.cols[other as usize].pos = from;
            self.moves += 1;
        }
        for i in 0..self.touched.len() {
            let p = self.touched[i] as usize;
            let part = &mut self.parts[p];
            let t = std::mem::take(&mut part.count);
            if t == part.end - part.start {
                continue;
            }
            let (boundary, end) = (part.end - t, part.end);
            part.end = boundary;
            let fresh = self.parts.len() as u32;
            self.parts.push(PartState { start: boundary, end, count: 0, cursor: 0 });
            for &c in &self.elems[boundary as usize..end as usize] {
                self.cols[c as usize].part = fresh;
            }
            on_split(Split { boundary: boundary as usize, end: end as usize });
        }
    }

    /// Reorders the inside of every part by ascending column index. `O(n)`.
    fn sort_within_parts(&mut self) {
        let mut next: Vec<u32> = self.parts.iter().map(|p| p.start).collect();
        for c in 0..self.elems.len() {
            let p = self.cols[c].part as usize;
            self.elems[next[p] as usize] = c as u32;
            self.cols[c].pos = next[p];
            next[p] += 1;
        }
    }
}

/// Refines the full column set by every row in LR order (pass 1). Equal
/// columns end up sharing a part, ordered by column index.
pub fn refine_step1(f: &SetFamily, lr: &LrOrder) -> RestrictedPartition {
    let mut p = RestrictedPartition::new(f.n());
    for &r in lr.order() {
        p.refine(f.row(r), |_| {});
    }
    p.sort_within_parts();
    p
}

/// Leftmost and rightmost `P_f` position of every row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsMap {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

pub fn bounds(f: &SetFamily, pf: &RestrictedPartition) -> BoundsMap {
    let (left, right) = f
        .rows()
        .iter()
        .map(|row| {
            row.iter().fold((usize::MAX, 0), |(lo, hi), &c| {
                let p = pf.position(c);
                (lo.min(p), hi.max(p))
            })
        })
        .unzip();
    BoundsMap { left, right }
}

/// Per `P_f` position, the rows whose right end is there, by ascending left
/// end. Doubly linked through row indices so any row unlinks in `O(1)`.
#[derive(Debug, Clone)]
pub struct AmStructure {
    head: Vec<usize>,
    next: Vec<usize>,
    prev: Vec<usize>,
    slot: Vec<usize>,
}

impl AmStructure {
    pub fn front(&self, p: usize) -> Option<usize> {
        Some(self.head[p]).filter(|&r| r != NIL)
    }

    pub fn contains(&self, r: usize) -> bool {
        self.slot[r] != NIL
    }

    pub fn remove(&mut self, r: usize) {
        let p = self.slot[r];
        if p == NIL {
            return;
        }
        let (a, b) = (self.prev[r], self.next[r]);
        if a == NIL {
            self.head[p] = b;
        } else {
            self.next[a] = b;
        }
        if b != NIL {
            self.prev[b] = a;
        }
        self.slot[r] = NIL;
    }

    /// Rows listed at position `p`, front first.
    pub fn list(&self, p: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut r = self.head[p];
        while r != NIL {
            out.push(r);
            r = self.next[r];
        }
        out
    }
}

/// Bucket sorts rows by left end (ties in LR order), then appends each to the
/// list at its right end. `O(n + m)`.
pub fn build_am(b: &BoundsMap, lr: &LrOrder) -> AmStructure {
    let positions = b.right.iter().map(|&r| r + 1).max().unwrap_or(0);
    let m = b.left.len();
    let mut start = vec![0usize; positions + 1];
    for &l in &b.left {
        start[l + 1] += 1;
    }
    for p in 0..positions {
        start[p + 1] += start[p];
    }
    let mut by_left = vec![0; m];
    for &r in lr.order() {
        by_left[start[b.left[r]]] = r;
        start[b.left[r]] += 1;
    }
    let mut am = AmStructure { head: vec![NIL; positions], next: vec![NIL; m], prev: vec![NIL; m], slot: vec![NIL; m] };
    let mut tail = vec![NIL; positions];
    for r in by_left {
        let p = b.right[r];
        am.slot[r] = p;
        am.prev[r] = tail[p];
        if tail[p] == NIL {
            am.head[p] = r;
        } else {
            am.next[tail[p]] = r;
        }
        tail[p] = r;
    }
    am
}

/// `Max(R)` per row, `None` when no earlier row overlaps `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxTable {
    max: Vec<Option<usize>>,
}

impl MaxTable {
    pub fn new(max: Vec<Option<usize>>) -> Self {
        MaxTable { max }
    }

    pub fn get(&self, r: usize) -> Option<usize> {
        self.max[r]
    }

    pub fn as_slice(&self) -> &[Option<usize>] {
        &self.max
    }
}

/// Everything the three passes produce, kept for inspection.
#[derive(Debug, Clone)]
pub struct MaxComputation {
    pub pf: RestrictedPartition,
    pub bounds: BoundsMap,
    pub table: MaxTable,
    /// Element moves performed by pass 3; zero whenever `P_f` is correct.
    pub step3_moves: usize,
}

pub fn compute_max(f: &SetFamily, lr: &LrOrder) -> MaxTable {
    run_max(f, lr).table
}

pub fn run_max(f: &SetFamily, lr: &LrOrder) -> MaxComputation {
    let pf = refine_step1(f, lr);
    let bounds = bounds(f, &pf);
    let (table, step3_moves) = max_pass(f, lr, pf.elements(), &bounds);
    MaxComputation { step3_moves, pf, bounds, table }
}

/// Pass 3: refines from the column order `pf_order` (the `P_f` order) and
/// reads `Max` off the splits. Returns the table and the moves performed.
pub(crate) fn max_pass(f: &SetFamily, lr: &LrOrder, pf_order: Vec<usize>, bounds: &BoundsMap) -> (MaxTable, usize) {
    let mut am = build_am(bounds, lr);
    let mut max = vec![None; f.m()];
    let mut p = RestrictedPartition::from_order(pf_order);
    for &r2 in lr.order() {
        // Unlink before refining: a split by r2 may separate r2's own ends.
        am.remove(r2);
        p.refine(f.row(r2), |split| {
            let l = split.boundary - 1;
            for q in split.boundary..split.end {
                while let Some(r) = am.front(q) {
                    if bounds.left[r] > l {
                        break;
                    }
                    assert!(lr.precedes(r2, r), "Max candidate {r2} does not precede row {r}");
                    am.remove(r);
                    max[r] = Some(r2);
                }
            }
        });
    }
    (MaxTable { max }, p.moves())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{lr_order, parse_family};

    const F5: &str = "b c d\nc d e f g h\nd e\ne f g h\nb h\n";

    fn sorted(parts: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        parts
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p
            })
            .collect()
    }

    #[test]
    fn restricted_split_moves_row_right() {
        // a i j k l b c d e f g h  ->  indices 0..12
        let parts = vec![vec![0], vec![1, 2, 3, 4], vec![5], vec![6, 7], vec![8, 9, 10, 11]];
        let mut p = RestrictedPartition::from_parts(&parts);
        let mut splits = Vec::new();
        p.refine(&[7, 8], |s| splits.push(s));
        let expected = vec![vec![0], vec![1, 2, 3, 4], vec![5], vec![6], vec![7], vec![9, 10, 11], vec![8]];
        assert_eq!(sorted(p.parts()), expected);
        assert_eq!(splits.len(), 2);
    }

    #[test]
    fn covering_row_does_not_split() {
        let mut p = RestrictedPartition::new(3);
        let mut splits = 0;
        p.refine(&[0, 1, 2], |_| splits += 1);
        assert_eq!(splits, 0);
        assert_eq!(p.part_count(), 1);
    }

    #[test]
    fn step1_single_row() {
        let f = parse_family("a b\n").unwrap();
        let f = crate::family::SetFamily::new(vec!["a".into(), "b".into(), "c".into()], f.rows().to_vec()).unwrap();
        let pf = refine_step1(&f, &lr_order(&f));
        assert_eq!(pf.parts(), vec![vec![2], vec![0, 1]]);
    }

    #[test]
    fn step1_f5() {
        let f = parse_family(F5).unwrap();
        let pf = refine_step1(&f, &lr_order(&f));
        // (b)(c)(d)(f g)(h)(e)
        assert_eq!(pf.parts(), vec![vec![0], vec![1], vec![2], vec![4, 5], vec![6], vec![3]]);
    }

    #[test]
    fn bounds_and_am_f5() {
        let f = parse_family(F5).unwrap();
        let lr = lr_order(&f);
        let pf = refine_step1(&f, &lr);
        let b = bounds(&f, &pf);
        assert_eq!((b.left[2], b.right[2]), (2, 6));
        assert_eq!((b.left[4], b.right[4]), (0, 5));
        assert_eq!((b.left[1], b.right[1]), (1, 6));
        let am = build_am(&b, &lr);
        assert_eq!(am.list(6), [1, 2, 3]);
        assert_eq!(am.list(2), [0]);
        assert_eq!(am.list(5), [4]);
        assert!(am.list(0).is_empty());
    }

    #[test]
    fn am_removal() {
        let f = parse_family(F5).unwrap();
        let lr = lr_order(&f);
        let b = bounds(&f, &refine_step1(&f, &lr));
        let mut am = build_am(&b, &lr);
        am.remove(2);
        assert_eq!(am.list(6), [1, 3]);
        am.remove(1);
        assert_eq!(am.front(6), Some(3));
        am.remove(3);
        assert_eq!(am.front(6), None);
        assert!(!am.contains(3));
    }

    #[test]
    fn max_f5() {
        let f = parse_family(F5).unwrap();
        let run = run_max(&f, &lr_order(&f));
        assert_eq!(run.table.as_slice(), [Some(1), None, Some(3), None, Some(1)]);
        assert_eq!(run.step3_moves, 0);
    }

    #[test]
    fn max_trivial_cases() {
        let f = parse_family("a b c\n").unwrap();
        assert_eq!(compute_max(&f, &lr_order(&f)).get(0), None);
        let f = parse_family("a b\nc d\n").unwrap();
        assert_eq!(compute_max(&f, &lr_order(&f)).as_slice(), [None, None]);
        let f = parse_family("").unwrap();
        assert!(compute_max(&f, &lr_order(&f)).as_slice().is_empty());
    }

    #[test]
    fn bounds_of_full_row() {
        let f = parse_family("a b c d\nb c\n").unwrap();
        let b = bounds(&f, &refine_step1(&f, &lr_order(&f)));
        assert_eq!((b.left[0], b.right[0]), (0, 3));
    }
}
