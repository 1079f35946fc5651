//! Cache-friendly relabeling of a family once `P_f` is known.
//!
//! Columns are renumbered by their `P_f` position and rows by their leftmost
//! `P_f` position, so rows sharing columns get nearby ids. The LR sequence is
//! carried over unchanged and intervals are still scanned in original column
//! order, so every result maps back to exactly what the original labels give.

use crate::family::{LrOrder, SetFamily};
use crate::maxcomp::{max_pass, BoundsMap, MaxTable, RestrictedPartition};

pub(crate) struct Relabeled {
    pub family: SetFamily,
    pub lr: LrOrder,
    pub max: MaxTable,
    /// Original id of each new row.
    pub row_old: Vec<usize>,
    /// Original id of each new column.
    pub col_old: Vec<usize>,
    /// New column ids in original column order.
    pub scan: Vec<usize>,
}

impl Relabeled {
    /// Relabels `f` after pass 1 and runs pass 3 on the result. `max` is
    /// returned over original ids and also kept over new ids.
    pub fn new(f: &SetFamily, lr: &LrOrder, pf: &RestrictedPartition, bounds: &BoundsMap) -> (Self, MaxTable) {
        let n = f.n();
        let col_old = pf.elements();
        let scan: Vec<usize> = (0..n).map(|c| pf.position(c)).collect();

        let mut start = vec![0usize; n + 1];
        for &l in &bounds.left {
            start[l + 1] += 1;
        }
        for p in 0..n {
            start[p + 1] += start[p];
        }
        let mut row_old = vec![0; f.m()];
        let mut row_new = vec![0; f.m()];
        for (r, &l) in bounds.left.iter().enumerate() {
            row_old[start[l]] = r;
            row_new[r] = start[l];
            start[l] += 1;
        }

        let rows = row_old
            .iter()
            .map(|&r| {
                let mut row: Vec<usize> = f.row(r).iter().map(|&c| scan[c]).collect();
                row.sort_unstable();
                row
            })
            .collect();
        let family = SetFamily::from_valid_rows(n, rows);
        let lr = LrOrder::from_order(lr.order().iter().map(|&r| row_new[r]).collect());
        let local_bounds = BoundsMap {
            left: row_old.iter().map(|&r| bounds.left[r]).collect(),
            right: row_old.iter().map(|&r| bounds.right[r]).collect(),
        };
        let (max, _) = max_pass(&family, &lr, (0..n).collect(), &local_bounds);
        let mut original = vec![None; f.m()];
        for (r, m) in max.as_slice().iter().enumerate() {
            original[row_old[r]] = m.map(|m| row_old[m]);
        }
        let local = Relabeled { family, lr, max, row_old, col_old, scan };
        (local, MaxTable::new(original))
    }
}
