//! Brute-force references, written straight from the definitions and kept
//! independent of the pipeline. Everything here is quadratic or worse.

use crate::error::{Error, Result};
use crate::family::{LrOrder, SetFamily};
use crate::maxcomp::{MaxTable, RestrictedPartition};

/// Column limit for [`brute_c1p`].
pub const BRUTE_C1P_LIMIT: usize = 9;

/// True when the two sorted rows intersect and neither contains the other.
pub fn overlaps(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    let (mut common, mut only_a, mut only_b) = (false, false, false);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                only_a = true;
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                only_b = true;
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                common = true;
                i += 1;
                j += 1;
            }
        }
    }
    only_a |= i < a.len();
    only_b |= j < b.len();
    common && only_a && only_b
}

/// The overlap graph on rows and its connected components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapGraph {
    pub adjacency: Vec<Vec<usize>>,
    /// Component id per row, numbered by first row of each component.
    pub component: Vec<usize>,
}

impl OverlapGraph {
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Components as sorted row lists, ordered by smallest row.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let count = self.component.iter().map(|&c| c + 1).max().unwrap_or(0);
        let mut out = vec![Vec::new(); count];
        for (r, &c) in self.component.iter().enumerate() {
            out[c].push(r);
        }
        out
    }
}

pub fn brute_overlap_classes(f: &SetFamily) -> OverlapGraph {
    let m = f.m();
    let mut adjacency = vec![Vec::new(); m];
    for a in 0..m {
        for b in a + 1..m {
            if overlaps(f.row(a), f.row(b)) {
                adjacency[a].push(b);
                adjacency[b].push(a);
            }
        }
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }
    let mut component = vec![usize::MAX; m];
    let mut next = 0;
    for start in 0..m {
        if component[start] != usize::MAX {
            continue;
        }
        component[start] = next;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &adjacency[v] {
                if component[w] == usize::MAX {
                    component[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    OverlapGraph { adjacency, component }
}

/// For every row, the first row in LR order that precedes it and overlaps it.
pub fn brute_max(f: &SetFamily, lr: &LrOrder) -> MaxTable {
    let max = (0..f.m())
        .map(|r| lr.order()[..lr.rank(r)].iter().copied().find(|&x| overlaps(f.row(x), f.row(r))))
        .collect();
    MaxTable::new(max)
}

/// Decides C1P by exhaustive search over column orders.
///
/// Columns are placed one at a time; a prefix is abandoned as soon as a row
/// that has started but not finished misses the newly placed column. Only
/// orders whose first column is smaller than their last are completed, since
/// reversal preserves consecutiveness.
pub fn brute_c1p(f: &SetFamily) -> Result<bool> {
    if f.n() > BRUTE_C1P_LIMIT {
        return Err(Error::TooLarge { n: f.n(), limit: BRUTE_C1P_LIMIT });
    }
    let support: Vec<usize> = (0..f.n()).filter(|c| !f.unused_columns().contains(c)).collect();
    if support.len() <= 1 {
        return Ok(true);
    }
    let mut search = Search {
        f,
        member: (0..f.n()).map(|c| (0..f.m()).map(|r| f.row(r).contains(&c)).collect()).collect(),
        placed: vec![0; f.m()],
        used: vec![false; f.n()],
        perm: Vec::with_capacity(support.len()),
        support,
    };
    Ok(search.run())
}

struct Search<'a> {
    f: &'a SetFamily,
    member: Vec<Vec<bool>>,
    placed: Vec<usize>,
    used: Vec<bool>,
    perm: Vec<usize>,
    support: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self) -> bool {
        if self.perm.len() == self.support.len() {
            return self.perm[0] < self.perm[self.perm.len() - 1] && all_consecutive(self.f, &self.perm);
        }
        for i in 0..self.support.len() {
            let c = self.support[i];
            if self.used[c] {
                continue;
            }
            let blocked = (0..self.f.m())
                .any(|r| !self.member[c][r] && self.placed[r] > 0 && self.placed[r] < self.f.row(r).len());
            if blocked {
                continue;
            }
            self.used[c] = true;
            self.perm.push(c);
            for r in 0..self.f.m() {
                self.placed[r] += self.member[c][r] as usize;
            }
            let found = self.run();
            for r in 0..self.f.m() {
                self.placed[r] -= self.member[c][r] as usize;
            }
            self.perm.pop();
            self.used[c] = false;
            if found {
                return true;
            }
        }
        false
    }
}

/// True when every row occupies consecutive positions of `order`, which must
/// list each column of every row.
fn all_consecutive(f: &SetFamily, order: &[usize]) -> bool {
    rows_consecutive(f.rows().iter().map(Vec::as_slice), order)
}

fn rows_consecutive<'a>(rows: impl IntoIterator<Item = &'a [usize]>, order: &[usize]) -> bool {
    let mut at = std::collections::HashMap::with_capacity(order.len());
    for (i, &c) in order.iter().enumerate() {
        at.insert(c, i);
    }
    rows.into_iter().all(|row| {
        let mut lo = usize::MAX;
        let mut hi = 0;
        for c in row {
            match at.get(c) {
                Some(&p) => {
                    lo = lo.min(p);
                    hi = hi.max(p);
                }
                None => return false,
            }
        }
        hi - lo + 1 == row.len()
    })
}

/// Checks the swap overlap order condition: every row after the first
/// overlaps an earlier one, or its successor overlaps an earlier one and the
/// row overlaps that successor.
pub fn check_swap_order(f: &SetFamily, class_rows: &[usize], order: &[usize]) -> bool {
    let mut a = class_rows.to_vec();
    let mut b = order.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    if a != b || b.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    let ov = |x: usize, y: usize| overlaps(f.row(x), f.row(y));
    let k = order.len();
    (1..k).all(|l| {
        let earlier = &order[..l];
        earlier.iter().any(|&g| ov(order[l], g))
            || (l + 1 < k && earlier.iter().any(|&g| ov(order[l + 1], g)) && ov(order[l], order[l + 1]))
    })
}

/// Flattens `parts` and checks that every row of `class_rows` is consecutive.
pub fn check_witness(f: &SetFamily, class_rows: &[usize], parts: &[Vec<usize>]) -> bool {
    let order: Vec<usize> = parts.iter().flatten().copied().collect();
    rows_consecutive(class_rows.iter().map(|&r| f.row(r)), &order)
}

/// For every `R` with `Max(R)` defined and every `X` meeting `R` with
/// `|R| <= |X| <= |Max(R)|`, `X` overlaps `R` or `Max(R)`.
pub fn check_lemma1(f: &SetFamily, max: &MaxTable) -> bool {
    let meets = |a: &[usize], b: &[usize]| a.iter().any(|c| b.contains(c));
    (0..f.m()).all(|r| {
        let Some(mr) = max.get(r) else { return true };
        let (lo, hi) = (f.row(r).len(), f.row(mr).len());
        (0..f.m()).filter(|&x| x != r).all(|x| {
            let size = f.row(x).len();
            if !meets(f.row(x), f.row(r)) || size < lo || size > hi {
                return true;
            }
            x == mr || overlaps(f.row(x), f.row(r)) || overlaps(f.row(x), f.row(mr))
        })
    })
}

/// Materializes the incidence matrix (rows in LR order) and checks that the
/// column order of `pf` is lexicographically non-decreasing, with two
/// columns sharing a part exactly when their vectors are equal.
pub fn check_lexicographic(f: &SetFamily, lr: &LrOrder, pf: &RestrictedPartition) -> bool {
    let vector = |c: usize| -> Vec<bool> { lr.order().iter().map(|&r| f.row(r).contains(&c)).collect() };
    let parts = pf.parts();
    let flat: Vec<usize> = parts.iter().flatten().copied().collect();
    if flat.len() != f.n() {
        return false;
    }
    let vectors: Vec<Vec<bool>> = flat.iter().map(|&c| vector(c)).collect();
    if vectors.windows(2).any(|w| w[0] > w[1]) {
        return false;
    }
    let mut part_index = Vec::with_capacity(flat.len());
    for (p, part) in parts.iter().enumerate() {
        part_index.extend(std::iter::repeat_n(p, part.len()));
    }
    (0..flat.len()).all(|i| {
        (i + 1..flat.len()).all(|j| (part_index[i] == part_index[j]) == (vectors[i] == vectors[j]))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{lr_order, parse_family};

    const F5: &str = "b c d\nc d e f g h\nd e\ne f g h\nb h\n";

    #[test]
    fn overlap_definition() {
        assert!(overlaps(&[0, 1], &[1, 2]));
        assert!(!overlaps(&[0, 1, 2], &[1]));
        assert!(!overlaps(&[0, 1], &[0, 1]));
        assert!(!overlaps(&[0], &[1]));
    }

    #[test]
    fn brute_c1p_examples() {
        assert!(!brute_c1p(&parse_family(F5).unwrap()).unwrap());
        assert!(brute_c1p(&parse_family("a b c\nc d\nd e f\nb c d\n").unwrap()).unwrap());
        assert!(brute_c1p(&parse_family("").unwrap()).unwrap());
        // a triangle of pairs plus a common element is not C1P
        assert!(!brute_c1p(&parse_family("a b\nb c\na c\n").unwrap()).unwrap());
    }

    #[test]
    fn brute_c1p_guard() {
        let f = SetFamily::from_index_rows(10, vec![vec![0, 1]]).unwrap();
        assert_eq!(brute_c1p(&f), Err(Error::TooLarge { n: 10, limit: 9 }));
    }

    #[test]
    fn brute_classes() {
        let g = brute_overlap_classes(&parse_family(F5).unwrap());
        assert_eq!(g.components(), vec![vec![0, 1, 2, 3, 4]]);
        let g = brute_overlap_classes(&parse_family("a b\nc d\n").unwrap());
        assert_eq!(g.components(), vec![vec![0], vec![1]]);
        let g = brute_overlap_classes(&parse_family("a b c d\na b c\na b\na\n").unwrap());
        assert_eq!(g.components().len(), 4);
    }

    #[test]
    fn brute_max_examples() {
        let f = parse_family(F5).unwrap();
        let lr = lr_order(&f);
        assert_eq!(brute_max(&f, &lr).as_slice(), [Some(1), None, Some(3), None, Some(1)]);
        let f = parse_family("a b\na b\n").unwrap();
        assert_eq!(brute_max(&f, &lr_order(&f)).as_slice(), [None, None]);
    }

    #[test]
    fn swap_order_examples() {
        let f = parse_family(F5).unwrap();
        assert!(check_swap_order(&f, &[0, 1, 2, 3, 4], &[0, 1, 4, 3, 2]));
        // A = {a,b,c,d}, B = {b,c}, C = {a,b,e}: B is rescued by its successor.
        let f = parse_family("a b c d\nb c\na b e\n").unwrap();
        assert!(check_swap_order(&f, &[0, 1, 2], &[0, 1, 2]));
        let f = parse_family("a b c d\nb c\n").unwrap();
        assert!(!check_swap_order(&f, &[0, 1], &[0, 1]));
    }

    #[test]
    fn witness_examples() {
        let f = parse_family("a b c d\nb c\na b e\n").unwrap();
        // columns a=0 b=1 c=2 d=3 e=4; parts (e)(a)(b)(c)(d)
        assert!(check_witness(&f, &[0, 1, 2], &[vec![4], vec![0], vec![1], vec![2], vec![3]]));
        let f = parse_family("a b\nc\n").unwrap();
        assert!(!check_witness(&f, &[0], &[vec![0], vec![2], vec![1]]));
        assert!(check_witness(&f, &[0], &[vec![1, 0]]));
    }

    #[test]
    fn lemma1_f5() {
        let f = parse_family(F5).unwrap();
        let lr = lr_order(&f);
        assert!(check_lemma1(&f, &brute_max(&f, &lr)));
        let f = parse_family("a b\nc d\n").unwrap();
        assert!(check_lemma1(&f, &brute_max(&f, &lr_order(&f))));
    }
}
