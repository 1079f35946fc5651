//! Structural invariants of the ordered partition under arbitrary rows.

use std::collections::BTreeSet;

use cutswap::refine::{Classification, PartitionArray, RefineOutcome};
use proptest::prelude::*;

fn rows(n: usize) -> impl Strategy<Value = Vec<Vec<usize>>> {
    prop::collection::vec(prop::collection::btree_set(0..n, 1..=n), 1..10)
        .prop_map(|rows| rows.into_iter().map(|r| r.into_iter().collect()).collect())
}

proptest! {
    #[test]
    fn refinement_preserves_structure(rows in rows(8)) {
        let n = 8;
        let mut p = PartitionArray::init_partition(n, &rows[0], n);
        let mut embedded: BTreeSet<usize> = rows[0].iter().copied().collect();
        for row in &rows[1..] {
            let before = p.parts();
            match p.classify(row) {
                Classification::NoCut(_) => {
                    prop_assert_eq!(p.parts(), before);
                }
                Classification::Cut(plan) => match p.apply_refine(row, plan) {
                    Ok(()) => embedded.extend(row.iter().copied()),
                    Err(_) => prop_assert_eq!(p.parts(), before),
                },
            }
            prop_assert!(p.is_consistent());
            let now: BTreeSet<usize> = p.parts().into_iter().flatten().collect();
            prop_assert_eq!(&now, &embedded);
        }
    }

    #[test]
    fn accepted_rows_stay_consecutive(rows in rows(7)) {
        let n = 7;
        let mut p = PartitionArray::init_partition(n, &rows[0], n);
        let mut accepted = vec![rows[0].clone()];
        for row in &rows[1..] {
            if p.refine(row) == RefineOutcome::Cut {
                accepted.push(row.clone());
            }
        }
        let flat: Vec<usize> = p.parts().into_iter().flatten().collect();
        for row in &accepted {
            let at: Vec<usize> = row.iter().map(|c| flat.iter().position(|x| x == c).unwrap()).collect();
            let (lo, hi) = (*at.iter().min().unwrap(), *at.iter().max().unwrap());
            prop_assert_eq!(hi - lo + 1, row.len());
        }
    }
}
