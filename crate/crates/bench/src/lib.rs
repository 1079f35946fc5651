//! Instance ladders shared by the criterion benchmarks.

use cutswap::family::c1p_instance;
use cutswap::SetFamily;

/// C1P instances with total size near `2^e` for each exponent.
pub fn ladder(exponents: impl IntoIterator<Item = u32>, seed: u64) -> Vec<SetFamily> {
    exponents.into_iter().map(|e| c1p_instance(1 << e, seed)).collect()
}
