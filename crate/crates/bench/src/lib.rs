//! Fixtures shared by the benchmarks.

use polarcheck_core::catalog::find_entry;
use polarcheck_core::{ActionSpec, ToleranceConfig};

/// The action of a catalog entry, built with the default form.
pub fn catalog_action(id: &str) -> ActionSpec {
    find_entry(id)
        .and_then(|e| e.build(1.0, &ToleranceConfig::default()))
        .unwrap_or_else(|e| panic!("catalog entry {id}: {e}"))
        .action
}
