//! Test-only instrumentation, compiled with the `test-hooks` feature.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::table::SlickTable;

/// Counts which store each lookup was routed to.
#[derive(Debug, Default)]
pub struct RoutingProbes {
    main: AtomicU64,
    backyard: AtomicU64,
}

impl RoutingProbes {
    pub(crate) fn main(&self) {
        self.main.fetch_add(1, Ordering::Relaxed);
    }

    pub(crate) fn backyard(&self) {
        self.backyard.fetch_add(1, Ordering::Relaxed);
    }

    /// `(main, backyard)` lookups since the last reset.
    pub fn counts(&self) -> (u64, u64) {
        (
            self.main.load(Ordering::Relaxed),
            self.backyard.load(Ordering::Relaxed),
        )
    }

    pub fn reset(&self) {
        self.main.store(0, Ordering::Relaxed);
        self.backyard.store(0, Ordering::Relaxed);
    }
}

impl SlickTable {
    pub fn routing_probes(&self) -> &RoutingProbes {
        &self.probes
    }

    /// Turns the empty single-slot donor guard on or off.
    pub fn set_over_arc_guard(&mut self, enabled: bool) {
        self.over_arc_guard = enabled;
    }
}
