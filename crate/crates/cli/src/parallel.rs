//! Multi-threaded exhaustive scan.

use merg_core::graph::Graph;
use merg_core::oracle::{assignment_count, prepare, scan_range, Scan, Target, Violation};
use merg_core::Result;
use rayon::prelude::*;

/// Splits the assignment index space into contiguous chunks scanned on the
/// rayon pool. The lowest-indexed chunk with a violation wins, so the
/// witness is identical to the serial one.
#[derive(Clone, Copy, Debug)]
pub struct Parallel {
    /// Chunks per worker thread.
    pub chunks_per_thread: usize,
}

impl Default for Parallel {
    fn default() -> Self {
        Self { chunks_per_thread: 64 }
    }
}

impl Scan for Parallel {
    fn first_violation(&self, g: &Graph, target: Target) -> Result<Option<Violation>> {
        let masks = prepare(g, target)?;
        let total = assignment_count(g.n());
        let chunks = (rayon::current_num_threads() * self.chunks_per_thread.max(1)) as u64;
        let chunks = chunks.clamp(1, total);
        let size = total.div_ceil(chunks);
        Ok((0..chunks).into_par_iter().find_map_first(|c| {
            let lo = c * size;
            let hi = total.min(lo + size);
            (lo < hi).then(|| scan_range(&masks, target, lo..hi)).flatten()
        }))
    }
}
