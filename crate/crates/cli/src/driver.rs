//! Parallel enumeration over fixed segments with in-order delivery.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use sextic_core::enumerate::partition;
use sextic_core::{CubicFieldRecord, EnumerationRange, Enumerator};

use crate::error::{CliError, Result};

/// Segment width; fixed so the work split never depends on the thread count.
pub const SEGMENT_WIDTH: u64 = 1 << 18;

/// The fixed segments of `range`.
pub fn segments(range: &EnumerationRange) -> Vec<EnumerationRange> {
    let width = range.upper - range.lower;
    partition(range, width.div_ceil(SEGMENT_WIDTH) as usize)
}

/// Enumerates `range` on up to `threads` threads, maps every segment with `work` and hands
/// the results to `sink` in segment order.
pub fn for_each_segment<T, W, S>(range: &EnumerationRange, threads: usize, work: W, mut sink: S) -> Result<()>
where
    T: Send,
    W: Fn(Vec<CubicFieldRecord>) -> Result<T> + Sync,
    S: FnMut(T) -> Result<()>,
{
    let enumerator = Enumerator::new(range.upper)?;
    let segs = segments(range);
    let threads = threads.max(1);
    for batch in segs.chunks(threads * 2) {
        let next = AtomicUsize::new(0);
        let slots: Vec<Mutex<Option<Result<T>>>> = batch.iter().map(|_| Mutex::new(None)).collect();
        std::thread::scope(|scope| {
            for _ in 0..threads.min(batch.len()) {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    let Some(seg) = batch.get(i) else { break };
                    let out = enumerator.segment(seg).map_err(CliError::from).and_then(&work);
                    *slots[i].lock().expect("no poisoned slot") = Some(out);
                });
            }
        });
        for slot in slots {
            sink(slot.into_inner().expect("no poisoned slot").expect("every segment processed")?)?;
        }
    }
    Ok(())
}

/// All records of `range` in the global order.
pub fn collect(range: &EnumerationRange, threads: usize) -> Result<Vec<CubicFieldRecord>> {
    let mut all = Vec::new();
    for_each_segment(range, threads, Ok, |seg| {
        all.extend(seg);
        Ok(())
    })?;
    Ok(all)
}
