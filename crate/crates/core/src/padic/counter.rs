//! Thread-local count of multiplicative p-adic operations.
//!
//! Every scalar multiplication and division bumps the counter; additions do
//! not. A row operation `r_i -= c * r_j` over `k` entries therefore counts as
//! `k` operations, which is the unit the QR cost bounds are stated in.

use std::cell::Cell;

thread_local! {
    static OPS: Cell<u64> = const { Cell::new(0) };
}

#[inline]
pub(crate) fn bump() {
    OPS.with(|c| c.set(c.get() + 1));
}

pub fn count() -> u64 {
    OPS.with(Cell::get)
}

pub fn reset() {
    OPS.with(|c| c.set(0));
}

/// Runs `f` and returns its result together with the number of operations it
/// performed on this thread.
pub fn measure<R>(f: impl FnOnce() -> R) -> (R, u64) {
    let before = count();
    let out = f();
    (out, count() - before)
}
