//! Eigenvalue algorithms: sorted forms, shifted QR iteration and the block
//! Schur driver.

pub mod gze;
pub mod iteration;
pub mod schur;
pub mod sorted;

pub use gze::{gze, gze_tracked, GzeBasis};
pub use iteration::{
    qr_iteration_fast, rounds_csv, simple_qr_iteration, trace_shift, FastOutcome, Phase, RoundRecord,
};
pub use schur::{block_schur, simple_schur, verify_similarity, SchurResult};
pub use sorted::{
    attempt_sorted_hessenberg, is_sorted_hessenberg_mod_p, sorted_form, SortedForm, SortedHessenberg,
    SortedHessenbergAttempt,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Success,
    /// The fast iteration gave up and the plain iteration finished the job.
    FallbackUsed,
    Fail,
}
