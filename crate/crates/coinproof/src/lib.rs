//! Balance-scale certificates for the 1..n coin puzzle.
//!
//! A prover who knows that n coins weigh exactly 1, 2, ..., n grams wants to
//! demonstrate the weight of at least one coin to a skeptical audience using
//! a balance scale. This crate builds such certificates - never more than two
//! weighings are needed - verifies them the way the audience would, and
//! computes the associated minimum-weighings sequence.
//!
//! - [`numbers`]: exact triangular-number arithmetic and decompositions.
//! - [`rangesum`]: constructive subset sums over contiguous integer ranges.
//! - [`certificate`]: the data model and canonical JSON interchange form.
//! - [`construct`]: certificate builders and the `prove` dispatcher.
//! - [`audience`]: exhaustive and structural verification.
//! - [`sequence`]: the sequence a(n), its oracle, and b-file output.

pub mod audience;
pub mod certificate;
pub mod construct;
pub mod numbers;
pub mod rangesum;
pub mod sequence;

pub use audience::{verify_exhaustive, verify_structural, StructuralVerdict, VerifyReport};
pub use certificate::{Certificate, CoinSet, Outcome, Weighing};
pub use construct::{prove, prove_with_plan, BuildError, BuildPlan};
pub use sequence::{a_brute_force, a_closed_form, emit_bfile, ones_indices};
