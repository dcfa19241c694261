//! Exact transvectant calculus for `SL2 x SL2` and certificates for the
//! double-bundle construction on bi-forms of bidegree `(3, b)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: exact rationals, rank, kernels.
//! * [`forms`]: binary forms, bi-forms, derivatives and the group action.
//! * [`transvectants`]: `T^(r)`, its closed monomial formulas, `T^(r,s)` and
//!   the matrices of `T(v, ·)` and `T(·, w)`.
//! * [`schedule`]: which bi-transvectant to use for each odd `b >= 5`.
//! * [`witnesses`]: the explicit certificate vectors per family.
//! * [`verifier`]: the four surjectivity/independence checks.
//! * [`formio`]: bi-form text format and JSON reports.

#[cfg(feature = "cli")]
pub mod cli;
pub mod error;
pub mod formio;
pub mod forms;
pub mod linalg;
pub mod schedule;
pub mod transvectants;
pub mod verifier;
pub mod witnesses;

pub use error::Error;
pub use forms::{BiForm, BinaryForm, GroupElement, Var};
pub use linalg::{RatMatrix, Rational};
pub use schedule::{schedule_for, Family, Schedule};
pub use transvectants::{bi_transvect, transvect, BiTransvectant, TransvectantSpec};
pub use verifier::{
    verify, verify_generic, verify_range, verify_witness, GenericOptions, Mode, VerificationReport,
};
pub use witnesses::{tamper, witnesses_for, Mutation, WitnessSet};
