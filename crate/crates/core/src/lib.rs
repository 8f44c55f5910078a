//! Exact computation with Thompson's group V, the Brin–Thompson group 2V
//! and the Thompson monoid M_{2,1}.
//!
//! Elements are finite tables between prefix codes (or joinless tuple codes
//! for 2V). Every decision procedure is exact; the bounded-depth action
//! oracles in each module are the brute-force cross-checks.

pub mod acceptance;
pub mod brin2v;
pub mod circuits;
pub mod codes;
pub mod error;
pub mod eval_v;
pub mod fixators;
pub mod format;
pub mod monoid;
pub mod recognizer;
pub mod v_core;

pub use codes::{bs, BitString, PrefixCode};
pub use error::{Error, Result};
pub use eval_v::{GenSet, GenWord, Token};
pub use v_core::{ApplyOutcome, VTable};

/// Scalar used for every maximality decision: an exact rational.
pub type Kraft = num_rational::BigRational;

/// Floating-point Kraft sums, for reporting only.
pub type KraftApprox = f64;
