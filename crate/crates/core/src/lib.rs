//! Maximin-share allocation of indivisible goods under XOS (fractionally
//! subadditive) valuations, computed exactly over rationals.
//!
//! The crate provides:
//!
//! - [`XosValuation`]: a finite family of additive functions, valued by the
//!   pointwise maximum, plus truncated views and contribution helpers;
//! - an exhaustive maximin-share oracle ([`mms()`]) with witness partitions;
//! - fractional and randomized allocations with exact expectations;
//! - rounding of half-integral allocations into two integral outcomes
//!   ([`round_half_integral`]);
//! - the randomized allocation algorithm [`alg_rand`] (1/4 of MMS in
//!   expectation, 1/8 of MMS in every outcome) and the deterministic
//!   algorithm [`alg_det`] (3/13 of MMS).
//!
//! Every quantity is an exact [`Rational`]; nothing in the crate uses
//! floating point. All searches are brute force and guarded by [`Limits`].
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod algorithms;
pub mod allocation;
mod error;
pub mod fractional;
pub mod instance;
pub mod mms;
pub mod rational;
pub mod rounding;
mod scalar;
pub mod valuation;
pub mod welfare;

pub use algorithms::{
    alg_det, alg_det_traced, alg_rand, alg_rand_traced, large_item_phase, tuple_phase, DetRun,
    PartialInstance, PhaseEvent, PhaseTrace, RandRun, WelfareCall,
};
pub use allocation::{contribution_alloc, witness_mass, Allocation, FractionalAllocation};
pub use error::{Error, Result};
pub use fractional::{
    ex_post_min, expected_value, independent_rounding, uniform_fractional, RandomizedAllocation,
};
pub use instance::{Instance, Limits};
pub use mms::{
    halving_split, mms, mms_of, normalize, proportional_share, reduce, MmsCertificate, Normalization,
};
pub use rational::Rational;
pub use rounding::{decompose_two_regular, round_half_integral, Matching, RoundingGraph};
pub use valuation::{
    contribution_set, eval_additive, AdditiveFunction, FractionalSet, SetValuation, Truncated,
    XosValuation,
};
pub use welfare::{max_welfare_half_integral, max_welfare_integral};
