//! Binary cubic forms, cubic field enumeration and sextic discriminant counting.
//!
//! The crate is `no_std` (with `alloc`) unless the `std` feature is enabled.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod arith;
pub mod census;
pub mod enumerate;
pub mod factor;
pub mod form;
pub mod local;
pub mod predict;
pub mod sextic;
pub mod special;

pub use enumerate::{brute_force_enumerate, enumerate, partition, CubicFieldRecord, EnumerationRange, Enumerator};
pub use factor::{factorize, Factorization, SpfSieve};
pub use form::{BinaryCubicForm, HessianForm, UnimodularMap};
pub use local::{RamifiedPrime, SplittingType};
pub use census::{CensusFilter, CensusReport, CheckpointCounter};
pub use predict::{LocalCondition, Model, Prediction, PredictionModel, Predictor};
pub use sextic::{build_sextic, SexticRecord};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix {0:?} does not have determinant ±1")]
    NotUnimodular([[i64; 2]; 2]),
    #[error("the zero form has no content")]
    ZeroForm,
    #[error("form has zero discriminant")]
    Degenerate,
    #[error("form is reducible over Q")]
    Reducible,
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("zero has no prime factorization")]
    ZeroInput,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("form is not maximal at {0}")]
    NotMaximalAt(u64),
    #[error("cyclic cubic fields have no S3 closure")]
    Cyclic,
    #[error("ramification exponent {e} at {p} is outside the known cases")]
    RamificationCase { p: u64, e: u32 },
    #[error("sextic discriminant mismatch for disc_K = {disc_k}: resolvent {resolvent}, prime-by-prime {lemma}")]
    SexticMismatch { disc_k: i64, resolvent: i128, lemma: i128 },
    #[error("Euler product not converged at prime bound {prime_bound} (doubling change {delta:e}, tail {tail:e})")]
    Convergence { prime_bound: u64, delta: f64, tail: f64 },
    #[error("enumeration covers |disc_K| < {available} but |disc_K| < {required} is required")]
    InsufficientRange { required: u64, available: u64 },
    #[error("invalid range: {0}")]
    InvalidRange(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}

/// Sign of a discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn of(x: i128) -> Option<Sign> {
        match x.signum() {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }

    pub fn matches(self, x: i128) -> bool {
        Sign::of(x) == Some(self)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Positive => "pos",
            Sign::Negative => "neg",
        }
    }
}
