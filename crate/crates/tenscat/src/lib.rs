//! Exact computations in finitely presented additive tensor categories.
//!
//! The crate is organised in layers.  `exactalg` provides arithmetic over a
//! small family of computable commutative rings together with Smith normal
//! forms, exact linear solving and finitely presented modules.  `catcore`
//! builds presented tensor categories (matrix categories, representation
//! categories of finite groups, partition categories) whose hom sets are
//! finitely presented modules.  `freydab` performs the two-step arrow
//! completion that freely adjoins cokernels and then kernels, giving an
//! abelian category with decidable morphism equality.  `idealq` computes the
//! trace-radical tensor ideal, additive quotients, idempotent completions and
//! the induced projection out of the completion.  `verify` runs randomized
//! but seeded structural checks over bounded object pools and renders the
//! results as machine-readable reports.

pub mod exactalg;
pub mod catcore;
pub mod freydab;
pub mod idealq;
pub mod verify;
pub mod instance;

use thiserror::Error;

/// Errors shared by every layer of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unsupported ring for {op}: {ring}")]
    UnsupportedRing { op: String, ring: String },
    #[error("ring is infinite: {0}")]
    InfiniteRing(String),
    #[error("not a field: {0}")]
    NotAField(String),
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("object bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("object is not dualisable: {0}")]
    NotDualisable(String),
    #[error("morphism is not a monomorphism: {0}")]
    NotMono(String),
    #[error("morphism is not idempotent: {0}")]
    NotIdempotent(String),
    #[error("ideal fails absorption: {0}")]
    IdealNotAbsorbing(String),
    #[error("functor is not monoidal: {0}")]
    NotMonoidal(String),
    #[error("category is not split at {0}")]
    NotSplit(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
