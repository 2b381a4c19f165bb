//! Brute-force checks on explicitly parametrized rational curves.
//!
//! Everything here is exact: rational arithmetic for the geometry, and
//! prime-field arithmetic (cross-checked over several primes and two random
//! reparametrizations) for the elimination steps of the pair counter.

pub mod bipoly;
pub mod contact;
pub mod curve;
pub mod identities;
pub mod modp;
pub mod pairs;
pub mod poly;
pub mod scroll;

pub use contact::{contact_order_test, ContactReport};
pub use curve::RationalCurve;
pub use identities::{twisted_cubic_identity, veronese_sample_test};
pub use pairs::{count_nonskew_pairs_p4, tangent_meet, PairCount};
pub use scroll::{scroll_skew_test, ScrollSpec, ScrollVerdict};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// The rank-drop locus has a positive-dimensional component.
    #[error("precondition violated: infinitely many meeting pairs ({0})")]
    NotFinite(String),
    /// Independent routes (primes, seeds) disagreed.
    #[error("inconsistent result: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, OracleError>;
