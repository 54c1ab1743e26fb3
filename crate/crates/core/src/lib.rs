//! Exact enumeration of σ-splitting subspaces and the flag-tuple families
//! that count them, over finite fields.
//!
//! Every count can be produced three independent ways:
//!
//! * [`oracle`]: brute-force enumeration of subspaces of `F_q^N`;
//! * [`recursion`]: the memoized two-way-count recursion, symbolic in `q`;
//! * [`closedform`]: the product formula and its corollaries.
//!
//! [`q1analog`] carries the set-theoretic `q = 1` analogue (subsets of
//! `{1..N}` under the cyclic shift).

pub mod closedform;
pub mod error;
pub mod gflinalg;
pub mod label;
pub mod oracle;
pub mod q1analog;
pub mod qarith;
pub mod recursion;

pub use error::{Error, Result};
pub use label::{FlagTupleLabel, PairClassLabel};
pub use qarith::{ExactInteger, QPolynomial};
