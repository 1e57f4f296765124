//! Exact crank-parity partition counting with rigorously certified
//! asymptotics.
//!
//! The crate computes exact tables of p(n) and of the crank-parity counts
//! M₀(n), M₁(n) by q-series arithmetic (validated against a brute-force
//! partition enumerator), evaluates the asymptotic main terms and their
//! explicit error bounds in outward-rounded interval arithmetic, and turns
//! inequality statements about these sequences — sign alternation, excess
//! over d, convexity, log-concavity, order-3 Turán — into machine-checkable
//! certificates, by exact integer comparison on finite ranges and by
//! analytic interval certificates in the asymptotic regime.
//!
//! ```
//! use crank_core::certify::{check_log_concavity, Status};
//! use crank_core::CrankParityTable;
//!
//! let table = CrankParityTable::build(200).unwrap();
//! assert_eq!(*table.p(100), table.m0(100) + table.m1(100).clone());
//! let cert = check_log_concavity(&table, 0, 94, 199).unwrap();
//! assert_eq!(cert.status, Status::Proved);
//! ```

pub mod asymptotic;
pub mod certify;
pub mod dedekind;
pub mod error;
pub mod expsum;
pub mod partitions;
pub mod real;
pub mod report;
pub mod series;
pub mod table;

pub use error::{Error, Result};
pub use real::{RealInterval, Verdict, DEFAULT_MAX_DOUBLINGS, MIN_PRECISION};
pub use table::CrankParityTable;

pub use asymptotic::{Envelope, EnvelopeSubject};
pub use certify::{Certificate, DExcessCheck, Method, Status, TheoremId};
pub use expsum::ExpSumValue;
pub use partitions::Partition;

// Shared arbitrary-precision scalar types.
pub use rug::{Float, Integer, Rational};
