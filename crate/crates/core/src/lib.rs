//! Periodic points of the RSA power map `x -> x^e (mod n)`.
//!
//! * [`arith`] — exact integer kernel (factoring, orders, CRT).
//! * [`census`] — closed-form counts of points of each period.
//! * [`dynamics`] — per-point periods, cycle structure, enumeration, and
//!   factoring `n` from a nontrivial fixed point.
//! * [`oracle`] — brute-force references for all of the above.
//! * [`report`] and [`cli`] — exponent audits and the command line.

pub mod arith;
pub mod census;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod oracle;
pub mod report;

pub use census::{ExactOrderCensus, RsaInstance};
pub use dynamics::{CycleStructure, PeriodRecord};
pub use error::{Error, Result};
pub use report::{AuditConfig, AuditReport, Verdict};
