//! Exact constructions of generalized Cantor-like sets.
//!
//! Stages are unions of closed intervals with rational endpoints, so every
//! measure, endpoint and membership answer is exact. The only floating-point
//! output is the similarity dimension.

pub mod analysis;
pub mod construction;
pub mod error;
pub mod interval;
pub mod membership;
pub mod rational;

pub use construction::{iterate, iterate_with, kept_runs, next_stage, stage_at, ConstructionSpec, Limits, Run, Stage};
pub use error::{Error, ErrorClass, Result};
pub use interval::{ClosedInterval, IntervalUnion};
pub use membership::{limit_membership, stage_membership, MembershipVerdict, DEFAULT_DEPTH_CAP};
pub use rational::{q, rat, Rational};
