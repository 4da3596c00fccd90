//! Stochastic budget optimization for keyword bidding.
//!
//! An advertiser bids on keywords, each with a fixed cost per click, under a
//! daily budget. Click counts are random. A bid vector `b` in `[0, 1]^n`
//! receives
//!
//! ```text
//! value(b) = sum_i b_i clicks_i / max(1, sum_i b_i cpc_i clicks_i / B)
//! ```
//!
//! clicks in one outcome, and the goal is to maximize its expectation. The
//! crate covers four click models ([`ClickModel`]): known counts,
//! proportional shares of a random total, independent per-keyword counts,
//! and explicit joint scenarios.
//!
//! ```
//! use sbo::{eval, gen, opt, BidVector};
//!
//! let inst = gen::gen_nonprefix_example();
//! let full = eval::eval_independent_exact(&BidVector::ones(3), &inst)?;
//! assert_eq!(full.value, 1.75);
//!
//! let best = opt::opt_independent_prefix(&inst, 0.05)?;
//! assert_eq!(best.bids.as_slice(), &[1.0, 1.0, 1.0]);
//! # Ok::<(), sbo::SboError>(())
//! ```

pub mod cli;
pub mod dist;
pub mod document;
mod error;
pub mod eval;
pub mod gen;
mod model;
pub mod opt;

pub use dist::{ClickModel, DiscretePmf, ModelKind, Scenario};
pub use error::{Result, SboError};
pub use eval::EvalReport;
pub use model::{aggregate, value, BidVector, ClickRealization, Instance, Keyword};
pub use opt::{OptReport, PrefixSolution};
