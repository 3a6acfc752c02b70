//! Frequent pattern mining over bit strings with compression-based
//! occurrence.
//!
//! A pattern `x` *occurs* in a transaction `y` when it is much simpler than
//! `y` and adds little information to it, both measured with a code-length
//! estimator `L(·)` standing in for algorithmic complexity. [`miner::mine`]
//! finds every pattern that occurs in at least ε transactions with an
//! Apriori-style level-wise search; [`oracle::enumerate_frequent`] computes
//! the same set by brute force.
//!
//! ```
//! use bitmine::{mine, Backend, MiningConfig, OccurrenceParams, Support};
//! use bitmine::datagen::gen_random;
//!
//! let transactions = gen_random(12, 24..=24, 7).unwrap();
//! let params = OccurrenceParams::scale_free(0.6, 0.3).unwrap();
//! let config = MiningConfig::new(Support::Count(4)).with_step_bits(2);
//! let result = mine(&Backend::Kt { order: 0 }, &params, &transactions, &config).unwrap();
//! for p in &result.patterns {
//!     println!("{} x{} ({:.3} bits)", p.pattern, p.count, p.code_len.bits());
//! }
//! ```

pub mod bits;
pub mod cli;
pub mod codelength;
pub mod datagen;
pub mod distance;
mod error;
pub mod format;
pub mod miner;
pub mod occurrence;
pub mod oracle;

pub use bits::BitString;
pub use codelength::{
    code_len, cond_code_len, joint_code_len, joint_code_len_canonical, Backend, CodeLen,
    ExternalCompressor,
};
pub use error::{Error, Result};
pub use miner::{mine, FrequentPattern, MiningConfig, MiningResult, Mode, Support};
pub use occurrence::{frequency, occurs, OccurrenceParams, TransactionSet, Variant};
