//! Bit-exact, cycle-accurate models of a conventional shift-and-add
//! multiplier and a low-power variant (no multiplier shifting, one-hot
//! ring-counter bit selection, feeder/bypass partial-product storage and a
//! block clock-gated ring counter), with per-block switching counts turned
//! into dynamic-energy estimates.
//!
//! ```
//! use shiftmul::bitcore::Word;
//! use shiftmul::datapath::{run, ArchConfig, Variant};
//!
//! let cfg = ArchConfig::new(Variant::LowPower, 8).unwrap();
//! let a = Word::new(183, 8).unwrap();
//! let b = Word::new(202, 8).unwrap();
//! let r = run(a, b, &cfg, false).unwrap();
//! assert_eq!(r.product.value(), 183 * 202);
//! ```

pub mod bitcore;
pub mod counters;
pub mod datapath;
pub mod error;
pub mod harness;
pub mod power;

pub use error::{Result, SimError};
