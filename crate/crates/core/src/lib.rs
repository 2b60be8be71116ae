//! Core algorithms for exact edit-distance work in the small-distance regime.
//!
//! Everything in this crate operates on packed bit strings and is pure: given
//! the same inputs and the same 256-bit seed, every encoder produces
//! byte-identical artifacts. The crate is `no_std` (allocation required); IO,
//! file formats on disk, and the CLI live in the companion `editsync` crate.
//!
//! The main entry points are:
//!
//! * [`oracle::ed_oracle`] — reference dynamic-programming edit distance with
//!   a full edit script, used to validate everything else.
//! * [`cgk`] — the random-walk embedding from edit space into Hamming space.
//! * [`ims`] — hash-tree document exchange (one-way delta under `K` edits).
//! * [`docx`] — two-stage document exchange: period removal plus walk-based
//!   block synchronization, with an IMS tail on the reduced instance.
//! * [`edsketch`] — sketches from which a referee recovers the exact distance
//!   and an optimal edit script without seeing either input.
//! * [`streaming`] — simultaneous-streaming edit distance in `O(K)` words,
//!   and the standard-streaming driver built on the sketch.

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod align;
pub mod banded;
pub mod bits;
pub mod cgk;
pub mod docx;
pub mod edsketch;
pub mod error;
pub mod field;
pub mod hashing;
pub mod ims;
pub mod lcp;
pub mod mismatch;
pub mod oracle;
pub mod rs;
pub mod script;
pub mod streaming;
pub mod wire;

pub use align::Alignment;
pub use bits::BitString;
pub use error::DecodeFailure;
pub use hashing::Seed;
pub use script::{EditOp, EditScript, OpKind};
