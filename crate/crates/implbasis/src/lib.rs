//! Implicational bases of finite closure systems.
//!
//! The crate computes and refines bases of a closure system given by a set of
//! implications: the canonical (Duquenne–Guigues) basis, K-, E-, optimized-E-,
//! F- and FOE-bases, the D-relation and recognition of systems without
//! D-cycles, plus a desk-scale exhaustive search for optimum bases. A
//! brute-force oracle over explicitly enumerated closed sets serves as the
//! ground truth for everything the polynomial algorithms produce.

pub mod attrset;
pub mod canonical;
pub mod closure;
pub mod drelation;
pub mod ebasis;
pub mod error;
pub mod ground;
pub mod implication;
pub mod instances;
pub mod io;
pub mod kbasis;
pub mod optsearch;
pub mod oracle;

pub use attrset::AttrSet;
pub use error::{Error, Result};
pub use ground::GroundSet;
pub use implication::{Implication, ImplicationSet, SizeMetrics};
pub use kbasis::Tiebreak;
pub use oracle::DEFAULT_ORACLE_BOUND;
