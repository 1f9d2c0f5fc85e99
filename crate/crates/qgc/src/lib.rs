//! Leader-chained stream cipher over T-quasigroups on Z_n.
//!
//! The construction works pairwise: each plaintext pair passes through two
//! powered quasigroup translations whose leaders come from the previous
//! ciphertext pair, then through a powered pair of orthogonal operations.
//! The crate provides the modular-ring and quasigroup algebra (parastrophes,
//! translations, orthogonality predicates), the cipher itself, brute-force
//! verification oracles for small moduli, and the key-file/codec/CLI tooling.

pub mod cipher;
pub mod clikit;
pub mod error;
pub mod modring;
pub mod orthosys;
pub mod quasigroup;
pub mod verify;

pub use cipher::{KeySchedule, Mode, StepKey, StepTrace, SymbolStream, Trace, TranslationSpec};
pub use error::{Error, Result};
pub use modring::{Modulus, Residue};
pub use orthosys::{OrthoPair, Pair};
pub use quasigroup::{OrthoCriteria, Parastrophe, TQuasigroup, TranslationKind};
