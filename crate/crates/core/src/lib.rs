//! Finite point-free topology.
//!
//! Frames, nuclei, spectra of distributive lattices, the patch construction
//! and Scott locales of finite domains, each paired with brute-force
//! verifiers that run over small finite instances.

pub mod cap;
pub mod corpus;
pub mod frame;
pub mod io;
pub mod lattice;
pub mod nuclei;
pub mod order;
pub mod patch;
pub mod report;
pub mod scott;
pub mod set;
pub mod spectrum;
pub mod suite;

pub use cap::{CapExceeded, DEFAULT_CAP};
pub use set::ElemSet;
