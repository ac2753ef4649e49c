//! Exact integer machinery for toric ideals of rational normal scrolls.
//!
//! The crate computes Graver bases, circuits and reduced Gröbner bases of
//! lattice kernels of integer point configurations, with a combinatorial
//! enumeration of primitive colored partition identities serving as an
//! independent oracle for scroll configurations. Everything is exact; no
//! floating point is used anywhere.
//!
//! The `parallel` feature (on by default) enables rayon-backed data
//! parallelism in the completion engine, the identity enumeration and the
//! weight-vector sampler. Without it every entry point falls back to the
//! sequential code path and produces bit-identical results.

pub mod cpi;
pub mod exact;
pub mod gb;
pub mod graver;
pub mod io;
pub mod par;
pub mod reference;
pub mod scroll;

mod error;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
