//! Finite quantaloids, the discrete presheaf monad, lax distributive laws,
//! topological theories, lax algebras and lax monad extensions, with
//! checkers that decide every law by enumeration on bounded universes.
//!
//! Sampled checks are seeded; reports are deterministic given the seed.

pub mod cli;
pub mod distlaw;
pub mod error;
pub mod extension;
pub mod functors;
pub mod io;
pub mod laxalg;
pub mod monads;
pub mod presheaf;
pub mod qrel;
pub mod quantaloid;
pub mod report;
pub mod theory;
pub mod util;

pub use error::{Error, Result};
