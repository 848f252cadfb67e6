//! Rota-Baxter operators of nonzero weight on the Sweedler algebra `H4`.

pub mod algebra;
pub mod autgroup;
pub mod catalog;
pub mod classify;
pub mod cli;
pub mod error;
pub mod field;
pub mod linops;
pub mod rb;
pub mod subalg;

pub use error::{Error, Result};
