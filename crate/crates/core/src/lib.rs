//! Computable invariants for smooth embeddings of closed 4-manifolds in
//! 7-space: characteristic classes of intersection forms, isotopy-class
//! counts, complement homotopy models, and the low-degree bordism spectral
//! sequence computations behind them.

pub mod ahss;
pub mod classify;
pub mod complement;
pub mod error;
pub mod exactalg;
pub mod lattice;
pub mod tables;
pub mod verdict;

pub use error::{Error, Result};
