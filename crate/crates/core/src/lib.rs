//! Exact multi-objective selection of satellite images for mosaics.
//!
//! The pipeline: [`geometry`] overlays image footprints over an area of
//! interest, [`preprocess`] turns the faces into a set-cover universe with
//! per-image cloud flags, [`solver`] searches covers, and [`frontier`]
//! enumerates the exact Pareto front over (cost, cloud area, resolution,
//! incidence angle).

pub mod error;
pub mod export;
pub mod frontier;
pub mod geometry;
pub mod instance;
pub mod objectives;
pub mod preprocess;
pub mod render;
pub mod solver;

pub use error::{Error, Result};
