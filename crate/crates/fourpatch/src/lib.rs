//! Geometric continuity checks and smooth constructions for tensor-product
//! Bezier surfaces built from four-patch vertex configurations.

pub mod bezier_core;
pub mod construct;
pub mod fixtures;
pub mod gcont;
pub mod io_cli;
