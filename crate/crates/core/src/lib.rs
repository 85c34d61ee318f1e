//! Synchronized shortest-path motion for mutually visible point robots in a
//! simple polygon.

// Errors carry exact witness points; boxing them buys nothing here.
#![allow(clippy::result_large_err)]

pub mod corridor;
pub mod crossing;
pub mod error;
pub mod generate;
pub mod geodesic;
pub mod geometry;
pub mod instance;
pub mod polygon;
pub mod scheduler;
pub mod verifier;
