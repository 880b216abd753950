//! Section-level model of a Bykov heteroclinic network whose symmetry is
//! partially broken by a parameter `λ`.
//!
//! The first-return map to the cross-section `In(v)` is assembled from the
//! two linearized saddle passages and the global transitions; on top of it
//! sit horseshoe certification, itinerary realization, an escape experiment
//! and a scanner for heteroclinic tangencies and the sinks born near them.

pub mod chaos;
pub mod cli;
pub mod config;
pub mod curve;
pub mod dynamics;
pub mod error;
pub mod global;
pub mod local;
pub mod manifold;
pub mod model;
pub mod numeric;
pub mod tangency;

pub use error::{Error, Result};
pub use model::{ModelConfig, SaddleParameters, SectionId, SectionPoint, Sheet, UnfoldingModel};
