//! Exact globular and corner homology of finite strict ω-categories.

pub mod cli;
pub mod cutmaps;
pub mod error;
pub mod facecomb;
pub mod homology;
pub mod omegacat;
pub mod nerves;

pub use error::{Error, Result};
