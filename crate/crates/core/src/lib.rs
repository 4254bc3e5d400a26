pub mod error;
pub mod matpoly;
pub mod moments;
pub mod mop;
pub mod ladder;
pub mod weights;
pub mod verify;
pub mod cli;

pub use error::{MoprlError, Result};
