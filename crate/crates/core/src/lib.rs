#![no_std]

extern crate alloc;

pub mod error;
pub mod field;
pub mod algebra;
pub mod linalg;
pub mod torus;
pub mod specialize;
pub mod lie;
pub mod pbw;

pub use error::{Error, Result};
