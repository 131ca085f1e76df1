#![cfg_attr(not(test), no_std)]
extern crate alloc;

pub mod auxhier;
pub mod classify;
pub mod error;
pub mod exactalg;
pub mod hierarchy;
pub mod miura;
pub mod seeds;
pub mod weyl;

pub use error::{Error, Result};
