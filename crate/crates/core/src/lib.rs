//! Mutation testing for GIS code: a small geometry kernel, two GIS-specific
//! mutation operators, an interception registry that weaves operator advice
//! onto named SUT operations, and two bundled systems under test.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod catalog;
pub mod corpus;
pub mod engine;
pub mod error;
pub mod geometry;
pub mod interception;
pub mod value;

pub use error::{Error, Result};
