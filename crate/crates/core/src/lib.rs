//! Exact and numeric algebra for the quantum even spheres built by iterated
//! Poisson double suspension of the standard Podleś sphere.
//!
//! The crate is `no_std` and only needs `alloc`. Symbolic work is exact over
//! [`scalars::LaurentQ`]; Fock-space computations use `f64`.

#![no_std]

extern crate alloc;

pub mod error;
pub mod fockrep;
pub mod ktheory;
pub mod ncalg;
pub mod poisson;
pub mod scalars;
pub mod semiclassical;

pub use error::{Error, Result};
