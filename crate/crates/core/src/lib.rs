//! Finite quasi-orders, their ideals and downsets, monoidal quasi-orders,
//! generalized Higman orderings over atom alphabets, and the iterated-ideal
//! hierarchies built from them, together with a brute-force sequence oracle.

pub mod downset;
pub mod error;
pub mod fixtures;
pub mod hierarchy;
pub mod higman;
pub mod monoid;
pub mod oracle;
pub mod qo;
pub mod reflect;
pub mod report;

pub use error::{Error, Result};
pub use qo::{ElemSet, FiniteQO};
