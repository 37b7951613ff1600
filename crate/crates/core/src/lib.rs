#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod charging;
pub mod cli;
pub mod error;
pub mod fock;
pub mod gaussian;
pub mod gaussian_dynamics;
pub mod linalg;
pub mod multicell;
pub mod numeric;
pub mod open_system;
pub mod scenario;
pub mod selftest;
pub mod series;
pub mod states;
pub mod tls;
pub mod tls_dynamics;

pub use error::{Error, Result};
