//! Witness-producing algorithms for normal rings: gcd trees over node rings,
//! Kronecker integrality certificates, divisibility witnesses in `R[X]` and
//! in the étale extensions `R{f}`, plus an independent certificate checker.

pub mod cert;
pub mod config;
pub mod etale;
pub mod error;
pub mod grobner;
pub mod kronecker;
pub mod normality;
pub mod poly;
pub mod ring;
pub mod tree;
pub mod verify;

pub use config::Limits;
pub use error::{Error, Result};
pub use ring::{ArithOp, Capabilities, CommRing, Elem, IntegralRelation, Ring};
