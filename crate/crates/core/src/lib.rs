//! Exact analysis of affine maps `x ↦ λ·φ_A(x)` on tori: transitivity and
//! exactness, K-theory of the associated crossed-product algebras, algebra
//! comparison, and numerical oracles for cross-checking.

pub mod compare;
pub mod dynamics;
pub mod error;
pub mod ktheory;
pub mod linalg;
pub mod marked;
pub mod oracle;
pub mod polyfactor;
pub mod report;
pub mod serde_util;
pub mod translation;

pub use error::{Error, Result};
