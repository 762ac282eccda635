//! Extended special functions built on a generalized Bessel-type kernel:
//! incomplete gamma and beta extensions, extended hypergeometric families,
//! an extended Riemann–Liouville operator, and executable identity checks.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod beta_ext;
pub mod error;
pub mod frac;
pub mod gamma_ext;
pub mod hyp;
pub mod identities;
pub mod numerics;
pub mod rk;
pub mod special;

pub use error::{Error, Result};
pub use numerics::{QuadResult, SeriesResult, Tolerance};
