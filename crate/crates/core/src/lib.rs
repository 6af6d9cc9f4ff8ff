//! Reed-Solomon maximum-likelihood decoding hardness toolkit.
//!
//! Builds the 3-DM → MLD-RS reductions (plain and with preprocessing) over GF(2^m) and
//! certifies them with independent brute-force oracles.
//!
//! Layout:
//! - [`gf2m`]: field construction and arithmetic
//! - [`algebra`]: polynomials and matrices
//! - [`rs_code`]: Reed-Solomon codes, syndrome matrices and GRS scalers
//! - [`reduction`]: the two conversion procedures
//! - [`oracles`]: exact solvers, identity checks and the verification report
//! - [`instance_file`] and [`cli`]: on-disk formats and the `rsmld` command line

pub mod algebra;
pub mod cli;
pub mod error;
pub mod gf2m;
pub mod instance_file;
pub mod oracles;
pub mod reduction;
pub mod rs_code;

pub use algebra::{Matrix, Poly};
pub use error::{Error, Result};
pub use gf2m::{build_field, FieldContext, FieldElement};
pub use reduction::{MldRsInstance, Mode, ReductionTrace, ThreeDmInstance, Triple};
pub use rs_code::{hamming_distance, GrsScalers, RsCode};
