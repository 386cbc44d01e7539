//! Dense hypermatrix (order-N tensor) algebra built around the
//! Bhattacharya-Mesner product family.
//!
//! The crate provides:
//!
//! - [`Hypermatrix`]: dense arbitrary-order storage over a pluggable
//!   scalar ring ([`Scalar`]): exact rationals, floats, complex floats,
//!   `i64`, or the symbolic [`Expr`].
//! - [`generate`]: labeled symbolic generators (generic, symmetric,
//!   cyclically symmetric).
//! - [`ops`]: elementwise operations, cyclic transposes, the ternary BM
//!   product with and without background, and the variadic general
//!   product.
//! - [`special`]: Kronecker delta, permutation, diagonal and orthogonal
//!   hypermatrices with their defining identities.
//! - [`cayley`]: enumeration of composition powers (Fuss-Catalan counts)
//!   and the numerical dimension of their span.
//! - [`linalg`] / [`solve`]: complex dense matrices, one-sided Jacobi
//!   SVD, Moore-Penrose pseudo-inverse, affine constraint formatting and
//!   the pseudo-inverse-pair pipeline.
//!
//! Entries are stored flat in last-dimension-fastest order; vectorization
//! and every matrix built from vectorized hypermatrices use that same
//! canonical order.
//!
//! All values are immutable after construction and all operations are
//! pure, so everything here is safe to share across threads.
//!
//! # Example
//!
//! ```
//! use hypermatrix::generate::labeled;
//! use hypermatrix::ops::{bm_product3, transpose_k};
//! use hypermatrix::special::kronecker_delta;
//! use hypermatrix::Shape;
//!
//! # fn main() -> hypermatrix::Result<()> {
//! let a = labeled(Shape::cubic(2)?, "a")?;
//! let b = labeled(Shape::cubic(2)?, "b")?;
//! let c = labeled(Shape::cubic(2)?, "c")?;
//! let p = bm_product3(&a, &b, &c)?;
//! assert_eq!(
//!     p.at(&[0, 0, 0]).to_string(),
//!     "a000*b000*c000 + a010*b001*c100"
//! );
//!
//! // The Kronecker delta is a fixed point of the product with its two
//! // cyclic transposes.
//! let delta = kronecker_delta::<i64>(3)?;
//! let product = bm_product3(&delta, &transpose_k(&delta, 2), &transpose_k(&delta, 1))?;
//! assert_eq!(product, delta);
//! # Ok(())
//! # }
//! ```

pub mod cayley;
pub mod error;
pub mod expr;
pub mod generate;
pub mod hypermatrix;
pub mod linalg;
pub mod ops;
pub mod scalar;
pub mod shape;
pub mod solve;
pub mod special;

pub use error::{HmError, Result};
pub use expr::{Expr, Monomial};
pub use hypermatrix::Hypermatrix;
pub use scalar::{NumericScalar, Rational, Scalar};
pub use shape::Shape;

/// Complex scalar re-exported for downstream crates.
pub use num_complex::Complex64;
