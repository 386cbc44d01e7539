//! The scalar ring contract and its numeric instantiations.
//!
//! Every hypermatrix is generic over a [`Scalar`]: a commutative ring with
//! integer powers. Four instantiations are provided here or nearby:
//! `i64`, `f64`, [`Complex64`], exact [`Rational`], and the symbolic
//! [`Expr`](crate::expr::Expr) in its own module.

use std::fmt;
use std::ops::{Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Pow, Zero};

use crate::error::{HmError, Result};

/// Exact rational scalar with arbitrary-precision integers.
pub type Rational = num_rational::BigRational;

/// Commutative ring contract for hypermatrix entries.
///
/// `Zero`/`One` supply addition and multiplication; `Sub`/`Neg` complete
/// the ring. Powers go through [`Scalar::pow_int`] so each scalar can
/// reject what it cannot represent (e.g. negative powers of a symbolic
/// expression).
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_int(n: i64) -> Self;

    /// `self^k`. Follows the convention `0^0 = 1`.
    fn pow_int(&self, k: i64) -> Result<Self>;

    /// `base^self`, with `self` in the exponent. Defined for the float
    /// scalars only; exact and symbolic scalars reject it.
    fn base_pow(base: &Self, exponent: &Self) -> Result<Self>;
}

/// Scalars that embed into the complex numbers, for rank computations
/// and orthogonality checks.
pub trait NumericScalar: Scalar {
    fn to_complex(&self) -> Complex64;

    fn from_f64(x: f64) -> Self;

    /// Complex modulus of the embedded value.
    fn modulus(&self) -> f64 {
        self.to_complex().norm()
    }
}

impl Scalar for i64 {
    fn from_int(n: i64) -> Self {
        n
    }

    fn pow_int(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return Err(HmError::UnsupportedScalar(format!(
                "negative power {k} of an integer scalar"
            )));
        }
        let k = u32::try_from(k)
            .map_err(|_| HmError::UnsupportedScalar(format!("integer power {k} too large")))?;
        self.checked_pow(k)
            .ok_or_else(|| HmError::UnsupportedScalar(format!("integer overflow in {self}^{k}")))
    }

    fn base_pow(_base: &Self, _exponent: &Self) -> Result<Self> {
        Err(HmError::UnsupportedScalar(
            "base exponentiation needs a float or complex scalar".into(),
        ))
    }
}

impl Scalar for f64 {
    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn pow_int(&self, k: i64) -> Result<Self> {
        let k = i32::try_from(k)
            .map_err(|_| HmError::UnsupportedScalar(format!("integer power {k} too large")))?;
        Ok(self.powi(k))
    }

    fn base_pow(base: &Self, exponent: &Self) -> Result<Self> {
        Ok(base.powf(*exponent))
    }
}

impl Scalar for Complex64 {
    fn from_int(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn pow_int(&self, k: i64) -> Result<Self> {
        let k = i32::try_from(k)
            .map_err(|_| HmError::UnsupportedScalar(format!("integer power {k} too large")))?;
        Ok(self.powi(k))
    }

    fn base_pow(base: &Self, exponent: &Self) -> Result<Self> {
        // 0^0 = 1 keeps base_pow consistent with pow_int on zero entries.
        if exponent.is_zero() {
            return Ok(Complex64::one());
        }
        Ok(base.powc(*exponent))
    }
}

impl Scalar for Rational {
    fn from_int(n: i64) -> Self {
        Rational::from_integer(n.into())
    }

    fn pow_int(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Ok(Rational::one());
        }
        if self.is_zero() && k < 0 {
            return Err(HmError::UnsupportedScalar(
                "negative power of a zero rational".into(),
            ));
        }
        let k = i32::try_from(k)
            .map_err(|_| HmError::UnsupportedScalar(format!("integer power {k} too large")))?;
        Ok(Pow::pow(self.clone(), k))
    }

    fn base_pow(_base: &Self, _exponent: &Self) -> Result<Self> {
        Err(HmError::UnsupportedScalar(
            "base exponentiation needs a float or complex scalar".into(),
        ))
    }
}

impl NumericScalar for f64 {
    fn to_complex(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }

    fn from_f64(x: f64) -> Self {
        x
    }
}

impl NumericScalar for Complex64 {
    fn to_complex(&self) -> Complex64 {
        *self
    }

    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
}
