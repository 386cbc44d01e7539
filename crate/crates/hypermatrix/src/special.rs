//! Special hypermatrix families: Kronecker delta, permutation, diagonal
//! and the parametrized orthogonal hypermatrices.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{HmError, Result};
use crate::hypermatrix::Hypermatrix;
use crate::ops::{bm_product3, cyclic_transpose, transpose_k};
use crate::scalar::Scalar;
use crate::shape::Shape;

/// A bijection on `{0, ..., n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    /// Validates that `image` hits every value in `0..n` exactly once.
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        if n == 0 {
            return Err(HmError::InvalidPermutation("empty image list".into()));
        }
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n || seen[v] {
                return Err(HmError::InvalidPermutation(format!(
                    "{image:?} is not a bijection on 0..{n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Permutation::new((0..n).collect())
    }

    /// The transposition swapping `a` and `b` on `0..n`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a >= n || b >= n {
            return Err(HmError::InvalidPermutation(format!(
                "transposition ({a} {b}) out of range for n={n}"
            )));
        }
        let mut image: Vec<usize> = (0..n).collect();
        image.swap(a, b);
        Permutation::new(image)
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// True when the permutation is its own inverse.
    pub fn is_involution(&self) -> bool {
        (0..self.len()).all(|i| self.image[self.image[i]] == i)
    }
}

/// The `n x n x n` Kronecker delta: 1 where `i = j = k`, 0 elsewhere.
/// It is a fixed point of the product with its two cyclic transposes.
pub fn kronecker_delta<S: Scalar>(n: usize) -> Result<Hypermatrix<S>> {
    let shape = Shape::cubic(n)?;
    Ok(Hypermatrix::from_fn(shape, |idx| {
        if idx[0] == idx[1] && idx[1] == idx[2] {
            S::one()
        } else {
            S::zero()
        }
    }))
}

/// Permutation hypermatrix in closed form: `P(i,j,k) = 1` iff `k = sigma(j)`,
/// independent of `i`.
pub fn permutation_hypermatrix<S: Scalar>(sigma: &Permutation) -> Result<Hypermatrix<S>> {
    let n = sigma.len();
    let shape = Shape::cubic(n)?;
    Ok(Hypermatrix::from_fn(shape, |idx| {
        if idx[2] == sigma.apply(idx[1]) {
            S::one()
        } else {
            S::zero()
        }
    }))
}

/// Permutation hypermatrix built step by step through products, the way the
/// closed form was originally derived: form the identity pattern from
/// `prod(1, 1, delta)`, cyclically permute, reorder the row slices by
/// `sigma`, then cyclically permute twice. Kept as a cross-check for
/// [`permutation_hypermatrix`].
pub fn permutation_hypermatrix_constructive<S: Scalar>(
    sigma: &Permutation,
) -> Result<Hypermatrix<S>> {
    let n = sigma.len();
    let delta = kronecker_delta::<S>(n)?;
    let ones = Hypermatrix::<S>::ones(Shape::cubic(n)?);
    let id = bm_product3(&ones, &ones, &delta)?;
    let id = cyclic_transpose(&id)?;
    let rows_permuted = Hypermatrix::from_fn(id.shape().clone(), |idx| {
        id.at(&[sigma.apply(idx[0]), idx[1], idx[2]]).clone()
    });
    cyclic_transpose(&cyclic_transpose(&rows_permuted)?)
}

/// Which slice family of a cubic hypermatrix a permutation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SliceAxis {
    Row,
    Column,
    Depth,
}

/// Permutes a slice family of a cubic hypermatrix through the product
/// patterns `prod(P^T, P^T2, A)` (rows), `prod(A, P, P^T)` (columns) and
/// `prod(P, A, P^T2)` (depth).
///
/// The patterns deliver the slice action only when `sigma` composed with
/// itself is the identity, so non-involutions are rejected; apply a general
/// permutation as a sequence of transpositions.
pub fn slice_permute<S: Scalar>(
    a: &Hypermatrix<S>,
    sigma: &Permutation,
    axis: SliceAxis,
) -> Result<Hypermatrix<S>> {
    let n = sigma.len();
    if !a.is_cubic(n) {
        return Err(HmError::DimensionMismatch(format!(
            "slice permutation needs an {n}x{n}x{n} hypermatrix, got {}",
            a.shape()
        )));
    }
    if !sigma.is_involution() {
        return Err(HmError::NotInvolution(sigma.image().to_vec()));
    }
    let p = permutation_hypermatrix::<S>(sigma)?;
    let pt = transpose_k(&p, 1);
    let ptt = transpose_k(&p, 2);
    match axis {
        SliceAxis::Row => bm_product3(&pt, &ptt, a),
        SliceAxis::Column => bm_product3(a, &p, &pt),
        SliceAxis::Depth => bm_product3(&p, a, &ptt),
    }
}

/// Diagonal hypermatrix from a square matrix: `D(i,j,k) = M(min(i,k),
/// max(i,k))` where `j = k`, zero elsewhere. Only the upper triangle of
/// `M` is read. Satisfies `prod(D^T, D^T2, D) = entry_pow(D, 3)`.
pub fn diagonal_from_matrix<S: Scalar>(m: &Hypermatrix<S>) -> Result<Hypermatrix<S>> {
    if m.order() != 2 || m.dim(0) != m.dim(1) {
        return Err(HmError::DimensionMismatch(format!(
            "diagonal construction needs a square matrix, got {}",
            m.shape()
        )));
    }
    let n = m.dim(0);
    let shape = Shape::cubic(n)?;
    Ok(Hypermatrix::from_fn(shape, |idx| {
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        if j == k {
            m.at(&[i.min(k), i.max(k)]).clone()
        } else {
            S::zero()
        }
    }))
}

fn check_open_angle(name: &str, value: f64) -> Result<()> {
    if value > 0.0 && value < FRAC_PI_2 {
        Ok(())
    } else {
        Err(HmError::Domain(format!(
            "{name} = {value} must lie strictly inside (0, pi/2)"
        )))
    }
}

/// `x^(2/3)` for strictly positive `x`; the angle domain guarantees
/// positivity, keeping the fractional power real and unambiguous.
fn pow_two_thirds(x: f64) -> f64 {
    x.powf(2.0 / 3.0)
}

/// Orthogonal 2x2x2 hypermatrix parametrized by one angle:
/// `prod(Q, Q^T2, Q^T)` equals the Kronecker delta for every
/// `theta` strictly inside `(0, pi/2)`.
pub fn orthogonal_2x2x2(theta: f64) -> Result<Hypermatrix<f64>> {
    check_open_angle("theta", theta)?;
    let c = pow_two_thirds(theta.cos());
    let s = pow_two_thirds(theta.sin());
    Hypermatrix::from_entries(Shape::cubic(2)?, vec![c, s, s, c, -s, c, s, s])
}

/// Orthogonal 3x3x3 hypermatrix parametrized by two angles, with cube
/// roots of unity as phases. The construction zeroes the third column of
/// the first slab and the first column of the last slab.
pub fn orthogonal_3x3x3(t1: f64, t2: f64) -> Result<Hypermatrix<Complex64>> {
    check_open_angle("t1", t1)?;
    check_open_angle("t2", t2)?;
    let s1 = pow_two_thirds(t1.sin());
    // The three magnitudes of the closed form; x^3 + y^3 + z^3 = 1.
    let x = Complex64::new(pow_two_thirds(t1.cos()), 0.0);
    let y = Complex64::new(s1 * pow_two_thirds(t2.cos()), 0.0);
    let z = Complex64::new(s1 * pow_two_thirds(t2.sin()), 0.0);
    let omega = Complex64::cis(2.0 * std::f64::consts::PI / 3.0);
    let omega_bar = omega.conj();
    let zero = Complex64::new(0.0, 0.0);
    let entries = vec![
        x,
        y,
        zero, //              (0,0,*)
        y,
        z,
        zero, //              (0,1,*)
        z,
        omega_bar * x,
        zero, //  (0,2,*)
        z,
        x,
        omega_bar * y, //     (1,0,*)
        omega * x,
        y,
        z, //         (1,1,*)
        y,
        z,
        x, //                 (1,2,*)
        zero,
        z,
        x, //              (2,0,*)
        zero,
        x,
        y, //              (2,1,*)
        zero,
        omega * y,
        z, //      (2,2,*)
    ];
    Hypermatrix::from_entries(Shape::cubic(3)?, entries)
}
