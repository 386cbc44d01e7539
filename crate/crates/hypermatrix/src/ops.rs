//! Bhattacharya-Mesner algebra operations.
//!
//! Elementwise sums, scalings and Hadamard products; the cyclic transpose
//! family; the ternary order-3 product with trivial and non-trivial
//! background; and the variadic general product that specializes to the
//! matrix product at order 2 and to the ternary product at order 3.

use crate::error::{HmError, Result};
use crate::hypermatrix::Hypermatrix;
use crate::scalar::Scalar;
use crate::shape::Shape;

fn require_same_shape<S: Scalar>(a: &Hypermatrix<S>, b: &Hypermatrix<S>) -> Result<()> {
    if a.shape() != b.shape() {
        return Err(HmError::DimensionMismatch(format!(
            "operand shapes {} and {} differ",
            a.shape(),
            b.shape()
        )));
    }
    Ok(())
}

/// Entrywise sum; shapes must match.
pub fn hm_add<S: Scalar>(a: &Hypermatrix<S>, b: &Hypermatrix<S>) -> Result<Hypermatrix<S>> {
    require_same_shape(a, b)?;
    let entries = a
        .entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| x.clone() + y.clone())
        .collect();
    Hypermatrix::from_entries(a.shape().clone(), entries)
}

/// Entrywise product of every entry with the scalar `s`.
pub fn hm_scale<S: Scalar>(a: &Hypermatrix<S>, s: &S) -> Hypermatrix<S> {
    a.map(|x| x.clone() * s.clone())
}

/// Entrywise (Hadamard) product; shapes must match.
pub fn hm_hadamard<S: Scalar>(a: &Hypermatrix<S>, b: &Hypermatrix<S>) -> Result<Hypermatrix<S>> {
    require_same_shape(a, b)?;
    let entries = a
        .entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| x.clone() * y.clone())
        .collect();
    Hypermatrix::from_entries(a.shape().clone(), entries)
}

/// Entrywise integer power `a^s`.
pub fn entry_pow<S: Scalar>(a: &Hypermatrix<S>, s: i64) -> Result<Hypermatrix<S>> {
    a.try_map(|x| x.pow_int(s))
}

/// Entrywise exponentiation with the entry in the exponent: `s^a`.
///
/// Exponentiation does not commute, so this is a distinct operation from
/// [`entry_pow`]; it is defined for float and complex scalars only.
pub fn base_pow<S: Scalar>(s: &S, a: &Hypermatrix<S>) -> Result<Hypermatrix<S>> {
    a.try_map(|x| S::base_pow(s, x))
}

/// Cyclic index rotation: the order-3 case sends `(i,j,k)` to `A(k,i,j)`,
/// and in general `result(i_0,...,i_{l-1}) = A(i_{l-1}, i_0, ..., i_{l-2})`.
/// The shape rotates left to match. Requires order >= 2.
pub fn cyclic_transpose<S: Scalar>(a: &Hypermatrix<S>) -> Result<Hypermatrix<S>> {
    if a.order() < 2 {
        return Err(HmError::Unsupported(
            "cyclic transpose needs order >= 2".into(),
        ));
    }
    let shape = a.shape().rotated_left();
    let mut source = vec![0usize; a.order()];
    Ok(Hypermatrix::from_fn(shape, |idx| {
        source[0] = idx[idx.len() - 1];
        source[1..].copy_from_slice(&idx[..idx.len() - 1]);
        a.at(&source).clone()
    }))
}

/// `t`-fold cyclic transpose `A^{T^t}`; `t` is taken modulo the order, so
/// any integer (including negatives) is accepted.
pub fn transpose_k<S: Scalar>(a: &Hypermatrix<S>, t: i64) -> Hypermatrix<S> {
    let reps = t.rem_euclid(a.order() as i64);
    let mut out = a.clone();
    for _ in 0..reps {
        out = cyclic_transpose(&out).expect("order checked by rem_euclid");
    }
    out
}

/// Ternary Bhattacharya-Mesner product.
///
/// For `A` of shape `m x k x p`, `B` of shape `m x n x k` and `C` of shape
/// `k x n x p`, the result is `m x n x p` with
/// `result(i,j,c) = sum_t A(i,t,c) * B(i,j,t) * C(t,j,c)`.
pub fn bm_product3<S: Scalar>(
    a: &Hypermatrix<S>,
    b: &Hypermatrix<S>,
    c: &Hypermatrix<S>,
) -> Result<Hypermatrix<S>> {
    let result_dims = bm_product3_dims(a, b, c)?;
    let contraction = a.dim(1);
    let shape = Shape::new(result_dims)?;
    Ok(Hypermatrix::from_fn(shape, |idx| {
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        let mut acc = S::zero();
        for t in 0..contraction {
            acc = acc
                + a.at(&[i, t, k]).clone() * b.at(&[i, j, t]).clone() * c.at(&[t, j, k]).clone();
        }
        acc
    }))
}

/// Ternary product against a non-trivial background `T`.
///
/// For `A` of shape `m x l x p`, `B` of shape `m x n x l`, `C` of shape
/// `l x n x p` and `T` of shape `l x l x l`, the result is `m x n x p`
/// with entries
/// `sum_{l0,l1,l2} A(i,l0,c) * B(i,j,l1) * C(l2,j,c) * T(l0,l1,l2)`.
/// A Kronecker-delta background collapses the triple sum back to
/// [`bm_product3`].
pub fn bm_product3_background<S: Scalar>(
    a: &Hypermatrix<S>,
    b: &Hypermatrix<S>,
    c: &Hypermatrix<S>,
    background: &Hypermatrix<S>,
) -> Result<Hypermatrix<S>> {
    if background.order() != 3 {
        return Err(HmError::DimensionMismatch(format!(
            "background must have order 3, got shape {}",
            background.shape()
        )));
    }
    let result_dims = bm_product3_dims(a, b, c)?;
    let l = a.dim(1);
    if !background.is_cubic(l) {
        return Err(HmError::DimensionMismatch(format!(
            "background shape {} must be {l}x{l}x{l} to match the contraction length",
            background.shape()
        )));
    }
    let shape = Shape::new(result_dims)?;
    Ok(Hypermatrix::from_fn(shape, |idx| {
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        let mut acc = S::zero();
        for l0 in 0..l {
            for l1 in 0..l {
                for l2 in 0..l {
                    acc = acc
                        + a.at(&[i, l0, k]).clone()
                            * b.at(&[i, j, l1]).clone()
                            * c.at(&[l2, j, k]).clone()
                            * background.at(&[l0, l1, l2]).clone();
                }
            }
        }
        acc
    }))
}

fn bm_product3_dims<S: Scalar>(
    a: &Hypermatrix<S>,
    b: &Hypermatrix<S>,
    c: &Hypermatrix<S>,
) -> Result<Vec<usize>> {
    for (name, h) in [("first", a), ("second", b), ("third", c)] {
        if h.order() != 3 {
            return Err(HmError::DimensionMismatch(format!(
                "{name} operand must have order 3, got shape {}",
                h.shape()
            )));
        }
    }
    let checks = [
        (a.dim(0), b.dim(0), "rows of A must equal rows of B"),
        (b.dim(1), c.dim(1), "columns of B must equal columns of C"),
        (c.dim(2), a.dim(2), "depth of C must equal depth of A"),
        (a.dim(1), b.dim(2), "columns of A must equal depth of B"),
        (b.dim(2), c.dim(0), "depth of B must equal rows of C"),
    ];
    for (x, y, what) in checks {
        if x != y {
            return Err(HmError::DimensionMismatch(format!(
                "{what} ({x} != {y}); shapes {}, {}, {}",
                a.shape(),
                b.shape(),
                c.shape()
            )));
        }
    }
    Ok(vec![a.dim(0), b.dim(1), c.dim(2)])
}

/// Variadic Bhattacharya-Mesner product of `l` operands of order `l`.
///
/// Output dimension `d` is operand `d`'s dimension `d`; the contraction
/// runs over operand 0's dimension 1. Entry rule: for output index
/// `entry`, the factor from operand `s` is read at `entry` with position
/// `(s+1) mod l` replaced by the contraction index.
pub fn general_bm_product<S: Scalar>(operands: &[&Hypermatrix<S>]) -> Result<Hypermatrix<S>> {
    let l = operands.len();
    if l < 2 {
        return Err(HmError::OperandCount(l));
    }
    for (s, op) in operands.iter().enumerate() {
        if op.order() != l {
            return Err(HmError::DimensionMismatch(format!(
                "operand {s} has order {}, expected {l} (one per operand)",
                op.order()
            )));
        }
    }
    let out_dims: Vec<usize> = (0..l).map(|d| operands[d].dim(d)).collect();
    let contraction = operands[0].dim(1);
    // Upfront compatibility: operand s must agree with the output on every
    // axis except (s+1) mod l, where it must carry the contraction length.
    for (s, op) in operands.iter().enumerate() {
        let replaced = (s + 1) % l;
        for d in 0..l {
            let expected = if d == replaced {
                contraction
            } else {
                out_dims[d]
            };
            if op.dim(d) != expected {
                return Err(HmError::DimensionMismatch(format!(
                    "operand {s} axis {d} has length {}, expected {expected} \
                     (output dims {:?}, contraction {contraction})",
                    op.dim(d),
                    out_dims
                )));
            }
        }
    }
    let shape = Shape::new(out_dims)?;
    let mut probe = vec![0usize; l];
    Ok(Hypermatrix::from_fn(shape, |idx| {
        let mut acc = S::zero();
        for t in 0..contraction {
            let mut term = S::one();
            for (s, op) in operands.iter().enumerate() {
                probe.copy_from_slice(idx);
                probe[(s + 1) % l] = t;
                term = term * op.at(&probe).clone();
            }
            acc = acc + term;
        }
        acc
    }))
}
