//! Labeled symbolic generators.
//!
//! Entry labels are the prefix followed by one decimal digit per index, so
//! every dimension must be at most 10; larger dimensions would make labels
//! ambiguous.

use crate::error::{HmError, Result};
use crate::expr::Expr;
use crate::hypermatrix::Hypermatrix;
use crate::shape::Shape;

fn check_label_dims(shape: &Shape) -> Result<()> {
    if let Some(&bad) = shape.dims().iter().find(|&&d| d > 10) {
        return Err(HmError::LabelAmbiguity(format!(
            "dimension {bad} needs multi-digit indices; labeled generation supports dims <= 10"
        )));
    }
    Ok(())
}

fn label(prefix: &str, index: &[usize]) -> String {
    let mut name = String::with_capacity(prefix.len() + index.len());
    name.push_str(prefix);
    for &i in index {
        name.push(char::from_digit(i as u32, 10).expect("single digit"));
    }
    name
}

/// Generic symbolic hypermatrix: entry `(i_0, ..., i_{l-1})` is the atom
/// `prefix` followed by the digits `i_0 ... i_{l-1}`.
pub fn labeled(shape: Shape, prefix: &str) -> Result<Hypermatrix<Expr>> {
    check_label_dims(&shape)?;
    // Validates the prefix as an atom name up front.
    Expr::atom(&label(prefix, &vec![0; shape.order()]))?;
    Ok(Hypermatrix::from_fn(shape, |idx| {
        Expr::atom(&label(prefix, idx)).expect("validated prefix")
    }))
}

/// Symbolic symmetric matrix: entry `(i, j)` is labeled by the sorted index
/// pair, so the result equals its own transpose.
pub fn sym_matrix(n: usize, prefix: &str) -> Result<Hypermatrix<Expr>> {
    let shape = Shape::new(vec![n, n])?;
    check_label_dims(&shape)?;
    Expr::atom(&label(prefix, &[0, 0]))?;
    Ok(Hypermatrix::from_fn(shape, |idx| {
        let (i, j) = (idx[0], idx[1]);
        Expr::atom(&label(prefix, &[i.min(j), i.max(j)])).expect("validated prefix")
    }))
}

fn sym3_label_index(i: usize, j: usize, k: usize) -> [usize; 3] {
    let lo = i.min(j).min(k);
    let hi = i.max(j).max(k);
    let mid = i + j + k - lo - hi;
    if i == j || i == k || j == k {
        return [lo, mid, hi];
    }
    // All distinct: even permutations of the sorted triple share the sorted
    // label; odd permutations swap the first two label digits.
    let even = (i == lo && k == hi) || (k == lo && j == hi) || (i == hi && j == lo);
    if even {
        [lo, mid, hi]
    } else {
        [mid, lo, hi]
    }
}

/// Symbolic order-3 hypermatrix whose entries are invariant under cyclic
/// permutation of the indices: `S(i,j,k) = S(j,k,i) = S(k,i,j)`.
pub fn sym3(n: usize, prefix: &str) -> Result<Hypermatrix<Expr>> {
    let shape = Shape::new(vec![n, n, n])?;
    check_label_dims(&shape)?;
    Expr::atom(&label(prefix, &[0, 0, 0]))?;
    Ok(Hypermatrix::from_fn(shape, |idx| {
        let digits = sym3_label_index(idx[0], idx[1], idx[2]);
        Expr::atom(&label(prefix, &digits)).expect("validated prefix")
    }))
}
