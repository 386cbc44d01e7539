//! Composition powers of a cubic hypermatrix and the dimension of their
//! span.
//!
//! A composition of order `n` (odd) is any full ternary bracketing of `n`
//! copies of the seed under the BM product; there are Fuss-Catalan
//! `binom(3m, m) / (2m + 1)` of them for `n = 2m + 1`. Duplicates are kept
//! so the counts stay combinatorial.

use num_complex::Complex64;

use crate::error::{HmError, Result};
use crate::hypermatrix::Hypermatrix;
use crate::linalg::{rank, DenseMatrix};
use crate::ops::bm_product3;
use crate::scalar::{NumericScalar, Scalar};

/// All composition powers of one seed at a fixed odd order.
#[derive(Debug, Clone)]
pub struct CompositionList<S> {
    order: usize,
    items: Vec<Hypermatrix<S>>,
}

impl<S> CompositionList<S> {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn items(&self) -> &[Hypermatrix<S>] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

fn require_cubic<S: Scalar>(seed: &Hypermatrix<S>) -> Result<usize> {
    let n = seed.dim(0);
    if !seed.is_cubic(n) {
        return Err(HmError::DimensionMismatch(format!(
            "composition powers need a cubic order-3 seed, got {}",
            seed.shape()
        )));
    }
    Ok(n)
}

/// Enumerates every product composition of exactly `order` copies of the
/// seed. Orders must be odd: products take three operands, so even counts
/// can never occur.
///
/// The list order is deterministic: ascending first-operand order `i`,
/// then second-operand order `j`, then the operands in list order with the
/// first operand outermost.
pub fn composition_list<S: Scalar>(
    seed: &Hypermatrix<S>,
    order: usize,
) -> Result<CompositionList<S>> {
    if order == 0 || order.is_multiple_of(2) {
        return Err(HmError::EvenOrder(order));
    }
    require_cubic(seed)?;
    let mut by_order: Vec<Vec<Hypermatrix<S>>> = vec![Vec::new(); order + 1];
    by_order[1] = vec![seed.clone()];
    for n in (3..=order).step_by(2) {
        let mut items = Vec::new();
        for i in (1..n).step_by(2) {
            for j in (1..n - i).step_by(2) {
                let k = n - i - j;
                let (gi, gj, gk) = (&by_order[i], &by_order[j], &by_order[k]);
                for g1 in gi {
                    for g2 in gj {
                        for g3 in gk {
                            items.push(bm_product3(g1, g2, g3)?);
                        }
                    }
                }
            }
        }
        by_order[n] = items;
    }
    Ok(CompositionList {
        order,
        items: by_order.swap_remove(order),
    })
}

/// Stacks the vectorizations of every composition of orders `1, 3, ...,
/// max_order` into a matrix (one row per composition) and returns its
/// numerical rank with singular-value cutoff `tol * sigma_max`.
///
/// A full rank of `n^3` certifies that the composition powers span the
/// whole entry space.
pub fn span_rank<S: NumericScalar>(
    seed: &Hypermatrix<S>,
    max_order: usize,
    tol: f64,
) -> Result<usize> {
    if max_order == 0 || max_order.is_multiple_of(2) {
        return Err(HmError::EvenOrder(max_order));
    }
    require_cubic(seed)?;
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for order in (1..=max_order).step_by(2) {
        for item in composition_list(seed, order)?.items() {
            rows.push(item.vectorize().iter().map(S::to_complex).collect());
        }
    }
    let matrix = DenseMatrix::from_rows(rows)?;
    Ok(rank(&matrix, tol))
}

/// Fuss-Catalan number `binom(3m, m) / (2m + 1)`: the composition count at
/// order `2m + 1`.
pub fn fuss_catalan(m: u64) -> u64 {
    // binom(3m, m) by the multiplicative formula; sizes here are tiny.
    let mut binom: u128 = 1;
    for i in 0..m as u128 {
        binom = binom * (3 * m as u128 - i) / (i + 1);
    }
    (binom / (2 * m as u128 + 1)) as u64
}
