//! Shapes of order-l hypermatrices and the canonical index linearization.
//!
//! Entries are stored flat in last-dimension-fastest (row-major) order; the
//! same order defines vectorization, so there is exactly one flattening in
//! the whole crate.

use std::fmt;

use crate::error::{HmError, Result};

/// Dimensions `(n_0, ..., n_{l-1})` of an order-`l` hypermatrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Shape {
    dims: Vec<usize>,
}

impl Shape {
    /// Builds a shape, rejecting zero dimensions and empty dimension lists.
    pub fn new(dims: impl Into<Vec<usize>>) -> Result<Self> {
        let dims = dims.into();
        if dims.is_empty() {
            return Err(HmError::InvalidShape("no dimensions given".into()));
        }
        if let Some(&bad) = dims.iter().find(|&&d| d == 0) {
            return Err(HmError::InvalidShape(format!(
                "every dimension must be >= 1, got {bad} in {dims:?}"
            )));
        }
        Ok(Shape { dims })
    }

    /// Shape of a cubic order-3 hypermatrix `n x n x n`.
    pub fn cubic(n: usize) -> Result<Self> {
        Shape::new(vec![n; 3])
    }

    pub fn order(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, axis: usize) -> usize {
        self.dims[axis]
    }

    /// Total number of entries.
    pub fn count(&self) -> usize {
        self.dims.iter().product()
    }

    /// Shape after one cyclic index rotation: `(n_1, ..., n_{l-1}, n_0)`.
    pub fn rotated_left(&self) -> Shape {
        let mut dims = self.dims.clone();
        dims.rotate_left(1);
        Shape { dims }
    }

    pub fn contains(&self, index: &[usize]) -> bool {
        index.len() == self.dims.len() && index.iter().zip(&self.dims).all(|(&i, &n)| i < n)
    }

    /// Flat position of a multi-index, last dimension fastest.
    pub fn linearize(&self, index: &[usize]) -> Result<usize> {
        if !self.contains(index) {
            return Err(HmError::IndexOutOfRange {
                index: index.to_vec(),
                dims: self.dims.clone(),
            });
        }
        let mut flat = 0;
        for (&i, &n) in index.iter().zip(&self.dims) {
            flat = flat * n + i;
        }
        Ok(flat)
    }

    /// Multi-index of a flat position; inverse of [`Shape::linearize`].
    pub fn delinearize(&self, flat: usize) -> Result<Vec<usize>> {
        if flat >= self.count() {
            return Err(HmError::IndexOutOfRange {
                index: vec![flat],
                dims: self.dims.clone(),
            });
        }
        let mut index = vec![0; self.order()];
        let mut rest = flat;
        for (slot, &n) in index.iter_mut().zip(&self.dims).rev() {
            *slot = rest % n;
            rest /= n;
        }
        Ok(index)
    }

    /// Iterates all multi-indices in canonical flat order.
    pub fn indices(&self) -> IndexIter<'_> {
        IndexIter {
            shape: self,
            next_flat: 0,
            count: self.count(),
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.dims)
    }
}

pub struct IndexIter<'a> {
    shape: &'a Shape,
    next_flat: usize,
    count: usize,
}

impl Iterator for IndexIter<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.next_flat >= self.count {
            return None;
        }
        let index = self.shape.delinearize(self.next_flat).expect("in range");
        self.next_flat += 1;
        Some(index)
    }
}
