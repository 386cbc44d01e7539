//! Dense order-N hypermatrix storage.

use std::fmt;

use crate::error::{HmError, Result};
use crate::scalar::Scalar;
use crate::shape::Shape;

/// A dense hypermatrix: a shape plus a flat entry buffer in canonical
/// last-dimension-fastest order.
///
/// Values are immutable after construction; every operation returns a new
/// hypermatrix, so values can be shared freely across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypermatrix<S> {
    shape: Shape,
    entries: Vec<S>,
}

impl<S: Scalar> Hypermatrix<S> {
    /// Hypermatrix with every entry equal to `fill`.
    pub fn filled(shape: Shape, fill: S) -> Self {
        let count = shape.count();
        Hypermatrix {
            shape,
            entries: vec![fill; count],
        }
    }

    pub fn zeros(shape: Shape) -> Self {
        Hypermatrix::filled(shape, S::zero())
    }

    pub fn ones(shape: Shape) -> Self {
        Hypermatrix::filled(shape, S::one())
    }

    /// Builds from a flat buffer already in canonical order.
    pub fn from_entries(shape: Shape, entries: Vec<S>) -> Result<Self> {
        if entries.len() != shape.count() {
            return Err(HmError::DimensionMismatch(format!(
                "buffer of length {} does not fill shape {} ({} entries)",
                entries.len(),
                shape,
                shape.count()
            )));
        }
        Ok(Hypermatrix { shape, entries })
    }

    /// Builds entry-by-entry from the multi-index.
    pub fn from_fn(shape: Shape, mut f: impl FnMut(&[usize]) -> S) -> Self {
        let entries = shape.indices().map(|idx| f(&idx)).collect();
        Hypermatrix { shape, entries }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn order(&self) -> usize {
        self.shape.order()
    }

    pub fn dim(&self, axis: usize) -> usize {
        self.shape.dim(axis)
    }

    /// True when every dimension equals `n` and the order is 3.
    pub fn is_cubic(&self, n: usize) -> bool {
        self.order() == 3 && self.shape.dims().iter().all(|&d| d == n)
    }

    /// Flat entry buffer in canonical order.
    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn get(&self, index: &[usize]) -> Result<&S> {
        let flat = self.shape.linearize(index)?;
        Ok(&self.entries[flat])
    }

    /// Entry access that panics on a bad index; for loops whose bounds
    /// come from the shape itself.
    pub fn at(&self, index: &[usize]) -> &S {
        self.get(index).expect("index within shape")
    }

    /// Canonical vectorization: the entries in flat order, last index
    /// fastest.
    pub fn vectorize(&self) -> Vec<S> {
        self.entries.clone()
    }

    /// Applies `f` to every entry, keeping the shape.
    pub fn map<T: Scalar>(&self, f: impl FnMut(&S) -> T) -> Hypermatrix<T> {
        Hypermatrix {
            shape: self.shape.clone(),
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Applies a fallible `f` to every entry, keeping the shape.
    pub fn try_map<T: Scalar>(&self, mut f: impl FnMut(&S) -> Result<T>) -> Result<Hypermatrix<T>> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            entries.push(f(e)?);
        }
        Ok(Hypermatrix {
            shape: self.shape.clone(),
            entries,
        })
    }
}

fn fmt_nested<S: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    dims: &[usize],
    entries: &[S],
) -> fmt::Result {
    if dims.is_empty() {
        return write!(f, "{}", entries[0]);
    }
    let block = entries.len() / dims[0];
    write!(f, "[")?;
    for i in 0..dims[0] {
        if i > 0 {
            write!(f, ", ")?;
        }
        fmt_nested(f, &dims[1..], &entries[i * block..(i + 1) * block])?;
    }
    write!(f, "]")
}

// Display is the one place the nested-list presentation survives; storage
// stays flat.
impl<S: Scalar> fmt::Display for Hypermatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_nested(f, self.shape.dims(), &self.entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filled_and_counts() {
        let h = Hypermatrix::filled(Shape::new(vec![2, 2, 2]).unwrap(), 0i64);
        assert_eq!(h.entries().len(), 8);
        assert!(h.entries().iter().all(|&e| e == 0));

        let v = Hypermatrix::filled(Shape::new(vec![2]).unwrap(), 1i64);
        assert_eq!(v.entries(), &[1, 1]);

        assert!(Shape::new(vec![0]).is_err());
    }

    #[test]
    fn from_entries_checks_length() {
        let shape = Shape::new(vec![2, 2]).unwrap();
        assert!(Hypermatrix::from_entries(shape.clone(), vec![1i64; 3]).is_err());
        let h = Hypermatrix::from_entries(shape, vec![1i64, 2, 3, 4]).unwrap();
        assert_eq!(*h.at(&[1, 0]), 3);
    }

    #[test]
    fn vectorize_is_flat_order() {
        let shape = Shape::new(vec![1, 2, 3]).unwrap();
        let h = Hypermatrix::from_fn(shape.clone(), |idx| shape.linearize(idx).unwrap() as i64);
        assert_eq!(h.vectorize(), vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn display_nests_by_dims() {
        let h = Hypermatrix::from_entries(Shape::new(vec![2, 2]).unwrap(), vec![1i64, 2, 3, 4])
            .unwrap();
        assert_eq!(h.to_string(), "[[1, 2], [3, 4]]");
    }
}
