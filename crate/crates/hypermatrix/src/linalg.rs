//! Dense complex matrices, one-sided Jacobi SVD, and the Moore-Penrose
//! pseudo-inverse.
//!
//! Everything here is deterministic: fixed sweep order, fixed summation
//! order, no randomized pivoting. Identical inputs give bit-identical
//! outputs, which the pseudo-inverse-pair pipeline relies on.

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{HmError, Result};

/// Jacobi off-diagonal convergence threshold (relative).
const JACOBI_TOL: f64 = 1e-12;
/// Sweep cap; convergence is quadratic, so this is generous.
const JACOBI_MAX_SWEEPS: usize = 60;

/// Row-major complex matrix. Zero-dimensional matrices are allowed; an
/// empty constraint system formats into a `0 x n` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            entries: vec![Complex64::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        DenseMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// Builds from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(HmError::DimensionMismatch(
                "matrix rows have unequal lengths".into(),
            ));
        }
        Ok(DenseMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn conj_transpose(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn mul(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != rhs.rows {
            return Err(HmError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = DenseMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    out[(r, c)] += a * rhs[(k, c)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(HmError::DimensionMismatch(format!(
                "cannot apply {}x{} to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![Complex64::zero(); self.rows];
        for r in 0..self.rows {
            let mut acc = Complex64::zero();
            for c in 0..self.cols {
                acc += self[(r, c)] * v[c];
            }
            out[r] = acc;
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(HmError::DimensionMismatch(format!(
                "cannot subtract {}x{} from {}x{}",
                rhs.rows, rhs.cols, self.rows, self.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting.
    /// Deterministic; fails when a pivot is negligibly small relative to
    /// the matrix scale.
    pub fn inverse(&self) -> Result<DenseMatrix> {
        if self.rows != self.cols {
            return Err(HmError::DimensionMismatch(format!(
                "cannot invert a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let scale = self.max_abs().max(1.0);
        let pivot_floor = scale * (n as f64) * f64::EPSILON;
        let mut work = self.clone();
        let mut inv = DenseMatrix::identity(n);
        for col in 0..n {
            let pivot_row = (col..n)
                .max_by(|&a, &b| {
                    work[(a, col)]
                        .norm()
                        .partial_cmp(&work[(b, col)].norm())
                        .expect("norms are never NaN here")
                })
                .expect("non-empty range");
            if work[(pivot_row, col)].norm() <= pivot_floor {
                return Err(HmError::DimensionMismatch(format!(
                    "matrix is singular at elimination column {col}"
                )));
            }
            if pivot_row != col {
                for c in 0..n {
                    work.entries.swap(pivot_row * n + c, col * n + c);
                    inv.entries.swap(pivot_row * n + c, col * n + c);
                }
            }
            let pivot = work[(col, col)];
            for c in 0..n {
                work[(col, c)] /= pivot;
                inv[(col, c)] /= pivot;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = work[(r, col)];
                if factor.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let w = work[(col, c)];
                    let v = inv[(col, c)];
                    work[(r, c)] -= factor * w;
                    inv[(r, c)] -= factor * v;
                }
            }
        }
        Ok(inv)
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[r * self.cols + c]
    }
}

/// Thin singular value decomposition `A = U diag(s) V^H`.
///
/// `u` is `m x min(m,n)`, `v` is `n x min(m,n)`, and `singular_values`
/// are sorted in descending order. Columns of `u` belonging to zero
/// singular values are zero vectors.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: DenseMatrix,
    pub singular_values: Vec<f64>,
    pub v: DenseMatrix,
}

struct JacobiState {
    /// Working copy of the input; ends as U * diag(s).
    w: DenseMatrix,
    /// Accumulated right rotations; ends as V.
    v: DenseMatrix,
}

impl JacobiState {
    fn col_dot(&self, p: usize, q: usize) -> Complex64 {
        let mut acc = Complex64::zero();
        for i in 0..self.w.rows() {
            acc += self.w[(i, p)].conj() * self.w[(i, q)];
        }
        acc
    }

    fn col_norm_sqr(&self, p: usize) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.w.rows() {
            acc += self.w[(i, p)].norm_sqr();
        }
        acc
    }

    /// One rotation zeroing the (p,q) column inner product. Returns true
    /// when the pair was already orthogonal to working precision.
    fn rotate(&mut self, p: usize, q: usize) -> bool {
        let alpha = self.col_norm_sqr(p);
        let beta = self.col_norm_sqr(q);
        let gamma = self.col_dot(p, q);
        let g = gamma.norm();
        if g * g <= JACOBI_TOL * JACOBI_TOL * alpha * beta || g == 0.0 {
            return true;
        }
        // Phase that makes the inner product real, then a classic real
        // Jacobi rotation on the (p, q) plane.
        let phase = gamma.conj() / g;
        let zeta = (beta - alpha) / (2.0 * g);
        let t = if zeta >= 0.0 {
            1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
        } else {
            -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
        };
        let c = 1.0 / (1.0 + t * t).sqrt();
        let s = c * t;
        for i in 0..self.w.rows() {
            let wp = self.w[(i, p)];
            let wq = self.w[(i, q)] * phase;
            self.w[(i, p)] = wp * c - wq * s;
            self.w[(i, q)] = wp * s + wq * c;
        }
        for i in 0..self.v.rows() {
            let vp = self.v[(i, p)];
            let vq = self.v[(i, q)] * phase;
            self.v[(i, p)] = vp * c - vq * s;
            self.v[(i, q)] = vp * s + vq * c;
        }
        false
    }
}

/// One-sided Jacobi SVD of a matrix with `rows >= cols`.
fn svd_tall(a: &DenseMatrix) -> Svd {
    let n = a.cols();
    let mut state = JacobiState {
        w: a.clone(),
        v: DenseMatrix::identity(n),
    };
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut converged = true;
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                if !state.rotate(p, q) {
                    converged = false;
                }
            }
        }
        if converged {
            break;
        }
    }
    // Column norms are the singular values; sort them descending with a
    // deterministic tie-break on the column index.
    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = (0..n).map(|j| state.col_norm_sqr(j).sqrt()).collect();
    order.sort_by(|&a, &b| {
        norms[b]
            .partial_cmp(&norms[a])
            .expect("norms are never NaN here")
            .then(a.cmp(&b))
    });
    let singular_values: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let mut u = DenseMatrix::zeros(a.rows(), n);
    let mut v = DenseMatrix::zeros(n, n);
    for (new_j, &old_j) in order.iter().enumerate() {
        let sigma = norms[old_j];
        if sigma > 0.0 {
            for i in 0..a.rows() {
                u[(i, new_j)] = state.w[(i, old_j)] / sigma;
            }
        }
        for i in 0..n {
            v[(i, new_j)] = state.v[(i, old_j)];
        }
    }
    Svd {
        u,
        singular_values,
        v,
    }
}

/// Singular value decomposition by one-sided Jacobi rotations.
pub fn svd(a: &DenseMatrix) -> Svd {
    if a.rows() == 0 || a.cols() == 0 {
        return Svd {
            u: DenseMatrix::zeros(a.rows(), 0),
            singular_values: Vec::new(),
            v: DenseMatrix::zeros(a.cols(), 0),
        };
    }
    if a.rows() >= a.cols() {
        svd_tall(a)
    } else {
        // A = (A^H)^H: decompose the adjoint and swap the factors.
        let adj = svd_tall(&a.conj_transpose());
        Svd {
            u: adj.v,
            singular_values: adj.singular_values,
            v: adj.u,
        }
    }
}

/// Singular values only, descending.
pub fn singular_values(a: &DenseMatrix) -> Vec<f64> {
    svd(a).singular_values
}

/// Numerical rank: the number of singular values above `tol * sigma_max`.
pub fn rank(a: &DenseMatrix, tol: f64) -> usize {
    let sv = singular_values(a);
    let cutoff = tol * sv.first().copied().unwrap_or(0.0);
    sv.iter().filter(|&&s| s > cutoff).count()
}

/// Default relative cutoff for [`svd_pinv`]: `max(rows, cols) * epsilon`.
pub fn default_pinv_tol(a: &DenseMatrix) -> f64 {
    a.rows().max(a.cols()) as f64 * f64::EPSILON
}

/// Moore-Penrose pseudo-inverse through the SVD. Singular values at or
/// below `tol * sigma_max` are treated as zero.
pub fn svd_pinv(a: &DenseMatrix, tol: f64) -> DenseMatrix {
    let Svd {
        u,
        singular_values,
        v,
    } = svd(a);
    let cutoff = tol * singular_values.first().copied().unwrap_or(0.0);
    // pinv = V diag(1/s) U^H, dropping negligible singular values.
    let mut out = DenseMatrix::zeros(a.cols(), a.rows());
    for (j, &sigma) in singular_values.iter().enumerate() {
        if sigma <= cutoff || sigma == 0.0 {
            continue;
        }
        let inv_sigma = 1.0 / sigma;
        for r in 0..a.cols() {
            let vr = v[(r, j)] * inv_sigma;
            for c in 0..a.rows() {
                out[(r, c)] += vr * u[(c, j)].conj();
            }
        }
    }
    out
}

/// Minimum-norm least squares solution of `A x = b` through the
/// pseudo-inverse.
pub fn least_squares(a: &DenseMatrix, b: &[Complex64], tol: f64) -> Result<Vec<Complex64>> {
    svd_pinv(a, tol).mul_vec(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize, complex: bool) -> DenseMatrix {
        DenseMatrix::from_fn(rows, cols, |_, _| {
            let re = rng.gen_range(-1.0..1.0);
            let im = if complex {
                rng.gen_range(-1.0..1.0)
            } else {
                0.0
            };
            c(re, im)
        })
    }

    fn check_moore_penrose(a: &DenseMatrix, tol: f64) {
        let pinv = svd_pinv(a, default_pinv_tol(a));
        let a_pinv = a.mul(&pinv).unwrap();
        let pinv_a = pinv.mul(a).unwrap();
        let id1 = a_pinv.mul(a).unwrap().sub(a).unwrap().max_abs();
        let id2 = pinv_a.mul(&pinv).unwrap().sub(&pinv).unwrap().max_abs();
        let id3 = a_pinv.sub(&a_pinv.conj_transpose()).unwrap().max_abs();
        let id4 = pinv_a.sub(&pinv_a.conj_transpose()).unwrap().max_abs();
        for (i, dev) in [id1, id2, id3, id4].into_iter().enumerate() {
            assert!(dev <= tol, "Moore-Penrose identity {} off by {dev}", i + 1);
        }
    }

    #[test]
    fn identity_is_its_own_pinv() {
        for n in [1, 3, 5] {
            let eye = DenseMatrix::identity(n);
            let pinv = svd_pinv(&eye, default_pinv_tol(&eye));
            assert!(pinv.sub(&eye).unwrap().max_abs() < 1e-14);
        }
    }

    #[test]
    fn rank_deficient_diagonal_fixed_point() {
        let mut d = DenseMatrix::zeros(2, 2);
        d[(0, 0)] = c(1.0, 0.0);
        let pinv = svd_pinv(&d, default_pinv_tol(&d));
        assert!(pinv.sub(&d).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn moore_penrose_on_random_real_5x3() {
        let mut rng = StdRng::seed_from_u64(7);
        let a = random_matrix(&mut rng, 5, 3, false);
        check_moore_penrose(&a, 1e-9);
    }

    #[test]
    fn moore_penrose_on_random_matrices() {
        let mut rng = StdRng::seed_from_u64(42);
        for trial in 0..30 {
            let rows = rng.gen_range(1..=12);
            let cols = rng.gen_range(1..=12);
            let a = random_matrix(&mut rng, rows, cols, trial % 2 == 1);
            check_moore_penrose(&a, 1e-9);
        }
    }

    #[test]
    fn svd_reconstructs_input() {
        let mut rng = StdRng::seed_from_u64(3);
        let a = random_matrix(&mut rng, 6, 4, true);
        let Svd {
            u,
            singular_values,
            v,
        } = svd(&a);
        let mut us = u.clone();
        for j in 0..singular_values.len() {
            for i in 0..us.rows() {
                us[(i, j)] *= singular_values[j];
            }
        }
        let back = us.mul(&v.conj_transpose()).unwrap();
        assert!(back.sub(&a).unwrap().max_abs() < 1e-12);
        // Descending order.
        for w in singular_values.windows(2) {
            assert!(w[0] >= w[1]);
        }
    }

    #[test]
    fn wide_matrices_through_adjoint() {
        let mut rng = StdRng::seed_from_u64(11);
        let a = random_matrix(&mut rng, 3, 7, true);
        check_moore_penrose(&a, 1e-9);
    }

    #[test]
    fn inverse_known_2x2() {
        let mut m = DenseMatrix::zeros(2, 2);
        m[(0, 0)] = c(1.0, 0.0);
        m[(0, 1)] = c(2.0, 0.0);
        m[(1, 0)] = c(3.0, 0.0);
        m[(1, 1)] = c(4.0, 0.0);
        let inv = m.inverse().unwrap();
        let expected = [c(-2.0, 0.0), c(1.0, 0.0), c(1.5, 0.0), c(-0.5, 0.0)];
        for (got, want) in inv.entries().iter().zip(expected) {
            assert!((got - want).norm() < 1e-12);
        }
    }

    #[test]
    fn inverse_rejects_singular() {
        let ones = DenseMatrix::from_fn(2, 2, |_, _| c(1.0, 0.0));
        assert!(ones.inverse().is_err());
    }

    #[test]
    fn inverse_times_original_is_identity() {
        let mut rng = StdRng::seed_from_u64(23);
        let a = random_matrix(&mut rng, 5, 5, true);
        let inv = a.inverse().unwrap();
        let eye = a.mul(&inv).unwrap();
        assert!(eye.sub(&DenseMatrix::identity(5)).unwrap().max_abs() < 1e-10);
    }

    #[test]
    fn empty_system_edge() {
        let empty = DenseMatrix::zeros(0, 3);
        let sv = singular_values(&empty);
        assert!(sv.is_empty());
        let pinv = svd_pinv(&empty, 0.0);
        assert_eq!((pinv.rows(), pinv.cols()), (3, 0));
    }

    #[test]
    fn least_squares_minimizes_residual() {
        // Overdetermined consistent system.
        let a = DenseMatrix::from_rows(vec![
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        let x_true = [c(2.0, 1.0), c(-1.0, 0.5)];
        let b = a.mul_vec(&x_true).unwrap();
        let x = least_squares(&a, &b, default_pinv_tol(&a)).unwrap();
        for (got, want) in x.iter().zip(x_true) {
            assert!((got - want).norm() < 1e-12);
        }
    }
}
