//! Shared input builders for the criterion benchmarks.

use hypermatrix::{Complex64, Hypermatrix, Shape};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic random cubic hypermatrix with entries in `(0.1, 1.0)`.
pub fn random_cube(n: usize, seed: u64) -> Hypermatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Hypermatrix::from_fn(Shape::cubic(n).expect("n >= 1"), |_| {
        rng.gen_range(0.1..1.0)
    })
}

/// Deterministic random complex cube.
pub fn random_complex_cube(n: usize, seed: u64) -> Hypermatrix<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Hypermatrix::from_fn(Shape::cubic(n).expect("n >= 1"), |_| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

/// Deterministic random complex matrix entries in row-major order.
pub fn random_complex_entries(count: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}
