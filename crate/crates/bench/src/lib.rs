//! Fixed inputs for the benchmarks in `benches/`.

use crown_core::curves::sample::{random_system, Sample};
use crown_core::lattice::IntMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A seeded sample system of the given genus and curve count.
pub fn sample(genus: usize, curves: usize, seed: u64) -> Sample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_system(genus, curves, &mut rng, 200).expect("sample system")
}

/// A seeded `rows x cols` matrix with entries in `[-5, 5]`.
pub fn matrix(rows: usize, cols: usize, seed: u64) -> IntMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-5..=5)).collect()).collect();
    IntMatrix::from_rows(&m)
}
