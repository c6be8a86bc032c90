//! Seeded fixtures shared by the benchmarks.

use hlcert_core::{HermitianMatrix, HlInstance, MatrixTuple, PsdGenerator};

pub const SEED: u64 = 0xB3_7C4;

/// One full-rank PSD matrix of size `n`.
pub fn full_rank(n: usize) -> HermitianMatrix {
    PsdGenerator::new(SEED ^ n as u64, 3).psd(n, n).expect("generator")
}

/// `n` PSD matrices of size `n` with ranks cycling through `1..=n`.
pub fn tuple(n: usize) -> MatrixTuple {
    let mut g = PsdGenerator::new(SEED + n as u64, 2);
    let mats = (0..n).map(|i| g.psd(n, 1 + i % n).expect("generator")).collect();
    MatrixTuple::new(mats).expect("square tuple")
}

/// HL instance on `Λ^{p,q}(C^n)` with rank-`n-1` forms, so the criterion holds.
pub fn hl_instance(n: usize, p: usize, q: usize) -> HlInstance {
    let mut g = PsdGenerator::new(SEED + 100 * n as u64 + 10 * p as u64 + q as u64, 2);
    let rank = (p + q + 1).min(n);
    let forms = (0..n - p - q).map(|_| g.psd(n, rank).expect("generator")).collect();
    HlInstance::new(n, p, q, forms, None).expect("valid instance")
}
