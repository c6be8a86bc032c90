//! Seeded generation of PSD test matrices.
//!
//! The stream is SplitMix64 (Steele, Lea and Flood, 2014):
//!
//! ```text
//! state += 0x9E3779B97F4A7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! return z ^ (z >> 31)
//! ```
//!
//! A bounded integer in `[-b, b]` is `(next() % (2b + 1)) - b`. A matrix of
//! target rank `r` is `B·B*` where `B` is `n x r` with entries `re + i·im`,
//! drawn row-major, real part before imaginary part. `B` is redrawn until it
//! has full column rank. Any reimplementation following these steps
//! reproduces the same matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;
use crate::matrix::Matrix;
use crate::scalar::GaussianRational;

pub const MAX_DRAWS: usize = 1000;

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish integer in `[-bound, bound]`.
    pub fn bounded(&mut self, bound: u32) -> i64 {
        let span = 2 * bound as u64 + 1;
        (self.next_u64() % span) as i64 - bound as i64
    }

    /// Integer in `[lo, hi]` inclusive.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        assert!(lo <= hi);
        lo + (self.next_u64() % (hi - lo + 1) as u64) as usize
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub seed: u64,
    pub n: usize,
    pub rank_profile: Vec<usize>,
    pub entry_bound: u32,
}

/// Stateful generator; successive calls continue the same stream.
#[derive(Clone, Debug)]
pub struct PsdGenerator {
    rng: SplitMix64,
    entry_bound: u32,
    complex: bool,
}

impl PsdGenerator {
    pub fn new(seed: u64, entry_bound: u32) -> Self {
        Self { rng: SplitMix64::new(seed), entry_bound: entry_bound.max(1), complex: true }
    }

    /// Real symmetric output only (imaginary parts are not drawn).
    pub fn real_only(mut self) -> Self {
        self.complex = false;
        self
    }

    pub fn rng(&mut self) -> &mut SplitMix64 {
        &mut self.rng
    }

    fn entry(&mut self) -> GaussianRational {
        let re = self.rng.bounded(self.entry_bound);
        let im = if self.complex { self.rng.bounded(self.entry_bound) } else { 0 };
        GaussianRational::from_parts(re, im)
    }

    /// `n x cols` matrix of bounded Gaussian integers.
    pub fn integer_matrix(&mut self, rows: usize, cols: usize) -> Matrix {
        let mut b = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                b[(i, j)] = self.entry();
            }
        }
        b
    }

    /// PSD matrix of exact rank `rank`.
    pub fn psd(&mut self, n: usize, rank: usize) -> Result<HermitianMatrix> {
        if rank > n {
            return Err(Error::Precondition(format!("target rank {rank} exceeds n = {n}")));
        }
        if rank == 0 {
            return Ok(HermitianMatrix::zero(n));
        }
        for _ in 0..MAX_DRAWS {
            let b = self.integer_matrix(n, rank);
            if b.rank() == rank {
                let m = HermitianMatrix::gram_of(&b);
                debug_assert!(m.is_psd());
                assert_eq!(m.rank(), rank, "B B* must have the rank of B");
                return Ok(m);
            }
        }
        Err(Error::GeneratorExhausted(MAX_DRAWS))
    }

    /// Arbitrary Hermitian matrix (not necessarily PSD).
    pub fn hermitian(&mut self, n: usize) -> HermitianMatrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = GaussianRational::from_int(self.rng.bounded(self.entry_bound));
            for j in i + 1..n {
                let e = self.entry();
                m[(j, i)] = e.conj();
                m[(i, j)] = e;
            }
        }
        HermitianMatrix::new(m).expect("constructed Hermitian")
    }

    /// Diagonal PSD matrix with 0/1 entries given by a bitmask over the coordinates.
    pub fn diagonal_pattern(n: usize, mask: u32) -> HermitianMatrix {
        let d: Vec<i64> = (0..n).map(|k| (mask >> k & 1) as i64).collect();
        HermitianMatrix::diagonal_ints(&d)
    }
}

/// One PSD matrix per entry of the rank profile, deterministic in the seed.
pub fn generate_psd(spec: &GeneratorSpec) -> Result<Vec<HermitianMatrix>> {
    if let Some(&r) = spec.rank_profile.iter().find(|&&r| r > spec.n) {
        return Err(Error::Precondition(format!("target rank {r} exceeds n = {}", spec.n)));
    }
    if spec.entry_bound == 0 {
        return Err(Error::Precondition("entry_bound must be positive".into()));
    }
    let mut g = PsdGenerator::new(spec.seed, spec.entry_bound);
    spec.rank_profile.iter().map(|&r| g.psd(spec.n, r)).collect()
}
