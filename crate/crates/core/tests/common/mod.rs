//! Sampling helpers and brute-force oracles shared by the integration tests.
//! The oracles deliberately avoid the library's own shortcuts: subset sums
//! are formed directly, mixed discriminants use the row-selection formula,
//! and dimensions come from binomial coefficients.

#![allow(dead_code)]

use hlcert_core::generator::PsdGenerator;
use hlcert_core::scalar::{rint, GaussianRational, Rational};
use hlcert_core::{HermitianMatrix, Matrix};
use num_traits::{One, Signed, Zero};

pub fn diag(d: &[i64]) -> HermitianMatrix {
    HermitianMatrix::diagonal_ints(d)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * rint(k))
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// `D(A_1..A_n) = (1/n!) Σ_σ det(M_σ)` where row `i` of `M_σ` is row `i` of `A_{σ(i)}`.
pub fn discriminant_oracle(mats: &[HermitianMatrix]) -> Rational {
    let n = mats.len();
    let mut acc = GaussianRational::zero();
    for sigma in permutations(n) {
        let rows: Vec<Vec<GaussianRational>> = (0..n).map(|i| mats[sigma[i]].matrix().row(i).to_vec()).collect();
        acc += &Matrix::from_rows(rows).unwrap().determinant().unwrap();
    }
    assert!(acc.is_real());
    acc.re / factorial(n)
}

pub fn permanent(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    permutations(n)
        .iter()
        .map(|s| (0..n).fold(Rational::one(), |acc, i| acc * &m[i][s[i]]))
        .fold(Rational::zero(), |a, b| a + b)
}

/// Sum of the matrices selected by a 1-based bitmask, formed directly.
pub fn direct_sum(n: usize, mats: &[HermitianMatrix], mask: u32) -> HermitianMatrix {
    let mut acc = HermitianMatrix::zero(n);
    for (i, a) in mats.iter().enumerate() {
        if mask >> i & 1 == 1 {
            acc = acc.add(a);
        }
    }
    acc
}

/// Rank of a PSD matrix as the largest `k` with `e_k > 0`.
pub fn psd_rank_oracle(a: &HermitianMatrix) -> usize {
    let e = a.char_poly_coefficients().unwrap();
    e.iter().rposition(Signed::is_positive).map_or(0, |k| k + 1)
}

/// `rank(Σ_{i∈I} A_i) >= |I| + shift` for every nonempty `I`.
pub fn rank_condition(n: usize, mats: &[HermitianMatrix], shift: usize) -> bool {
    (1u32..1 << mats.len()).all(|mask| direct_sum(n, mats, mask).rank() >= mask.count_ones() as usize + shift)
}

/// Tuples biased so that both outcomes of the subset criterion with the
/// given shift are common.
pub struct Sampler {
    pub g: PsdGenerator,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { g: PsdGenerator::new(seed, 2) }
    }

    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        self.g.rng().range(lo, hi)
    }

    pub fn coin(&mut self) -> bool {
        self.g.rng().coin()
    }

    pub fn psd(&mut self, n: usize, rank: usize) -> HermitianMatrix {
        self.g.psd(n, rank).unwrap()
    }

    /// PSD matrix whose image lies in the column span of `u`.
    pub fn psd_in_span(&mut self, u: &Matrix) -> HermitianMatrix {
        let s = u.cols();
        let r = self.range(1, s.max(1));
        let c = self.g.integer_matrix(s, r);
        HermitianMatrix::gram_of(&(u * &c))
    }

    pub fn diagonal_pattern(&mut self, n: usize, min_pop: usize) -> HermitianMatrix {
        loop {
            let mask = self.g.rng().next_u64() as u32 & ((1u32 << n) - 1);
            if mask.count_ones() as usize >= min_pop {
                return PsdGenerator::diagonal_pattern(n, mask);
            }
        }
    }

    /// `k` PSD matrices of size `n`, skewed around the threshold
    /// `rank(A_I) >= |I| + shift`.
    pub fn tuple(&mut self, n: usize, k: usize, shift: usize) -> Vec<HermitianMatrix> {
        let near = (shift + 1).min(n);
        match self.range(0, 3) {
            0 => (0..k)
                .map(|_| {
                    let r = if self.range(0, 3) > 0 { self.range(near, n) } else { self.range(0, n) };
                    self.psd(n, r)
                })
                .collect(),
            1 => {
                let s = self.range(near.saturating_sub(1).max(1), n);
                let u = self.g.integer_matrix(n, s);
                (0..k).map(|_| self.psd_in_span(&u)).collect()
            }
            2 => {
                let min_pop = if self.coin() { near } else { 0 };
                (0..k).map(|_| self.diagonal_pattern(n, min_pop)).collect()
            }
            _ => (0..k).map(|_| self.psd(n, n)).collect(),
        }
    }
}

/// All tuples of `k` diagonal 0/1 patterns in dimension `n`.
pub fn all_pattern_tuples(n: usize, k: usize) -> Vec<Vec<HermitianMatrix>> {
    let patterns: Vec<HermitianMatrix> = (0..1u32 << n).map(|m| PsdGenerator::diagonal_pattern(n, m)).collect();
    let total = patterns.len().pow(k as u32);
    (0..total)
        .map(|mut code| {
            (0..k)
                .map(|_| {
                    let p = patterns[code % patterns.len()].clone();
                    code /= patterns.len();
                    p
                })
                .collect()
        })
        .collect()
}
