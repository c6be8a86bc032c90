//! Subsets of `[m]` as bitmasks, with the orders used for certificates.

use crate::hermitian::HermitianMatrix;

pub const MAX_GROUND: usize = 24;

/// 1-based sorted indices of a subset mask.
pub fn indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

/// Mask from 1-based indices; `None` if an index falls outside `[1, m]`.
pub fn mask_of(idx: &[usize], m: usize) -> Option<u32> {
    let mut mask = 0u32;
    for &i in idx {
        if i == 0 || i > m {
            return None;
        }
        mask |= 1 << (i - 1);
    }
    Some(mask)
}

pub fn full(m: usize) -> u32 {
    assert!(m <= MAX_GROUND, "ground set of size {m} is too large");
    ((1u64 << m) - 1) as u32
}

/// Nonempty subsets of `[m]`, smallest first, ties broken lexicographically
/// on the sorted index lists.
pub fn size_lex_order(m: usize) -> Vec<u32> {
    let mut v: Vec<u32> = (1..=full(m)).collect();
    v.sort_by(|a, b| a.count_ones().cmp(&b.count_ones()).then_with(|| indices(*a).cmp(&indices(*b))));
    v
}

/// `Σ_{i∈I} A_i` for every mask `I`, built incrementally along a Gray code so
/// each subset costs one matrix addition or subtraction.
pub fn subset_sums(n: usize, mats: &[HermitianMatrix]) -> Vec<HermitianMatrix> {
    let m = mats.len();
    let count = 1usize << m;
    let mut out = vec![HermitianMatrix::zero(n); count];
    let mut cur = HermitianMatrix::zero(n);
    let mut gray = 0usize;
    for i in 1..count {
        let bit = i.trailing_zeros() as usize;
        gray ^= 1 << bit;
        cur = if gray >> bit & 1 == 1 { cur.add(&mats[bit]) } else { cur.sub(&mats[bit]) };
        out[gray] = cur.clone();
    }
    out
}

/// `rank(Σ_{i∈I} A_i)` for every mask `I`.
pub fn subset_ranks(n: usize, mats: &[HermitianMatrix]) -> Vec<usize> {
    subset_sums(n, mats).iter().map(HermitianMatrix::rank).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order() {
        let o: Vec<Vec<usize>> = size_lex_order(3).into_iter().map(indices).collect();
        assert_eq!(o, vec![vec![1], vec![2], vec![3], vec![1, 2], vec![1, 3], vec![2, 3], vec![1, 2, 3]]);
        assert!(size_lex_order(0).is_empty());
    }

    #[test]
    fn gray_sums_match_direct() {
        let mats: Vec<_> = (1..=4).map(|k| HermitianMatrix::diagonal_ints(&[k, 10 * k])).collect();
        let sums = subset_sums(2, &mats);
        for mask in 0..16u32 {
            let direct = HermitianMatrix::sum(2, indices(mask).iter().map(|&i| &mats[i - 1]));
            assert_eq!(sums[mask as usize], direct);
        }
        assert_eq!(mask_of(&[1, 3], 3), Some(0b101));
        assert_eq!(mask_of(&[4], 3), None);
    }
}
