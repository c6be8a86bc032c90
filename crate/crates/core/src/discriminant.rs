//! Mixed discriminants and torus intersection numbers.
//!
//! Two independent routes to the same number: the mixed discriminant by
//! inclusion-exclusion over determinants of subset sums, and the
//! intersection number `α_1∧...∧α_n` read off against `vol`. With the volume
//! normalization of [`crate::exterior`] they satisfy
//! `intersection_number = n! · mixed_discriminant`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{form_from_matrix, wedge_many, PQForm};
use crate::hermitian::HermitianMatrix;
use crate::scalar::{GaussianRational, Rational};
use crate::subsets::{self, size_lex_order};

/// `n` Hermitian matrices of size `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixTuple {
    n: usize,
    mats: Vec<HermitianMatrix>,
}

impl MatrixTuple {
    pub fn new(mats: Vec<HermitianMatrix>) -> Result<Self> {
        let n = mats.len();
        if n == 0 {
            return Err(Error::Precondition("a matrix tuple needs at least one matrix".into()));
        }
        for m in &mats {
            if m.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, got: m.dim() });
            }
        }
        Ok(Self { n, mats })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrices(&self) -> &[HermitianMatrix] {
        &self.mats
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * k)
}

fn real(z: GaussianRational, what: &str) -> Result<Rational> {
    if z.is_real() {
        Ok(z.re)
    } else {
        Err(Error::Arithmetic(format!("{what} has nonzero imaginary part: {z}")))
    }
}

/// `D(A_1..A_n) = (1/n!) Σ_{S⊆[n]} (-1)^{n-|S|} det(Σ_{i∈S} A_i)`.
pub fn mixed_discriminant(t: &MatrixTuple) -> Result<Rational> {
    let n = t.n;
    let sums = subsets::subset_sums(n, &t.mats);
    let mut acc = GaussianRational::zero();
    for (mask, s) in sums.iter().enumerate().skip(1) {
        let det = s.matrix().determinant()?;
        if (n - (mask as u32).count_ones() as usize).is_multiple_of(2) {
            acc += &det;
        } else {
            acc -= &det;
        }
    }
    let acc = real(acc, "mixed discriminant")?;
    Ok(acc / Rational::from_integer(factorial(n)))
}

/// Top-degree intersection `α_1 ⋯ α_k` of the forms of `mats` (`k = n`),
/// as a multiple of `vol`. Repeated classes are passed as repeated matrices.
pub fn intersection_of(n: usize, mats: &[&HermitianMatrix]) -> Result<Rational> {
    if mats.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: mats.len() });
    }
    for m in mats {
        if m.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, got: m.dim() });
        }
    }
    let forms: Vec<PQForm> = mats.iter().map(|m| form_from_matrix(m)).collect();
    real(wedge_many(n, &forms).volume_scalar()?, "intersection number")
}

pub fn intersection_number(t: &MatrixTuple) -> Result<Rational> {
    let refs: Vec<&HermitianMatrix> = t.mats.iter().collect();
    intersection_of(t.n, &refs)
}

/// Outcome of the positivity test `D(A_1..A_n) > 0` for PSD matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositivityCertificate {
    pub positive: bool,
    #[serde(serialize_with = "crate::serde_util::rational_str")]
    pub discriminant: Rational,
    /// First subset (size, then lexicographic) with `rank(A_I) < |I|`, 1-based.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_subset: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_rank: Option<usize>,
}

/// `D > 0` iff `rank(A_I) >= |I|` for every `I`. The rank criterion decides;
/// the discriminant is computed independently and must agree.
pub fn discriminant_positivity(t: &MatrixTuple) -> Result<PositivityCertificate> {
    for m in &t.mats {
        m.require_psd()?;
    }
    let ranks = subsets::subset_ranks(t.n, &t.mats);
    let witness = size_lex_order(t.n).into_iter().find(|&mask| ranks[mask as usize] < mask.count_ones() as usize);
    let d = mixed_discriminant(t)?;
    if d.is_negative() {
        return Err(Error::Arithmetic(format!("negative mixed discriminant {d} of PSD matrices")));
    }
    let positive = witness.is_none();
    if positive != d.is_positive() {
        return Err(Error::Arithmetic(format!("rank criterion says positive={positive} but D = {d}")));
    }
    Ok(PositivityCertificate {
        positive,
        discriminant: d,
        witness_subset: witness.map(subsets::indices),
        witness_rank: witness.map(|w| ranks[w as usize]),
    })
}

/// Both sides of
/// `C(n,k) (A_1⋯A_k·B^{n-k}) (B^k·C_1⋯C_{n-k}) >= (B^n)(A_1⋯A_k·C_1⋯C_{n-k})`.
pub fn reverse_kt_sides(
    a: &[HermitianMatrix],
    b: &HermitianMatrix,
    c: &[HermitianMatrix],
) -> Result<(Rational, Rational)> {
    let n = b.dim();
    let k = a.len();
    if k + c.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: k + c.len() });
    }
    for m in a.iter().chain(std::iter::once(b)).chain(c) {
        if m.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, got: m.dim() });
        }
        m.require_psd()?;
    }
    let rep = |times: usize| vec![b; times];
    let mut ab: Vec<&HermitianMatrix> = a.iter().collect();
    ab.extend(rep(n - k));
    let mut bc = rep(k);
    bc.extend(c.iter());
    let bn = rep(n);
    let mut ac: Vec<&HermitianMatrix> = a.iter().collect();
    ac.extend(c.iter());

    let binom = Rational::from_integer(factorial(n) / (factorial(k) * factorial(n - k)));
    let lhs = binom * intersection_of(n, &ab)? * intersection_of(n, &bc)?;
    let rhs = intersection_of(n, &bn)? * intersection_of(n, &ac)?;
    Ok((lhs, rhs))
}

/// Whether the reverse Khovanskii-Teissier inequality holds on this input.
/// For PSD input it always does; exposed so the property suite can check.
pub fn reverse_kt_check(a: &[HermitianMatrix], b: &HermitianMatrix, c: &[HermitianMatrix]) -> Result<bool> {
    let (lhs, rhs) = reverse_kt_sides(a, b, c)?;
    Ok(lhs >= rhs)
}
