//! Hermitian matrices as coordinate forms of real (1,1)-forms, and exact
//! Hermitian forms on finite-dimensional spaces.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{GaussianRational, Rational};

/// An `n x n` exact Hermitian matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HermitianMatrix(Matrix);

impl HermitianMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
        }
        check_hermitian(&m)?;
        Ok(Self(m))
    }

    pub fn zero(n: usize) -> Self {
        Self(Matrix::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        Self(Matrix::identity(n))
    }

    pub fn diagonal_ints(d: &[i64]) -> Self {
        let e: Vec<_> = d.iter().map(|&v| GaussianRational::from_int(v)).collect();
        Self(Matrix::diagonal(&e))
    }

    /// `B B*` for any rectangular `B`; always positive semidefinite.
    pub fn gram_of(b: &Matrix) -> Self {
        Self(b * &b.conj_transpose())
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.0[(i, j)]
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.sub(&other.0))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self(self.0.scale(&GaussianRational::real(r.clone())))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Sum of a family; the zero matrix of dimension `n` for an empty family.
    pub fn sum<'a>(n: usize, mats: impl IntoIterator<Item = &'a HermitianMatrix>) -> Self {
        mats.into_iter().fold(Self::zero(n), |acc, m| acc.add(m))
    }

    /// Exact rank. For a PSD matrix this is the number of positive
    /// eigenvalues, i.e. the numerical dimension of the corresponding class.
    pub fn rank(&self) -> usize {
        self.0.rank()
    }

    /// Elementary symmetric functions `(e_1, ..., e_n)` of the eigenvalues.
    pub fn char_poly_coefficients(&self) -> Result<Vec<Rational>> {
        real_parts(self.0.elementary_symmetric_eigen()?)
    }

    /// A Hermitian matrix is PSD iff every `e_k` is nonnegative: then
    /// `prod(t + lambda_i)` has nonnegative coefficients and cannot vanish at
    /// a positive `t`, so no eigenvalue is negative.
    pub fn is_psd(&self) -> bool {
        self.char_poly_coefficients().map(|e| e.iter().all(|v| !v.is_negative())).unwrap_or(false)
    }

    /// `alpha^k ∧ omega^{n-k} > 0` for all `1 <= k <= m`.
    ///
    /// `omega` is reduced to the identity by an exact congruence
    /// `omega = L D L*`; the test then reads the signs of `e_k(D^{-1} L^{-1} M L^{-*})`,
    /// which are the `e_k` of `omega^{-1} M`.
    pub fn is_m_positive(&self, omega: &HermitianMatrix, m: usize) -> Result<bool> {
        let n = self.dim();
        if omega.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, got: omega.dim() });
        }
        if m == 0 || m > n {
            return Err(Error::Precondition(format!("m-positivity needs 1 <= m <= n, got m={m}, n={n}")));
        }
        let (l_inv, d) = ldl_inverse_factor(omega)?;
        let reduced = &(&l_inv * &self.0) * &l_inv.conj_transpose();
        let mut normalized = reduced;
        for (i, di) in d.iter().enumerate() {
            let inv = GaussianRational::real(di.recip());
            for j in 0..n {
                let v = &normalized[(i, j)] * &inv;
                normalized[(i, j)] = v;
            }
        }
        let e = real_parts(normalized.elementary_symmetric_eigen()?)?;
        Ok(e[..m].iter().all(Signed::is_positive))
    }

    pub fn require_psd(&self) -> Result<()> {
        if self.is_psd() {
            Ok(())
        } else {
            Err(Error::NotPsd)
        }
    }
}

fn real_parts(v: Vec<GaussianRational>) -> Result<Vec<Rational>> {
    v.into_iter()
        .map(|z| if z.is_real() { Ok(z.re) } else { Err(Error::Arithmetic(format!("expected a real value, got {z}"))) })
        .collect()
}

fn check_hermitian(m: &Matrix) -> Result<()> {
    for i in 0..m.rows() {
        for j in i..m.cols() {
            if m[(i, j)] != m[(j, i)].conj() {
                return Err(Error::NotHermitian { row: i, col: j });
            }
        }
    }
    Ok(())
}

/// For positive definite `omega = L D L*` (L unit lower triangular) returns
/// `(L^{-1}, diag D)`.
fn ldl_inverse_factor(omega: &HermitianMatrix) -> Result<(Matrix, Vec<Rational>)> {
    let n = omega.dim();
    let mut a = omega.0.clone();
    let mut l = Matrix::identity(n);
    let mut d = Vec::with_capacity(n);
    for k in 0..n {
        let pivot = a[(k, k)].re.clone();
        if !pivot.is_positive() {
            return Err(Error::NotPositiveDefinite);
        }
        let inv = GaussianRational::real(pivot.recip());
        for i in k + 1..n {
            l[(i, k)] = &a[(i, k)] * &inv;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &l[(i, k)] * &a[(k, j)];
                a[(i, j)] -= &t;
            }
        }
        d.push(pivot);
    }
    // forward substitution for the inverse of a unit lower triangular matrix
    let mut inv = Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            let mut s = GaussianRational::zero();
            for k in j..i {
                if !l[(i, k)].is_zero() && !inv[(k, j)].is_zero() {
                    s += &(&l[(i, k)] * &inv[(k, j)]);
                }
            }
            inv[(i, j)] = -s;
        }
    }
    Ok((inv, d))
}

/// A Hermitian form on a `dim`-dimensional space, given by its Gram matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HermitianForm {
    gram: Matrix,
}

/// Inertia triple `(n_plus, n_minus, n_zero)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn new(positive: usize, negative: usize, zero: usize) -> Self {
        Self { positive, negative, zero }
    }

    pub fn is_lorentzian(&self) -> bool {
        self.positive == 1 && self.zero == 0
    }

    pub fn as_triple(&self) -> [usize; 3] {
        [self.positive, self.negative, self.zero]
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Definiteness {
    PositiveDefinite,
    Not,
}

impl HermitianForm {
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare { rows: gram.rows(), cols: gram.cols() });
        }
        check_hermitian(&gram)?;
        Ok(Self { gram })
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// Inertia by conjugate-congruent elimination. A nonzero diagonal pivot
    /// contributes its sign; when the remaining diagonal is all zero but an
    /// off-diagonal entry `b` survives, the hyperbolic pair on `{j, k}` is
    /// eliminated as a block and contributes `(+1, -1)`.
    pub fn signature(&self) -> Signature {
        let mut g = self.gram.clone();
        let mut active: Vec<usize> = (0..self.dim()).collect();
        let (mut pos, mut neg) = (0, 0);
        loop {
            if active.is_empty() {
                break;
            }
            if let Some(pi) = active.iter().position(|&i| !g[(i, i)].is_zero()) {
                let p = active.remove(pi);
                let d = g[(p, p)].re.clone();
                if d.is_positive() {
                    pos += 1;
                } else {
                    neg += 1;
                }
                let inv = GaussianRational::real(d.recip());
                for &x in &active {
                    if g[(x, p)].is_zero() {
                        continue;
                    }
                    let f = &g[(x, p)] * &inv;
                    for &y in &active {
                        if !g[(p, y)].is_zero() {
                            let t = &f * &g[(p, y)];
                            g[(x, y)] -= &t;
                        }
                    }
                }
                continue;
            }
            let pair = active
                .iter()
                .enumerate()
                .find_map(|(a, &j)| active[a + 1..].iter().find(|&&k| !g[(j, k)].is_zero()).map(|&k| (j, k)));
            let Some((j, k)) = pair else {
                break;
            };
            pos += 1;
            neg += 1;
            active.retain(|&x| x != j && x != k);
            let b = g[(j, k)].clone();
            let inv_b = b.recip();
            let inv_bc = b.conj().recip();
            for &x in &active {
                for &y in &active {
                    let t1 = &(&g[(x, j)] * &inv_bc) * &g[(k, y)];
                    let t2 = &(&g[(x, k)] * &inv_b) * &g[(j, y)];
                    g[(x, y)] -= &(t1 + t2);
                }
            }
        }
        let zero = self.dim() - pos - neg;
        Signature::new(pos, neg, zero)
    }

    /// Gram matrix of the form restricted to `span(basis)`.
    pub fn restrict(&self, basis: &[Vec<GaussianRational>]) -> Result<HermitianForm> {
        let b = Matrix::from_columns(basis, self.dim());
        if b.rank() != basis.len() {
            return Err(Error::DependentBasis);
        }
        HermitianForm::new(&(&b.conj_transpose() * &self.gram) * &b)
    }

    /// Positive definiteness on `span(basis)` by Sylvester's criterion: the
    /// restricted Gram is eliminated without pivoting, and each pivot is the
    /// ratio of consecutive leading principal minors.
    pub fn definiteness_on_subspace(&self, basis: &[Vec<GaussianRational>]) -> Result<Definiteness> {
        let r = self.restrict(basis)?;
        Ok(r.leading_minors_definiteness())
    }

    pub fn leading_minors_definiteness(&self) -> Definiteness {
        let n = self.dim();
        let mut g = self.gram.clone();
        for k in 0..n {
            let d = g[(k, k)].re.clone();
            if !d.is_positive() {
                return Definiteness::Not;
            }
            let inv = GaussianRational::real(d.recip());
            for i in k + 1..n {
                let f = &g[(i, k)] * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in k + 1..n {
                    let t = &f * &g[(k, j)];
                    g[(i, j)] -= &t;
                }
            }
        }
        Definiteness::PositiveDefinite
    }

    pub fn evaluate(&self, x: &[GaussianRational], y: &[GaussianRational]) -> GaussianRational {
        let gy = self.gram.mul_vec(y);
        x.iter().zip(&gy).fold(GaussianRational::zero(), |acc, (a, b)| acc + a.conj() * b)
    }
}

impl Signature {
    pub fn total(&self) -> usize {
        self.positive + self.negative + self.zero
    }
}

impl From<HermitianMatrix> for HermitianForm {
    fn from(m: HermitianMatrix) -> Self {
        HermitianForm { gram: m.0 }
    }
}
