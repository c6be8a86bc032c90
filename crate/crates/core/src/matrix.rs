//! Dense exact matrices over the Gaussian rationals.
//!
//! Rank and determinant go through fraction-free (Bareiss) elimination over
//! the Gaussian integers: each row is first cleared of denominators, after
//! which every intermediate entry is a minor of the scaled matrix and every
//! division is exact. Kernels use a plain reduced row echelon form since the
//! basis has to come out in rational coordinates anyway.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![GaussianRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = GaussianRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, got: row.len() });
            }
            data.extend(row);
        }
        Ok(Self { rows: r, cols: c, data })
    }

    /// Convenience constructor from integer `(re, im)` pairs.
    pub fn from_int_pairs(rows: &[&[(i64, i64)]]) -> Self {
        let v = rows.iter().map(|row| row.iter().map(|&(a, b)| GaussianRational::from_parts(a, b)).collect()).collect();
        Self::from_rows(v).expect("ragged rows")
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let v = rows.iter().map(|row| row.iter().map(|&a| GaussianRational::from_int(a)).collect()).collect();
        Self::from_rows(v).expect("ragged rows")
    }

    pub fn diagonal(entries: &[GaussianRational]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<GaussianRational>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[GaussianRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<GaussianRational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn conj_transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].conj();
            }
        }
        t
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        let data = self.data.iter().map(|a| a * s).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul_vec(&self, v: &[GaussianRational]) -> Vec<GaussianRational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = GaussianRational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> GaussianRational {
        let mut t = GaussianRational::zero();
        for i in 0..self.rows.min(self.cols) {
            t += &self[(i, i)];
        }
        t
    }

    /// Principal submatrix on the given (sorted) index set.
    pub fn principal_submatrix(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        Bareiss::run(self).rank
    }

    pub fn determinant(&self) -> Result<GaussianRational> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        if self.rows == 0 {
            return Ok(GaussianRational::one());
        }
        let b = Bareiss::run(self);
        if b.rank < self.rows {
            return Ok(GaussianRational::zero());
        }
        let last = b.last_pivot.expect("full rank implies a pivot");
        let mut det = last.to_rational();
        if b.swaps % 2 == 1 {
            det = -det;
        }
        Ok(det.scale(&b.scale_inv))
    }

    /// Right kernel basis from the reduced row echelon form. One vector per
    /// free column, with a 1 in that column.
    pub fn kernel_basis(&self) -> Vec<Vec<GaussianRational>> {
        let (rref, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![GaussianRational::zero(); self.cols];
                v[free] = GaussianRational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&rref[(r, free)];
                }
                v
            })
            .collect()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            let inv = a[(r, c)].recip();
            for j in c..a.cols {
                let v = &a[(r, j)] * &inv;
                a[(r, j)] = v;
            }
            for i in 0..a.rows {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in c..a.cols {
                    if a[(r, j)].is_zero() {
                        continue;
                    }
                    let d = &f * &a[(r, j)];
                    a[(i, j)] -= &d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Coefficients `(e_1, ..., e_n)` of `det(tI + A) = t^n + e_1 t^{n-1} + ... + e_n`,
    /// i.e. the elementary symmetric functions of the eigenvalues, by the
    /// Faddeev-LeVerrier recursion.
    pub fn elementary_symmetric_eigen(&self) -> Result<Vec<GaussianRational>> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        if let Some(e) = self.small_integer_rows().and_then(|a| SmallGauss::faddeev_leverrier(&a)) {
            return Ok(e.into_iter().map(|g| GaussianRational::from_parts_i128(g.re, g.im)).collect());
        }
        Ok(self.elementary_symmetric_rational())
    }

    fn elementary_symmetric_rational(&self) -> Vec<GaussianRational> {
        let n = self.rows;
        // det(tI - A) = sum_k c_k t^{n-k}; e_k = (-1)^k c_k.
        let mut m = Matrix::zeros(n, n);
        let mut c_prev = GaussianRational::one();
        let mut out = Vec::with_capacity(n);
        for k in 1..=n {
            let mut next = self * &m;
            for i in 0..n {
                next[(i, i)] += &c_prev;
            }
            let am = self * &next;
            let c_k = -(am.trace().scale(&Rational::new(BigInt::one(), BigInt::from(k))));
            let e_k = if k % 2 == 0 { c_k.clone() } else { -c_k.clone() };
            out.push(e_k);
            m = next;
            c_prev = c_k;
        }
        out
    }
}

impl Matrix {
    fn small_integer_rows(&self) -> Option<Vec<Vec<SmallGauss>>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|v| {
                        if !(v.re.is_integer() && v.im.is_integer()) {
                            return None;
                        }
                        Some(SmallGauss { re: v.re.numer().to_i128()?, im: v.im.numer().to_i128()? })
                    })
                    .collect()
            })
            .collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = GaussianRational;
    fn index(&self, (i, j): (usize, usize)) -> &GaussianRational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussianRational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Gaussian integer, used only inside fraction-free elimination.
#[derive(Clone, PartialEq, Eq)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &GaussInt) -> GaussInt {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussInt { re: &self.re * &o.re, im: BigInt::zero() };
        }
        GaussInt { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    fn sub(&self, o: &GaussInt) -> GaussInt {
        GaussInt { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    /// Division known to be exact in Z[i].
    fn div_exact(&self, d: &GaussInt) -> GaussInt {
        if d.im.is_zero() {
            let (qr, rr) = self.re.div_rem(&d.re);
            let (qi, ri) = self.im.div_rem(&d.re);
            debug_assert!(rr.is_zero() && ri.is_zero(), "inexact Bareiss division");
            return GaussInt { re: qr, im: qi };
        }
        let n = &d.re * &d.re + &d.im * &d.im;
        let num = self.mul(&GaussInt { re: d.re.clone(), im: -d.im.clone() });
        let (qr, rr) = num.re.div_rem(&n);
        let (qi, ri) = num.im.div_rem(&n);
        debug_assert!(rr.is_zero() && ri.is_zero(), "inexact Bareiss division");
        GaussInt { re: qr, im: qi }
    }

    fn to_rational(&self) -> GaussianRational {
        GaussianRational::new(Rational::from_integer(self.re.clone()), Rational::from_integer(self.im.clone()))
    }
}

struct Bareiss {
    rank: usize,
    swaps: usize,
    last_pivot: Option<GaussInt>,
    /// Product of the reciprocals of the row scale factors.
    scale_inv: Rational,
}

impl Bareiss {
    fn run(m: &Matrix) -> Self {
        let (rows, cols) = (m.rows, m.cols);
        let mut scale_inv = Rational::one();
        let mut a: Vec<Vec<GaussInt>> = Vec::with_capacity(rows);
        for i in 0..rows {
            let row = m.row(i);
            if row.iter().all(|v| v.re.is_integer() && v.im.is_integer()) {
                a.push(row.iter().map(|v| GaussInt { re: v.re.to_integer(), im: v.im.to_integer() }).collect());
                continue;
            }
            let mut l = BigInt::one();
            for v in row {
                l = l.lcm(v.re.denom()).lcm(v.im.denom());
            }
            let lr = Rational::from_integer(l.clone());
            scale_inv /= &lr;
            a.push(
                row.iter()
                    .map(|v| GaussInt { re: (&v.re * &lr).to_integer(), im: (&v.im * &lr).to_integer() })
                    .collect(),
            );
        }

        if let Some(small) = SmallGauss::rows_of(&a) {
            if let Some((rank, swaps, last)) = SmallGauss::eliminate(small, cols) {
                let last_pivot = last.map(|g| GaussInt { re: BigInt::from(g.re), im: BigInt::from(g.im) });
                return Bareiss { rank, swaps, last_pivot, scale_inv };
            }
        }
        Self::run_big(a, cols, scale_inv)
    }

    fn run_big(mut a: Vec<Vec<GaussInt>>, cols: usize, scale_inv: Rational) -> Self {
        let rows = a.len();
        let mut prev = GaussInt { re: BigInt::one(), im: BigInt::zero() };
        let mut r = 0;
        let mut swaps = 0;
        let mut last_pivot = None;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            if p != r {
                a.swap(p, r);
                swaps += 1;
            }
            let (top, bottom) = a.split_at_mut(r + 1);
            let pivot_row = &top[r];
            let piv = &pivot_row[c];
            for row in bottom.iter_mut() {
                let lead = row[c].clone();
                for j in c + 1..cols {
                    let t = piv.mul(&row[j]).sub(&lead.mul(&pivot_row[j]));
                    row[j] = t.div_exact(&prev);
                }
                row[c] = GaussInt { re: BigInt::zero(), im: BigInt::zero() };
            }
            prev = a[r][c].clone();
            last_pivot = Some(prev.clone());
            r += 1;
        }
        Bareiss { rank: r, swaps, last_pivot, scale_inv }
    }
}

/// Machine-word Gaussian integer for the common case of small entries.
/// Every operation is checked; overflow abandons the fast path.
#[derive(Clone, Copy, PartialEq, Eq)]
struct SmallGauss {
    re: i128,
    im: i128,
}

impl SmallGauss {
    const ZERO: SmallGauss = SmallGauss { re: 0, im: 0 };

    fn rows_of(a: &[Vec<GaussInt>]) -> Option<Vec<Vec<SmallGauss>>> {
        a.iter()
            .map(|row| row.iter().map(|g| Some(SmallGauss { re: g.re.to_i128()?, im: g.im.to_i128()? })).collect())
            .collect()
    }

    fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    fn mul(self, o: SmallGauss) -> Option<SmallGauss> {
        Some(SmallGauss {
            re: self.re.checked_mul(o.re)?.checked_sub(self.im.checked_mul(o.im)?)?,
            im: self.re.checked_mul(o.im)?.checked_add(self.im.checked_mul(o.re)?)?,
        })
    }

    fn sub(self, o: SmallGauss) -> Option<SmallGauss> {
        Some(SmallGauss { re: self.re.checked_sub(o.re)?, im: self.im.checked_sub(o.im)? })
    }

    fn div_exact(self, d: SmallGauss) -> Option<SmallGauss> {
        if d.im == 0 {
            debug_assert!(self.re % d.re == 0 && self.im % d.re == 0, "inexact Bareiss division");
            return Some(SmallGauss { re: self.re / d.re, im: self.im / d.re });
        }
        let n = d.re.checked_mul(d.re)?.checked_add(d.im.checked_mul(d.im)?)?;
        let num = self.mul(SmallGauss { re: d.re, im: -d.im })?;
        debug_assert!(num.re % n == 0 && num.im % n == 0, "inexact Bareiss division");
        Some(SmallGauss { re: num.re / n, im: num.im / n })
    }

    fn add(self, o: SmallGauss) -> Option<SmallGauss> {
        Some(SmallGauss { re: self.re.checked_add(o.re)?, im: self.im.checked_add(o.im)? })
    }

    fn mat_mul(a: &[Vec<SmallGauss>], b: &[Vec<SmallGauss>]) -> Option<Vec<Vec<SmallGauss>>> {
        let n = a.len();
        let mut out = vec![vec![SmallGauss::ZERO; n]; n];
        for i in 0..n {
            for k in 0..n {
                if a[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[i][j] = out[i][j].add(a[i][k].mul(b[k][j])?)?;
                }
            }
        }
        Some(out)
    }

    /// `e_1..e_n` of an integer matrix; every division by `k` is exact
    /// because the characteristic polynomial has integer coefficients.
    fn faddeev_leverrier(a: &[Vec<SmallGauss>]) -> Option<Vec<SmallGauss>> {
        let n = a.len();
        let mut m = vec![vec![SmallGauss::ZERO; n]; n];
        let mut c_prev = SmallGauss { re: 1, im: 0 };
        let mut out = Vec::with_capacity(n);
        for k in 1..=n {
            let mut next = SmallGauss::mat_mul(a, &m)?;
            for (i, row) in next.iter_mut().enumerate() {
                row[i] = row[i].add(c_prev)?;
            }
            let am = SmallGauss::mat_mul(a, &next)?;
            let mut tr = SmallGauss::ZERO;
            for (i, row) in am.iter().enumerate() {
                tr = tr.add(row[i])?;
            }
            let k = k as i128;
            debug_assert!(tr.re % k == 0 && tr.im % k == 0, "inexact trace division");
            let c_k = SmallGauss { re: -tr.re / k, im: -tr.im / k };
            out.push(if k % 2 == 0 { c_k } else { SmallGauss { re: -c_k.re, im: -c_k.im } });
            m = next;
            c_prev = c_k;
        }
        Some(out)
    }

    /// Same elimination as the big-integer path; `None` on overflow.
    fn eliminate(mut a: Vec<Vec<SmallGauss>>, cols: usize) -> Option<(usize, usize, Option<SmallGauss>)> {
        let rows = a.len();
        let mut prev = SmallGauss { re: 1, im: 0 };
        let (mut r, mut swaps, mut last) = (0, 0, None);
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            if p != r {
                a.swap(p, r);
                swaps += 1;
            }
            let (top, bottom) = a.split_at_mut(r + 1);
            let pivot_row = &top[r];
            let piv = pivot_row[c];
            for row in bottom.iter_mut() {
                let lead = row[c];
                for j in c + 1..cols {
                    let t = piv.mul(row[j])?.sub(lead.mul(pivot_row[j])?)?;
                    row[j] = t.div_exact(prev)?;
                }
                row[c] = SmallGauss::ZERO;
            }
            prev = a[r][c];
            last = Some(prev);
            r += 1;
        }
        Some((r, swaps, last))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn gr(a: i64, b: i64) -> GaussianRational {
        GaussianRational::from_parts(a, b)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::from_int_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]).rank(), 2);
        assert_eq!(Matrix::zeros(3, 3).rank(), 0);
        let m = Matrix::from_int_pairs(&[&[(1, 0), (0, 1)], &[(0, -1), (1, 0)]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(Matrix::zeros(0, 0).rank(), 0);
    }

    #[test]
    fn rank_with_skipped_columns() {
        // pivot columns 0 and 2; column 1 dependent
        let m = Matrix::from_int_rows(&[&[2, 4, 1], &[1, 2, 3], &[3, 6, 4]]);
        assert_eq!(m.rank(), 2);
        let m = Matrix::from_int_rows(&[&[0, 0, 5, 1], &[0, 0, 2, 7], &[0, 0, 1, 1]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn determinants() {
        let m = Matrix::from_int_rows(&[&[1, 2], &[2, 1]]);
        assert_eq!(m.determinant().unwrap(), gr(-3, 0));
        let m = Matrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.determinant().unwrap(), gr(-1, 0));
        let m = Matrix::from_int_pairs(&[&[(2, 0), (1, 1)], &[(1, -1), (3, 0)]]);
        assert_eq!(m.determinant().unwrap(), gr(4, 0));
        // rational entries: det diag(1/2, 2/3) = 1/3
        let m = Matrix::diagonal(&[GaussianRational::real(rational(1, 2)), GaussianRational::real(rational(2, 3))]);
        assert_eq!(m.determinant().unwrap(), GaussianRational::real(rational(1, 3)));
        assert!(Matrix::zeros(2, 3).determinant().is_err());
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(2).kernel_basis().is_empty());
        assert_eq!(Matrix::zeros(2, 2).kernel_basis().len(), 2);
        let k = Matrix::from_int_rows(&[&[1, 1], &[1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![gr(-1, 0), gr(1, 0)]]);
    }

    #[test]
    fn esf_examples() {
        let d = Matrix::from_int_rows(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        assert_eq!(d.elementary_symmetric_eigen().unwrap(), vec![gr(6, 0), gr(11, 0), gr(6, 0)]);
        assert_eq!(Matrix::identity(2).elementary_symmetric_eigen().unwrap(), vec![gr(2, 0), gr(1, 0)]);
        let m = Matrix::from_int_rows(&[&[1, 2], &[2, 1]]);
        assert_eq!(m.elementary_symmetric_eigen().unwrap(), vec![gr(2, 0), gr(-3, 0)]);
    }

    fn scaled_rows(m: &Matrix) -> Vec<Vec<GaussInt>> {
        (0..m.rows)
            .map(|i| m.row(i).iter().map(|v| GaussInt { re: v.re.to_integer(), im: v.im.to_integer() }).collect())
            .collect()
    }

    #[test]
    fn word_and_bigint_elimination_agree() {
        let mut state = 7u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 7) as i64 - 3
        };
        for trial in 0..200 {
            let (rows, cols) = (1 + trial % 5, 1 + (trial / 5) % 5);
            let data: Vec<Vec<GaussianRational>> =
                (0..rows).map(|_| (0..cols).map(|_| GaussianRational::from_parts(next(), next())).collect()).collect();
            let m = Matrix::from_rows(data).unwrap();
            let small = SmallGauss::eliminate(SmallGauss::rows_of(&scaled_rows(&m)).unwrap(), cols).unwrap();
            let big = Bareiss::run_big(scaled_rows(&m), cols, Rational::one());
            assert_eq!(small.0, big.rank);
            assert_eq!(small.1, big.swaps);
            let last = small.2.map(|g| GaussInt { re: BigInt::from(g.re), im: BigInt::from(g.im) });
            assert!(last == big.last_pivot);
        }
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = GaussianRational::real(Rational::from_integer(BigInt::from(10).pow(30)));
        let m = Matrix::diagonal(&[big.clone(), big.clone(), big.clone()]);
        assert!(SmallGauss::eliminate(SmallGauss::rows_of(&scaled_rows(&m)).unwrap(), 3).is_none());
        assert_eq!(m.determinant().unwrap(), &(&big * &big) * &big);
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn word_and_rational_char_poly_agree() {
        let mut state = 11u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 9) as i64 - 4
        };
        for n in 1..=6 {
            for _ in 0..20 {
                let data: Vec<Vec<GaussianRational>> =
                    (0..n).map(|_| (0..n).map(|_| GaussianRational::from_parts(next(), next())).collect()).collect();
                let m = Matrix::from_rows(data).unwrap();
                assert_eq!(m.elementary_symmetric_eigen().unwrap(), m.elementary_symmetric_rational());
            }
        }
    }
}
