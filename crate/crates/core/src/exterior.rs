//! Constant-coefficient forms in `Λ^{p,q}(C^n)`.
//!
//! Basis element `dz_I ∧ dz̄_J` is always written with the holomorphic block
//! first and both index sets strictly increasing. Basis order is
//! lexicographic in `(I, J)`. Every sign in this crate comes from counting
//! inversions against that single convention.
//!
//! The positive generator of top degree is
//! `vol = (i dz_1∧dz̄_1) ∧ ... ∧ (i dz_n∧dz̄_n)`, so for this normalization
//! `ω^n = n!·vol` with `ω` the form of the identity matrix.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;
use crate::matrix::Matrix;
use crate::scalar::GaussianRational;

pub const MAX_DIM: usize = 31;

/// Strictly increasing index set in `[1, n]`, stored as a bitmask (bit `k-1` for index `k`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex(u32);

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex(0);

    /// From 1-based indices; they must be strictly increasing.
    pub fn new(entries: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        let mut last = 0;
        for &e in entries {
            if e == 0 || e > MAX_DIM || e <= last {
                return Err(Error::DegreeMismatch(format!(
                    "multi-index {entries:?} must be strictly increasing within [1, {MAX_DIM}]"
                )));
            }
            mask |= 1 << (e - 1);
            last = e;
        }
        Ok(Self(mask))
    }

    pub fn from_mask(mask: u32) -> Self {
        Self(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// 1-based entries in increasing order.
    pub fn entries(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let k = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(k + 1)
            }
        })
    }

    pub fn max_entry(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    pub fn complement(self, n: usize) -> Self {
        Self(!self.0 & full_mask(n))
    }
}

fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.entries().cmp(other.entries())
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries()).finish()
    }
}

/// Sign of `dz_A ∧ dz_B` relative to `dz_{A∪B}`, or `None` if they overlap.
fn merge_sign(a: MultiIndex, b: MultiIndex) -> Option<bool> {
    if a.0 & b.0 != 0 {
        return None;
    }
    // inversions: pairs (x in a, y in b) with x > y
    let mut inversions = 0u32;
    for y in b.entries() {
        inversions += (a.0 >> y).count_ones();
    }
    Some(inversions % 2 == 1)
}

/// All `k`-subsets of `[1, n]` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (1..=k).collect();
    loop {
        out.push(MultiIndex::new(&idx).expect("increasing"));
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - (k - 1 - i) {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Canonical ordered basis of `Λ^{p,q}(C^n)`.
pub fn basis(n: usize, p: usize, q: usize) -> Vec<(MultiIndex, MultiIndex)> {
    let is = combinations(n, p);
    let js = combinations(n, q);
    let mut out = Vec::with_capacity(is.len() * js.len());
    for i in &is {
        for j in &js {
            out.push((*i, *j));
        }
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim Λ^{p,q}(C^n) = C(n,p)·C(n,q)`.
pub fn dimension(n: usize, p: usize, q: usize) -> usize {
    binomial(n, p) * binomial(n, q)
}

/// Element of `Λ^{p,q}(C^n)` with sparse coefficients; absent keys are zero.
#[derive(Clone, PartialEq, Eq)]
pub struct PQForm {
    n: usize,
    p: usize,
    q: usize,
    coeffs: BTreeMap<(MultiIndex, MultiIndex), GaussianRational>,
}

impl PQForm {
    pub fn zero(n: usize, p: usize, q: usize) -> Self {
        assert!(n <= MAX_DIM, "dimension {n} exceeds {MAX_DIM}");
        Self { n, p, q, coeffs: BTreeMap::new() }
    }

    /// The scalar 1 in `Λ^{0,0}`.
    pub fn one(n: usize) -> Self {
        Self::scalar(n, GaussianRational::one())
    }

    pub fn scalar(n: usize, c: GaussianRational) -> Self {
        let mut f = Self::zero(n, 0, 0);
        f.add_term(MultiIndex::EMPTY, MultiIndex::EMPTY, c);
        f
    }

    pub fn basis_element(n: usize, i: MultiIndex, j: MultiIndex) -> Self {
        let mut f = Self::zero(n, i.len(), j.len());
        f.add_term(i, j, GaussianRational::one());
        f
    }

    /// `dz_k` as a (1,0)-form, 1-based.
    pub fn dz(n: usize, k: usize) -> Self {
        Self::basis_element(n, MultiIndex::new(&[k]).unwrap(), MultiIndex::EMPTY)
    }

    /// `dz̄_k` as a (0,1)-form, 1-based.
    pub fn dzbar(n: usize, k: usize) -> Self {
        Self::basis_element(n, MultiIndex::EMPTY, MultiIndex::new(&[k]).unwrap())
    }

    /// The canonical positive top-degree generator `∏ (i dz_k ∧ dz̄_k)`.
    pub fn volume(n: usize) -> Self {
        let factors: Vec<PQForm> = (1..=n)
            .map(|k| {
                let idx = MultiIndex::new(&[k]).unwrap();
                let mut f = PQForm::zero(n, 1, 1);
                f.add_term(idx, idx, GaussianRational::i());
                f
            })
            .collect();
        wedge_many(n, &factors)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: MultiIndex, j: MultiIndex) -> GaussianRational {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(MultiIndex, MultiIndex), &GaussianRational)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, i: MultiIndex, j: MultiIndex, c: GaussianRational) {
        assert!(
            i.len() == self.p && j.len() == self.q && i.max_entry() <= self.n && j.max_entry() <= self.n,
            "term {i:?},{j:?} does not live in Λ^({},{})(C^{})",
            self.p,
            self.q,
            self.n
        );
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry((i, j)).or_insert_with(GaussianRational::zero);
        *slot += &c;
        if slot.is_zero() {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn add(&self, other: &PQForm) -> PQForm {
        assert_eq!((self.n, self.p, self.q), (other.n, other.p, other.q), "adding forms of different type");
        let mut out = self.clone();
        for ((i, j), c) in &other.coeffs {
            out.add_term(*i, *j, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &GaussianRational) -> PQForm {
        let mut out = PQForm::zero(self.n, self.p, self.q);
        if s.is_zero() {
            return out;
        }
        for (k, c) in &self.coeffs {
            out.coeffs.insert(*k, c * s);
        }
        out
    }

    /// Wedge product. Degrees beyond `n` give the zero form of the clamped
    /// bidegree, since `Λ` vanishes there.
    ///
    /// `(dz_{I1}∧dz̄_{J1}) ∧ (dz_{I2}∧dz̄_{J2}) = (-1)^{q1·p2} dz_{I1}∧dz_{I2}∧dz̄_{J1}∧dz̄_{J2}`,
    /// after which each block is sorted by counting inversions.
    pub fn wedge(&self, other: &PQForm) -> PQForm {
        assert_eq!(self.n, other.n, "wedge of forms on different spaces");
        let n = self.n;
        let (p, q) = (self.p + other.p, self.q + other.q);
        if p > n || q > n {
            return PQForm::zero(n, p.min(n), q.min(n));
        }
        let cross = (self.q * other.p) % 2 == 1;
        let mut out = PQForm::zero(n, p, q);
        for ((i1, j1), c1) in &self.coeffs {
            for ((i2, j2), c2) in &other.coeffs {
                let Some(si) = merge_sign(*i1, *i2) else { continue };
                let Some(sj) = merge_sign(*j1, *j2) else { continue };
                let c = c1 * c2;
                let c = if cross ^ si ^ sj { -c } else { c };
                out.add_term(MultiIndex(i1.0 | i2.0), MultiIndex(j1.0 | j2.0), c);
            }
        }
        out
    }

    /// Complex conjugate, of bidegree `(q, p)`:
    /// `conj(c dz_I∧dz̄_J) = c̄ dz̄_I∧dz_J = (-1)^{|I||J|} c̄ dz_J∧dz̄_I`.
    pub fn conjugate(&self) -> PQForm {
        let mut out = PQForm::zero(self.n, self.q, self.p);
        for ((i, j), c) in &self.coeffs {
            // moving each of the |J| holomorphic factors left past |I| antiholomorphic ones
            let transpositions = i.len() * j.len();
            let c = c.conj();
            let c = if transpositions % 2 == 1 { -c } else { c };
            out.coeffs.insert((*j, *i), c);
        }
        out
    }

    /// A (p,p)-form is real iff it equals its conjugate.
    pub fn is_real(&self) -> bool {
        self.p == self.q && self.conjugate() == *self
    }

    /// `λ` with `self = λ·vol`.
    pub fn volume_scalar(&self) -> Result<GaussianRational> {
        if self.p != self.n || self.q != self.n {
            return Err(Error::DegreeMismatch(format!(
                "volume_scalar needs bidegree ({n},{n}), got ({},{})",
                self.p,
                self.q,
                n = self.n
            )));
        }
        if self.coeffs.len() > 1 {
            return Err(Error::Arithmetic("top-degree form with more than one coefficient".into()));
        }
        let full = MultiIndex(full_mask(self.n));
        Ok(&self.coeff(full, full) / &volume_coefficient(self.n))
    }

    /// Dense coefficient vector in the canonical basis order.
    pub fn to_vector(&self) -> Vec<GaussianRational> {
        basis(self.n, self.p, self.q).into_iter().map(|(i, j)| self.coeff(i, j)).collect()
    }

    pub fn from_vector(n: usize, p: usize, q: usize, v: &[GaussianRational]) -> PQForm {
        let b = basis(n, p, q);
        assert_eq!(b.len(), v.len(), "coefficient vector has the wrong length");
        let mut out = PQForm::zero(n, p, q);
        for ((i, j), c) in b.into_iter().zip(v) {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl fmt::Debug for PQForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PQForm(n={}, ({},{})) {{", self.n, self.p, self.q)?;
        for ((i, j), c) in &self.coeffs {
            write!(f, " ({c})dz{i:?}∧dz̄{j:?}")?;
        }
        write!(f, " }}")
    }
}

/// Coefficient of `dz_{[n]}∧dz̄_{[n]}` in `vol`: `i^n (-1)^{n(n-1)/2}`.
pub fn volume_coefficient(n: usize) -> GaussianRational {
    let c = GaussianRational::i_pow(n as i64);
    if (n * (n.saturating_sub(1)) / 2).is_multiple_of(2) {
        c
    } else {
        -c
    }
}

/// The (1,1)-form `i Σ a_jk dz_j ∧ dz̄_k` of a Hermitian matrix.
pub fn form_from_matrix(a: &HermitianMatrix) -> PQForm {
    let n = a.dim();
    let mut f = PQForm::zero(n, 1, 1);
    let i = GaussianRational::i();
    for j in 0..n {
        for k in 0..n {
            let c = a.get(j, k);
            if !c.is_zero() {
                f.add_term(MultiIndex(1 << j), MultiIndex(1 << k), &i * c);
            }
        }
    }
    f
}

/// Left fold of `wedge`; the empty product is `1 ∈ Λ^{0,0}`.
pub fn wedge_many(n: usize, forms: &[PQForm]) -> PQForm {
    forms.iter().fold(PQForm::one(n), |acc, f| acc.wedge(f))
}

/// Matrix of `Φ ↦ Ω∧Φ` from `Λ^{p,q}` to `Λ^{p+d,q+d}` in canonical bases,
/// where `Ω` has bidegree `(d,d)`. When the target degree exceeds `n` the
/// matrix has zero rows.
pub fn wedge_map_matrix(omega: &PQForm, p: usize, q: usize) -> Matrix {
    let n = omega.n;
    let (a, b) = omega.bidegree();
    let (tp, tq) = (p + a, q + b);
    let src = basis(n, p, q);
    if tp > n || tq > n {
        return Matrix::zeros(0, src.len());
    }
    let tgt = basis(n, tp, tq);
    let pos: BTreeMap<(MultiIndex, MultiIndex), usize> = tgt.iter().enumerate().map(|(k, key)| (*key, k)).collect();
    let mut m = Matrix::zeros(tgt.len(), src.len());
    for (col, (i, j)) in src.into_iter().enumerate() {
        let img = omega.wedge(&PQForm::basis_element(n, i, j));
        for (key, c) in img.terms() {
            m[(pos[key], col)] = c.clone();
        }
    }
    m
}

/// The hard Lefschetz map `Ω: Λ^{p,q} → Λ^{n-q,n-p}`; requires `Ω` of
/// bidegree `(n-p-q, n-p-q)`. Square because `C(n,n-q)C(n,n-p) = C(n,p)C(n,q)`.
pub fn multiplication_matrix(omega: &PQForm, p: usize, q: usize) -> Result<Matrix> {
    let n = omega.n;
    if p + q > n {
        return Err(Error::DegreeMismatch(format!("p+q = {} exceeds n = {n}", p + q)));
    }
    let d = n - p - q;
    if omega.bidegree() != (d, d) {
        return Err(Error::DegreeMismatch(format!(
            "Ω must have bidegree ({d},{d}) to act Λ^({p},{q}) → Λ^({},{}), got {:?}",
            n - q,
            n - p,
            omega.bidegree()
        )));
    }
    Ok(wedge_map_matrix(omega, p, q))
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    #[serde(rename = "I")]
    i: Vec<usize>,
    #[serde(rename = "J")]
    j: Vec<usize>,
    c: GaussianRational,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormRecord {
    n: usize,
    p: usize,
    q: usize,
    terms: Vec<TermRecord>,
}

impl Serialize for PQForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FormRecord {
            n: self.n,
            p: self.p,
            q: self.q,
            terms: self
                .coeffs
                .iter()
                .map(|((i, j), c)| TermRecord { i: i.entries().collect(), j: j.entries().collect(), c: c.clone() })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PQForm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rec = FormRecord::deserialize(deserializer)?;
        if rec.n > MAX_DIM || rec.p > rec.n || rec.q > rec.n {
            return Err(D::Error::custom(format!("invalid bidegree ({},{}) for n={}", rec.p, rec.q, rec.n)));
        }
        let mut f = PQForm::zero(rec.n, rec.p, rec.q);
        for t in rec.terms {
            let i = MultiIndex::new(&t.i).map_err(D::Error::custom)?;
            let j = MultiIndex::new(&t.j).map_err(D::Error::custom)?;
            if i.len() != rec.p || j.len() != rec.q || i.max_entry() > rec.n || j.max_entry() > rec.n {
                return Err(D::Error::custom(format!("term {:?},{:?} out of bidegree", t.i, t.j)));
            }
            f.add_term(i, j, t.c);
        }
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(e: &[usize]) -> MultiIndex {
        MultiIndex::new(e).unwrap()
    }

    fn omega(n: usize) -> PQForm {
        form_from_matrix(&HermitianMatrix::identity(n))
    }

    #[test]
    fn multi_index_order_is_lexicographic() {
        let c = combinations(4, 2);
        let seqs: Vec<Vec<usize>> = c.iter().map(|m| m.entries().collect()).collect();
        assert_eq!(seqs, vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]);
        let mut sorted = c.clone();
        sorted.reverse();
        sorted.sort();
        assert_eq!(sorted, c);
        assert!(MultiIndex::new(&[2, 1]).is_err());
        assert!(MultiIndex::new(&[0]).is_err());
        assert_eq!(combinations(3, 0), vec![MultiIndex::EMPTY]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn form_from_matrix_examples() {
        let f = form_from_matrix(&HermitianMatrix::identity(1));
        assert_eq!(f.coeff(mi(&[1]), mi(&[1])), GaussianRational::i());
        let f = form_from_matrix(&HermitianMatrix::diagonal_ints(&[1, 0]));
        assert_eq!(f.num_terms(), 1);
        assert_eq!(f.coeff(mi(&[1]), mi(&[1])), GaussianRational::i());
        let c = GaussianRational::from_parts(2, 3);
        let a = HermitianMatrix::new(
            Matrix::from_rows(vec![
                vec![GaussianRational::zero(), c.clone()],
                vec![c.conj(), GaussianRational::zero()],
            ])
            .unwrap(),
        )
        .unwrap();
        let f = form_from_matrix(&a);
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.coeff(mi(&[1]), mi(&[2])), &GaussianRational::i() * &c);
        assert_eq!(f.coeff(mi(&[2]), mi(&[1])), &GaussianRational::i() * &c.conj());
        assert!(f.is_real());
    }

    #[test]
    fn wedge_examples() {
        assert!(PQForm::dz(2, 1).wedge(&PQForm::dz(2, 1)).is_zero());
        let a = form_from_matrix(&HermitianMatrix::diagonal_ints(&[1, 0]));
        let b = form_from_matrix(&HermitianMatrix::diagonal_ints(&[0, 1]));
        assert_eq!(a.wedge(&b), PQForm::volume(2));
        let w2 = omega(2).wedge(&omega(2));
        assert_eq!(w2.volume_scalar().unwrap(), GaussianRational::from_int(2));
        // dz1 ∧ dz̄1 ∧ dz2 = - dz1 ∧ dz2 ∧ dz̄1
        let f = PQForm::dz(2, 1).wedge(&PQForm::dzbar(2, 1)).wedge(&PQForm::dz(2, 2));
        assert_eq!(f.coeff(mi(&[1, 2]), mi(&[1])), -GaussianRational::one());
    }

    #[test]
    fn volume_normalization() {
        for n in 0..=6 {
            let full = MultiIndex(full_mask(n));
            assert_eq!(PQForm::volume(n).coeff(full, full), volume_coefficient(n), "n={n}");
        }
        assert_eq!(PQForm::volume(3).volume_scalar().unwrap(), GaussianRational::one());
        assert_eq!(PQForm::zero(3, 3, 3).volume_scalar().unwrap(), GaussianRational::zero());
        let fact = [1, 1, 2, 6, 24, 120];
        for (n, &f) in fact.iter().enumerate().skip(1) {
            let top = wedge_many(n, &vec![omega(n); n]);
            assert_eq!(top.volume_scalar().unwrap(), GaussianRational::from_int(f), "n={n}");
        }
        assert!(omega(2).volume_scalar().is_err());
    }

    #[test]
    fn wedge_many_edge_cases() {
        assert_eq!(wedge_many(3, &[]), PQForm::one(3));
        assert_eq!(wedge_many(3, &[omega(3)]), omega(3));
    }

    #[test]
    fn overflow_gives_clamped_zero() {
        let f = omega(2).wedge(&omega(2)).wedge(&omega(2));
        assert!(f.is_zero());
        assert_eq!(f.bidegree(), (2, 2));
    }

    #[test]
    fn conjugation() {
        let w = omega(1);
        assert_eq!(w.conjugate(), w);
        assert_eq!(PQForm::dz(2, 1).conjugate(), PQForm::dzbar(2, 1));
        // conj(dz1∧dz2∧dz̄1) = dz̄1∧dz̄2∧dz1 = dz1∧dz̄1∧dz̄2
        let f = PQForm::basis_element(3, mi(&[1, 2]), mi(&[1]));
        assert_eq!(f.conjugate(), PQForm::basis_element(3, mi(&[1]), mi(&[1, 2])));
    }

    #[test]
    fn multiplication_matrix_examples() {
        let one = PQForm::one(3);
        let m = multiplication_matrix(&one, 1, 2).unwrap();
        assert_eq!(m, Matrix::identity(dimension(3, 1, 2)));
        let v = wedge_many(2, &[omega(2), omega(2)]);
        let m = multiplication_matrix(&v, 0, 0).unwrap();
        assert_eq!(m.rows(), 1);
        assert_eq!(m[(0, 0)], v.coeff(mi(&[1, 2]), mi(&[1, 2])));
        let a = form_from_matrix(&HermitianMatrix::diagonal_ints(&[1, 0]));
        let m = multiplication_matrix(&a, 1, 0).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 2));
        let nonzero = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).filter(|&(i, j)| !m[(i, j)].is_zero()).count();
        assert_eq!(nonzero, 1);
        assert_eq!(m.rank(), 1);
        assert!(multiplication_matrix(&a, 0, 0).is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = wedge_many(3, &[omega(3), PQForm::dz(3, 2)]);
        let s = serde_json::to_string(&f).unwrap();
        let g: PQForm = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
        assert_eq!(serde_json::to_string(&g).unwrap(), s);
        let bad = r#"{"n":2,"p":1,"q":0,"terms":[{"I":[1,2],"J":[],"c":"1"}]}"#;
        assert!(serde_json::from_str::<PQForm>(bad).is_err());
    }
}
