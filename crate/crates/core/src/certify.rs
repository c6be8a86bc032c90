//! Hard Lefschetz and Hodge-Riemann certification for
//! `Ω = α_1 ∧ ... ∧ α_{n-p-q}` with semi-positive `α_i`.
//!
//! Two independent deciders are provided for HL:
//!
//! * [`criterion_hl`] checks `rank(Σ_{i∈I} A_i) >= |I| + p + q` over all
//!   nonempty subsets `I`;
//! * [`direct_hl`] builds the multiplication map `Λ^{p,q} → Λ^{n-q,n-p}` and
//!   tests it for invertibility.
//!
//! They must agree on every instance. HR is decided directly from the Gram
//! matrix of `Q(Φ,Ψ) = c_{p,q} Ω∧Φ∧Ψ̄` on the primitive space.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::discriminant::{intersection_of, mixed_discriminant, MatrixTuple};
use crate::error::{Error, Result};
use crate::exterior::{self, form_from_matrix, wedge_many, wedge_map_matrix, PQForm};
use crate::hermitian::{Definiteness, HermitianForm, HermitianMatrix, Signature};
use crate::matrix::Matrix;
use crate::scalar::{GaussianRational, Rational};
use crate::subsets::{self, size_lex_order};

/// `Ω = α_1∧...∧α_{n-p-q}` acting on `Λ^{p,q}(C^n)`, with an optional `η` for HR.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HlInstance {
    n: usize,
    p: usize,
    q: usize,
    forms: Vec<HermitianMatrix>,
    eta: Option<HermitianMatrix>,
}

impl HlInstance {
    pub fn new(
        n: usize,
        p: usize,
        q: usize,
        forms: Vec<HermitianMatrix>,
        eta: Option<HermitianMatrix>,
    ) -> Result<Self> {
        if p + q > n {
            return Err(Error::DegreeMismatch(format!("p+q = {} exceeds n = {n}", p + q)));
        }
        if forms.len() != n - p - q {
            return Err(Error::DegreeMismatch(format!(
                "bidegree ({p},{q}) in dimension {n} needs {} forms, got {}",
                n - p - q,
                forms.len()
            )));
        }
        if n > exterior::MAX_DIM {
            return Err(Error::Precondition(format!("dimension {n} exceeds {}", exterior::MAX_DIM)));
        }
        for m in forms.iter().chain(eta.iter()) {
            if m.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, got: m.dim() });
            }
            m.require_psd()?;
        }
        Ok(Self { n, p, q, forms, eta })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn forms(&self) -> &[HermitianMatrix] {
        &self.forms
    }

    pub fn eta(&self) -> Option<&HermitianMatrix> {
        self.eta.as_ref()
    }

    pub fn with_bidegree(&self, p: usize, q: usize) -> Result<Self> {
        Self::new(self.n, p, q, self.forms.clone(), self.eta.clone())
    }

    /// `Ω` as a form of bidegree `(n-p-q, n-p-q)`.
    pub fn omega(&self) -> PQForm {
        let forms: Vec<PQForm> = self.forms.iter().map(form_from_matrix).collect();
        wedge_many(self.n, &forms)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankDeficit {
    pub rank: usize,
    pub required: usize,
}

/// Verdict plus whatever evidence backs a failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub verdict: Verdict,
    /// 1-based subset of the forms whose sum has too small a rank.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_subset: Option<Vec<usize>>,
    /// Rank of the failing subset sum and the bound it misses. Not part of
    /// the JSON certificate, which carries only the subset.
    #[serde(skip)]
    pub rank_deficit: Option<RankDeficit>,
    /// Nonzero `Φ` with `Ω∧Φ = 0`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<PQForm>,
}

impl Certificate {
    pub fn holds() -> Self {
        Self { verdict: Verdict::Holds, failing_subset: None, rank_deficit: None, witness: None }
    }

    pub fn is_holds(&self) -> bool {
        self.verdict.holds()
    }
}

/// First subset (by size, then lexicographically) with
/// `rank(Σ_{i∈I} A_i) < |I| + shift`, with its rank.
pub fn first_rank_violation(n: usize, forms: &[HermitianMatrix], shift: usize) -> Option<(u32, usize)> {
    let ranks = subsets::subset_ranks(n, forms);
    size_lex_order(forms.len())
        .into_iter()
        .find(|&mask| ranks[mask as usize] < mask.count_ones() as usize + shift)
        .map(|mask| (mask, ranks[mask as usize]))
}

/// The subset numerical-dimension criterion.
pub fn criterion_hl(inst: &HlInstance) -> Certificate {
    let shift = inst.p + inst.q;
    match first_rank_violation(inst.n, &inst.forms, shift) {
        None => Certificate::holds(),
        Some((mask, rank)) => Certificate {
            verdict: Verdict::Fails,
            failing_subset: Some(subsets::indices(mask)),
            rank_deficit: Some(RankDeficit { rank, required: mask.count_ones() as usize + shift }),
            witness: None,
        },
    }
}

/// Invertibility of `Ω∧·: Λ^{p,q} → Λ^{n-q,n-p}` by exact determinant, with
/// a kernel vector as witness on failure.
pub fn direct_hl(inst: &HlInstance) -> Result<Certificate> {
    let omega = inst.omega();
    let m = exterior::multiplication_matrix(&omega, inst.p, inst.q)?;
    if !m.determinant()?.is_zero() {
        return Ok(Certificate::holds());
    }
    let kernel = m.kernel_basis();
    let v = kernel
        .into_iter()
        .next()
        .ok_or_else(|| Error::Arithmetic("singular multiplication matrix with empty kernel".into()))?;
    let phi = PQForm::from_vector(inst.n, inst.p, inst.q, &v);
    if phi.is_zero() || !omega.wedge(&phi).is_zero() {
        return Err(Error::Arithmetic("kernel witness does not satisfy Ω∧Φ = 0".into()));
    }
    Ok(Certificate { verdict: Verdict::Fails, failing_subset: None, rank_deficit: None, witness: Some(phi) })
}

/// `c_{p,q} = i^{q-p} (-1)^{(p+q)(p+q+1)/2}`.
pub fn hr_constant(p: usize, q: usize) -> GaussianRational {
    let k = p + q;
    let sign = if (k * (k + 1) / 2).is_multiple_of(2) { GaussianRational::one() } else { -GaussianRational::one() };
    GaussianRational::i_pow(q as i64 - p as i64) * sign
}

pub fn conjugate(phi: &PQForm) -> PQForm {
    phi.conjugate()
}

/// Gram matrix of `Q(Φ,Ψ) = c_{p,q} Ω∧Φ∧Ψ̄` on the given forms, as multiples
/// of `vol`. Entry `(a, b)` is `Q(Φ_b, Φ_a)`, so that `x* G y = Q(Σ y_b Φ_b, Σ x_a Φ_a)`
/// is linear in the first argument of `Q` and the matrix is Hermitian.
pub fn q_gram(omega: &PQForm, p: usize, q: usize, basis: &[PQForm]) -> Result<Matrix> {
    let c = hr_constant(p, q);
    let left: Vec<PQForm> = basis.iter().map(|phi| omega.wedge(phi)).collect();
    let right: Vec<PQForm> = basis.iter().map(PQForm::conjugate).collect();
    let k = basis.len();
    let mut g = Matrix::zeros(k, k);
    for a in 0..k {
        for b in 0..k {
            let top = left[b].wedge(&right[a]);
            g[(a, b)] = &c * &top.volume_scalar()?;
        }
    }
    Ok(g)
}

/// `Q(Φ, Ψ)` for a single pair.
pub fn q_value(omega: &PQForm, p: usize, q: usize, phi: &PQForm, psi: &PQForm) -> Result<GaussianRational> {
    let top = omega.wedge(phi).wedge(&psi.conjugate());
    Ok(hr_constant(p, q) * top.volume_scalar()?)
}

/// `P^{p,q} = ker(Ω∧η∧·)` with the restricted Hodge-Riemann form.
#[derive(Clone, Debug)]
pub struct PrimitiveSpace {
    pub basis: Vec<PQForm>,
    pub gram: HermitianForm,
}

fn eta_of(inst: &HlInstance, need: usize) -> Result<&HermitianMatrix> {
    let eta =
        inst.eta.as_ref().ok_or_else(|| Error::Precondition("η is required for Hodge-Riemann certification".into()))?;
    let r = eta.rank();
    if r < need {
        return Err(Error::Precondition(format!("rank(η) = {r} is below p+q = {need} (deficit {})", need - r)));
    }
    Ok(eta)
}

/// Basis of `ker(Ω∧η∧·)` on `Λ^{p,q}`.
pub fn primitive_basis(omega: &PQForm, eta: &HermitianMatrix, p: usize, q: usize) -> Vec<PQForm> {
    let n = omega.n();
    let omega_eta = omega.wedge(&form_from_matrix(eta));
    let map = wedge_map_matrix(&omega_eta, p, q);
    map.kernel_basis().iter().map(|v| PQForm::from_vector(n, p, q, v)).collect()
}

/// Decide HR for `(Ω, η)`: `Q` must be positive definite on `P^{p,q}`.
/// `rank(η) < p+q` is a precondition error, not a failing verdict.
pub fn hr_certify(inst: &HlInstance) -> Result<(Certificate, PrimitiveSpace)> {
    let (p, q) = (inst.p, inst.q);
    let eta = eta_of(inst, p + q)?;
    let omega = inst.omega();
    let basis = primitive_basis(&omega, eta, p, q);
    let gram = q_gram(&omega, p, q, &basis)?;
    let gram =
        HermitianForm::new(gram).map_err(|_| Error::Arithmetic("Hodge-Riemann Gram matrix is not Hermitian".into()))?;
    let definite = gram.leading_minors_definiteness() == Definiteness::PositiveDefinite;
    let cert = if definite {
        Certificate::holds()
    } else {
        let crit = criterion_hl(inst);
        let direct = direct_hl(inst)?;
        Certificate {
            verdict: Verdict::Fails,
            failing_subset: crit.failing_subset,
            rank_deficit: crit.rank_deficit,
            witness: direct.witness,
        }
    };
    Ok((cert, PrimitiveSpace { basis, gram }))
}

/// `Λ^{p,q} = η∧Λ^{p-1,q-1} ⊕ P^{p,q}`, with the checks that back it.
#[derive(Clone, Debug)]
pub struct LefschetzDecomposition {
    pub image_basis: Vec<PQForm>,
    pub primitive_basis: Vec<PQForm>,
    pub image_dim: usize,
    pub primitive_dim: usize,
    /// `dim P^{p,q} = C(n,p)C(n,q) - C(n,p-1)C(n,q-1)`.
    pub dimension_identity: bool,
    /// The two summands together span `Λ^{p,q}` and meet only in zero.
    pub direct_sum: bool,
    /// `Q(x, y) = 0` for every image vector `x` and primitive vector `y`.
    pub q_orthogonal: bool,
}

impl LefschetzDecomposition {
    pub fn verified(&self) -> bool {
        self.dimension_identity && self.direct_sum && self.q_orthogonal
    }
}

/// Requires HL for `(p,q)` and, when `p,q >= 1`, HL of `Ω∧η²` on `Λ^{p-1,q-1}`
/// (checked through the criterion on the extended form list).
pub fn lefschetz_decomposition(inst: &HlInstance) -> Result<LefschetzDecomposition> {
    let (n, p, q) = (inst.n, inst.p, inst.q);
    let eta = eta_of(inst, p + q)?;
    if !criterion_hl(inst).is_holds() {
        return Err(Error::Precondition(format!("Ω does not have HL on Λ^({p},{q})")));
    }
    let has_image = p >= 1 && q >= 1;
    if has_image {
        let mut ext = inst.forms.clone();
        ext.push(eta.clone());
        ext.push(eta.clone());
        if first_rank_violation(n, &ext, p + q - 2).is_some() {
            return Err(Error::Precondition(format!("Ω∧η² does not have HL on Λ^({},{})", p - 1, q - 1)));
        }
    }
    let omega = inst.omega();
    let eta_form = form_from_matrix(eta);
    let image_basis: Vec<PQForm> = if has_image {
        exterior::basis(n, p - 1, q - 1)
            .into_iter()
            .map(|(i, j)| eta_form.wedge(&PQForm::basis_element(n, i, j)))
            .collect()
    } else {
        Vec::new()
    };
    let primitive = primitive_basis(&omega, eta, p, q);

    let total = exterior::dimension(n, p, q);
    let lower = if has_image { exterior::dimension(n, p - 1, q - 1) } else { 0 };
    let columns: Vec<Vec<GaussianRational>> = image_basis.iter().chain(&primitive).map(PQForm::to_vector).collect();
    let combined_rank = Matrix::from_columns(&columns, total).rank();
    let image_cols: Vec<_> = image_basis.iter().map(PQForm::to_vector).collect();
    let image_rank = Matrix::from_columns(&image_cols, total).rank();

    let mut q_orthogonal = true;
    'outer: for x in &image_basis {
        for y in &primitive {
            if !q_value(&omega, p, q, x, y)?.is_zero() || !q_value(&omega, p, q, y, x)?.is_zero() {
                q_orthogonal = false;
                break 'outer;
            }
        }
    }

    Ok(LefschetzDecomposition {
        image_dim: image_rank,
        primitive_dim: primitive.len(),
        dimension_identity: primitive.len() + lower == total,
        direct_sum: combined_rank == total && image_rank + primitive.len() == total,
        q_orthogonal,
        image_basis,
        primitive_basis: primitive,
    })
}

/// Real basis of `Herm_n`: `E_jj`, then `E_jk + E_kj` for `j<k`, then
/// `i(E_jk - E_kj)` for `j<k`, pairs in lexicographic order.
pub fn hermitian_real_basis(n: usize) -> Vec<HermitianMatrix> {
    let mut out = Vec::with_capacity(n * n);
    for j in 0..n {
        let mut m = Matrix::zeros(n, n);
        m[(j, j)] = GaussianRational::one();
        out.push(m);
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (j + 1..n).map(move |k| (j, k))).collect();
    for &(j, k) in &pairs {
        let mut m = Matrix::zeros(n, n);
        m[(j, k)] = GaussianRational::one();
        m[(k, j)] = GaussianRational::one();
        out.push(m);
    }
    for &(j, k) in &pairs {
        let mut m = Matrix::zeros(n, n);
        m[(j, k)] = GaussianRational::i();
        m[(k, j)] = -GaussianRational::i();
        out.push(m);
    }
    out.into_iter().map(|m| HermitianMatrix::new(m).expect("basis is Hermitian")).collect()
}

/// Gram matrix of `(A, B) ↦ D(A, B, A_1, ..., A_{n-2})` on the real space `Herm_n`.
pub fn discriminant_gram(forms: &[HermitianMatrix]) -> Result<Matrix> {
    let n = forms.len() + 2;
    for f in forms {
        if f.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, got: f.dim() });
        }
    }
    let basis = hermitian_real_basis(n);
    let k = basis.len();
    let mut g = Matrix::zeros(k, k);
    for a in 0..k {
        for b in a..k {
            let mut mats = vec![basis[a].clone(), basis[b].clone()];
            mats.extend(forms.iter().cloned());
            let d = GaussianRational::real(mixed_discriminant(&MatrixTuple::new(mats)?)?);
            g[(a, b)] = d.clone();
            g[(b, a)] = d;
        }
    }
    Ok(g)
}

/// Signature of `D(-, -, A_1, ..., A_{n-2})` on `Herm_n` (dimension `n²`).
pub fn lorentzian_signature(forms: &[HermitianMatrix]) -> Result<Signature> {
    for f in forms {
        f.require_psd()?;
    }
    Ok(HermitianForm::new(discriminant_gram(forms)?)?.signature())
}

/// The torus form `Q(A, B) = A·B·A_1⋯A_{n-2}` (equal to `n!·D(A, B, A_1..)`).
pub fn intersection_q(forms: &[HermitianMatrix], a: &HermitianMatrix, b: &HermitianMatrix) -> Result<Rational> {
    let n = forms.len() + 2;
    let mut mats: Vec<&HermitianMatrix> = vec![a, b];
    mats.extend(forms.iter());
    intersection_of(n, &mats)
}

/// Hodge index statement on the torus: if `Q(α,α) > 0` and `Q(α,β) = 0`
/// then `Q(β,β) <= 0`, with equality exactly when `Ω∧β = 0`.
/// Returns whether the conclusion holds; the hypotheses are checked.
pub fn hodge_index_check(forms: &[HermitianMatrix], alpha: &HermitianMatrix, beta: &HermitianMatrix) -> Result<bool> {
    let n = forms.len() + 2;
    for f in forms {
        f.require_psd()?;
    }
    let qaa = intersection_q(forms, alpha, alpha)?;
    if !qaa.is_positive() {
        return Err(Error::Precondition(format!("Q(α,α) = {qaa} is not positive")));
    }
    let qab = intersection_q(forms, alpha, beta)?;
    if !qab.is_zero() {
        return Err(Error::Precondition(format!("Q(α,β) = {qab} is not zero")));
    }
    let qbb = intersection_q(forms, beta, beta)?;
    let omega: Vec<PQForm> = forms.iter().map(form_from_matrix).collect();
    let omega_beta = wedge_many(n, &omega).wedge(&form_from_matrix(beta));
    Ok(!qbb.is_positive() && (qbb.is_zero() == omega_beta.is_zero()))
}

/// If `Q(α,γ)² = Q(α,α)Q(γ,γ)` for nef `α, γ`, then `Ω∧α` and `Ω∧γ` are
/// proportional. Returns whether they are.
pub fn proportionality_check(
    forms: &[HermitianMatrix],
    alpha: &HermitianMatrix,
    gamma: &HermitianMatrix,
) -> Result<bool> {
    let n = forms.len() + 2;
    for f in forms.iter().chain([alpha, gamma]) {
        f.require_psd()?;
    }
    let qag = intersection_q(forms, alpha, gamma)?;
    let qaa = intersection_q(forms, alpha, alpha)?;
    let qgg = intersection_q(forms, gamma, gamma)?;
    if &qag * &qag != qaa * qgg {
        return Err(Error::Precondition("Q(α,γ)² ≠ Q(α,α)Q(γ,γ)".into()));
    }
    let omega: Vec<PQForm> = forms.iter().map(form_from_matrix).collect();
    let omega = wedge_many(n, &omega);
    let u = omega.wedge(&form_from_matrix(alpha)).to_vector();
    let v = omega.wedge(&form_from_matrix(gamma)).to_vector();
    let len = u.len();
    Ok(Matrix::from_columns(&[u, v], len).rank() <= 1)
}

/// Split of total degree `d` used wherever only `p+q` matters.
pub fn balanced_bidegree(d: usize) -> (usize, usize) {
    (d / 2, d - d / 2)
}

/// If `Φ = ∧A` has HL on `Λ^{n-k}` and `Ψ = ∧B` has HL on `Λ^{n-l}`, then
/// `Φ∧Ψ` has HL on `Λ^{n-k-l}`. Preconditions are checked via the criterion;
/// the conclusion is decided directly.
pub fn products_preserve_hl(forms_a: &[HermitianMatrix], forms_b: &[HermitianMatrix], n: usize) -> Result<bool> {
    let (k, l) = (forms_a.len(), forms_b.len());
    if k + l > n {
        return Err(Error::Precondition(format!("k + l = {} exceeds n = {n}", k + l)));
    }
    if first_rank_violation(n, forms_a, n - k).is_some() {
        return Err(Error::Precondition("Φ does not have HL".into()));
    }
    if first_rank_violation(n, forms_b, n - l).is_some() {
        return Err(Error::Precondition("Ψ does not have HL".into()));
    }
    let mut all = forms_a.to_vec();
    all.extend_from_slice(forms_b);
    let (p, q) = balanced_bidegree(n - k - l);
    Ok(direct_hl(&HlInstance::new(n, p, q, all, None)?)?.is_holds())
}
