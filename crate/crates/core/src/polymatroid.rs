//! Rank functions, polymatroid axioms and discrete polymatroids.
//!
//! A rank table stores `r(I)` for every subset `I ⊆ [m]`, indexed by bitmask
//! (bit `i-1` set iff `i ∈ I`).

use std::fmt;

use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::certify::{balanced_bidegree, first_rank_violation};
use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;
use crate::subsets::{self, size_lex_order, MAX_GROUND};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    MatrixFamily,
    UserTable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankFunction {
    m: usize,
    values: Vec<i64>,
    provenance: Provenance,
}

impl RankFunction {
    /// Table indexed by mask, of length `2^m`.
    pub fn from_table(m: usize, values: Vec<i64>) -> Result<Self> {
        if m > MAX_GROUND {
            return Err(Error::InvalidRankTable(format!("ground set of size {m} exceeds {MAX_GROUND}")));
        }
        if values.len() != 1 << m {
            return Err(Error::InvalidRankTable(format!(
                "expected {} entries for m = {m}, got {}",
                1usize << m,
                values.len()
            )));
        }
        if let Some(mask) = values.iter().position(|&v| v < 0) {
            return Err(Error::InvalidRankTable(format!(
                "negative value {} at {:?}",
                values[mask],
                subsets::indices(mask as u32)
            )));
        }
        Ok(Self { m, values, provenance: Provenance::UserTable })
    }

    /// Build from `(subset, value)` pairs covering every nonempty subset;
    /// the empty set defaults to 0 when absent.
    pub fn from_entries(m: usize, entries: &[(Vec<usize>, i64)]) -> Result<Self> {
        if m > MAX_GROUND {
            return Err(Error::InvalidRankTable(format!("ground set of size {m} exceeds {MAX_GROUND}")));
        }
        let mut values: Vec<Option<i64>> = vec![None; 1 << m];
        values[0] = Some(0);
        let mut seen_empty = false;
        for (idx, v) in entries {
            let mut sorted = idx.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != idx.len() {
                return Err(Error::InvalidRankTable(format!("repeated element in subset {idx:?}")));
            }
            let mask = subsets::mask_of(&sorted, m)
                .ok_or_else(|| Error::InvalidRankTable(format!("subset {idx:?} is not inside [1,{m}]")))?;
            let slot = &mut values[mask as usize];
            if mask == 0 {
                if seen_empty {
                    return Err(Error::InvalidRankTable("duplicate entry for []".into()));
                }
                seen_empty = true;
            } else if slot.is_some() {
                return Err(Error::InvalidRankTable(format!("duplicate entry for {sorted:?}")));
            }
            *slot = Some(*v);
        }
        let mut table = Vec::with_capacity(values.len());
        for (mask, v) in values.into_iter().enumerate() {
            match v {
                Some(v) => table.push(v),
                None => {
                    return Err(Error::InvalidRankTable(format!(
                        "missing value for {:?}",
                        subsets::indices(mask as u32)
                    )))
                }
            }
        }
        Self::from_table(m, table)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn value(&self, mask: u32) -> i64 {
        self.values[mask as usize]
    }

    pub fn of(&self, idx: &[usize]) -> Option<i64> {
        subsets::mask_of(idx, self.m).map(|mask| self.value(mask))
    }

    pub fn total(&self) -> i64 {
        self.value(subsets::full(self.m))
    }

    pub fn table(&self) -> &[i64] {
        &self.values
    }
}

impl Serialize for RankFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Values<'a>(&'a RankFunction);
        impl Serialize for Values<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.values.len()))?;
                map.serialize_entry("[]", &self.0.values[0])?;
                for mask in size_lex_order(self.0.m) {
                    map.serialize_entry(&subset_key(mask), &self.0.value(mask))?;
                }
                map.end()
            }
        }
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("m", &self.m)?;
        map.serialize_entry("values", &Values(self))?;
        map.end()
    }
}

/// `"[1,3]"` for the mask of `{1, 3}`.
pub fn subset_key(mask: u32) -> String {
    let parts: Vec<String> = subsets::indices(mask).iter().map(usize::to_string).collect();
    format!("[{}]", parts.join(","))
}

pub fn parse_subset_key(key: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidRankTable(format!("malformed subset key {key:?}"));
    let inner = key.trim().strip_prefix('[').and_then(|k| k.strip_suffix(']')).ok_or_else(bad)?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(|t| t.trim().parse::<usize>().map_err(|_| bad())).collect()
}

impl<'de> Deserialize<'de> for RankFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct Entries(Vec<(Vec<usize>, i64)>);
        impl<'de> Deserialize<'de> for Entries {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                struct V;
                impl<'de> Visitor<'de> for V {
                    type Value = Entries;
                    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                        f.write_str("a map from subset keys like \"[1,3]\" to integers")
                    }
                    fn visit_map<A: MapAccess<'de>>(self, mut a: A) -> std::result::Result<Entries, A::Error> {
                        let mut out = Vec::new();
                        while let Some((k, v)) = a.next_entry::<String, i64>()? {
                            out.push((parse_subset_key(&k).map_err(de::Error::custom)?, v));
                        }
                        Ok(Entries(out))
                    }
                }
                d.deserialize_map(V)
            }
        }

        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            m: usize,
            values: Entries,
        }
        let raw = Raw::deserialize(d)?;
        RankFunction::from_entries(raw.m, &raw.values.0).map_err(de::Error::custom)
    }
}

/// `r(I) = rank(Σ_{i∈I} A_i) - offset` for nonempty `I`, `r(∅) = 0`.
pub fn rank_from_matrices(mats: &[HermitianMatrix], offset: usize) -> Result<RankFunction> {
    let m = mats.len();
    if m > MAX_GROUND {
        return Err(Error::InvalidRankTable(format!("ground set of size {m} exceeds {MAX_GROUND}")));
    }
    let n = mats.first().map_or(0, HermitianMatrix::dim);
    for a in mats {
        if a.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, got: a.dim() });
        }
        a.require_psd()?;
    }
    let ranks = subsets::subset_ranks(n, mats);
    if let Some(mask) = size_lex_order(m).into_iter().find(|&mask| ranks[mask as usize] < offset) {
        return Err(Error::NegativeRank { subset: subsets::indices(mask), rank: ranks[mask as usize], offset });
    }
    let values = ranks.iter().enumerate().map(|(mask, &r)| if mask == 0 { 0 } else { (r - offset) as i64 }).collect();
    Ok(RankFunction { m, values, provenance: Provenance::MatrixFamily })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "kebab-case")]
pub enum Violation {
    Submodular { a: Vec<usize>, b: Vec<usize> },
    Monotone { subset: Vec<usize>, superset: Vec<usize> },
    Normalized { value: i64 },
    Loop { element: usize },
    ExceedsSize { subset: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub submodular: bool,
    pub monotone: bool,
    pub normalized: bool,
    pub loopless: bool,
    pub is_matroid: bool,
    /// First few violations found, in scan order.
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn is_polymatroid(&self) -> bool {
        self.submodular && self.monotone && self.normalized
    }
}

const MAX_REPORTED: usize = 32;

/// Exhaustive check of the polymatroid axioms. Monotonicity is checked on
/// covering pairs `I ⊂ I ∪ {j}`, which implies it on all chains.
pub fn check_axioms(r: &RankFunction) -> AxiomReport {
    let m = r.m;
    let count = 1u32 << m;
    let mut violations = Vec::new();
    let mut push = |v: Violation| {
        if violations.len() < MAX_REPORTED {
            violations.push(v);
        }
    };

    let normalized = r.value(0) == 0;
    if !normalized {
        push(Violation::Normalized { value: r.value(0) });
    }

    let mut monotone = true;
    for mask in 0..count {
        for j in 0..m {
            let sup = mask | 1 << j;
            if sup != mask && r.value(mask) > r.value(sup) {
                monotone = false;
                push(Violation::Monotone { subset: subsets::indices(mask), superset: subsets::indices(sup) });
            }
        }
    }

    let mut submodular = true;
    for a in 0..count {
        for b in a + 1..count {
            if r.value(a | b) + r.value(a & b) > r.value(a) + r.value(b) {
                submodular = false;
                push(Violation::Submodular { a: subsets::indices(a), b: subsets::indices(b) });
            }
        }
    }

    let mut loopless = true;
    for i in 0..m {
        if r.value(1 << i) < 1 {
            loopless = false;
            push(Violation::Loop { element: i + 1 });
        }
    }

    let mut is_matroid = true;
    for mask in 0..count {
        if r.value(mask) > mask.count_ones() as i64 {
            is_matroid = false;
            push(Violation::ExceedsSize { subset: subsets::indices(mask) });
        }
    }
    let is_matroid = is_matroid && normalized && monotone && submodular;

    AxiomReport { submodular, monotone, normalized, loopless, is_matroid, violations }
}

/// Lattice points `n ∈ ℕ^m` with `n_{[m]} = r([m])` and `n_I <= r(I)` for proper `I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscretePolymatroid {
    pub m: usize,
    pub rank: RankFunction,
    /// Lexicographically sorted.
    pub points: Vec<Vec<i64>>,
}

impl DiscretePolymatroid {
    pub fn contains(&self, v: &[i64]) -> bool {
        self.points.binary_search_by(|p| p.as_slice().cmp(v)).is_ok()
    }
}

/// Whether `v` satisfies the defining inequalities of the discrete polymatroid of `r`.
pub fn satisfies_rank_bounds(r: &RankFunction, v: &[i64]) -> bool {
    if v.len() != r.m || v.iter().any(|&x| x < 0) {
        return false;
    }
    let full = subsets::full(r.m);
    (0..=full).all(|mask| {
        let s: i64 = subsets::indices(mask).iter().map(|&i| v[i - 1]).sum();
        if mask == full {
            s == r.value(mask)
        } else {
            s <= r.value(mask)
        }
    })
}

/// Depth-first enumeration in lexicographic order. After fixing `n_1..n_k`
/// every subset of `[k]` containing `k` is checked, so each bound is tested
/// exactly once along a branch.
pub fn enumerate_points(r: &RankFunction) -> DiscretePolymatroid {
    let m = r.m;
    let target = r.total();
    let mut points = Vec::new();
    if m == 0 {
        if target == 0 {
            points.push(Vec::new());
        }
        return DiscretePolymatroid { m, rank: r.clone(), points };
    }
    // sums[mask] over the prefix fixed so far
    let mut sums = vec![0i64; 1 << m];
    let mut cur = vec![0i64; m];
    dfs(r, 0, target, &mut cur, &mut sums, &mut points);
    DiscretePolymatroid { m, rank: r.clone(), points }
}

fn dfs(r: &RankFunction, k: usize, target: i64, cur: &mut [i64], sums: &mut [i64], out: &mut Vec<Vec<i64>>) {
    let m = r.m;
    let used: i64 = cur[..k].iter().sum();
    if k == m - 1 {
        let v = target - used;
        if v >= 0 && fits(r, k, v, sums) {
            cur[k] = v;
            out.push(cur.to_vec());
        }
        return;
    }
    let singleton = r.value(1 << k);
    let upper = singleton.min(target - used);
    for v in 0..=upper {
        if !fits(r, k, v, sums) {
            // bounds only tighten as v grows
            break;
        }
        cur[k] = v;
        let base = 1usize << k;
        for low in 0..base {
            sums[base | low] = sums[low] + v;
        }
        dfs(r, k + 1, target, cur, sums, out);
    }
}

/// Every subset of `[k+1]` containing `k+1` stays within its bound with `n_{k+1} = v`.
fn fits(r: &RankFunction, k: usize, v: i64, sums: &[i64]) -> bool {
    let base = 1usize << k;
    (0..base).all(|low| sums[low] + v <= r.value((base | low) as u32))
}

/// All compositions of `total` into `m` nonnegative parts, lexicographically.
pub fn compositions(total: i64, m: usize) -> Vec<Vec<i64>> {
    fn go(rest: i64, m: usize, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() + 1 == m {
            prefix.push(rest);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for v in 0..=rest {
            prefix.push(v);
            go(rest - v, m, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if m == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    if total >= 0 {
        go(total, m, &mut Vec::with_capacity(m), &mut out);
    }
    out
}

/// The HL support of `α_1, ..., α_m` on `C^n`: all `v` with `Σ v_i = m` such
/// that `α_1^{v_1}⋯α_m^{v_m}` has HL on `Λ^{n-m}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HlSupport {
    pub points: Vec<Vec<i64>>,
    /// Whether `rank(A_I) >= n - m` for all nonempty `I`, so that the
    /// polymatroid route was also taken.
    pub offset_table_valid: bool,
}

/// Criterion route: HL of the repeated-matrix product at bidegree
/// `(⌊(n-m)/2⌋, ⌈(n-m)/2⌉)`, one candidate vector at a time.
pub fn hl_support_by_criterion(mats: &[HermitianMatrix]) -> Result<Vec<Vec<i64>>> {
    let (n, m) = support_dims(mats)?;
    let (p, q) = balanced_bidegree(n - m);
    let mut out = Vec::new();
    for v in compositions(m as i64, m) {
        let mut forms = Vec::with_capacity(m);
        for (a, &times) in mats.iter().zip(&v) {
            forms.extend(std::iter::repeat_n(a.clone(), times as usize));
        }
        if first_rank_violation(n, &forms, p + q).is_none() {
            out.push(v);
        }
    }
    Ok(out)
}

fn support_dims(mats: &[HermitianMatrix]) -> Result<(usize, usize)> {
    let m = mats.len();
    let n = mats.first().map_or(0, HermitianMatrix::dim);
    if m > n {
        return Err(Error::Precondition(format!("{m} classes exceed dimension {n}")));
    }
    for a in mats {
        if a.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, got: a.dim() });
        }
        a.require_psd()?;
    }
    Ok((n, m))
}

/// HL support computed by the criterion and, when the offset table
/// `r(I) = rank(A_I) - (n-m)` is valid, by polymatroid enumeration; the two
/// must agree.
pub fn hl_support(mats: &[HermitianMatrix]) -> Result<HlSupport> {
    let (n, m) = support_dims(mats)?;
    let by_criterion = hl_support_by_criterion(mats)?;
    let table = match rank_from_matrices(mats, n - m) {
        Ok(t) => Some(t),
        Err(Error::NegativeRank { .. }) => None,
        Err(e) => return Err(e),
    };
    if let Some(r) = &table {
        // Σ v_i = m forces r([m]) = m; otherwise the support is empty.
        let by_polymatroid = if r.total() == m as i64 { enumerate_points(r).points } else { Vec::new() };
        if by_polymatroid != by_criterion {
            return Err(Error::Arithmetic(format!(
                "HL support disagrees: polymatroid {by_polymatroid:?}, criterion {by_criterion:?}"
            )));
        }
    }
    Ok(HlSupport { points: by_criterion, offset_table_valid: table.is_some() })
}

/// Multidegree support of a subvariety of dimension `dim_x` whose projection
/// dimensions are given by `r`.
pub fn multidegree_support(r: &RankFunction, dim_x: i64) -> Result<DiscretePolymatroid> {
    if r.total() != dim_x {
        return Err(Error::InvalidRankTable(format!("r([m]) = {} differs from dim X = {dim_x}", r.total())));
    }
    let poly = enumerate_points(r);
    if let Some(bad) = poly.points.iter().find(|v| !satisfies_rank_bounds(r, v)) {
        return Err(Error::Arithmetic(format!("enumerated point {bad:?} violates the rank bounds")));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(d: &[i64]) -> HermitianMatrix {
        HermitianMatrix::diagonal_ints(d)
    }

    fn table(m: usize, v: &[i64]) -> RankFunction {
        let mut values = vec![0];
        values.extend_from_slice(v);
        RankFunction::from_table(m, values).unwrap()
    }

    #[test]
    fn rank_examples() {
        let r = rank_from_matrices(&[diag(&[1, 0]), diag(&[0, 1])], 0).unwrap();
        assert_eq!(r.table(), &[0, 1, 1, 2]);
        let r = rank_from_matrices(&[diag(&[1, 1, 0]), diag(&[0, 1, 1])], 1).unwrap();
        assert_eq!(r.table(), &[0, 1, 1, 2]);
        let r = rank_from_matrices(&[HermitianMatrix::zero(2)], 0).unwrap();
        assert_eq!(r.table(), &[0, 0]);
        assert!(!check_axioms(&r).loopless);
        let e = rank_from_matrices(&[diag(&[1, 0, 0]), diag(&[0, 1, 0])], 2).unwrap_err();
        assert_eq!(e, Error::NegativeRank { subset: vec![1], rank: 1, offset: 2 });
    }

    #[test]
    fn axiom_examples() {
        let r = table(2, &[1, 1, 3]);
        let rep = check_axioms(&r);
        assert!(!rep.submodular && rep.monotone && rep.normalized);
        assert_eq!(rep.violations[0], Violation::Submodular { a: vec![1], b: vec![2] });

        let rep = check_axioms(&table(2, &[0, 0, 0]));
        assert!(rep.submodular && rep.monotone && rep.normalized && !rep.loopless);

        let rep = check_axioms(&table(2, &[1, 1, 2]));
        assert!(rep.is_polymatroid() && rep.loopless && rep.is_matroid);

        let rep = check_axioms(&table(2, &[2, 1, 1]));
        assert!(!rep.monotone && !rep.is_matroid);

        let r = RankFunction::from_table(1, vec![1, 1]).unwrap();
        assert!(!check_axioms(&r).normalized);
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_points(&table(2, &[1, 1, 2])).points, vec![vec![1, 1]]);
        assert_eq!(enumerate_points(&table(2, &[2, 1, 2])).points, vec![vec![1, 1], vec![2, 0]]);
        assert_eq!(enumerate_points(&table(1, &[3])).points, vec![vec![3]]);
        let empty = RankFunction::from_table(0, vec![0]).unwrap();
        assert_eq!(enumerate_points(&empty).points, vec![Vec::<i64>::new()]);
    }

    #[test]
    fn hl_support_examples() {
        let s = hl_support(&[diag(&[1, 1, 0]), diag(&[0, 1, 1])]).unwrap();
        assert_eq!(s.points, vec![vec![1, 1]]);
        assert!(s.offset_table_valid);
        let s = hl_support(&[diag(&[1, 0]), diag(&[0, 1])]).unwrap();
        assert_eq!(s.points, vec![vec![1, 1]]);
        for n in 1..=4 {
            let s = hl_support(&[HermitianMatrix::identity(n)]).unwrap();
            assert_eq!(s.points, vec![vec![1]]);
        }
        // rank(α_1) = 1 < n - m = 2: only the criterion route applies
        let s = hl_support(&[diag(&[1, 0, 0, 0]), diag(&[1, 1, 1, 1])]).unwrap();
        assert!(!s.offset_table_valid);
        assert_eq!(s.points, vec![vec![0, 2]]);
    }

    #[test]
    fn multidegree_examples() {
        let p = multidegree_support(&table(2, &[1, 1, 2]), 2).unwrap();
        assert_eq!(p.points, vec![vec![1, 1]]);
        assert!(multidegree_support(&table(2, &[1, 1, 2]), 3).is_err());

        let r = rank_from_matrices(&[diag(&[1, 1, 0]), diag(&[1, 0, 1]), diag(&[0, 1, 1])], 0).unwrap();
        let p = multidegree_support(&r, 3).unwrap();
        let expected: Vec<Vec<i64>> = compositions(3, 3).into_iter().filter(|v| v.iter().all(|&x| x <= 2)).collect();
        assert_eq!(p.points, expected);
        assert_eq!(p.points.len(), 7);

        let p = multidegree_support(&table(1, &[4]), 4).unwrap();
        assert_eq!(p.points, vec![vec![4]]);
    }

    #[test]
    fn json_round_trip() {
        let r = table(2, &[1, 1, 2]);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"m":2,"values":{"[]":0,"[1]":1,"[2]":1,"[1,2]":2}}"#);
        let back: RankFunction = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        let short: RankFunction = serde_json::from_str(r#"{"m":2,"values":{"[2,1]":2,"[1]":1,"[2]":1}}"#).unwrap();
        assert_eq!(short, r);
        assert!(serde_json::from_str::<RankFunction>(r#"{"m":2,"values":{"[1]":1,"[2]":1}}"#).is_err());
        assert!(serde_json::from_str::<RankFunction>(r#"{"m":1,"values":{"[2]":1}}"#).is_err());
        assert!(serde_json::from_str::<RankFunction>(r#"{"m":1,"values":{"[1]":-1}}"#).is_err());
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(3, 3).len(), 10);
        assert_eq!(compositions(0, 2), vec![vec![0, 0]]);
        assert_eq!(compositions(2, 1), vec![vec![2]]);
    }
}
