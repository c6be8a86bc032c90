use hlcert_core::certify::{
    criterion_hl, direct_hl, hr_certify, lefschetz_decomposition, lorentzian_signature, HlInstance,
};
use hlcert_core::discriminant::{intersection_of, discriminant_positivity};
use hlcert_core::polymatroid::{check_axioms, enumerate_points, hl_support, multidegree_support, rank_from_matrices};
use hlcert_core::scalar::format_rational;
use hlcert_core::{mixed_discriminant, Certificate, Error, HermitianMatrix, MatrixTuple, RankFunction, Verdict};
use serde_json::{json, Value};

use crate::instance::{InstanceFile, Method, Task};

/// Result of one task: its JSON value and, for verdict-bearing tasks, the verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct TaskOutput {
    pub value: Value,
    pub verdict: Option<Verdict>,
}

impl TaskOutput {
    fn plain(value: Value) -> Self {
        Self { value, verdict: None }
    }

    fn judged(value: Value, verdict: Verdict) -> Self {
        Self { value, verdict: Some(verdict) }
    }
}

fn instance(file: &InstanceFile, forms: &[String], p: usize, q: usize, eta: Option<&str>) -> Result<HlInstance, Error> {
    HlInstance::new(file.n, p, q, file.lookup(forms), eta.map(|e| file.matrix(e).clone()))
}

fn certificate_json(c: &Certificate) -> Value {
    serde_json::to_value(c).expect("certificate serializes")
}

fn rank_table(
    file: &InstanceFile,
    matrices: &Option<Vec<String>>,
    offset: usize,
    table: &Option<RankFunction>,
) -> Result<RankFunction, Error> {
    match (matrices, table) {
        (Some(names), None) => rank_from_matrices(&file.lookup(names), offset),
        (None, Some(t)) if offset == 0 => Ok(t.clone()),
        (None, Some(_)) => Err(Error::Precondition("offset applies only to matrix families".into())),
        _ => Err(Error::Precondition("give exactly one of \"matrices\" or \"table\"".into())),
    }
}

pub fn execute(file: &InstanceFile, task: &Task) -> Result<TaskOutput, Error> {
    Ok(match task {
        Task::Nd { matrix } => {
            let a = file.matrix(matrix);
            a.require_psd()?;
            TaskOutput::plain(json!({ "nd": a.rank() }))
        }
        Task::PsdCheck { matrix } => {
            let a = file.matrix(matrix);
            let e: Vec<String> = a.char_poly_coefficients()?.iter().map(format_rational).collect();
            let psd = a.is_psd();
            TaskOutput::judged(
                json!({ "verdict": Verdict::from_bool(psd), "rank": a.rank(), "elementary_symmetric": e }),
                Verdict::from_bool(psd),
            )
        }
        Task::MixedDisc { matrices } => {
            let t = MatrixTuple::new(file.lookup(matrices))?;
            let d = mixed_discriminant(&t)?;
            let mut v = json!({ "mixed_discriminant": format_rational(&d) });
            if t.matrices().iter().all(HermitianMatrix::is_psd) {
                let cert = discriminant_positivity(&t)?;
                v["positive"] = json!(cert.positive);
                if let Some(w) = cert.witness_subset {
                    v["witness_subset"] = json!(w);
                }
            }
            TaskOutput::plain(v)
        }
        Task::Intersection { matrices } => {
            let mats = file.lookup(matrices);
            let refs: Vec<&HermitianMatrix> = mats.iter().collect();
            TaskOutput::plain(json!({ "intersection": format_rational(&intersection_of(file.n, &refs)?) }))
        }
        Task::HlCertify { forms, p, q, method } => {
            let inst = instance(file, forms, *p, *q, None)?;
            let cert = match method {
                Method::Criterion => criterion_hl(&inst),
                Method::Direct => direct_hl(&inst)?,
                Method::Both => {
                    let crit = criterion_hl(&inst);
                    let direct = direct_hl(&inst)?;
                    if crit.verdict != direct.verdict {
                        return Err(Error::Arithmetic("criterion and direct verdicts disagree".into()));
                    }
                    Certificate { witness: direct.witness, ..crit }
                }
            };
            TaskOutput::judged(certificate_json(&cert), cert.verdict)
        }
        Task::HrCertify { forms, p, q, eta, gram } => {
            let inst = instance(file, forms, *p, *q, Some(eta))?;
            let (cert, prim) = hr_certify(&inst)?;
            let mut v = certificate_json(&cert);
            v["primitive_dim"] = json!(prim.basis.len());
            v["signature"] = json!(prim.gram.signature().as_triple());
            if *gram {
                let g = prim.gram.gram();
                let rows: Vec<Vec<_>> = (0..g.rows()).map(|i| g.row(i).to_vec()).collect();
                v["gram"] = serde_json::to_value(rows).expect("gram serializes");
                v["basis"] = serde_json::to_value(&prim.basis).expect("basis serializes");
            }
            TaskOutput::judged(v, cert.verdict)
        }
        Task::Signature { forms } => {
            let mats = file.lookup(forms);
            if mats.len() + 2 != file.n {
                return Err(Error::DegreeMismatch(format!(
                    "signature in dimension {} needs {} forms, got {}",
                    file.n,
                    file.n.saturating_sub(2),
                    mats.len()
                )));
            }
            let sig = lorentzian_signature(&mats)?;
            TaskOutput::plain(json!({ "signature": sig.as_triple(), "lorentzian": sig.is_lorentzian() }))
        }
        Task::Lefschetz { forms, p, q, eta } => {
            let inst = instance(file, forms, *p, *q, Some(eta))?;
            let d = lefschetz_decomposition(&inst)?;
            let verdict = Verdict::from_bool(d.verified());
            TaskOutput::judged(
                json!({
                    "verdict": verdict,
                    "image_dim": d.image_dim,
                    "primitive_dim": d.primitive_dim,
                    "dimension_identity": d.dimension_identity,
                    "direct_sum": d.direct_sum,
                    "q_orthogonal": d.q_orthogonal,
                }),
                verdict,
            )
        }
        Task::PolymatroidAxioms { matrices, offset, table } => {
            let r = rank_table(file, matrices, *offset, table)?;
            let report = check_axioms(&r);
            let verdict = Verdict::from_bool(report.is_polymatroid());
            let mut v = serde_json::to_value(&report).expect("report serializes");
            v["verdict"] = json!(verdict);
            v["rank_table"] = serde_json::to_value(&r).expect("table serializes");
            TaskOutput::judged(v, verdict)
        }
        Task::EnumerateSupport { matrices, offset, table, dim_x } => {
            let r = rank_table(file, matrices, *offset, table)?;
            let poly = match dim_x {
                Some(d) => multidegree_support(&r, *d)?,
                None => enumerate_points(&r),
            };
            let mut v = json!({ "points": poly.points });
            if !check_axioms(&r).loopless {
                v["warning"] = json!("rank function has loops");
            }
            TaskOutput::plain(v)
        }
        Task::HlSupport { matrices } => {
            let s = hl_support(&file.lookup(matrices))?;
            TaskOutput::plain(json!({ "points": s.points, "offset_table_valid": s.offset_table_valid }))
        }
    })
}
