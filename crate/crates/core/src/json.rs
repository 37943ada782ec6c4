//! JSON views of the certificate types. Field elements are rendered as
//! strings ("2", "t+1") so no integer-width ambiguity can creep in; keys are
//! emitted in sorted order, which keeps identical runs byte-identical.

use crate::error::{Error, Result};
use crate::field::{Elt, Field};
use crate::linalg::{Mat, Vect};
use crate::minkowski::{
    ExplicitMap, GlavniBranch, GlavniVerdict, LightMap, MapKind, OvoidExistence, RuleMode,
    RuleReport,
};
use crate::ovoid::{OvoidCertificate, TransferResult};
use crate::polar::VertexSetCertificate;
use crate::quadspace::SymForm;
use crate::spectrum::{CoreReport, SpectrumReport};
use serde_json::{json, Value};

pub fn vect_json(f: &Field, v: &[Elt]) -> Value {
    Value::Array(v.iter().map(|e| Value::String(f.format_elt(e))).collect())
}

pub fn mat_json(f: &Field, m: &Mat) -> Value {
    Value::Array(
        (0..m.rows)
            .map(|r| {
                Value::Array(
                    (0..m.cols)
                        .map(|c| Value::String(f.format_elt(m.get(r, c))))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn points_json(f: &Field, pts: &[Vect]) -> Value {
    Value::Array(pts.iter().map(|p| vect_json(f, p)).collect())
}

pub fn form_json(form: &SymForm) -> Value {
    let class = form.classify();
    json!({
        "field": form.field.spec_string(),
        "n": form.n,
        "name": form.name,
        "matrix": mat_json(&form.field, &form.a),
        "kind": class.kind.to_string(),
        "witt_index": class.witt_index,
        "generator_size": class.generator_size.to_string(),
    })
}

/// Parse a matrix from `[["1","0"],["0","2"]]`.
pub fn mat_from_json(f: &Field, v: &Value) -> Result<Mat> {
    let rows = v.as_array().ok_or_else(|| Error::Parse("matrix must be an array".into()))?;
    let n = rows.len();
    let mut m = Mat::zero(f, n, n);
    for (r, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| Error::Parse("matrix row must be an array".into()))?;
        if row.len() != n {
            return Err(Error::Parse("matrix must be square".into()));
        }
        for (c, e) in row.iter().enumerate() {
            m.set(r, c, elt_from_json(f, e)?);
        }
    }
    Ok(m)
}

pub fn elt_from_json(f: &Field, v: &Value) -> Result<Elt> {
    match v {
        Value::String(s) => f.parse_elt(s),
        Value::Number(n) => n
            .as_i64()
            .map(|i| f.from_int(i))
            .ok_or_else(|| Error::Parse("element out of range".into())),
        _ => Err(Error::Parse("element must be a string or integer".into())),
    }
}

pub fn points_from_json(f: &Field, v: &Value) -> Result<Vec<Vect>> {
    let arr = match v {
        Value::Array(a) => a,
        Value::Object(o) => o
            .get("points")
            .and_then(|p| p.as_array())
            .ok_or_else(|| Error::Parse("expected a \"points\" array".into()))?,
        _ => return Err(Error::Parse("expected an array of points".into())),
    };
    arr.iter()
        .map(|pt| {
            let coords = pt.as_array().ok_or_else(|| Error::Parse("point must be an array".into()))?;
            coords.iter().map(|e| elt_from_json(f, e)).collect()
        })
        .collect()
}

pub fn vertex_cert_json(f: &Field, cert: &VertexSetCertificate) -> Value {
    json!({
        "kind": format!("{:?}", cert.kind).to_lowercase(),
        "graph": cert.graph,
        "size": cert.size,
        "verified": cert.verified,
        "optimal": cert.optimal,
        "vertices": points_json(f, &cert.vertices),
    })
}

pub fn spectrum_json(report: &SpectrumReport) -> Value {
    json!({
        "pairs": report
            .pairs
            .iter()
            .map(|(l, m)| json!([l.to_string(), m.to_string()]))
            .collect::<Vec<_>>(),
        "source": report.source.to_string(),
        "vertex_count": report.vertex_count.to_string(),
        "ramanujan": report.is_ramanujan(),
    })
}

pub fn core_report_json(f: &Field, report: &CoreReport) -> Value {
    json!({
        "graph": report.graph,
        "omega": report.omega.to_string(),
        "alpha_exact": report.alpha_exact.map(|a| a.to_string()),
        "alpha_lower": report.alpha_lower.to_string(),
        "alpha_upper": report.alpha_upper.to_string(),
        "product_equality": report.product_equality,
        "verdict": report.verdict.to_string(),
        "ovoid_implication": report.ovoid_implication,
        "witness": report.witness.as_ref().map(|w| vertex_cert_json(f, w)),
    })
}

pub fn ovoid_cert_json(f: &Field, cert: &OvoidCertificate) -> Value {
    json!({
        "quadric": cert.partial.quadric,
        "size": cert.partial.size,
        "target": cert.target.to_string(),
        "verified": cert.verified,
        "points": points_json(f, &cert.partial.points),
    })
}

pub fn transfer_json(f: &Field, t: &TransferResult) -> Value {
    let set_json = |pair: &(SymForm, Vec<Vect>)| {
        json!({
            "form": form_json(&pair.0),
            "points": points_json(f, &pair.1),
            "size": pair.1.len(),
        })
    };
    json!({
        "reduced": set_json(&t.reduced),
        "extended": t.extended.as_ref().map(set_json),
    })
}

pub fn rule_report_json(f: &Field, r: &RuleReport) -> Value {
    let mode = match &r.mode {
        RuleMode::Exhaustive => json!({"mode": "exhaustive"}),
        RuleMode::Sampled { count, seed } => {
            json!({"mode": "sampled", "count": count.to_string(), "seed": seed.to_string()})
        }
    };
    json!({
        "mode": mode,
        "pairs_checked": r.pairs_checked.to_string(),
        "violations": r.violations.to_string(),
        "first_violation": r
            .first_violation
            .as_ref()
            .map(|(x, y)| json!([vect_json(f, x), vect_json(f, y)])),
        "passed": r.passed(),
    })
}

pub fn light_map_json(map: &LightMap, report: Option<&RuleReport>) -> Value {
    let f = &map.space.field;
    let kind = match &map.kind {
        MapKind::Semilinear { a, p, j, x0, anti } => json!({
            "kind": "semilinear",
            "scale": f.format_elt(a),
            "matrix": mat_json(f, p),
            "frobenius": j,
            "shift": vect_json(f, x0),
            "anti_lorentz": anti,
        }),
        MapKind::CliqueFactorization { clique, .. } => json!({
            "kind": "clique_factorization",
            "clique": points_json(f, clique),
            "clique_size": clique.len(),
        }),
        MapKind::Explicit(ex) => json!({
            "kind": "explicit",
            "name": match ex {
                ExplicitMap::Dim2 => "dim2",
                ExplicitMap::Dim3 => "dim3",
                ExplicitMap::Exa5 { .. } => "exa5",
                ExplicitMap::Dim6Thas { .. } => "dim6_thas",
                ExplicitMap::Dim6Kantor { .. } => "dim6_kantor",
            },
        }),
    };
    json!({
        "field": f.spec_string(),
        "n": map.space.n,
        "map": kind,
        "verification": report.map(|r| rule_report_json(f, r)),
    })
}

pub fn glavni_json(v: &GlavniVerdict) -> Value {
    let branch = match &v.branch {
        GlavniBranch::AllMapsSemilinear { reason } => json!({
            "outcome": "all_maps_semilinear",
            "reason": reason,
        }),
        GlavniBranch::TiedToOvoid { quadric, existence } => {
            let (status, detail) = match existence {
                OvoidExistence::Exists(s) => ("exists", Some(*s)),
                OvoidExistence::NotExists(s) => ("not_exists", Some(*s)),
                OvoidExistence::Open => ("open", None),
            };
            json!({
                "outcome": "tied_to_ovoid",
                "quadric": quadric,
                "ovoid_existence": status,
                "detail": detail,
            })
        }
    };
    json!({
        "n": v.n,
        "q": v.q.to_string(),
        "branch": branch,
        "witness": v.witness.as_ref().map(|w| light_map_json(w, None)),
    })
}
