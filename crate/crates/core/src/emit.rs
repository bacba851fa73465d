//! DOT and JSON emitters for quivers, algebras and modules, plus the JSON
//! reader that closes the round trip.

use serde::{Deserialize, Serialize};

use crate::algebra::BoundQuiverAlgebra;
use crate::error::ParseError;
use crate::field::{parse_scalar, FieldKind, Scalar};
use crate::matrix::Matrix;
use crate::module::FDModule;
use crate::quiver::Quiver;
use std::sync::Arc;

#[derive(Serialize, Deserialize)]
struct ArrowJson {
    label: String,
    src: String,
    dst: String,
}

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    vertices: Vec<String>,
    arrows: Vec<ArrowJson>,
    relations: Vec<String>,
}

/// DOT digraph: one node per vertex, one labeled edge per arrow.
pub fn emit_dot(q: &Quiver) -> String {
    let mut out = String::from("digraph quiver {\n");
    for v in q.vertices() {
        out.push_str(&format!("  \"{v}\";\n"));
    }
    for a in q.arrows() {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
            q.vertices()[a.src],
            q.vertices()[a.dst],
            a.label
        ));
    }
    out.push_str("}\n");
    out
}

pub fn emit_json(a: &BoundQuiverAlgebra) -> String {
    let q = a.quiver();
    let doc = AlgebraJson {
        vertices: q.vertices().to_vec(),
        arrows: q
            .arrows()
            .iter()
            .map(|ar| ArrowJson {
                label: ar.label.clone(),
                src: q.vertices()[ar.src].clone(),
                dst: q.vertices()[ar.dst].clone(),
            })
            .collect(),
        relations: a.relations().iter().map(|r| r.display(q)).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

/// Parses the JSON form back into an algebra.
pub fn parse_json(text: &str, kind: FieldKind) -> Result<Arc<BoundQuiverAlgebra>, ParseError> {
    let doc: AlgebraJson = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        line: e.line(),
        col: e.column(),
        msg: e.to_string(),
    })?;
    let mut dsl = format!(
        "quiver {{ {} ; ",
        doc.vertices
            .iter()
            .map(|v| v.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    );
    for a in &doc.arrows {
        dsl.push_str(&format!("{}: {} -> {}, ", a.label, a.src, a.dst));
    }
    dsl.push('}');
    if !doc.relations.is_empty() {
        dsl.push_str(&format!(" relations {{ {} }}", doc.relations.join(" ; ")));
    }
    let parsed = crate::dsl::parse_document(&dsl)?;
    let spec = parsed.algebra.expect("quiver block present");
    let (quiver, relations) = crate::dsl::build_quiver(&spec, kind)?;
    crate::algebra::BoundQuiverAlgebra::new(
        quiver,
        relations,
        kind,
        &crate::algebra::AlgebraOptions::default(),
    )
    .map_err(|e| ParseError::BadRelation(e.to_string()))
}

fn scalar_json(s: &Scalar) -> serde_json::Value {
    match s.as_integer() {
        Some(n) => {
            if let Ok(v) = i64::try_from(&n) {
                serde_json::Value::from(v)
            } else {
                serde_json::Value::from(n.to_string())
            }
        }
        None => serde_json::Value::from(s.to_string()),
    }
}

/// Module JSON mirror: `{"dims":[...],"maps":{"label":[[...]]}}`.
pub fn emit_module_json(m: &FDModule) -> serde_json::Value {
    let q = m.algebra().quiver();
    let mut maps = serde_json::Map::new();
    for (ai, a) in q.arrows().iter().enumerate() {
        let mat = m.map(ai);
        let rows: Vec<serde_json::Value> = (0..mat.rows())
            .map(|i| {
                serde_json::Value::from(
                    (0..mat.cols())
                        .map(|j| scalar_json(mat.at(i, j)))
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        maps.insert(a.label.clone(), serde_json::Value::from(rows));
    }
    serde_json::json!({"dims": m.dims(), "maps": serde_json::Value::Object(maps)})
}

pub fn parse_module_json(
    algebra: &Arc<BoundQuiverAlgebra>,
    v: &serde_json::Value,
) -> Result<FDModule, ParseError> {
    let kind = algebra.field();
    let dims: Vec<usize> = v["dims"]
        .as_array()
        .ok_or_else(|| ParseError::BadModule("missing dims".into()))?
        .iter()
        .map(|d| d.as_u64().map(|x| x as usize))
        .collect::<Option<_>>()
        .ok_or_else(|| ParseError::BadModule("dims must be nonnegative integers".into()))?;
    let q = algebra.quiver();
    if dims.len() != q.vertex_count() {
        return Err(ParseError::BadModule("dims length != vertex count".into()));
    }
    let mut maps = Vec::new();
    for (ai, a) in q.arrows().iter().enumerate() {
        let rows = dims[a.dst];
        let cols = dims[a.src];
        let mut mat = Matrix::zeros(kind, rows, cols);
        if let Some(rows_json) = v["maps"].get(&a.label).and_then(|m| m.as_array()) {
            if rows_json.len() != rows {
                return Err(ParseError::BadModule(format!(
                    "map `{}` must have {} rows",
                    a.label, rows
                )));
            }
            for (i, row) in rows_json.iter().enumerate() {
                let row = row
                    .as_array()
                    .ok_or_else(|| ParseError::BadModule("matrix rows must be arrays".into()))?;
                if row.len() != cols {
                    return Err(ParseError::BadModule(format!(
                        "map `{}` must have {} columns",
                        a.label, cols
                    )));
                }
                for (j, cell) in row.iter().enumerate() {
                    let s = match cell {
                        serde_json::Value::Number(n) => kind.from_i64(
                            n.as_i64()
                                .ok_or_else(|| ParseError::BadModule("bad entry".into()))?,
                        ),
                        serde_json::Value::String(t) => parse_scalar(kind, t)?,
                        _ => return Err(ParseError::BadModule("bad matrix entry".into())),
                    };
                    mat.set(i, j, s);
                }
            }
        }
        let _ = ai;
        maps.push(mat);
    }
    FDModule::new(algebra.clone(), dims, maps)
        .map_err(|e| ParseError::BadModule(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BoundQuiverAlgebra;

    #[test]
    fn dot_has_nodes_and_edges() {
        let doc = crate::dsl::parse_document("quiver {1 2; a:1->2}").unwrap();
        let (q, _) = crate::dsl::build_quiver(doc.algebra.as_ref().unwrap(), FieldKind::Rationals)
            .unwrap();
        let dot = emit_dot(&q);
        assert!(dot.contains("\"1\" -> \"2\""));
        assert_eq!(dot.matches("->").count(), 1);
    }

    #[test]
    fn json_round_trip() {
        let text = "quiver { 1 2 3 4 5 ; a:1->2, b:2->3, c:3->4, d:4->5 } relations { a*b ; b*c ; c*d }";
        let doc = crate::dsl::parse_document(text).unwrap();
        let (q, rels) = crate::dsl::build_quiver(doc.algebra.as_ref().unwrap(), FieldKind::Rationals)
            .unwrap();
        let a = BoundQuiverAlgebra::new(
            q,
            rels,
            FieldKind::Rationals,
            &crate::algebra::AlgebraOptions::default(),
        )
        .unwrap();
        let json = emit_json(&a);
        let b = parse_json(&json, FieldKind::Rationals).unwrap();
        assert!(a.same_presentation(&b));
        assert_eq!(b.dim(), 9);
    }
}
