//! JSON document formats: algebra presentations, modules, complexes, and
//! verdict reports. Paths are written as arrays of arrow ids in traversal
//! order; vertices are 0-based indices; matrices are row-major arrays of
//! integers reduced mod p.

use crate::algebra::{Algebra, AlgebraRef, Arrow, Quiver, Relation, RelationTerm};
use crate::complex::ChainComplex;
use crate::ding::{
    ComplexDetail, ComplexVerdict, DpCertificate, DpVerdict, DpdValue, ModuleDetail,
    ModuleVerdict, Obstruction, Side,
};
use crate::error::{EngineError, Result};
use crate::fp::FpMatrix;
use crate::rep::{ModuleMap, Representation};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::BTreeMap;

fn default_length_cap() -> usize {
    16
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrowDoc {
    pub id: String,
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelationTermDoc {
    pub coeff: i64,
    pub path: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub p: u64,
    pub vertices: usize,
    #[serde(default)]
    pub arrows: Vec<ArrowDoc>,
    #[serde(default)]
    pub relations: Vec<Vec<RelationTermDoc>>,
    #[serde(default = "default_length_cap")]
    pub length_cap: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuleDoc {
    pub dims: Vec<usize>,
    #[serde(default)]
    pub arrows: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub lo: i64,
    pub hi: i64,
    #[serde(default)]
    pub terms: BTreeMap<String, ModuleDoc>,
    /// differentials[n]: per-vertex matrices of the map from degree n to n-1
    #[serde(default)]
    pub differentials: BTreeMap<String, Vec<Vec<Vec<i64>>>>,
}

fn reduce(p: u64, x: i64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

pub fn algebra_from_doc(doc: &AlgebraDoc) -> Result<AlgebraRef> {
    let quiver = Quiver {
        vertices: doc.vertices,
        arrows: doc
            .arrows
            .iter()
            .map(|a| Arrow { id: a.id.clone(), from: a.from, to: a.to })
            .collect(),
    };
    let mut relations = Vec::new();
    for rel in &doc.relations {
        let mut terms = Vec::new();
        for term in rel {
            let mut word = Vec::new();
            for id in &term.path {
                let idx = quiver.arrow_index(id).ok_or_else(|| {
                    EngineError::BadDocument(format!("relation uses unknown arrow '{id}'"))
                })?;
                word.push(idx);
            }
            terms.push(RelationTerm { coeff: reduce(doc.p, term.coeff), word });
        }
        relations.push(Relation { terms });
    }
    Algebra::build(quiver, relations, doc.p, doc.length_cap)
}

pub fn algebra_to_doc(alg: &AlgebraRef) -> AlgebraDoc {
    AlgebraDoc {
        p: alg.p,
        vertices: alg.vertices(),
        arrows: alg
            .arrows()
            .iter()
            .map(|a| ArrowDoc { id: a.id.clone(), from: a.from, to: a.to })
            .collect(),
        relations: alg
            .relations
            .iter()
            .map(|r| {
                r.terms
                    .iter()
                    .map(|t| RelationTermDoc {
                        coeff: t.coeff as i64,
                        path: t.word.iter().map(|&a| alg.arrows()[a].id.clone()).collect(),
                    })
                    .collect()
            })
            .collect(),
        length_cap: alg.length_cap,
    }
}

fn matrix_from_rows(p: u64, rows: usize, cols: usize, data: &[Vec<i64>]) -> Result<FpMatrix> {
    if rows == 0 || cols == 0 {
        // accept [] or a list of empty rows for degenerate shapes
        if data.iter().any(|r| r.len() != cols) || (cols > 0 && !data.is_empty()) {
            return Err(EngineError::BadDocument(format!(
                "matrix must be {rows} rows of {cols} entries"
            )));
        }
        return Ok(FpMatrix::zeros(p, rows, cols));
    }
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(EngineError::BadDocument(format!(
            "matrix must be {rows} rows of {cols} entries"
        )));
    }
    let mut m = FpMatrix::zeros(p, rows, cols);
    for (i, row) in data.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            m.set(i, j, reduce(p, x));
        }
    }
    Ok(m)
}

pub fn matrix_to_rows(m: &FpMatrix) -> Vec<Vec<u64>> {
    (0..m.rows)
        .map(|i| (0..m.cols).map(|j| m.at(i, j)).collect())
        .collect()
}

pub fn module_from_doc(alg: &AlgebraRef, doc: &ModuleDoc) -> Result<Representation> {
    if doc.dims.len() != alg.vertices() {
        return Err(EngineError::BadDocument(format!(
            "field 'dims' must list {} entries, one per vertex",
            alg.vertices()
        )));
    }
    let mut arrows = Vec::new();
    for a in alg.arrows() {
        let (r, c) = (doc.dims[a.to], doc.dims[a.from]);
        match doc.arrows.get(&a.id) {
            Some(rows) => arrows.push(matrix_from_rows(alg.p, r, c, rows).map_err(|_| {
                EngineError::BadDocument(format!(
                    "field 'arrows.{}' must be a {r} x {c} matrix",
                    a.id
                ))
            })?),
            None if r == 0 || c == 0 => arrows.push(FpMatrix::zeros(alg.p, r, c)),
            None => {
                return Err(EngineError::BadDocument(format!(
                    "field 'arrows' is missing arrow '{}'",
                    a.id
                )))
            }
        }
    }
    Representation::new(alg.clone(), doc.dims.clone(), arrows)
}

pub fn module_to_doc(m: &Representation) -> ModuleDoc {
    let alg = &m.algebra;
    let mut arrows = BTreeMap::new();
    for (ai, a) in alg.arrows().iter().enumerate() {
        if m.arrows[ai].rows > 0 && m.arrows[ai].cols > 0 {
            arrows.insert(
                a.id.clone(),
                matrix_to_rows(&m.arrows[ai])
                    .into_iter()
                    .map(|r| r.into_iter().map(|x| x as i64).collect())
                    .collect(),
            );
        }
    }
    ModuleDoc { dims: m.dims.clone(), arrows }
}

pub fn complex_from_doc(alg: &AlgebraRef, doc: &ComplexDoc) -> Result<ChainComplex> {
    if doc.lo > doc.hi {
        return Ok(ChainComplex::zero(alg.clone()));
    }
    let mut terms = Vec::new();
    for n in doc.lo..=doc.hi {
        let term = match doc.terms.get(&n.to_string()) {
            Some(md) => module_from_doc(alg, md)?,
            None => Representation::zero(alg.clone()),
        };
        terms.push(term);
    }
    let mut diffs = Vec::new();
    for n in (doc.lo + 1)..=doc.hi {
        let src = terms[(n - doc.lo) as usize].clone();
        let tgt = terms[(n - doc.lo - 1) as usize].clone();
        let map = match doc.differentials.get(&n.to_string()) {
            Some(blocks_doc) => {
                if blocks_doc.len() != alg.vertices() {
                    return Err(EngineError::BadDocument(format!(
                        "field 'differentials.{n}' must list one matrix per vertex"
                    )));
                }
                let mut blocks = Vec::new();
                for (v, rows) in blocks_doc.iter().enumerate() {
                    blocks.push(
                        matrix_from_rows(alg.p, tgt.dims[v], src.dims[v], rows).map_err(
                            |_| {
                                EngineError::BadDocument(format!(
                                    "field 'differentials.{n}[{v}]' must be a {} x {} matrix",
                                    tgt.dims[v], src.dims[v]
                                ))
                            },
                        )?,
                    );
                }
                ModuleMap::new(src, tgt, blocks)?
            }
            None => ModuleMap::zero(src, tgt),
        };
        diffs.push(map);
    }
    ChainComplex::new(alg.clone(), doc.lo, terms, diffs)
}

pub fn complex_to_doc(c: &ChainComplex) -> ComplexDoc {
    let mut terms = BTreeMap::new();
    let mut differentials = BTreeMap::new();
    for n in c.lo..=c.hi() {
        let t = c.term(n);
        if !t.is_zero() {
            terms.insert(n.to_string(), module_to_doc(&t));
        }
        if n > c.lo {
            let d = c.diff(n);
            if !d.is_zero() {
                differentials.insert(
                    n.to_string(),
                    d.blocks
                        .iter()
                        .map(|b| {
                            matrix_to_rows(b)
                                .into_iter()
                                .map(|r| r.into_iter().map(|x| x as i64).collect())
                                .collect()
                        })
                        .collect(),
                );
            }
        }
    }
    ComplexDoc { lo: c.lo, hi: c.hi().max(c.lo - 1), terms, differentials }
}

pub fn value_to_json(v: DpdValue) -> Value {
    match v {
        DpdValue::NegInf => json!("-inf"),
        DpdValue::Finite(n) => json!(n),
        DpdValue::PosInf => json!("+inf"),
        DpdValue::UndeterminedGeq(b) => json!({ "undetermined_geq": b }),
    }
}

fn blocks_to_json(m: &ModuleMap) -> Value {
    json!(m.blocks.iter().map(matrix_to_rows).collect::<Vec<_>>())
}

pub fn certificate_to_json(cert: &DpCertificate) -> Value {
    let side = |w: &crate::ding::SideWitness| {
        json!({
            "cycle": [w.cycle_start, w.cycle_end],
            "iso_blocks": blocks_to_json(&w.iso),
            "ext_vanishing": w.ext_vanishing.iter().map(|(i, v, wit)| json!({
                "degree": i,
                "projective_at_vertex": v,
                "dim": wit.dim,
            })).collect::<Vec<_>>(),
        })
    };
    json!({
        "module": module_to_doc(&cert.module),
        "reflexivity_unit_blocks": blocks_to_json(&cert.unit),
        "left": side(&cert.left),
        "dual_module": module_to_doc(&cert.dual),
        "right": side(&cert.right),
    })
}

fn obstruction_to_json(o: &Obstruction) -> Value {
    match o {
        Obstruction::NonzeroExt { side, vertex, witness } => json!({
            "kind": "nonzero_ext",
            "side": match side { Side::Module => "module", Side::DualModule => "dual" },
            "degree": witness.degree,
            "projective_at_vertex": vertex,
            "dim": witness.dim,
            "d_in": matrix_to_rows(&witness.d_in),
            "d_out": matrix_to_rows(&witness.d_out),
        }),
        Obstruction::NotReflexive => json!({ "kind": "not_reflexive" }),
    }
}

pub fn dp_verdict_to_json(v: &DpVerdict) -> Value {
    match v {
        DpVerdict::Yes(cert) => json!({
            "ding_projective": "yes",
            "certificate": certificate_to_json(cert),
        }),
        DpVerdict::No(o) => json!({
            "ding_projective": "no",
            "obstruction": obstruction_to_json(o),
        }),
        DpVerdict::Undetermined { window } => json!({
            "ding_projective": "undetermined",
            "window": window,
        }),
    }
}

pub fn module_verdict_to_json(v: &ModuleVerdict) -> Value {
    let certificate = match &v.detail {
        ModuleDetail::ZeroModule => json!({ "zero_module": true }),
        ModuleDetail::Finite { syzygy_index, certificate } => json!({
            "syzygy_index": syzygy_index,
            "ding_projective_witness": certificate_to_json(certificate),
        }),
        ModuleDetail::Infinite { cycle_start, cycle_end, iso, obstructions } => json!({
            "syzygy_cycle": [cycle_start, cycle_end],
            "cycle_iso_blocks": blocks_to_json(iso),
            "member_obstructions": obstructions
                .iter()
                .map(|(n, o)| json!({ "syzygy": n, "obstruction": obstruction_to_json(o) }))
                .collect::<Vec<_>>(),
        }),
        ModuleDetail::Undetermined { lower_bound } => json!({
            "lower_bound": lower_bound,
            "window": v.window,
        }),
    };
    json!({
        "value": value_to_json(v.value),
        "certificate": certificate,
        "witness_complex": v.witness.as_ref().map(|w| json!(complex_to_doc(&w.trim()))),
    })
}

pub fn complex_verdict_to_json(v: &ComplexVerdict) -> Value {
    let certificate = match &v.detail {
        ComplexDetail::Exact => json!({ "exact": true, "homology": "zero in every degree" }),
        ComplexDetail::Finite { degree, certificate } => json!({
            "cokernel_degree": degree,
            "ding_projective_witness": certificate_to_json(certificate),
        }),
        ComplexDetail::FromCokernel { at_degree, verdict } => json!({
            "top_cokernel_degree": at_degree,
            "cokernel_verdict": module_verdict_to_json(verdict),
        }),
    };
    json!({
        "value": value_to_json(v.value),
        "certificate": certificate,
        "witness_complex": v.witness.as_ref().map(|w| json!(complex_to_doc(&w.trim()))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn algebra_doc_round_trip() {
        let alg = arrow_loop();
        let doc = algebra_to_doc(&alg);
        let rebuilt = algebra_from_doc(&doc).unwrap();
        assert_eq!(rebuilt.content_id(), alg.content_id());
    }

    #[test]
    fn algebra_doc_parses_from_json() {
        let text = r#"{
            "p": 2, "vertices": 2,
            "arrows": [{"id": "a", "from": 0, "to": 1}, {"id": "b", "from": 1, "to": 1}],
            "relations": [[{"coeff": 1, "path": ["a", "b"]}], [{"coeff": 1, "path": ["b", "b"]}]]
        }"#;
        let doc: AlgebraDoc = serde_json::from_str(text).unwrap();
        assert_eq!(doc.length_cap, 16);
        let alg = algebra_from_doc(&doc).unwrap();
        assert_eq!(alg.content_id(), arrow_loop().content_id());
    }

    #[test]
    fn module_doc_round_trip() {
        let alg = arrow_loop();
        let p0 = Representation::projective(&alg, 0);
        let doc = module_to_doc(&p0);
        let back = module_from_doc(&alg, &doc).unwrap();
        assert_eq!(back, p0);
    }

    #[test]
    fn module_doc_shape_errors() {
        let alg = a2();
        let doc: ModuleDoc = serde_json::from_str(r#"{"dims": [1]}"#).unwrap();
        assert!(matches!(
            module_from_doc(&alg, &doc),
            Err(EngineError::BadDocument(_))
        ));
        let doc: ModuleDoc =
            serde_json::from_str(r#"{"dims": [1, 1], "arrows": {"a": [[1, 1]]}}"#).unwrap();
        assert!(matches!(
            module_from_doc(&alg, &doc),
            Err(EngineError::BadDocument(_))
        ));
    }

    #[test]
    fn complex_doc_round_trip() {
        let x = rad_inclusion_complex();
        let doc = complex_to_doc(&x);
        let back = complex_from_doc(&x.algebra, &doc).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn verdict_json_shapes() {
        let alg = dual_numbers();
        let k = Representation::simple(alg.clone(), 0);
        let v = crate::ding::dpd_module(&k, 4).unwrap();
        let j = module_verdict_to_json(&v);
        assert_eq!(j["value"], json!(0));
        let z = crate::ding::dpd_module(&Representation::zero(alg), 4).unwrap();
        assert_eq!(module_verdict_to_json(&z)["value"], json!("-inf"));
        let s1 = Representation::simple(arrow_loop(), 1);
        let inf = crate::ding::dpd_module(&s1, 4).unwrap();
        assert_eq!(module_verdict_to_json(&inf)["value"], json!("+inf"));
        let fat = Representation::simple(fat_point(), 0);
        let und = crate::ding::dpd_module(&fat, 3).unwrap();
        assert!(module_verdict_to_json(&und)["value"]["undetermined_geq"].is_number());
    }
}
