//! Browser bindings: a thin JSON-in/JSON-out layer over the engine for the
//! static demo page. Every entry point returns a JSON string; failures come
//! back as {"error": "..."} so the page can render them inline.

use dpd_core::doc::{
    algebra_from_doc, complex_from_doc, complex_to_doc, complex_verdict_to_json,
    dp_verdict_to_json, module_from_doc, module_verdict_to_json, AlgebraDoc, ComplexDoc,
    ModuleDoc,
};
use dpd_core::{complex::ExtInt, ding, resolution};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

fn fail(msg: impl std::fmt::Display) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

fn parse_pair(algebra: &str, module: &str) -> Result<(dpd_core::algebra::AlgebraRef, dpd_core::rep::Representation), String> {
    let adoc: AlgebraDoc = serde_json::from_str(algebra).map_err(|e| fail(format!("algebra: {e}")))?;
    let alg = algebra_from_doc(&adoc).map_err(|e| fail(e))?;
    let mdoc: ModuleDoc = serde_json::from_str(module).map_err(|e| fail(format!("module: {e}")))?;
    let m = module_from_doc(&alg, &mdoc).map_err(|e| fail(e))?;
    Ok((alg, m))
}

/// Ding projectivity and Ding projective dimension of a module, plus the
/// dimension table of its minimal resolution.
#[wasm_bindgen]
pub fn analyze_module(algebra: &str, module: &str, window: i64) -> String {
    let (_, m) = match parse_pair(algebra, module) {
        Ok(x) => x,
        Err(e) => return e,
    };
    let depth = window.clamp(1, 12) as usize;
    let tail = resolution::minimal_projective_resolution(&m, depth);
    let table: Vec<Value> = (0..=depth)
        .map(|i| {
            json!({
                "degree": i,
                "term_dims": tail.resolution.term(i).dims,
                "syzygy_dims": tail.syzygy_at(i).dims,
            })
        })
        .collect();
    let is_dp = match ding::is_ding_projective(&m, window.max(2)) {
        Ok(v) => dp_verdict_to_json(&v),
        Err(e) => return fail(e),
    };
    let verdict = match ding::dpd_module(&m, window.max(1)) {
        Ok(v) => module_verdict_to_json(&v),
        Err(e) => return fail(e),
    };
    json!({
        "dims": m.dims,
        "resolution": table,
        "is_ding_projective": is_dp,
        "dpd": verdict,
    })
    .to_string()
}

/// Homology profile, Ding projective dimension, witness complex and the
/// functorial cross-check for a bounded complex.
#[wasm_bindgen]
pub fn analyze_complex(algebra: &str, complex: &str, window: i64) -> String {
    let adoc: AlgebraDoc = match serde_json::from_str(algebra) {
        Ok(d) => d,
        Err(e) => return fail(format!("algebra: {e}")),
    };
    let alg = match algebra_from_doc(&adoc) {
        Ok(a) => a,
        Err(e) => return fail(e),
    };
    let cdoc: ComplexDoc = match serde_json::from_str(complex) {
        Ok(d) => d,
        Err(e) => return fail(format!("complex: {e}")),
    };
    let x = match complex_from_doc(&alg, &cdoc) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let profile = x.homology_profile();
    let homology: Vec<Value> = profile
        .entries
        .iter()
        .map(|(n, dims)| json!({ "degree": n, "dims": dims }))
        .collect();
    let verdict = match ding::dpd_complex(&x, window.max(1)) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    let functorial = if verdict.value.finite().is_some() {
        match ding::dpd_functorial(&x, window.max(1)) {
            Ok(n) => json!(n),
            Err(e) => return fail(e),
        }
    } else {
        Value::Null
    };
    let ext_int = |v: ExtInt| match v {
        ExtInt::NegInf => json!("-inf"),
        ExtInt::Fin(n) => json!(n),
        ExtInt::PosInf => json!("+inf"),
    };
    json!({
        "terms": (x.lo..=x.hi()).map(|n| json!({
            "degree": n,
            "dims": x.term(n).dims,
        })).collect::<Vec<_>>(),
        "homology": homology,
        "hsup": ext_int(profile.hsup),
        "hinf": ext_int(profile.hinf),
        "dpd": complex_verdict_to_json(&verdict),
        "functorial_value": functorial,
    })
    .to_string()
}

/// Minimal projective resolution of a module, as a complex document plus a
/// per-degree dimension table.
#[wasm_bindgen]
pub fn resolve_module(algebra: &str, module: &str, degree: usize) -> String {
    let (_, m) = match parse_pair(algebra, module) {
        Ok(x) => x,
        Err(e) => return e,
    };
    let depth = degree.min(12);
    let tail = resolution::minimal_projective_resolution(&m, depth);
    json!({
        "complex": complex_to_doc(&tail.resolution.as_complex(0)),
        "table": (0..=depth).map(|i| json!({
            "degree": i,
            "term_dims": tail.resolution.term(i).dims,
        })).collect::<Vec<_>>(),
        "minimal": true,
    })
    .to_string()
}

/// The shipped example documents, for the demo page pickers.
#[wasm_bindgen]
pub fn fixture_documents() -> String {
    let algebras = [
        ("dual_numbers", include_str!("../../../fixtures/dual_numbers.algebra.json")),
        ("a2", include_str!("../../../fixtures/a2.algebra.json")),
        ("arrow_loop", include_str!("../../../fixtures/arrow_loop.algebra.json")),
        ("exterior2", include_str!("../../../fixtures/exterior2.algebra.json")),
        ("fat_point", include_str!("../../../fixtures/fat_point.algebra.json")),
    ];
    let modules = [
        ("dual_numbers.point", include_str!("../../../fixtures/dual_numbers.point.module.json")),
        ("a2.top_simple", include_str!("../../../fixtures/a2.top_simple.module.json")),
        ("arrow_loop.loop_simple", include_str!("../../../fixtures/arrow_loop.loop_simple.module.json")),
        ("fat_point.point", include_str!("../../../fixtures/fat_point.point.module.json")),
    ];
    let complexes = [(
        "a2.rad_inclusion",
        include_str!("../../../fixtures/a2.rad_inclusion.complex.json"),
    )];
    let to_map = |items: &[(&str, &str)]| -> Value {
        let mut map = serde_json::Map::new();
        for (name, text) in items {
            map.insert(
                (*name).to_string(),
                serde_json::from_str(text).expect("fixture parses"),
            );
        }
        Value::Object(map)
    };
    json!({
        "algebras": to_map(&algebras),
        "modules": to_map(&modules),
        "complexes": to_map(&complexes),
    })
    .to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixtures() -> Value {
        serde_json::from_str(&fixture_documents()).unwrap()
    }

    #[test]
    fn module_analysis_round_trip() {
        let f = fixtures();
        let alg = f["algebras"]["dual_numbers"].to_string();
        let m = f["modules"]["dual_numbers.point"].to_string();
        let out: Value = serde_json::from_str(&analyze_module(&alg, &m, 5)).unwrap();
        assert_eq!(out["dpd"]["value"], 0);
        assert_eq!(out["is_ding_projective"]["ding_projective"], "yes");
    }

    #[test]
    fn complex_analysis_round_trip() {
        let f = fixtures();
        let alg = f["algebras"]["a2"].to_string();
        let x = f["complexes"]["a2.rad_inclusion"].to_string();
        let out: Value = serde_json::from_str(&analyze_complex(&alg, &x, 5)).unwrap();
        assert_eq!(out["dpd"]["value"], 1);
        assert_eq!(out["functorial_value"], 1);
        assert_eq!(out["hsup"], 0);
    }

    #[test]
    fn resolution_table() {
        let f = fixtures();
        let alg = f["algebras"]["fat_point"].to_string();
        let m = f["modules"]["fat_point.point"].to_string();
        let out: Value = serde_json::from_str(&resolve_module(&alg, &m, 4)).unwrap();
        let table = out["table"].as_array().unwrap();
        assert_eq!(table.len(), 5);
        // dimensions double along the resolution of the fat point simple
        assert_eq!(out["table"][4]["term_dims"][0], 48);
    }

    #[test]
    fn bad_input_reports_error() {
        let out: Value = serde_json::from_str(&analyze_module("{", "{}", 4)).unwrap();
        assert!(out["error"].is_string());
    }
}
