//! Browser bindings: three calls, each returning a JSON string.
//!
//! The `*_json` functions carry the logic and are what the native tests
//! exercise; the exported wrappers only turn errors into JS exceptions.

use bnloci::bncalc::{beta_universal, chi_tensor, neg_slope_criterion};
use bnloci::certkit::{certify, CurveClass, FactDb, Query};
use bnloci::sweeps;
use bnloci::{BundleSpec, Genus, Rational, SlopeFactor};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// β for `B^k(U(n1,d1), U(n2,d2))`, the slope criterion verdict and `χ(E1 ⊗ E2)`.
pub fn beta_json(g: i64, n1: u32, d1: i64, n2: u32, d2: i64, k: u32) -> Result<String, String> {
    let genus = Genus::new(g).map_err(err)?;
    let b1 = BundleSpec::new(n1.into(), d1).map_err(err)?;
    let b2 = BundleSpec::new(n2.into(), d2).map_err(err)?;
    let beta = beta_universal(genus, &b1, &b2, k.into());
    let mut out = json!({
        "beta": beta.to_string(),
        "chi": chi_tensor(genus, &b1, &b2).to_string(),
    });
    // the criterion needs the k sections split across the factors; only the product matters
    if k > 0 {
        let f1 = SlopeFactor::new(n1.into(), k.into(), Rational::new(d1, i64::from(n1)).map_err(err)?).map_err(err)?;
        let f2 = SlopeFactor::new(n2.into(), 1, Rational::new(d2, i64::from(n2)).map_err(err)?).map_err(err)?;
        out["criterion_negative"] = json!(neg_slope_criterion(genus, &f1, &f2));
    }
    Ok(out.to_string())
}

/// Certificate (or refusal) for a query such as
/// `{"rule":"phi","locus1":{"n":5,"d":12,"k":6},"cs":{"n":2,"d":10,"v":4}}`.
pub fn certify_json(curve: &str, query: &str) -> Result<String, String> {
    let curve: CurveClass = curve.parse().map_err(err)?;
    let query: Query = serde_json::from_str(query).map_err(err)?;
    Ok(match certify(&curve, &query, &FactDb::builtin()) {
        Ok(cert) => json!({ "certificate": cert, "text": cert.render_text() }).to_string(),
        Err(refusal) => json!({ "refusal": refusal, "text": refusal.to_string() }).to_string(),
    })
}

/// Minimal genus with a negative β in the `(2,5,2)` family, for `n2` in `2..=max_n2`.
pub fn table2_json(max_n2: u32) -> Result<String, String> {
    if max_n2 < 2 {
        return Err("max_n2 must be at least 2".into());
    }
    let rows = sweeps::table2(2..=u64::from(max_n2)).map_err(err)?;
    serde_json::to_string(&rows).map_err(err)
}

#[wasm_bindgen]
pub fn beta(g: i64, n1: u32, d1: i64, n2: u32, d2: i64, k: u32) -> Result<String, JsError> {
    beta_json(g, n1, d1, n2, d2, k).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = certify)]
pub fn certify_query(curve: &str, query: &str) -> Result<String, JsError> {
    certify_json(curve, query).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn table2(max_n2: u32) -> Result<String, JsError> {
    table2_json(max_n2).map_err(|e| JsError::new(&e))
}
