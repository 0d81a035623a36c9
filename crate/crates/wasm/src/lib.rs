//! Browser bindings: three interactive operations over the core library,
//! each returning a JSON string for the demo page to render.
//!
//! The numeric work stays in the core crate; this layer only parses the
//! text inputs, runs one operation, and serialises the result.

use wasm_bindgen::prelude::*;

use cqdyn::dynamics::{check_expansive, orbit_trace};
use cqdyn::funcspace::ComplexityFunction;
use cqdyn::qmetric::{dc, dc_conjugate, dc_sym};

fn distance_json(f: &str, g: &str, truncation: u32) -> cqdyn::Result<String> {
    let f = ComplexityFunction::parse(f)?;
    let g = ComplexityFunction::parse(g)?;
    let value = serde_json::json!({
        "f": f.source(),
        "g": g.source(),
        "forward": dc(&f, &g, truncation)?,
        "conjugate": dc_conjugate(&f, &g, truncation)?,
        "symmetrized": dc_sym(&f, &g, truncation)?,
    });
    Ok(value.to_string())
}

fn orbit_json(
    f: &str,
    g: &str,
    alpha: f64,
    k_min: i32,
    k_max: i32,
    truncation: u32,
) -> cqdyn::Result<String> {
    let f = ComplexityFunction::parse(f)?;
    let g = ComplexityFunction::parse(g)?;
    let trace = orbit_trace(&f, &g, alpha, k_min, k_max, truncation)?;
    Ok(serde_json::json!(trace).to_string())
}

fn expansiveness_json(
    f: &str,
    g: &str,
    alpha: f64,
    delta: f64,
    scan_bound: u32,
    truncation: u32,
) -> cqdyn::Result<String> {
    let f = ComplexityFunction::parse(f)?;
    let g = ComplexityFunction::parse(g)?;
    let result = check_expansive(&f, &g, alpha, delta, scan_bound, truncation)?;
    Ok(serde_json::json!(result).to_string())
}

/// Forward, conjugate, and symmetrized distances between two expressions.
#[wasm_bindgen]
pub fn distance_report(f: &str, g: &str, truncation: u32) -> Result<String, JsError> {
    distance_json(f, g, truncation).map_err(|e| JsError::new(&e.to_string()))
}

/// Distances along the scaling orbit `k -> (alpha^k f, alpha^k g)`.
#[wasm_bindgen]
pub fn orbit_report(
    f: &str,
    g: &str,
    alpha: f64,
    k_min: i32,
    k_max: i32,
    truncation: u32,
) -> Result<String, JsError> {
    orbit_json(f, g, alpha, k_min, k_max, truncation).map_err(|e| JsError::new(&e.to_string()))
}

/// Scan the orbit for an iterate separating the pair beyond `delta`.
#[wasm_bindgen]
pub fn expansiveness_report(
    f: &str,
    g: &str,
    alpha: f64,
    delta: f64,
    scan_bound: u32,
    truncation: u32,
) -> Result<String, JsError> {
    expansiveness_json(f, g, alpha, delta, scan_bound, truncation)
        .map_err(|e| JsError::new(&e.to_string()))
}
