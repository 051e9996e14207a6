//! Browser bindings. Every export takes and returns JSON strings; the plain
//! functions in [`demo`] carry the logic and are usable natively.

use wasm_bindgen::prelude::*;

pub mod demo;

fn js(e: qgidem::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Names accepted after `fn:` or `ga:`.
#[wasm_bindgen]
pub fn builtins() -> String {
    demo::builtins()
}

/// Idempotents of a built-in spec with their classification and Hasse diagram.
#[wasm_bindgen]
pub fn analyze(spec: &str, starts: u32, seed: u32) -> Result<String, JsError> {
    demo::analyze(spec, starts as usize, u64::from(seed)).map_err(js)
}

/// Cesàro averages of the powers of the state with the given real coefficients.
#[wasm_bindgen]
pub fn walk(spec: &str, coeffs: &str, steps: u32) -> Result<String, JsError> {
    demo::walk(spec, coeffs, steps as usize).map_err(js)
}

/// Quotient by the subgroup state of the listed elements.
#[wasm_bindgen]
pub fn quotient(spec: &str, subgroup: &str) -> Result<String, JsError> {
    demo::quotient(spec, subgroup).map_err(js)
}
